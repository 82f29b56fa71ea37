package mini;

class Figure {
    int x;
    int y;
    Display display;

    void changed() {
    }

    int getX() {
        return x;
    }

    int getY() {
        return y;
    }

    void setX(int v) {
        x = v;
    }

    void setY(int v) {
        y = v;
    }

    Display getDisplay() {
        return display;
    }

    void setDisplay(Display d) {
        display = d;
    }
}
