package mini;

class Display {
}

class UndoManager {
    void recordActivity(Figure f) {
    }
}

class FigureEnumerator {
    Figure nextFigure() {
        return null;
    }

    boolean hasNextFigure() {
        return false;
    }
}
