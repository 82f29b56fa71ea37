package pipe;

class Pipeline {
    Valve first;

    void start(Request r) {
        first.invoke(r);
    }
}
