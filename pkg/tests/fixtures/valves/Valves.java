package pipe;

class StandardValve implements Valve {
    Valve next;

    public void invoke(Request r) {
        next.invoke(r);
    }
}

class AccessLogValve implements Valve {
    Valve next;

    public void invoke(Request r) {
        recordEntry(r);
        next.invoke(r);
    }

    void recordEntry(Request r) {
    }
}

class RemoteAddrValve implements Valve {
    Valve next;

    public void invoke(Request r) {
        screen(r);
        next.invoke(r);
    }

    void screen(Request r) {
    }
}

class SingleSignOnValve implements Valve {
    Valve next;

    public void invoke(Request r) {
        associate(r);
        next.invoke(r);
    }

    void associate(Request r) {
    }
}

class ErrorReportValve implements Valve {
    Valve next;

    public void invoke(Request r) {
        report(r);
        next.invoke(r);
    }

    void report(Request r) {
    }
}
