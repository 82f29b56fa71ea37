package cmd;

abstract class AbstractCommand {
    View view;
    UndoActivity activity;

    void execute() {
    }

    void setUndoActivity(UndoActivity a) {
        activity = a;
    }

    UndoActivity createUndoActivity() {
        return new UndoActivity();
    }
}
