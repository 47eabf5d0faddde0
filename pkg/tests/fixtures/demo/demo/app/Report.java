package demo.app;

import demo.core.Ledger;
import demo.util.Strings;

public class Report {
    private final Ledger ledger;
    private String title = "Report";
    private int width = 40;
    private int lines;

    public Report(Ledger ledger) {
        this.ledger = ledger;
    }

    public String render() {
        lines++;
        return ledger.size() + " entries";
    }

    private String header() {
        return Strings.pad(title, width);
    }

    public void setTitle(String title) {
        this.title = title;
    }

    public int lineCount() {
        return lines;
    }

    public void reset() {
        lines = 0;
    }
}
