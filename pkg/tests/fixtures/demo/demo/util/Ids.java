package demo.util;

/** Sequential identifiers. */
public class Ids {
    private static int next = 1;

    public static synchronized int nextId() {
        return next++;
    }
}
