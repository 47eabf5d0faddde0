package demo.util;

public class Strings {
    public static String pad(String s, int width) {
        StringBuilder b = new StringBuilder(s);
        while (b.length() < width) {
            b.append(' ');
        }
        return b.toString();
    }

    public static String repeat(char c, int n) {
        return pad("", n).replace(' ', c);
    }
}
