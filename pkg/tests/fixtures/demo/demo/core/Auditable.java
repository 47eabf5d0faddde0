package demo.core;

public interface Auditable {
    String describe();

    int id();

    void audit(Ledger ledger);
}
