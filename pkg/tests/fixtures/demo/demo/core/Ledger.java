package demo.core;

import java.util.ArrayList;
import java.util.List;
import demo.util.Ids;
import demo.util.Money;

public class Ledger {
    private final List<Account> accounts = new ArrayList<>();
    private final int id = Ids.nextId();

    public void open(String owner) {
        accounts.add(new Account(owner));
    }

    public void credit(int index, Money amount) {
        accounts.get(index).deposit(amount);
    }

    public int size() {
        return accounts.size();
    }

    public int id() {
        return id;
    }
}
