import random

from hypothesis import given, settings, strategies as st
from synthetic import random_class

from modindex.cohesion import UnionFind, class_metrics, compute_lcom4, count_functions
from modindex.config import ExtractionConfig
from modindex.java.frontend import extract_project
from modindex.model import ClassNode, FunctionNode


def brute_force_lcom4(cls: ClassNode) -> int:
    """Components via repeated pairwise closure of an adjacency matrix."""
    fns = list(cls.functions)
    n = len(fns)
    if n == 0:
        return 1
    reach = [[i == j
              or bool(fns[i].accessed_fields & fns[j].accessed_fields)
              or fns[j].key in fns[i].called_functions
              or fns[i].key in fns[j].called_functions
              for j in range(n)] for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if not reach[i][j] and any(reach[i][k] and reach[k][j] for k in range(n)):
                    reach[i][j] = reach[j][i] = True
                    changed = True
    return len({frozenset(j for j in range(n) if reach[i][j]) for i in range(n)})


def fn(key, fields=(), calls=(), ctor=False):
    return FunctionNode(key, frozenset(fields), frozenset(calls), ctor)


def klass(*functions, fields=("a", "b")):
    return ClassNode("p.C", fields=fields, functions=functions)


def test_shared_field_connects():
    assert compute_lcom4(klass(fn("m1()", "a"), fn("m2()", "a"))) == 1


def test_disjoint_fields_split():
    c = klass(fn("m1()", "a"), fn("m2()", "b"))
    assert compute_lcom4(c) == brute_force_lcom4(c) == 2


def test_call_chain_connects():
    c = klass(fn("m1()", calls=["m2()"]), fn("m2()", "a"), fn("m3()", "a"))
    assert compute_lcom4(c) == brute_force_lcom4(c) == 1


def test_no_functions_is_one():
    assert compute_lcom4(klass()) == 1


def test_count_functions():
    c = klass(fn("C()", ctor=True), fn("f()"), fn("g()"))
    assert count_functions(c, ExtractionConfig()) == 3
    assert count_functions(c, ExtractionConfig(count_constructors_as_functions=False)) == 2
    assert count_functions(klass()) == 0
    iface = ClassNode("p.I", "interface", functions=tuple(fn(f"s{i}()") for i in range(5)))
    assert count_functions(iface) == 5


def test_constructor_binds_components_unless_excluded():
    c = klass(fn("C()", ("a", "b"), ctor=True), fn("f()", "a"), fn("g()", "b"))
    assert compute_lcom4(c) == 1
    assert compute_lcom4(c, include_constructors=False) == 2


def test_empty_class_body_metrics(tmp_path):
    (tmp_path / "p").mkdir()
    (tmp_path / "p" / "E.java").write_text("package p;\nclass E {}\n")
    (c,) = extract_project(tmp_path, workers=1).classes()
    m = class_metrics(c)
    assert (m.ncloc, m.f, m.lcom4) == (1, 0, 1)


def test_fixture_classes(demo_root, demo_expected):
    project = extract_project(demo_root, workers=1)
    for c in project.classes():
        m = class_metrics(c)
        want = demo_expected["classes"][c.qualified_name]
        assert (m.ncloc, m.f, m.lcom4) == (want["ncloc"], want["f"], want["lcom4"])
        assert m.lcom4 == brute_force_lcom4(c)
    by_name = {c.qualified_name: class_metrics(c) for c in project.classes()}
    assert (by_name["demo.core.Account"].ncloc, by_name["demo.core.Account"].f,
            by_name["demo.core.Account"].lcom4) == (23, 3, 1)
    assert by_name["demo.app.Report"].lcom4 == 2


def test_union_find():
    uf = UnionFind(5)
    assert uf.union(0, 1) and uf.union(3, 4) and not uf.union(1, 0)
    assert uf.components == 3
    assert uf.find(0) == uf.find(1) != uf.find(2)


@settings(max_examples=1000, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_lcom4_matches_oracle(seed):
    c = random_class(random.Random(seed), "p.C", max_functions=10, max_fields=8)
    lcom4 = compute_lcom4(c)
    assert lcom4 == brute_force_lcom4(c)
    assert 1 <= lcom4 <= max(len(c.functions), 1)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_extra_edge_never_increases_lcom4(seed):
    rng = random.Random(seed)
    c = random_class(rng, "p.C")
    if len(c.functions) < 2:
        return
    fns = list(c.functions)
    i, j = rng.sample(range(len(fns)), 2)
    f = fns[i]
    fns[i] = FunctionNode(f.key, f.accessed_fields, f.called_functions | {fns[j].key},
                          f.is_constructor)
    grown = ClassNode(c.qualified_name, c.kind, c.ncloc, tuple(fns), c.fields)
    assert compute_lcom4(grown) <= compute_lcom4(c)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_common_field_gives_one_component(seed):
    c = random_class(random.Random(seed), "p.C")
    fns = tuple(FunctionNode(f.key, f.accessed_fields | {"shared"}, f.called_functions)
                for f in c.functions)
    assert compute_lcom4(ClassNode("p.C", fields=c.fields + ("shared",), functions=fns)) == 1


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_consistent_renaming_preserves_metrics(seed):
    rng = random.Random(seed)
    c = random_class(rng, "p.C")
    fmap = {f: f"field_{rng.random()}" for f in c.fields}
    kmap = {f.key: f"fn_{k}_{rng.random()}()" for k, f in enumerate(c.functions)}
    renamed = ClassNode(c.qualified_name, c.kind, c.ncloc, tuple(
        FunctionNode(kmap[f.key], frozenset(fmap[a] for a in f.accessed_fields),
                     frozenset(kmap[k] for k in f.called_functions), f.is_constructor)
        for f in c.functions), tuple(fmap[f] for f in c.fields))
    assert class_metrics(renamed) == class_metrics(c)
