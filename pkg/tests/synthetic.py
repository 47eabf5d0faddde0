"""Generators for synthetic projects: in-memory models and Java source trees."""
from __future__ import annotations

import random
from pathlib import Path

from modindex.model import ClassNode, FunctionNode, PackageNode, Project


def random_class(rng: random.Random, qualified_name: str, max_functions: int = 10,
                 max_fields: int = 8, refs=frozenset(), ncloc: int | None = None) -> ClassNode:
    fields = tuple(f"f{i}" for i in range(rng.randint(0, max_fields)))
    keys = [f"m{i}()" for i in range(rng.randint(0, max_functions))]
    functions = []
    for key in keys:
        accessed = frozenset(f for f in fields if rng.random() < 0.2)
        called = frozenset(k for k in keys if k != key and rng.random() < 0.1)
        functions.append(FunctionNode(key, accessed, called, rng.random() < 0.1))
    return ClassNode(qualified_name, rng.choice(("class", "class", "interface", "enum")),
                     rng.randint(0, 400) if ncloc is None else ncloc, tuple(functions), fields,
                     frozenset(refs))


def random_project(rng: random.Random, max_packages: int = 6, max_classes: int = 6) -> Project:
    names = []
    layout = []
    for p in range(rng.randint(1, max_packages)):
        pkg = f"p{p}"
        members = [f"{pkg}.C{c}" for c in range(rng.randint(1, max_classes))]
        names.extend(members)
        layout.append((pkg, members))
    packages = []
    for pkg, members in layout:
        classes = []
        for qn in members:
            refs = frozenset(n for n in names if rng.random() < 0.25)
            classes.append(random_class(rng, qn, refs=refs))
        packages.append(PackageNode(pkg, tuple(classes)))
    return Project("synthetic", "", tuple(packages))


_METHOD = """\
    public int {name}(int x) {{
        // adjust the running total
        int y = x * {k} + {field};
        if (y > {limit}) {{
            {field} = y - {limit};
        }}
        return {call}y;
    }}
"""


def write_java_tree(root: Path, packages: int = 50, classes: int = 900, methods: int = 8,
                    seed: int = 1) -> Path:
    """A compilable-looking Java tree; defaults approximate a 65K NCLOC system."""
    rng = random.Random(seed)
    names = [(f"org.synth.p{i % packages:02d}", f"Type{i:04d}") for i in range(classes)]
    for idx, (pkg, cls) in enumerate(names):
        imports = sorted({f"{p}.{c}" for p, c in rng.sample(names, 3) if p != pkg})
        fields = [f"v{j}" for j in range(4)]
        body = [f"package {pkg};", ""]
        body += [f"import {qn};" for qn in imports]
        body += ["", "/** Generated type. */", f"public class {cls} {{"]
        body += [f"    private int {f} = {j};" for j, f in enumerate(fields)]
        siblings = [c for p, c in names if p == pkg and c != cls]
        for k, sibling in enumerate(rng.sample(siblings, min(2, len(siblings)))):
            body.append(f"    private {sibling} sibling{k};")
        body += ["", f"    public {cls}() {{", f"        {fields[0]} = 1;", "    }", ""]
        for m in range(methods):
            call = f"m{m - 1}(y) + " if m and rng.random() < 0.5 else ""
            body.append(_METHOD.format(name=f"m{m}", k=m + 2, field=rng.choice(fields),
                                       limit=100 + m, call=call))
        if imports:
            other = imports[0].rsplit(".", 1)[1]
            body += [f"    public {other} peer() {{", "        return null;", "    }"]
        body.append("}")
        path = root / Path(*pkg.split(".")) / f"{cls}.java"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(body) + "\n", encoding="utf-8")
    return root
