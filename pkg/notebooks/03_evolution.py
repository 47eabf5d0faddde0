"""
Tracking modularity across releases
===================================

Generates four snapshots of a growing synthetic project, analyzes them as a
version series and writes one SVG chart per tracked quantity.
"""

import random
import tempfile
from pathlib import Path

from modindex import analyze_series, growth_summary, load_manifest
from modindex.charts import write_charts
from modindex.report import render_csv


def write_snapshot(root: Path, packages: int, classes: int, seed: int) -> None:
    """Each class uses two same-package peers and one class elsewhere."""
    rng = random.Random(seed)
    names = [(f"app.m{i % packages}", f"C{i}") for i in range(classes)]
    for pkg, cls in names:
        peers = [c for p, c in names if p == pkg and c != cls][:2]
        other = rng.choice(names)
        body = [f"package {pkg};", f"import {other[0]}.{other[1]};" if other[0] != pkg else "",
                f"public class {cls} {{", "    private int state;"]
        body += [f"    private {p} peer{k};" for k, p in enumerate(peers)]
        for m in range(rng.randint(2, 9)):
            body += [f"    int op{m}(int x) {{", f"        state += x * {m};",
                     "        return state;", "    }"]
        body += [f"    {other[1]} partner() {{ return null; }}", "}"]
        path = root / pkg.replace(".", "/") / f"{cls}.java"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(body) + "\n")


work = Path(tempfile.mkdtemp(prefix="modindex-demo-"))
releases = [("1.0", "2020-01-15", 3, 12), ("1.1", "2020-09-01", 4, 30),
            ("2.0", "2021-06-30", 6, 70), ("2.1", "2022-03-01", 8, 120)]
lines = []
for label, date, packages, classes in releases:
    write_snapshot(work / label, packages, classes, seed=len(lines))
    lines.append(f"{label}\t{date}\t{label}")
manifest = work / "growing.tsv"
manifest.write_text("\n".join(lines) + "\n")

# %% Analyze every release exactly as a standalone run would
table = analyze_series(load_manifest(manifest))
print(render_csv(table))

# %% First-to-last growth of every column
for name, g in growth_summary(table).items():
    print(f"{name:22s} {g.first:10.4f} -> {g.last:10.4f}  x{g.ratio:.2f}")

# %% Charts
for path in write_charts(table, work / "charts"):
    print("wrote", path)
