"""
Analyzing a small Java project
==============================

Walks through the bundled three-package demo: per-class metrics, the package
dependency matrix, the system score and the classes most worth refactoring.
"""

from pathlib import Path

from modindex import ReportDocument, analyze_system, extract_project, worst_offenders
from modindex.report import explain

ROOT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "demo"

# %% Extract the model: one node per class, with size, functions and references
project = extract_project(ROOT)
for cls in project.classes():
    refs = ", ".join(sorted(cls.referenced_classes)) or "-"
    print(f"{cls.qualified_name:24s} {cls.kind:9s} NCLOC {cls.ncloc:3d}  refs: {refs}")

# %% Score it
analysis = analyze_system(project)
print()
print(analysis.matrix.format())
s = analysis.system
print(f"\nS_A {s.s_a:.4f}   mean P_Q {s.avg_p_q:.4f}   M_I {s.m_i:.4f}")

# %% Package qualities
for p in analysis.packages:
    print(f"{p.package_name:10s} P_Q {p.p_q:.4f} over {p.class_count} classes")

# %% Which classes drag the score down, and why?
report = ReportDocument.from_analysis(analysis)
for o in worst_offenders(report, 3):
    print(f"{o.c_q:.4f} {o.name}: weakest term {o.lever} = {o.lever_value:.4f}")
print()
print(explain(report, "demo.core.Auditable"))

# %% Most coupling flows from app and core into util; moving Money into core
# would turn two cross-package pairs into intra-package ones.
