"""Serializable analysis reports: JSON documents, CSV tables, worst offenders.

Floats are written with their shortest round-trip representation, padded to
at least six decimals, so JSON and CSV agree digit for digit and parsing a
document gives back exactly the values that were written.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import Decimal

from .errors import UsageError
from .evolution import COLUMNS, EvolutionTable, growth_summary
from .model import DependencyMatrix, Diagnostic
from .quality import Analysis, SystemMetrics

SCHEMA_VERSION = "1.0"
MIN_DECIMALS = 6
QUALITY_TERMS = ("loc_q", "f_q", "h_q")


def format_float(x: float) -> str:
    text = repr(float(x))
    if text in ("nan", "inf", "-inf"):
        raise ValueError(f"cannot serialize {text}")
    if "e" in text or "E" in text:
        text = format(Decimal(text), "f")
    if "." not in text:
        text += "."
    decimals = len(text) - text.index(".") - 1
    return text + "0" * max(0, MIN_DECIMALS - decimals)


def _encode(obj, indent: int = 0) -> str:
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, str)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + _encode(v, indent + 1) for v in obj) + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, indent + 1)}"
                 for k, v in obj.items())
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return _encode(obj) + "\n"


@dataclass(frozen=True)
class ClassEntry:
    name: str
    kind: str
    ncloc: int
    f: int
    lcom4: int
    loc_q: float
    f_q: float
    h_q: float
    c_q: float

    def lever(self) -> str:
        """The smallest of the three quality terms (first wins ties)."""
        return min(QUALITY_TERMS, key=lambda t: getattr(self, t))


@dataclass(frozen=True)
class PackageEntry:
    name: str
    p_q: float
    classes: tuple[ClassEntry, ...]


@dataclass(frozen=True)
class Offender:
    name: str
    package: str
    c_q: float
    ncloc: int
    f: int
    lcom4: int
    lever: str
    lever_value: float


@dataclass(frozen=True)
class ReportDocument:
    project: str
    version_label: str
    system: SystemMetrics
    packages: tuple[PackageEntry, ...]
    matrix: DependencyMatrix
    diagnostics: tuple[Diagnostic, ...] = ()
    worst_offenders: tuple[Offender, ...] = ()
    schema_version: str = field(default=SCHEMA_VERSION)

    @classmethod
    def from_analysis(cls, analysis: Analysis, worst: int | None = None) -> ReportDocument:
        by_package = {}
        for r in analysis.classes:
            m, q = r.metrics, r.quality
            by_package.setdefault(r.package, []).append(ClassEntry(
                m.qualified_name, r.kind, m.ncloc, m.f, m.lcom4, q.loc_q, q.f_q, q.h_q, q.c_q))
        packages = tuple(PackageEntry(p.package_name, p.p_q, tuple(by_package[p.package_name]))
                         for p in analysis.packages)
        doc = cls(analysis.project, analysis.version_label, analysis.system, packages,
                  analysis.matrix, tuple(analysis.diagnostics))
        if worst is not None:
            doc = ReportDocument(doc.project, doc.version_label, doc.system, doc.packages,
                                 doc.matrix, doc.diagnostics, tuple(worst_offenders(doc, worst)))
        return doc

    def classes(self):
        for p in self.packages:
            yield from p.classes

    def to_dict(self) -> dict:
        s = self.system
        return {
            "schema_version": self.schema_version,
            "project": self.project,
            "version_label": self.version_label,
            "system": {
                "s_a": s.s_a, "avg_p_q": s.avg_p_q, "m_i": s.m_i,
                "totals": s.totals(), "averages": s.averages(),
            },
            "packages": [
                {"name": p.name, "p_q": p.p_q, "class_count": len(p.classes),
                 "classes": [vars(c).copy() for c in p.classes]}
                for p in self.packages
            ],
            "matrix": {"labels": list(self.matrix.labels), "rows": self.matrix.rows()},
            "worst_offenders": [vars(o).copy() for o in self.worst_offenders],
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }

    @classmethod
    def from_dict(cls, d: dict) -> ReportDocument:
        version = d.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {version!r} (expected {SCHEMA_VERSION})")
        s, totals = d["system"], d["system"]["totals"]
        system = SystemMetrics(float(s["s_a"]), float(s["avg_p_q"]), float(s["m_i"]),
                               totals["ncloc"], totals["packages"], totals["classes"],
                               totals["functions"])
        packages = tuple(
            PackageEntry(p["name"], float(p["p_q"]), tuple(
                ClassEntry(c["name"], c["kind"], c["ncloc"], c["f"], c["lcom4"],
                           float(c["loc_q"]), float(c["f_q"]), float(c["h_q"]), float(c["c_q"]))
                for c in p["classes"]))
            for p in d["packages"])
        matrix = DependencyMatrix(tuple(d["matrix"]["labels"]), d["matrix"]["rows"])
        offenders = tuple(Offender(o["name"], o["package"], float(o["c_q"]), o["ncloc"], o["f"],
                                   o["lcom4"], o["lever"], float(o["lever_value"]))
                          for o in d.get("worst_offenders", []))
        diags = tuple(Diagnostic.from_dict(x) for x in d.get("diagnostics", []))
        return cls(d["project"], d["version_label"], system, packages, matrix, diags, offenders,
                   version)

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        return cls.from_dict(json.loads(text))


def worst_offenders(report: ReportDocument, n: int) -> list[Offender]:
    """The ``n`` classes with the lowest class quality, ties broken by name."""
    if n <= 0:
        raise UsageError(f"number of offenders must be positive, got {n}")
    ranked = sorted(((c, p.name) for p in report.packages for c in p.classes),
                    key=lambda cp: (cp[0].c_q, cp[0].name))
    out = []
    for c, package in ranked[:n]:
        lever = c.lever()
        out.append(Offender(c.name, package, c.c_q, c.ncloc, c.f, c.lcom4, lever,
                            getattr(c, lever)))
    return out


_LEVER_ADVICE = {
    "loc_q": "size is furthest from the 50-NCLOC optimum",
    "f_q": "function count is furthest from the 5-function optimum",
    "h_q": "cohesion is the weakest term; split or reconnect disjoint method groups",
}


def explain(report: ReportDocument, qualified_name: str) -> str:
    """Human-readable derivation of one class's quality."""
    for p in report.packages:
        for c in p.classes:
            if c.name == qualified_name:
                break
        else:
            continue
        break
    else:
        raise UsageError(f"class not found in analysis: {qualified_name}")
    loc_rule = "0.0138*NCLOC + 0.310" if c.ncloc <= 50 else "1/(NCLOC-50)^1.969"
    f_rule = "0.1836*F + 0.0820" if c.f <= 5 else "1/(F-4.83)^2.691"
    lever = c.lever()
    lines = [
        f"{c.name} ({c.kind}) in package {p.name or '(default)'}",
        f"  NCLOC  = {c.ncloc:<6d} LOC_Q = {c.loc_q:.6f}   [{loc_rule}]",
        f"  F      = {c.f:<6d} F_Q   = {c.f_q:.6f}   [{f_rule}]",
        f"  LCOM4  = {c.lcom4:<6d} H_Q   = {c.h_q:.6f}   [1/LCOM4^2.216]",
        f"  c_Q = 0.25*{c.loc_q:.6f} + 0.25*{c.f_q:.6f} + 0.5*{c.h_q:.6f} = {c.c_q:.6f}",
        f"  package P_Q = {p.p_q:.6f} over {len(p.classes)} classes",
        f"  weakest term: {lever} ({_LEVER_ADVICE[lever]})",
    ]
    return "\n".join(lines) + "\n"


# -- CSV -----------------------------------------------------------------

CLASS_COLUMNS = ("package", "class", "kind", "ncloc", "f", "lcom4",
                 "loc_q", "f_q", "h_q", "c_q", "p_q")


def _cell(v) -> str:
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def render_csv(data) -> str:
    """CSV text for an :class:`EvolutionTable` or a :class:`ReportDocument`."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(data, EvolutionTable):
        writer.writerow(COLUMNS)
        for row in data.rows:
            writer.writerow([_cell(getattr(row, c)) for c in COLUMNS])
    elif isinstance(data, ReportDocument):
        writer.writerow(CLASS_COLUMNS)
        for p in data.packages:
            for c in p.classes:
                writer.writerow([_cell(v) for v in (
                    p.name, c.name, c.kind, c.ncloc, c.f, c.lcom4,
                    c.loc_q, c.f_q, c.h_q, c.c_q, p.p_q)])
    else:
        raise TypeError(f"cannot render {type(data).__name__} as CSV")
    return buf.getvalue()


def evolution_document(table: EvolutionTable) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "project": table.project_name,
        "rows": [r.as_dict() for r in table.rows],
        "failures": [{"label": l, "reason": m} for l, m in table.failures],
    }
    if len(table.rows) >= 2:
        doc["growth"] = {k: {"first": g.first, "last": g.last, "ratio": g.ratio}
                         for k, g in growth_summary(table).items()}
    return doc
