"""Language-neutral project model and the package dependency matrix.

A :class:`Project` is a list of packages, each holding classes; every class
carries its size, its functions with their intra-class field accesses and
calls, and the set of project classes it references. Everything here is
immutable once built.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import NothingToAnalyze

SEVERITIES = ("info", "warning", "error")
CLASS_KINDS = ("class", "interface", "enum")


@dataclass(frozen=True, order=True)
class Diagnostic:
    severity: str
    path: str
    line: int
    message: str

    def __post_init__(self):
        if self.severity not in SEVERITIES:
            raise ValueError(f"bad severity {self.severity!r}")
        if self.line < 0:
            raise ValueError(f"bad line number {self.line}")

    def __str__(self):
        where = f"{self.path}:{self.line}" if self.line else self.path
        if not where:
            return f"{self.severity}: {self.message}"
        return f"{where}: {self.severity}: {self.message}"

    def to_dict(self) -> dict:
        return {"severity": self.severity, "path": self.path, "line": self.line,
                "message": self.message}

    @classmethod
    def from_dict(cls, d: dict) -> Diagnostic:
        return cls(d["severity"], d["path"], d["line"], d["message"])


def has_errors(diagnostics) -> bool:
    return any(d.severity == "error" for d in diagnostics)


@dataclass(frozen=True)
class FunctionNode:
    key: str
    accessed_fields: frozenset[str] = frozenset()
    called_functions: frozenset[str] = frozenset()
    is_constructor: bool = False

    def to_dict(self) -> dict:
        return {"key": self.key, "accessed_fields": sorted(self.accessed_fields),
                "called_functions": sorted(self.called_functions),
                "is_constructor": self.is_constructor}


@dataclass(frozen=True)
class ClassNode:
    qualified_name: str
    kind: str = "class"
    ncloc: int = 0
    functions: tuple[FunctionNode, ...] = ()
    fields: tuple[str, ...] = ()
    referenced_classes: frozenset[str] = frozenset()
    path: str = ""
    line: int = 0

    @property
    def simple_name(self) -> str:
        return self.qualified_name.rsplit(".", 1)[-1]

    def to_dict(self) -> dict:
        return {
            "qualified_name": self.qualified_name, "kind": self.kind, "ncloc": self.ncloc,
            "functions": [f.to_dict() for f in self.functions], "fields": list(self.fields),
            "referenced_classes": sorted(self.referenced_classes),
            "path": self.path, "line": self.line,
        }


@dataclass(frozen=True)
class PackageNode:
    name: str
    classes: tuple[ClassNode, ...] = ()


@dataclass(frozen=True)
class Project:
    name: str
    version_label: str = ""
    packages: tuple[PackageNode, ...] = ()
    diagnostics: tuple[Diagnostic, ...] = ()

    def classes(self):
        for package in self.packages:
            yield from package.classes

    def class_index(self) -> dict[str, tuple[PackageNode, ClassNode]]:
        return {c.qualified_name: (p, c) for p in self.packages for c in p.classes}

    def to_dict(self) -> dict:
        return {
            "name": self.name, "version_label": self.version_label,
            "packages": [{"name": p.name, "classes": [c.to_dict() for c in p.classes]}
                         for p in self.packages],
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }


@dataclass(frozen=True)
class DependencyMatrix:
    """Class-pair dependency counts between packages.

    ``counts[i][j]`` is the number of distinct ordered pairs (A, B) with A in
    package ``labels[i]``, B in ``labels[j]`` and A referencing B. The
    diagonal holds intra-package pairs, self references included.
    """
    labels: tuple[str, ...]
    counts: np.ndarray = field(compare=False)

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise ValueError(f"dependency matrix must be square, got shape {counts.shape}")
        if counts.shape[0] != len(self.labels):
            raise ValueError("matrix dimension does not match label count")
        if (counts < 0).any():
            raise ValueError("dependency counts must be nonnegative")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def d(self) -> int:
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, DependencyMatrix):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.counts, other.counts)

    def rows(self) -> list[list[int]]:
        return self.counts.tolist()

    def format(self) -> str:
        """Plain-text dump, one row per package."""
        width = max([len(str(v)) for v in self.counts.flat] + [1])
        lines = [f"dependency matrix ({self.d} packages)"]
        for j, label in enumerate(self.labels):
            lines.append(f"  [{j}] {label or '(default)'}")
        for i, row in enumerate(self.counts):
            cells = " ".join(str(v).rjust(width) for v in row)
            lines.append(f"  [{i}] {cells}")
        return "\n".join(lines)


def validate_model(project: Project) -> list[Diagnostic]:
    """Check the structural invariants of a project; returns error diagnostics."""
    out = []

    def error(cls, message):
        out.append(Diagnostic("error", cls.path if cls else project.name,
                              cls.line if cls else 0, message))

    names = Counter(p.name for p in project.packages)
    for name, n in sorted(names.items()):
        if n > 1:
            error(None, f"package {name!r} declared {n} times")

    qualified = Counter(c.qualified_name for c in project.classes())
    for name, n in sorted(qualified.items()):
        if n > 1:
            first = next(c for c in project.classes() if c.qualified_name == name)
            error(first, f"duplicate class {name} ({n} declarations)")

    for package in project.packages:
        for cls in package.classes:
            qn = cls.qualified_name
            if cls.kind not in CLASS_KINDS:
                error(cls, f"{qn}: unknown kind {cls.kind!r}")
            if cls.ncloc < 0:
                error(cls, f"{qn}: negative NCLOC")
            expected_pkg = qn.rsplit(".", 1)[0] if "." in qn else ""
            if package.name and qualified[qn] == 1 and not qn.startswith(package.name + "."):
                error(cls, f"{qn}: not a member of package {package.name} "
                           f"(expected package {expected_pkg})")
            if len(set(cls.fields)) != len(cls.fields):
                error(cls, f"{qn}: duplicate field names")
            keys = [f.key for f in cls.functions]
            if len(set(keys)) != len(keys):
                error(cls, f"{qn}: duplicate function keys")
            fields, keyset = set(cls.fields), set(keys)
            for fn in cls.functions:
                for name in sorted(fn.accessed_fields - fields):
                    error(cls, f"{qn}.{fn.key}: accesses unknown field {name!r}")
                for name in sorted(fn.called_functions - keyset):
                    error(cls, f"{qn}.{fn.key}: calls unknown function {name!r}")
            for ref in sorted(cls.referenced_classes):
                if ref not in qualified:
                    error(cls, f"{qn}: references unknown class {ref}")
    return out


def build_dependency_matrix(project: Project) -> DependencyMatrix:
    """Count distinct referencing class pairs between every pair of packages.

    Packages without classes are left out, so the dimension is the number of
    non-empty packages. Rows and columns follow the project's package order.
    """
    packages = [p for p in project.packages if p.classes]
    if not packages:
        raise NothingToAnalyze()
    row_of = {}
    for i, package in enumerate(packages):
        for cls in package.classes:
            row_of[cls.qualified_name] = i
    counts = np.zeros((len(packages), len(packages)), dtype=np.int64)
    for i, package in enumerate(packages):
        for cls in package.classes:
            for ref in cls.referenced_classes:
                j = row_of.get(ref)
                if j is not None:
                    counts[i, j] += 1
    return DependencyMatrix(tuple(p.name for p in packages), counts)
