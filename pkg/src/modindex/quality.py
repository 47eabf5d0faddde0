"""Class, package and system quality scores and the Modularity Index.

Class quality blends three normalized scores: size (NCLOC, best at 50),
function count (best at 5) and cohesion (LCOM4, best at 1). Package quality
is the mean class quality. The system architecture score compares the
diagonal of the package dependency matrix with the whole matrix, and the
Modularity Index is that score times the mean package quality. Every value
lies in [0, 1].
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cohesion import ClassMetrics, class_metrics
from .config import ExtractionConfig
from .errors import EmptyPackage, NothingToAnalyze
from .model import DependencyMatrix, Diagnostic, Project, build_dependency_matrix

# fitted constants, used verbatim
LOC_SLOPE, LOC_INTERCEPT, LOC_OPTIMUM, LOC_EXPONENT = 0.0138, 0.310, 50, 1.969
F_SLOPE, F_INTERCEPT, F_OPTIMUM, F_SHIFT, F_EXPONENT = 0.1836, 0.0820, 5, 4.83, 2.691
H_EXPONENT = 2.216
W_LOC, W_F, W_H = 0.25, 0.25, 0.5


def _clamp(x: float) -> float:
    return min(1.0, max(0.0, x))


def loc_quality(ncloc: int) -> float:
    if ncloc < 0:
        raise ValueError(f"ncloc must be nonnegative, got {ncloc}")
    if ncloc <= LOC_OPTIMUM:
        return _clamp(LOC_SLOPE * ncloc + LOC_INTERCEPT)
    return _clamp(1.0 / (ncloc - LOC_OPTIMUM) ** LOC_EXPONENT)


def function_quality(f: int) -> float:
    if f < 0:
        raise ValueError(f"function count must be nonnegative, got {f}")
    if f <= F_OPTIMUM:
        return _clamp(F_SLOPE * f + F_INTERCEPT)
    return _clamp(1.0 / (f - F_SHIFT) ** F_EXPONENT)


def cohesion_quality(lcom4: int) -> float:
    if lcom4 < 1:
        raise ValueError(f"LCOM4 must be at least 1, got {lcom4}")
    return 1.0 / lcom4 ** H_EXPONENT


def class_quality(loc_q: float, f_q: float, h_q: float) -> float:
    for name, v in (("loc_q", loc_q), ("f_q", f_q), ("h_q", h_q)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v}")
    return W_LOC * loc_q + W_F * f_q + W_H * h_q


def _mean(values) -> float:
    values = list(values)
    return math.fsum(values) / len(values)


def package_quality(class_qualities) -> float:
    """Mean of the member class qualities."""
    values = list(class_qualities)
    if not values:
        raise EmptyPackage("empty package")
    return _mean(values)


def system_architecture(matrix, diagnostics: list | None = None) -> float:
    """Norm of the diagonal over the norm of the whole dependency matrix.

    A matrix with no dependencies at all scores 0; a warning is appended to
    ``diagnostics`` when given.
    """
    counts = matrix.counts if isinstance(matrix, DependencyMatrix) else matrix
    rows = [list(r) for r in counts]
    d = len(rows)
    if any(len(r) != d for r in rows):
        raise ValueError("dependency matrix must be square")
    total = math.fsum(float(c) * float(c) for r in rows for c in r)
    if total == 0:
        if diagnostics is not None:
            diagnostics.append(Diagnostic(
                "warning", "", 0, "no class dependencies found; system architecture set to 0"))
        return 0.0
    diagonal = math.fsum(float(rows[i][i]) ** 2 for i in range(d))
    return _clamp(math.sqrt(diagonal) / math.sqrt(total))


def modularity_index(s_a: float, package_qualities) -> float:
    values = list(package_qualities)
    if not values:
        raise NothingToAnalyze("no packages")
    if not 0.0 <= s_a <= 1.0:
        raise ValueError(f"s_a must lie in [0, 1], got {s_a}")
    return s_a * _mean(values)


# -- whole-system analysis ---------------------------------------------

@dataclass(frozen=True)
class ClassQuality:
    loc_q: float
    f_q: float
    h_q: float
    c_q: float

    @classmethod
    def of(cls, m: ClassMetrics) -> ClassQuality:
        loc_q, f_q, h_q = loc_quality(m.ncloc), function_quality(m.f), cohesion_quality(m.lcom4)
        return cls(loc_q, f_q, h_q, class_quality(loc_q, f_q, h_q))


@dataclass(frozen=True)
class ClassResult:
    package: str
    kind: str
    metrics: ClassMetrics
    quality: ClassQuality

    @property
    def qualified_name(self) -> str:
        return self.metrics.qualified_name


@dataclass(frozen=True)
class PackageQuality:
    package_name: str
    p_q: float
    class_count: int


@dataclass(frozen=True)
class SystemMetrics:
    s_a: float
    avg_p_q: float
    m_i: float
    ncloc: int
    packages: int
    classes: int
    functions: int

    @property
    def classes_per_package(self) -> float:
        return self.classes / self.packages

    @property
    def functions_per_class(self) -> float:
        return self.functions / self.classes

    @property
    def ncloc_per_class(self) -> float:
        return self.ncloc / self.classes

    def totals(self) -> dict:
        return {"ncloc": self.ncloc, "packages": self.packages, "classes": self.classes,
                "functions": self.functions}

    def averages(self) -> dict:
        return {"classes_per_package": self.classes_per_package,
                "functions_per_class": self.functions_per_class,
                "ncloc_per_class": self.ncloc_per_class}


@dataclass(frozen=True)
class Analysis:
    project: str
    version_label: str
    system: SystemMetrics
    packages: tuple[PackageQuality, ...]
    classes: tuple[ClassResult, ...]
    matrix: DependencyMatrix
    diagnostics: tuple[Diagnostic, ...] = field(default=())


def analyze_system(project: Project, config: ExtractionConfig | None = None) -> Analysis:
    """Run the class, package and system levels over a validated project.

    Packages and classes are processed in name order so that floating point
    aggregation is reproducible.
    """
    config = config or ExtractionConfig()
    packages = sorted((p for p in project.packages if p.classes), key=lambda p: p.name)
    if not packages:
        raise NothingToAnalyze()
    diags = list(project.diagnostics)
    results, pqs = [], []
    for package in packages:
        members = []
        for cls in sorted(package.classes, key=lambda c: c.qualified_name):
            m = class_metrics(cls, config)
            members.append(ClassResult(package.name, cls.kind, m, ClassQuality.of(m)))
        pqs.append(PackageQuality(package.name, package_quality(r.quality.c_q for r in members),
                                  len(members)))
        results.extend(members)
    ordered = Project(project.name, project.version_label, tuple(packages))
    matrix = build_dependency_matrix(ordered)
    s_a = system_architecture(matrix, diags)
    avg_p_q = _mean(p.p_q for p in pqs)
    system = SystemMetrics(
        s_a=s_a, avg_p_q=avg_p_q, m_i=modularity_index(s_a, [p.p_q for p in pqs]),
        ncloc=sum(r.metrics.ncloc for r in results), packages=len(pqs),
        classes=len(results), functions=sum(r.metrics.f for r in results))
    return Analysis(project.name, project.version_label, system, tuple(pqs), tuple(results),
                    matrix, tuple(diags))
