"""Analyze a project across an ordered series of versions.

The series is read from a tab-separated manifest (``label``, ISO date,
source path; ``#`` starts a comment). Each version is analyzed exactly as a
standalone run would analyze it, and the results are collected into one
row per version, in manifest order.
"""
from __future__ import annotations

import datetime as dt
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .config import ExtractionConfig
from .errors import ModIndexError, NothingToAnalyze, UsageError
from .java.frontend import default_workers, extract_project
from .quality import Analysis, analyze_system

log = logging.getLogger(__name__)

COLUMNS = ("label", "date", "ncloc", "packages", "classes", "functions",
           "classes_per_package", "functions_per_class", "ncloc_per_class",
           "avg_p_q", "s_a", "m_i")
NUMERIC_COLUMNS = COLUMNS[2:]


@dataclass(frozen=True)
class VersionEntry:
    label: str
    release_date: dt.date
    source_root: Path


@dataclass(frozen=True)
class VersionSeries:
    project_name: str
    entries: tuple[VersionEntry, ...]

    def __post_init__(self):
        seen = set()
        for e in self.entries:
            if e.label in seen:
                raise UsageError(f"duplicate version label {e.label!r}")
            seen.add(e.label)

    def __len__(self):
        return len(self.entries)


def load_manifest(path, project_name: str | None = None) -> VersionSeries:
    """Read a version manifest; relative paths are taken from the manifest's directory."""
    path = Path(path)
    if not path.is_file():
        raise UsageError(f"manifest not found: {path}")
    entries = []
    labels = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        parts = [p.strip() for p in raw.split("\t")]
        if len(parts) != 3 or not all(parts):
            raise UsageError(f"{path}:{lineno}: expected 'label<TAB>date<TAB>path', got {raw!r}")
        label, date_text, root_text = parts
        if label in labels:
            raise UsageError(f"{path}:{lineno}: duplicate version label {label!r} "
                             f"(first on line {labels[label]})")
        labels[label] = lineno
        try:
            date = dt.date.fromisoformat(date_text)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: version {label!r} has invalid date "
                             f"{date_text!r} (expected YYYY-MM-DD)") from None
        root = Path(root_text)
        if not root.is_absolute():
            root = path.parent / root
        if not root.is_dir():
            raise UsageError(f"{path}:{lineno}: version {label!r}: source root not found: {root}")
        entries.append(VersionEntry(label, date, root))
    return VersionSeries(project_name or path.stem, tuple(entries))


@dataclass(frozen=True)
class EvolutionRow:
    label: str
    date: str
    ncloc: int
    packages: int
    classes: int
    functions: int
    classes_per_package: float
    functions_per_class: float
    ncloc_per_class: float
    avg_p_q: float
    s_a: float
    m_i: float

    @classmethod
    def from_analysis(cls, label: str, date: str, analysis: Analysis) -> EvolutionRow:
        s = analysis.system
        return cls(label, date, s.ncloc, s.packages, s.classes, s.functions,
                   s.classes_per_package, s.functions_per_class, s.ncloc_per_class,
                   s.avg_p_q, s.s_a, s.m_i)

    def as_dict(self) -> dict:
        return {c: getattr(self, c) for c in COLUMNS}


@dataclass(frozen=True)
class EvolutionTable:
    project_name: str
    rows: tuple[EvolutionRow, ...]
    failures: tuple[tuple[str, str], ...] = field(default=())  # (label, reason)

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]


def _analyze_entry(entry: VersionEntry, project_name: str, config: ExtractionConfig,
                   workers: int) -> Analysis:
    project = extract_project(entry.source_root, config, workers=workers,
                              name=project_name, version_label=entry.label)
    return analyze_system(project, config)


def analyze_series(series: VersionSeries, config: ExtractionConfig | None = None, *,
                   workers: int | None = None) -> EvolutionTable:
    """One row per version; versions that fail are reported and skipped."""
    config = config or ExtractionConfig()
    workers = workers or default_workers()
    if not series.entries:
        raise NothingToAnalyze("nothing to analyze: empty version series")

    def run(entry):
        try:
            return _analyze_entry(entry, series.project_name, config, 1 if workers > 1 else workers)
        except ModIndexError as exc:
            return exc

    if workers > 1 and len(series) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, series.entries))
    else:
        outcomes = [run(e) for e in series.entries]

    rows, failures = [], []
    for entry, outcome in zip(series.entries, outcomes):
        if isinstance(outcome, Exception):
            log.warning("version %s skipped: %s", entry.label, outcome)
            failures.append((entry.label, str(outcome)))
        else:
            rows.append(EvolutionRow.from_analysis(entry.label, entry.release_date.isoformat(),
                                                   outcome))
    if not rows:
        raise NothingToAnalyze("nothing to analyze: every version failed ("
                               + "; ".join(f"{l}: {m}" for l, m in failures) + ")")
    return EvolutionTable(series.project_name, tuple(rows), tuple(failures))


@dataclass(frozen=True)
class Growth:
    first: float
    last: float
    ratio: float | None


def growth_summary(table: EvolutionTable) -> dict[str, Growth]:
    """First value, last value and last/first for every numeric column."""
    if len(table.rows) < 2:
        raise ValueError("growth summary needs at least two versions")
    out = {}
    for name in NUMERIC_COLUMNS:
        first, last = getattr(table.rows[0], name), getattr(table.rows[-1], name)
        out[name] = Growth(first, last, last / first if first else None)
    return out
