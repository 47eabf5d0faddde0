"""Revised Modularity Index for Java source trees.

Typical use::

    from modindex import extract_project, analyze_system
    analysis = analyze_system(extract_project("path/to/src"))
    print(analysis.system.m_i)
"""
from .cohesion import ClassMetrics, class_metrics, compute_lcom4, count_functions
from .config import ExtractionConfig, load_config
from .errors import ModIndexError, NothingToAnalyze, UsageError
from .evolution import (EvolutionTable, VersionSeries, analyze_series, growth_summary,
                        load_manifest)
from .java import extract_project, strip_comments
from .model import (ClassNode, DependencyMatrix, Diagnostic, FunctionNode, PackageNode, Project,
                    build_dependency_matrix, validate_model)
from .quality import (Analysis, SystemMetrics, analyze_system, class_quality, cohesion_quality,
                      function_quality, loc_quality, modularity_index, package_quality,
                      system_architecture)
from .report import ReportDocument, render_csv, worst_offenders
from .charts import render_chart

__version__ = "0.1.0"

__all__ = [
    "Analysis", "ClassMetrics", "ClassNode", "DependencyMatrix", "Diagnostic",
    "EvolutionTable", "ExtractionConfig", "FunctionNode", "ModIndexError", "NothingToAnalyze",
    "PackageNode", "Project", "ReportDocument", "SystemMetrics", "UsageError", "VersionSeries",
    "analyze_series", "analyze_system", "build_dependency_matrix", "class_metrics",
    "class_quality", "cohesion_quality", "compute_lcom4", "count_functions", "extract_project",
    "function_quality", "growth_summary", "load_config", "load_manifest", "loc_quality",
    "modularity_index", "package_quality", "render_chart", "render_csv", "strip_comments",
    "system_architecture", "validate_model", "worst_offenders",
]
