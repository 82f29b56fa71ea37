"""fanmine: fan-in analysis over static call graphs for concern mining."""

from .filtering import (AccessorFilter, CandidateRecord, ExclusionConfig,
                        FilterConfig, FilterTag, ThresholdMode, candidate_list,
                        is_accessor_by_name, threshold_cut, utility_hints)
from .metric import MetricConfig, MetricResult, compute_metric, lifted_fanin
from .model import (AccessorShape, CallGraph, CallSite, Dispatch, GraphError,
                    LibraryCall, MethodDecl, MethodKind, TypeDecl, TypeKind,
                    library_key, load_graph, save_graph)
from .report import (Histogram, Report, SummaryTable, build_report,
                     distribution, render, summary)
from .seeds import (CallerGrouping, MarkStore, PositionFlags, SeedMark,
                    SeedStatus, call_position_table, callers_of,
                    group_by_declaring_supertype, group_by_shared_callees,
                    load_marks, save_marks, summary_counts)

__version__ = "0.1.0"

__all__ = [
    "AccessorFilter", "AccessorShape", "CallGraph", "CallSite",
    "CallerGrouping", "CandidateRecord", "Dispatch", "ExclusionConfig",
    "FilterConfig", "FilterTag", "GraphError", "Histogram", "LibraryCall",
    "MarkStore", "MethodDecl", "MethodKind", "MetricConfig", "MetricResult",
    "PositionFlags", "Report", "SeedMark", "SeedStatus", "SummaryTable",
    "ThresholdMode", "TypeDecl", "TypeKind", "build_report",
    "call_position_table", "callers_of", "candidate_list", "compute_metric",
    "distribution", "group_by_declaring_supertype", "group_by_shared_callees",
    "is_accessor_by_name", "library_key", "lifted_fanin", "load_graph",
    "load_marks", "render", "save_graph", "save_marks", "summary",
    "summary_counts", "threshold_cut", "utility_hints",
]
