"""Source frontend for the Java-like subset: lexer, parser, resolver."""

from .ast import SourceUnit, Unit
from .lexer import ParseError
from .parser import parse_unit
from .resolve import (FrontendError, ResolutionDiagnostic, build_callgraph,
                      classify_accessor_shape, collect_sources, count_ncloc,
                      graph_from_directory, graph_from_sources)

__all__ = [
    "SourceUnit",
    "Unit",
    "ParseError",
    "parse_unit",
    "FrontendError",
    "ResolutionDiagnostic",
    "build_callgraph",
    "classify_accessor_shape",
    "collect_sources",
    "count_ncloc",
    "graph_from_directory",
    "graph_from_sources",
]
