"""Java source frontend."""
from .frontend import SourceFile, count_ncloc, extract_project, parse_compilation_unit
from .lexer import strip_comments, tokenize

__all__ = ["SourceFile", "count_ncloc", "extract_project", "parse_compilation_unit",
           "strip_comments", "tokenize"]
