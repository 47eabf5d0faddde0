"""Comment and literal aware tokenizer for Java source.

Produces the token stream the declaration parser works on, plus a per-line
flag telling whether the line carries any code. Comment markers inside
string, text-block and character literals are part of the literal, so they
never open a comment.
"""
from __future__ import annotations

import re
from typing import NamedTuple

IDENT = "ident"
NUMBER = "number"
STRING = "string"
CHAR = "char"
OP = "op"

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>[ \t\f\r\v\ufeff]+)
    | (?P<nl>\n)
    | (?P<lcomment>//[^\n]*)
    | (?P<bcomment>/\*.*?\*/)
    | (?P<open_comment>/\*.*)
    | (?P<textblock>\"\"\"(?:\\.|[^\\])*?\"\"\")
    | (?P<string>"(?:\\.|[^"\\\n])*")
    | (?P<open_string>"[^\n]*)
    | (?P<char>'(?:\\.|[^'\\\n])+')
    | (?P<ident>(?:[^\W\d]|\$)(?:\w|\$)*)
    | (?P<number>0[xX][0-9a-fA-F_]*(?:\.[0-9a-fA-F_]*)?(?:[pP][+-]?\d+)?[lLfFdD]?
                |0[bB][01_]+[lL]?
                |\d[\d_]*(?:\.[\d_]*)?(?:[eE][+-]?\d+)?[fFdDlL]?
                |\.\d[\d_]*(?:[eE][+-]?\d+)?[fFdD]?)
    | (?P<op>->|::|\.\.\.|\+\+|--|&&|\|\||==|!=|<=|>>>=|>>=|>=|<<=|<<|[-+*/%&|^!]=|\S)
    """,
    re.VERBOSE | re.DOTALL,
)

_KIND = {"ident": IDENT, "number": NUMBER, "string": STRING, "textblock": STRING,
         "open_string": STRING, "char": CHAR, "op": OP}


class Token(NamedTuple):
    kind: str
    text: str
    line: int


class LexResult(NamedTuple):
    tokens: list[Token]
    code_lines: list[bool]  # index 0 unused; code_lines[n] is line n
    problems: list[tuple[int, str]]  # (line, message) warnings

    @property
    def line_count(self) -> int:
        return len(self.code_lines) - 1


def tokenize(text: str) -> LexResult:
    """Split ``text`` into tokens, dropping whitespace and comments."""
    tokens = []
    problems = []
    nlines = text.count("\n") + (0 if text.endswith("\n") else 1)
    code = [False] * (nlines + 1)
    line = 1
    append = tokens.append
    for m in _TOKEN_RE.finditer(text):
        group = m.lastgroup
        if group == "ws":
            continue
        if group == "nl":
            line += 1
            continue
        value = m.group()
        if group == "lcomment":
            continue
        if group == "bcomment":
            line += value.count("\n")
            continue
        if group == "open_comment":
            problems.append((line, "unterminated block comment runs to end of file"))
            line += value.count("\n")
            continue
        if group == "open_string":
            problems.append((line, "unterminated string literal"))
        append(Token(_KIND[group], value, line))
        code[line] = True
        if group == "textblock":
            extra = value.count("\n")
            for k in range(line + 1, line + extra + 1):
                code[k] = True
            line += extra
    return LexResult(tokens, code, problems)


def strip_comments(raw_text: str) -> list[bool]:
    """Per-line has-code flags; element ``i`` describes line ``i + 1``.

    >>> strip_comments("int x = 1; // note\\n\\n/* c */")
    [True, False, False]
    """
    return tokenize(raw_text).code_lines[1:]
