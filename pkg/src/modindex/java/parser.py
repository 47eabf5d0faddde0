"""Tolerant structural parser for Java compilation units.

No grammar is enforced. The parser matches braces and parentheses, then
walks class bodies recognising member shapes: nested types, methods and
constructors, fields, enum constants and initializer blocks. Function bodies
are scanned for the raw facts LCOM4 needs (bare or ``this.``-qualified
identifier uses and calls, parameters, local declarations). Anonymous and
local classes become child declarations so the caller can decide whether
to fold them into their enclosing type.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .lexer import IDENT, LexResult, Token, tokenize


class ParseError(Exception):
    def __init__(self, line: int, message: str):
        super().__init__(message)
        self.line = line


KEYWORDS = frozenset("""
abstract assert boolean break byte case catch char class const continue default do
double else enum extends final finally float for goto if implements import instanceof
int interface long native new package private protected public return short static
strictfp super switch synchronized this throw throws transient try void volatile while
true false null var yield
""".split())

MODIFIERS = frozenset("""
public protected private static final abstract native synchronized transient
volatile strictfp default sealed non-sealed
""".split())

PRIMITIVES = frozenset("boolean byte char short int long float double void var".split())

# keywords after which "keyword ident" is not a declaration
_NOT_A_TYPE = KEYWORDS - PRIMITIVES - {"final"}


@dataclass
class Import:
    name: str
    line: int
    static: bool = False
    wildcard: bool = False


@dataclass
class FunctionDecl:
    name: str
    key: str
    is_constructor: bool
    line: int
    params: set[str] = field(default_factory=set)
    locals: set[str] = field(default_factory=set)
    # (identifier, reached through ``this.``)
    uses: set[tuple[str, bool]] = field(default_factory=set)
    calls: set[tuple[str, bool]] = field(default_factory=set)
    calls_this_constructor: bool = False


@dataclass(eq=False)
class TypeDecl:
    name: str | None  # None for anonymous classes
    kind: str         # class | interface | enum
    start_tok: int
    end_tok: int      # index of the closing brace
    start_line: int
    end_line: int
    parent: TypeDecl | None = None
    local: bool = False
    fields: list[str] = field(default_factory=list)
    functions: list[FunctionDecl] = field(default_factory=list)
    children: list[TypeDecl] = field(default_factory=list)

    @property
    def anonymous(self) -> bool:
        return self.name is None

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass
class CompilationUnit:
    package: str
    imports: list[Import]
    types: list[TypeDecl]
    tokens: list[Token]
    code_lines: list[bool]
    declaration_names: set[int]
    problems: list[tuple[int, str]]


def _match_pairs(tokens: list[Token]) -> dict[int, int]:
    """Map each bracket index to its partner; braces and ( [ use separate stacks."""
    match = {}
    braces, parens = [], []
    closer = {")": "(", "]": "["}
    for i, tok in enumerate(tokens):
        if tok.kind != "op":
            continue
        t = tok.text
        if t == "{":
            braces.append(i)
        elif t == "}":
            if not braces:
                raise ParseError(tok.line, "unbalanced braces: unexpected '}'")
            j = braces.pop()
            match[i], match[j] = j, i
        elif t in "([":
            parens.append(i)
        elif t in ")]":
            if not parens or tokens[parens[-1]].text != closer[t]:
                raise ParseError(tok.line, f"unbalanced brackets: unexpected {t!r}")
            j = parens.pop()
            match[i], match[j] = j, i
    if braces:
        raise ParseError(tokens[braces[-1]].line, "unbalanced braces: '{' never closed")
    if parens:
        raise ParseError(tokens[parens[-1]].line, "unbalanced brackets: never closed")
    return match


class _Parser:
    def __init__(self, lex: LexResult):
        self.lex = lex
        self.tok = lex.tokens
        self.text = [t.text for t in lex.tokens]
        self.n = len(self.tok)
        self.match = _match_pairs(self.tok)
        self.decl_names: set[int] = set()
        self.problems = list(lex.problems)

    # -- small helpers -------------------------------------------------
    def t(self, i: int) -> str:
        return self.text[i] if 0 <= i < self.n else ""

    def is_ident(self, i: int) -> bool:
        return 0 <= i < self.n and self.tok[i].kind == IDENT

    def skip_annotation(self, i: int) -> int:
        i += 1
        if self.is_ident(i):
            i += 1
            while self.t(i) == "." and self.is_ident(i + 1):
                i += 2
        if self.t(i) == "(":
            i = self.match[i] + 1
        return i

    def skip_angle(self, i: int) -> int:
        """``i`` is at '<'; return index after the matching '>'."""
        depth = 0
        while i < self.n:
            t = self.text[i]
            if t == "<":
                depth += 1
            elif t == ">":
                depth -= 1
                if depth == 0:
                    return i + 1
            elif t in ("(", "["):
                i = self.match[i]
            elif t in (";", "{", "}", "=", ")"):
                return i
            i += 1
        return i

    def skip_type(self, i: int) -> int:
        if not self.is_ident(i):
            return i
        i += 1
        while i < self.n:
            t = self.text[i]
            if t == "<":
                i = self.skip_angle(i)
            elif t == "." and self.is_ident(i + 1):
                i += 2
            elif t == "[" and self.t(i + 1) == "]":
                i += 2
            elif t == "...":
                i += 1
            elif t == "@":
                i = self.skip_annotation(i)
            else:
                break
        return i

    def type_keyword_at(self, i: int):
        """Return (kind, name index) if a type declaration keyword starts at ``i``."""
        t = self.t(i)
        if self.t(i - 1) == ".":
            return None
        if t in ("class", "interface", "enum") and self.is_ident(i + 1):
            return ("class" if t == "class" else t), i + 1
        if t == "@" and self.t(i + 1) == "interface" and self.is_ident(i + 2):
            return "interface", i + 2
        if t == "record" and self.is_ident(i + 1) and self.t(i + 2) in ("(", "<"):
            return "class", i + 1
        return None

    def end_of_statement(self, i: int, limit: int) -> int:
        """Index of the ';' ending the member starting at ``i`` (or ``limit``)."""
        while i < limit:
            t = self.text[i]
            if t == ";":
                return i
            if t in ("(", "[", "{"):
                i = self.match[i]
            i += 1
        return limit

    # -- compilation unit ------------------------------------------------
    def parse(self) -> CompilationUnit:
        i = 0
        package = ""
        imports = []
        types = []
        # package annotations
        j = i
        while self.t(j) == "@" and self.t(j + 1) != "interface":
            j = self.skip_annotation(j)
        if self.t(j) == "package":
            k = j + 1
            parts = []
            while self.is_ident(k):
                parts.append(self.text[k])
                if self.t(k + 1) != ".":
                    break
                k += 2
            package = ".".join(parts)
            i = self.end_of_statement(k, self.n) + 1
        while i < self.n:
            t = self.text[i]
            if t == ";":
                i += 1
                continue
            if t == "import":
                i = self.parse_import(i, imports)
                continue
            decl, nxt = self.parse_type_decl(i, None, self.n)
            if decl is not None:
                types.append(decl)
                i = nxt
                continue
            self.problems.append((self.tok[i].line, f"skipped unrecognised top-level text near {t!r}"))
            i = self.end_of_statement(i, self.n) + 1
        return CompilationUnit(package, imports, types, self.tok, self.lex.code_lines,
                               self.decl_names, self.problems)

    def parse_import(self, i: int, imports: list[Import]) -> int:
        line = self.tok[i].line
        k = i + 1
        static = self.t(k) == "static"
        if static:
            k += 1
        parts = []
        wildcard = False
        while k < self.n:
            if self.is_ident(k):
                parts.append(self.text[k])
            elif self.text[k] == "*":
                wildcard = True
            elif self.text[k] != ".":
                break
            k += 1
        if parts:
            imports.append(Import(".".join(parts), line, static, wildcard))
        return self.end_of_statement(k, self.n) + 1

    # -- declarations --------------------------------------------------
    def parse_type_decl(self, i: int, parent: TypeDecl | None, limit: int, local=False):
        """Parse a type declaration whose modifiers start at ``i``."""
        j = i
        found = None
        while j < limit:
            t = self.text[j]
            found = self.type_keyword_at(j)
            if found:
                break
            if t == "@":
                j = self.skip_annotation(j)
            elif self.is_ident(j) and (t in MODIFIERS or t == "non"):
                j += 1
            elif t == "-" and self.t(j - 1) == "non":
                j += 1
            else:
                return None, i
        if not found:
            return None, i
        kind, name_idx = found
        self.decl_names.add(name_idx)
        k = name_idx + 1
        components = []
        if self.t(k) == "<":
            k = self.skip_angle(k)
        if self.t(k) == "(":  # record header
            components = self.parse_params(k + 1, self.match[k])
            for _, idx in components:
                self.decl_names.add(idx)
            k = self.match[k] + 1
        while k < limit and self.text[k] not in ("{", ";"):
            if self.text[k] in ("(", "["):
                k = self.match[k]
            k += 1
        if self.t(k) != "{" or k >= limit:
            return None, i
        close = self.match[k]
        decl = TypeDecl(self.text[name_idx], kind, i, close, self.tok[i].line,
                        self.tok[close].line, parent=parent, local=local)
        decl.fields.extend(self.text[idx] for _, idx in components)
        self.parse_body(k + 1, close, decl, enum=self.text[name_idx - 1] == "enum")
        return decl, close + 1

    def parse_body(self, s: int, e: int, decl: TypeDecl, enum: bool = False):
        i = s
        if enum:
            i = self.parse_enum_constants(s, e, decl)
        while i < e:
            t = self.text[i]
            if t == ";":
                i += 1
            elif t == "{":
                self.scan_block(i + 1, self.match[i], decl)
                i = self.match[i] + 1
            elif t == "static" and self.t(i + 1) == "{":
                self.scan_block(i + 2, self.match[i + 1], decl)
                i = self.match[i + 1] + 1
            else:
                i = self.parse_member(i, e, decl)

    def parse_enum_constants(self, s: int, e: int, decl: TypeDecl) -> int:
        i = s
        while i < e:
            t = self.text[i]
            if t == ";":
                return i + 1
            if t == ",":
                i += 1
            elif t == "@":
                i = self.skip_annotation(i)
            elif self.is_ident(i):
                decl.fields.append(t)
                self.decl_names.add(i)
                i += 1
                if self.t(i) == "(":
                    self.scan_block(i + 1, self.match[i], decl)
                    i = self.match[i] + 1
                if self.t(i) == "{":
                    close = self.match[i]
                    anon = TypeDecl(None, "class", i, close, self.tok[i].line,
                                    self.tok[close].line, parent=decl)
                    self.parse_body(i + 1, close, anon)
                    decl.children.append(anon)
                    i = close + 1
            else:
                return i
        return e

    def parse_member(self, i: int, e: int, decl: TypeDecl) -> int:
        j = i
        while j < e:
            t = self.text[j]
            if t == "@" and self.t(j + 1) != "interface":
                j = self.skip_annotation(j)
                continue
            if self.type_keyword_at(j):
                nested, nxt = self.parse_type_decl(i, decl, e)
                if nested is not None:
                    decl.children.append(nested)
                    return nxt
                break
            if t == "(":
                if j > i and self.is_ident(j - 1):
                    return self.parse_function(i, j, e, decl)
                break
            if t in ("=", ";"):
                return self.parse_field(i, e, decl)
            if t == "{":
                self.scan_block(j + 1, self.match[j], decl)
                return self.match[j] + 1
            if t == "[":
                j = self.match[j]
            j += 1
        end = self.end_of_statement(i, e)
        self.problems.append((self.tok[i].line, f"skipped unrecognised member near {self.text[i]!r}"))
        return end + 1

    def parse_params(self, s: int, e: int) -> list[tuple[str, int]]:
        """Split a parameter list; returns (type text, name index) pairs."""
        out = []
        segments = []
        start, depth, i = s, 0, s
        while i < e:
            t = self.text[i]
            if t in ("(", "["):
                i = self.match[i]
            elif t == "<":
                depth += 1
            elif t == ">":
                depth -= 1
            elif t == "," and depth <= 0:
                segments.append((start, i))
                start = i + 1
            i += 1
        if start < e:
            segments.append((start, e))
        for a, b in segments:
            k = a
            while k < b and (self.text[k] == "@" or self.text[k] == "final"):
                k = self.skip_annotation(k) if self.text[k] == "@" else k + 1
            name = b - 1
            while name > k and self.text[name] in ("[", "]"):
                name -= 1
            if name <= k or not self.is_ident(name):
                continue
            type_text = "".join(self.text[k:name]) + "".join(self.text[name + 1:b])
            out.append((type_text, name))
        return out

    def parse_function(self, i: int, p: int, e: int, decl: TypeDecl) -> int:
        name_idx = p - 1
        name = self.text[name_idx]
        self.decl_names.add(name_idx)
        k = i
        while k < name_idx:
            t = self.text[k]
            if t == "@":
                k = self.skip_annotation(k)
            elif t in MODIFIERS:
                k += 1
            elif t == "<":
                k = self.skip_angle(k)
            else:
                break
        is_ctor = k == name_idx and name == decl.name
        close = self.match[p]
        params = self.parse_params(p + 1, close)
        for _, idx in params:
            self.decl_names.add(idx)
        key = f"{name}({','.join(t for t, _ in params)})"
        fn = FunctionDecl(name, key, is_ctor, self.tok[name_idx].line,
                          params={self.text[idx] for _, idx in params})
        j = close + 1
        in_default = False
        while j < e:
            t = self.text[j]
            if t == ";":
                decl.functions.append(fn)
                return j + 1
            if t == "default":
                in_default = True
            elif t == "{" and not in_default:
                body_end = self.match[j]
                self.analyze_body(fn, j + 1, body_end, decl)
                decl.functions.append(fn)
                return body_end + 1
            if t in ("(", "[", "{"):
                j = self.match[j]
            j += 1
        decl.functions.append(fn)
        return e

    def parse_field(self, i: int, e: int, decl: TypeDecl) -> int:
        end = self.end_of_statement(i, e)
        k = i
        while k < end:
            t = self.text[k]
            if t == "@":
                k = self.skip_annotation(k)
            elif t in MODIFIERS:
                k += 1
            else:
                break
        k = self.skip_type(k)
        while k < end and self.is_ident(k):
            decl.fields.append(self.text[k])
            self.decl_names.add(k)
            k += 1
            while self.t(k) in ("[", "]"):
                k += 1
            if self.t(k) == "=":
                init = k + 1
                k = init
                while k < end:
                    t = self.text[k]
                    if t in ("(", "[", "{"):
                        k = self.match[k]
                    elif t == "," and self.is_ident(k + 1) and self.t(k + 2) in ("=", ",", ";", "["):
                        break
                    k += 1
                self.scan_block(init, k, decl)
            if self.t(k) == ",":
                k += 1
            else:
                break
        return end + 1

    # -- bodies --------------------------------------------------------
    def scan_block(self, s: int, e: int, decl: TypeDecl) -> list[tuple[int, int]]:
        """Find anonymous and local classes in ``[s, e)``; return their token ranges."""
        excluded = []
        i = s
        while i < e:
            t = self.text[i]
            if t == "new" and self.is_ident(i + 1):
                k = self.skip_type(i + 1)
                if self.t(k) == "(":
                    close = self.match[k]
                    if self.t(close + 1) == "{" and close + 1 < e:
                        b = close + 1
                        bend = self.match[b]
                        anon = TypeDecl(None, "class", b, bend, self.tok[b].line,
                                        self.tok[bend].line, parent=decl)
                        self.parse_body(b + 1, bend, anon)
                        decl.children.append(anon)
                        excluded.append((b, bend))
                        i = bend + 1
                        continue
                i += 1
                continue
            if self.type_keyword_at(i):
                local, nxt = self.parse_type_decl(i, decl, e, local=True)
                if local is not None:
                    decl.children.append(local)
                    excluded.append((i, nxt - 1))
                    i = nxt
                    continue
            i += 1
        return excluded

    def _closes_generic(self, i: int) -> bool:
        """True if the '>' at ``i`` closes a type argument list."""
        depth = 0
        while i >= 0:
            t = self.text[i]
            if t == ">":
                depth += 1
            elif t == "<":
                depth -= 1
                if depth == 0:
                    return self.is_ident(i - 1)
            elif not (self.tok[i].kind == IDENT or t in (",", ".", "?", "[", "]", "&")):
                return False
            i -= 1
        return False

    def _declares_local(self, k: int) -> bool:
        nxt = self.t(k + 1)
        if nxt not in ("=", ";", ",", ":", ")"):
            return False
        prev = self.t(k - 1)
        if self.is_ident(k - 1):
            return prev not in _NOT_A_TYPE
        if prev == "]":
            return self.t(k - 2) == "["
        if prev == ">" and nxt != ")":
            return self._closes_generic(k - 1)
        return False

    def analyze_body(self, fn: FunctionDecl, s: int, e: int, decl: TypeDecl):
        excluded = self.scan_block(s, e, decl)
        ranges = []
        start = s
        for a, b in excluded:
            ranges.append((start, a))
            start = b + 1
        ranges.append((start, e))
        text, tok = self.text, self.tok
        for a, b in ranges:
            for k in range(a, b):
                if tok[k].kind != IDENT:
                    if text[k] == "->" and text[k - 1] == ")":
                        self._lambda_params(fn, k - 1)
                    continue
                name = text[k]
                prev, nxt = text[k - 1], self.t(k + 1)
                if name == "this":
                    if nxt == "(" and prev != ".":
                        fn.calls_this_constructor = True
                    continue
                if name in KEYWORDS or prev == "new":
                    continue
                via_this = False
                if prev in (".", "::"):
                    if text[k - 2] != "this":
                        continue
                    via_this = True
                if nxt == "->" and prev not in ("case", ","):
                    fn.locals.add(name)
                    continue
                if nxt == "(" or prev == "::":
                    fn.calls.add((name, via_this))
                else:
                    fn.uses.add((name, via_this))
                    if not via_this and self._declares_local(k):
                        fn.locals.add(name)

    def _lambda_params(self, fn: FunctionDecl, close: int):
        open_ = self.match.get(close)
        if open_ is None:
            return
        for k in range(open_ + 1, close):
            if self.is_ident(k) and self.text[k + 1] in (",", ")"):
                fn.locals.add(self.text[k])


def parse_tokens(lex: LexResult) -> CompilationUnit:
    """Parse an already tokenized compilation unit.

    Raises :class:`ParseError` when braces or brackets cannot be matched.
    """
    return _Parser(lex).parse()


def parse_source(text: str) -> CompilationUnit:
    return parse_tokens(tokenize(text))
