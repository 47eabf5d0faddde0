"""Build a :class:`~modindex.model.Project` from a tree of ``.java`` files.

Files are tokenized and parsed independently (optionally on a thread pool),
then merged in path order: declarations are assigned to the classes that own
them, NCLOC is attributed per class span, and identifier chains are resolved
to project classes through explicit imports, the enclosing package, and
fully qualified usage.
"""
from __future__ import annotations

import logging
import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fnmatch import fnmatchcase
from pathlib import Path

from ..config import ExtractionConfig
from ..errors import NothingToAnalyze, UsageError
from ..model import ClassNode, Diagnostic, FunctionNode, PackageNode, Project, validate_model
from .lexer import IDENT, LexResult, tokenize
from .parser import KEYWORDS, CompilationUnit, ParseError, TypeDecl, parse_tokens

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SourceFile:
    path: str  # relative to the analysis root, '/'-separated
    package_name: str
    raw_text: str
    logical_lines: tuple[tuple[int, bool], ...]

    @classmethod
    def from_text(cls, path: str, raw_text: str, lex: LexResult | None = None) -> SourceFile:
        lex = lex or tokenize(raw_text)
        package = ""
        toks = lex.tokens
        for i, tok in enumerate(toks):
            if tok.text == "package" and tok.kind == IDENT:
                parts = []
                k = i + 1
                while k < len(toks) and toks[k].kind == IDENT:
                    parts.append(toks[k].text)
                    if k + 1 >= len(toks) or toks[k + 1].text != ".":
                        break
                    k += 2
                package = ".".join(parts)
                break
            if tok.text != "@" and tok.kind != IDENT:
                break
        flags = tuple((n, lex.code_lines[n]) for n in range(1, len(lex.code_lines)))
        return cls(path, package, raw_text, flags)


def count_ncloc(file: SourceFile, span: tuple[int, int]) -> int:
    """Number of code lines in the inclusive 1-based line range ``span``."""
    start, end = span
    if not (1 <= start <= end <= len(file.logical_lines)):
        raise ValueError(f"span {span} outside {file.path} (1..{len(file.logical_lines)})")
    return sum(1 for _, code in file.logical_lines[start - 1:end] if code)


def parse_compilation_unit(file: SourceFile) -> CompilationUnit:
    """Declarations of one file. Raises ``ParseError`` on unbalanced braces."""
    return parse_tokens(tokenize(file.raw_text))


# -- file discovery ----------------------------------------------------

def _glob_match(rel: str, pattern: str) -> bool:
    if fnmatchcase(rel, pattern):
        return True
    while pattern.startswith("**/"):
        pattern = pattern[3:]
        if fnmatchcase(rel, pattern):
            return True
    return False


def _scan(root: Path, config: ExtractionConfig) -> tuple[list[str], list[str]]:
    found, excluded = [], []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for name in filenames:
            rel = Path(dirpath, name).relative_to(root).as_posix()
            if not any(_glob_match(rel, p) for p in config.include_globs):
                continue
            if any(_glob_match(rel, p) for p in config.exclude_globs):
                excluded.append(rel)
            else:
                found.append(rel)
    return sorted(found), sorted(excluded)


def discover_files(root: Path, config: ExtractionConfig) -> list[str]:
    """Relative paths of the files to analyze, sorted."""
    return _scan(root, config)[0]


def _excluded_classes(root: Path, excluded: list[str]) -> set[str]:
    """Names of the primary types in excluded files (package + file stem)."""
    names = set()
    for rel in excluded:
        text = (root / rel).read_bytes().decode("utf-8", errors="replace")
        package = SourceFile.from_text(rel, text).package_name
        stem = Path(rel).stem
        names.add(f"{package}.{stem}" if package else stem)
    return names


def default_workers() -> int:
    raw = os.environ.get("MODINDEX_THREADS", "").strip()
    try:
        n = int(raw) if raw else 0
    except ValueError:
        log.warning("ignoring non-integer MODINDEX_THREADS=%r", raw)
        n = 0
    return n if n > 0 else min(32, os.cpu_count() or 1)


@dataclass
class _Parsed:
    source: SourceFile
    unit: CompilationUnit | None
    diagnostics: list[Diagnostic]


def _load(root: Path, rel: str) -> _Parsed:
    diags = []
    data = (root / rel).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        text = data.decode("latin-1")
        diags.append(Diagnostic("warning", rel, 0, "not valid UTF-8; decoded as Latin-1"))
    if text.startswith("\ufeff"):
        text = text[1:]
    lex = tokenize(text)
    source = SourceFile.from_text(rel, text, lex)
    try:
        unit = parse_tokens(lex)
    except ParseError as exc:
        diags.append(Diagnostic("error", rel, exc.line, f"{exc}; file skipped"))
        return _Parsed(source, None, diags)
    diags.extend(Diagnostic("warning", rel, line, msg) for line, msg in unit.problems)
    return _Parsed(source, unit, diags)


# -- merge -------------------------------------------------------------

@dataclass(eq=False)
class _Owner:
    """A declaration that becomes a ClassNode, plus everything folded into it."""
    qualified_name: str
    decl: TypeDecl
    parsed: _Parsed
    members: list[TypeDecl]          # decls folded into this class, pre-order
    prefix: dict[int, str]           # id(decl) -> field/function name prefix
    split_off: list[TypeDecl]        # descendant decls that are their own class


def _collect_owners(parsed: _Parsed, config: ExtractionConfig) -> list[_Owner]:
    unit = parsed.unit
    owners = []

    def visit(decl: TypeDecl, owner: _Owner | None, qn: str, prefix: str):
        if owner is None or (decl.name is not None and not config.fold_nested_classes):
            new = _Owner(qn, decl, parsed, [], {}, [])
            if owner is not None:
                owner.split_off.append(decl)
            owners.append(new)
            owner, prefix = new, ""
        owner.members.append(decl)
        owner.prefix[id(decl)] = prefix
        anon = 0
        for child in decl.children:
            if child.name is None:
                anon += 1
                child_prefix = f"{prefix}${anon}."
            else:
                child_prefix = f"{prefix}{child.name}."
            visit(child, owner, f"{owner.qualified_name}.{child.name}", child_prefix)

    for decl in unit.types:
        qn = f"{unit.package}.{decl.name}" if unit.package else decl.name
        visit(decl, None, qn, "")
    return owners


class _Resolver:
    def __init__(self, project_classes: set[str], packages: set[str], excluded: set[str]):
        self.classes = project_classes
        self.packages = packages
        self.excluded = excluded - project_classes

    def file_scope(self, parsed: _Parsed, owners: list[_Owner], config: ExtractionConfig,
                   diags: list[Diagnostic]):
        unit = parsed.unit
        rel = parsed.source.path
        single = {}
        wildcard = []
        static_members = {}
        for imp in unit.imports:
            if imp.static:
                # a used static member stands for a use of its class
                owner_name, _, member = imp.name.rpartition(".")
                if not imp.wildcard and owner_name in self.classes:
                    static_members[member] = owner_name
                continue
            if imp.wildcard:
                if imp.name in self.packages:
                    wildcard.append(imp.name)
                continue
            if imp.name in self.classes:
                single[imp.name.rsplit(".", 1)[-1]] = imp.name
            elif imp.name in self.excluded:
                diags.append(Diagnostic(
                    "warning", rel, imp.line,
                    f"import {imp.name} names an excluded class; references to it are dropped"))
            elif imp.name.rsplit(".", 1)[0] in self.packages:
                diags.append(Diagnostic(
                    "warning", rel, imp.line,
                    f"import {imp.name} names no analyzed class; references to it are dropped"))
        # nested type names shadow imports; folded ones resolve to nothing
        local = {}
        for owner in owners:
            for decl in owner.members:
                if decl.name is not None and decl is not owner.decl:
                    local.setdefault(decl.name, None)
        for owner in owners:
            if owner.decl.parent is not None:
                local[owner.decl.name] = owner.qualified_name
        return _FileScope(self, unit.package, single, wildcard, local, static_members, rel)


class _FileScope:
    def __init__(self, resolver, package, single, wildcard, local, static_members, path):
        self.classes = resolver.classes
        self.excluded = resolver.excluded
        self.package = package
        self.single = single
        self.wildcard = wildcard
        self.local = local
        self.static_members = static_members
        self.path = path
        self.cache = {}

    def simple(self, name: str, line: int, diags: list[Diagnostic]) -> str | None:
        if name in self.cache:
            return self.cache[name]
        result = None
        if name in self.local:
            result = self.local[name]
        elif name in self.single:
            result = self.single[name]
        else:
            same = f"{self.package}.{name}" if self.package else name
            if same in self.classes:
                result = same
            else:
                hits = [f"{p}.{name}" for p in self.wildcard if f"{p}.{name}" in self.classes]
                if len(hits) == 1:
                    result = hits[0]
                elif len(hits) > 1:
                    diags.append(Diagnostic(
                        "info", self.path, line,
                        f"{name} is ambiguous between wildcard imports "
                        f"{', '.join(sorted(hits))}; reference dropped"))
                else:
                    result = self.static_members.get(name)
                    if result is None and same in self.excluded:
                        diags.append(Diagnostic(
                            "warning", self.path, line,
                            f"{same} is excluded from analysis; references to it are dropped"))
        self.cache[name] = result
        return result


def _owned_ranges(owner: _Owner) -> list[tuple[int, int]]:
    """Token index ranges (inclusive) belonging to ``owner`` itself."""
    holes = sorted((d.start_tok, d.end_tok) for d in owner.split_off)
    ranges = []
    start = owner.decl.start_tok
    for a, b in holes:
        if a > start:
            ranges.append((start, a - 1))
        start = max(start, b + 1)
    if start <= owner.decl.end_tok:
        ranges.append((start, owner.decl.end_tok))
    return ranges


def _references(owner: _Owner, scope: _FileScope, diags: list[Diagnostic]) -> set[str]:
    unit = owner.parsed.unit
    toks = unit.tokens
    skip = unit.declaration_names
    classes = scope.classes
    refs = set()
    n = len(toks)
    for a, b in _owned_ranges(owner):
        for k in range(a, b + 1):
            tok = toks[k]
            if tok.kind != IDENT or k in skip or tok.text in KEYWORDS:
                continue
            if k > 0 and toks[k - 1].text in (".", "::"):
                continue
            parts = [tok.text]
            j = k
            while j + 2 < n and toks[j + 1].text == "." and toks[j + 2].kind == IDENT:
                parts.append(toks[j + 2].text)
                j += 2
            target = None
            for length in range(len(parts), 1, -1):
                name = ".".join(parts[:length])
                if name in classes:
                    target = name
                    break
            if target is None:
                target = scope.simple(parts[0], tok.line, diags)
                if target is not None:
                    for part in parts[1:]:
                        if f"{target}.{part}" not in classes:
                            break
                        target = f"{target}.{part}"
            if target is not None:
                refs.add(target)
    return refs


def _ncloc(owner: _Owner) -> int:
    code = owner.parsed.unit.code_lines
    holes = set()
    for d in owner.split_off:
        holes.update(range(d.start_line, d.end_line + 1))
    return sum(1 for line in range(owner.decl.start_line, owner.decl.end_line + 1)
               if code[line] and line not in holes)


def _functions(owner: _Owner, config: ExtractionConfig) -> tuple[list[FunctionNode], list[str]]:
    members = owner.members
    member_ids = {id(d) for d in members}
    fields_of = {id(d): set(d.fields) for d in members}
    keys_of = {}  # id(decl) -> {method name: [qualified keys]}
    ctor_keys = {}
    all_fields = []
    seen_fields = set()
    for d in members:
        prefix = owner.prefix[id(d)]
        for name in d.fields:
            if prefix + name not in seen_fields:
                seen_fields.add(prefix + name)
                all_fields.append(prefix + name)
        by_name = defaultdict(list)
        ctors = []
        for fn in d.functions:
            if fn.is_constructor and not config.count_constructors_as_functions:
                continue
            by_name[fn.name].append(prefix + fn.key)
            if fn.is_constructor:
                ctors.append(prefix + fn.key)
        keys_of[id(d)] = by_name
        ctor_keys[id(d)] = ctors

    def chain(d: TypeDecl):
        while d is not None and id(d) in member_ids:
            yield d
            d = d.parent

    out = []
    used_keys = set()
    for d in members:
        prefix = owner.prefix[id(d)]
        for fn in d.functions:
            if fn.is_constructor and not config.count_constructors_as_functions:
                continue
            key = prefix + fn.key
            if key in used_keys:
                n = 2
                while f"{key}#{n}" in used_keys:
                    n += 1
                key = f"{key}#{n}"
            used_keys.add(key)
            hidden = fn.params | fn.locals
            accessed = set()
            for name, via_this in fn.uses:
                if name in hidden and not via_this:
                    continue
                for scope in chain(d):
                    if name in fields_of[id(scope)]:
                        accessed.add(owner.prefix[id(scope)] + name)
                        break
            called = set()
            for name, _ in fn.calls:
                for scope in chain(d):
                    targets = keys_of[id(scope)].get(name)
                    if targets:
                        called.update(targets)
                        break
            if fn.calls_this_constructor:
                called.update(ctor_keys[id(d)])
            called.discard(key)
            out.append(FunctionNode(key, frozenset(accessed), frozenset(called), fn.is_constructor))
    # keys rewritten with '#n' are never call targets; keep the call sets consistent
    keyset = {f.key for f in out}
    out = [f if f.called_functions <= keyset else
           FunctionNode(f.key, f.accessed_fields, f.called_functions & keyset, f.is_constructor)
           for f in out]
    return out, all_fields


def extract_project(root, config: ExtractionConfig | None = None, *, workers: int | None = None,
                    name: str | None = None, version_label: str = "") -> Project:
    """Tokenize, parse and resolve every matching source file under ``root``.

    Per-file problems become diagnostics on the returned project; only a
    missing root or an input with nothing parseable raises.
    """
    config = config or ExtractionConfig()
    root = Path(root)
    if not root.is_dir():
        raise UsageError(f"source root not found or not a directory: {root}")
    files, excluded = _scan(root, config)
    if not files:
        raise NothingToAnalyze(f"nothing to analyze: no matching source files under {root}")

    workers = workers or default_workers()
    if workers > 1 and len(files) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parsed = list(pool.map(lambda rel: _load(root, rel), files))
    else:
        parsed = [_load(root, rel) for rel in files]

    diags: list[Diagnostic] = []
    owners: list[_Owner] = []
    by_file: dict[str, list[_Owner]] = {}
    taken: dict[str, str] = {}
    for p in parsed:
        diags.extend(p.diagnostics)
        if p.unit is None:
            continue
        kept = []
        dropped: set[int] = set()
        for owner in _collect_owners(p, config):
            if id(owner.decl.parent) in dropped:
                dropped.update(id(d) for d in owner.members)
                continue
            if owner.qualified_name in taken:
                diags.append(Diagnostic(
                    "error", p.source.path, owner.decl.start_line,
                    f"duplicate class {owner.qualified_name} (first declared in "
                    f"{taken[owner.qualified_name]}); this declaration is ignored"))
                dropped.update(id(d) for d in owner.members)
                continue
            taken[owner.qualified_name] = p.source.path
            kept.append(owner)
        by_file[p.source.path] = kept
        owners.extend(kept)
    if not owners:
        raise NothingToAnalyze(f"nothing to analyze: no classes found under {root}")

    classes = {o.qualified_name for o in owners}
    package_names = {p.unit.package for p in parsed if p.unit is not None}
    resolver = _Resolver(classes, package_names, _excluded_classes(root, excluded))
    nodes: dict[str, list[ClassNode]] = defaultdict(list)
    for p in parsed:
        if p.unit is None:
            continue
        file_owners = by_file[p.source.path]
        scope = resolver.file_scope(p, file_owners, config, diags)
        for owner in file_owners:
            refs = _references(owner, scope, diags)
            if config.self_dependency_mode == "always":
                refs.add(owner.qualified_name)
            functions, fields = _functions(owner, config)
            nodes[p.unit.package].append(ClassNode(
                owner.qualified_name, owner.decl.kind, _ncloc(owner), tuple(functions),
                tuple(fields), frozenset(refs), p.source.path, owner.decl.start_line))

    packages = tuple(
        PackageNode(pkg, tuple(sorted(cls, key=lambda c: c.qualified_name)))
        for pkg, cls in sorted(nodes.items()))
    project = Project(name or root.resolve().name, version_label, packages, tuple(diags))
    problems = validate_model(project)
    if problems:  # extraction must never build an inconsistent model
        raise AssertionError("; ".join(str(d) for d in problems))
    return project
