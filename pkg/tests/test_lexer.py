from conftest import FIXTURES
from hypothesis import given, settings, strategies as st

from modindex.java.lexer import strip_comments, tokenize


def _closes(text: str, i: int) -> bool:
    """An unclosed text block is read as ordinary quotes, like the lexer does."""
    while i < len(text):
        if text[i] == "\\":
            i += 2
        elif text.startswith('"""', i):
            return True
        else:
            i += 1
    return False


def oracle_code_lines(text: str) -> list[bool]:
    """Character state machine, written independently of the regex lexer."""
    lines = text.split("\n")
    if text.endswith("\n"):
        lines.pop()
    flags = [False] * len(lines)
    state = "code"
    line = 0
    i = 0
    while i < len(text):
        ch = text[i]
        nxt = text[i + 1] if i + 1 < len(text) else ""
        if ch == "\n":
            line += 1
            if state in ("line_comment", "string", "char"):
                state = "code"  # plain literals cannot span lines
            elif state == "text_block":
                flags[line] = True  # a literal spanning a blank line still occupies it
            i += 1
            continue
        if state == "code":
            if ch == "/" and nxt == "/":
                state, i = "line_comment", i + 2
                continue
            if ch == "/" and nxt == "*":
                state, i = "block_comment", i + 2
                continue
            if text.startswith('"""', i) and _closes(text, i + 3):
                state, i = "text_block", i + 3
                flags[line] = True
                continue
            if ch == '"':
                state = "string"
            elif ch == "'":
                state = "char"
            if not ch.isspace():
                flags[line] = True
            i += 1
        elif state == "block_comment":
            if ch == "*" and nxt == "/":
                state, i = "code", i + 2
            else:
                i += 1
        elif state == "line_comment":
            i += 1
        elif state in ("string", "char"):
            flags[line] = True
            if ch == "\\":
                i += 2
                continue
            if (state == "string" and ch == '"') or (state == "char" and ch == "'"):
                state = "code"
            i += 1
        elif state == "text_block":
            flags[line] = True
            if ch == "\\":
                i += 2
                continue
            if text.startswith('"""', i):
                state, i = "code", i + 3
            else:
                i += 1
    return flags


def test_trailing_comment_ignored():
    assert strip_comments("int x = 1; // note") == [True]


def test_block_comment_then_brace():
    assert sum(strip_comments("/* one\n two\n three */\n}\n")) == 1


def test_comment_marker_inside_string():
    assert strip_comments('String s = "/* not a comment */";') == [True]


def test_tricky_fixture_matches_oracle():
    text = (FIXTURES / "lexer" / "Tricky.java").read_text()
    flags = strip_comments(text)
    assert len(flags) == 20
    assert flags == oracle_code_lines(text)
    # hand count: blank lines 2, 10; comment-only 3-5, 11, 16
    assert sum(flags) == 13


def test_tokens_skip_comments_and_keep_lines():
    lex = tokenize('a /* x */ b\n// y\n"s" c')
    assert [(t.text, t.line) for t in lex.tokens] == [("a", 1), ("b", 1), ('"s"', 3), ("c", 3)]
    assert not lex.problems


def test_unterminated_block_comment_is_reported():
    lex = tokenize("int a;\n/* never closed\n")
    assert lex.problems
    assert lex.code_lines[1:] == [True, False]


def test_generic_close_is_split():
    texts = [t.text for t in tokenize("List<List<String>> x; y >>= 2;").tokens]
    assert texts.count(">") == 2
    assert ">>=" in texts


java_piece = st.sampled_from([
    "int a = 1;", "// c", "/* b */", "/*", "*/", '"s"', '"/*"', "'x'", "'\\''", '"a\\"b"',
    "x", " ", "\n", "{", "}", "//", "/", "*", '"""\n t\n"""',
])


@settings(max_examples=300, deadline=None)
@given(st.lists(java_piece, max_size=30))
def test_random_snippets_match_oracle(pieces):
    text = "".join(pieces)
    expected = oracle_code_lines(text)
    assert strip_comments(text) == expected
