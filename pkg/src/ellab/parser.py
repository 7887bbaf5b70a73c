"""Parser for the line-oriented TBox and ABox text formats.

Grammar (UTF-8; ``#`` starts a comment to end of line; blank lines ignored)::

    line    := "ci:" concept ("<=" | "==") concept | "ri:" IDENT "<=" IDENT
    concept := term { "&" term }
    term    := "top" | IDENT | "some" "(" IDENT "," concept ")" | "(" concept ")"

``C == D`` is shorthand for the two inclusions ``C <= D`` and ``D <= C``.
ABox files contain one assertion per line: ``A(a)`` or ``r(a, b)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    ABox,
    Assertion,
    Axiom,
    CI,
    ConceptAssertion,
    ConceptExpr,
    Conj,
    Exists,
    Name,
    RESERVED_WORDS,
    RI,
    RoleAssertion,
    TBox,
    TOP,
    canonicalize,
)


class ParseError(ValueError):
    """Syntax error with 1-based line and column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|<=|==|[(),&]|\S")


@dataclass
class _Token:
    text: str
    line: int
    column: int


def _tokenize(text: str, line_no: int, col_offset: int = 0) -> list[_Token]:
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        tokens.append(_Token(m.group(), line_no, col_offset + m.start() + 1))
    return tokens


class _ConceptParser:
    def __init__(self, tokens: list[_Token], line_no: int, line_len: int):
        self.tokens = tokens
        self.pos = 0
        self.line_no = line_no
        self.line_len = line_len

    def _error(self, message: str) -> ParseError:
        if self.pos < len(self.tokens):
            tok = self.tokens[self.pos]
            return ParseError(message, tok.line, tok.column)
        return ParseError(message, self.line_no, self.line_len + 1)

    def peek(self) -> str | None:
        return self.tokens[self.pos].text if self.pos < len(self.tokens) else None

    def take(self) -> _Token:
        if self.pos >= len(self.tokens):
            raise self._error("unexpected end of line")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.take()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, got {tok.text!r}", tok.line, tok.column)
        return tok

    def identifier(self, what: str = "an identifier") -> str:
        tok = self.take()
        if tok.text in RESERVED_WORDS:
            raise ParseError(
                f"reserved word {tok.text!r} cannot be used as {what}",
                tok.line,
                tok.column,
            )
        if not re.match(r"[A-Za-z_][A-Za-z0-9_]*\Z", tok.text):
            raise ParseError(f"expected {what}, got {tok.text!r}", tok.line, tok.column)
        return tok.text

    def concept(self) -> ConceptExpr:
        parts = [self.term()]
        while self.peek() == "&":
            self.take()
            parts.append(self.term())
        if len(parts) == 1:
            return parts[0]
        return Conj(tuple(parts))

    def term(self) -> ConceptExpr:
        tok = self.take()
        if tok.text == "top":
            return TOP
        if tok.text == "some":
            if self.peek() != "(":
                raise ParseError(
                    "reserved word 'some' cannot be used as a concept name",
                    tok.line,
                    tok.column,
                )
            self.expect("(")
            role = self.identifier("a role name")
            self.expect(",")
            filler = self.concept()
            self.expect(")")
            return Exists(role, filler)
        if tok.text == "(":
            inner = self.concept()
            self.expect(")")
            return inner
        if tok.text in RESERVED_WORDS:
            raise ParseError(
                f"reserved word {tok.text!r} cannot be used as a concept name",
                tok.line,
                tok.column,
            )
        if not re.match(r"[A-Za-z_][A-Za-z0-9_]*\Z", tok.text):
            raise ParseError(f"unexpected token {tok.text!r}", tok.line, tok.column)
        return Name(tok.text)

    def end(self) -> None:
        if self.pos < len(self.tokens):
            tok = self.tokens[self.pos]
            raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.column)


def _strip_comment(line: str) -> str:
    idx = line.find("#")
    return line if idx < 0 else line[:idx]


def parse_concept(text: str, line_no: int = 1, col_offset: int = 0) -> ConceptExpr:
    """Parse a single concept expression; returns the canonical form."""
    p = _ConceptParser(_tokenize(text, line_no, col_offset), line_no, col_offset + len(text))
    c = p.concept()
    p.end()
    return canonicalize(c)


def parse_axiom_line(line: str, line_no: int = 1) -> list[Axiom]:
    """Parse one ``ci:``/``ri:`` line; ``==`` yields both inclusions."""
    stripped = _strip_comment(line)
    m = re.match(r"\s*(ci|ri)\s*:", stripped)
    if not m:
        raise ParseError(
            "expected a line starting with 'ci:' or 'ri:'",
            line_no,
            len(stripped) - len(stripped.lstrip()) + 1,
        )
    kind = m.group(1)
    rest = stripped[m.end():]
    tokens = _tokenize(rest, line_no, m.end())
    parser = _ConceptParser(tokens, line_no, len(stripped))
    if kind == "ri":
        lhs = parser.identifier("role name")
        parser.expect("<=")
        rhs = parser.identifier("role name")
        parser.end()
        return [RI(lhs, rhs)]
    lhs = parser.concept()
    op = parser.take()
    if op.text not in ("<=", "=="):
        raise ParseError(f"expected '<=' or '==', got {op.text!r}", op.line, op.column)
    rhs = parser.concept()
    parser.end()
    lhs_c, rhs_c = canonicalize(lhs), canonicalize(rhs)
    if op.text == "==":
        return [CI(lhs_c, rhs_c), CI(rhs_c, lhs_c)]
    return [CI(lhs_c, rhs_c)]


def parse_tbox(text: str) -> TBox:
    """Parse TBox text into its canonical axiom set."""
    axioms: list[Axiom] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = _strip_comment(line)
        if not stripped.strip():
            continue
        axioms.extend(parse_axiom_line(line, line_no))
    return TBox(axioms)


_ASSERTION_RE = re.compile(
    r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*\(\s*([A-Za-z_][A-Za-z0-9_]*)"
    r"\s*(?:,\s*([A-Za-z_][A-Za-z0-9_]*)\s*)?\)\s*\Z"
)


def parse_assertion(line: str, line_no: int = 1) -> Assertion:
    stripped = _strip_comment(line)
    m = _ASSERTION_RE.match(stripped)
    if not m:
        raise ParseError(
            "expected 'A(a)' or 'r(a, b)'",
            line_no,
            len(stripped) - len(stripped.lstrip()) + 1,
        )
    head, first, second = m.group(1), m.group(2), m.group(3)
    for tok in (head, first, second):
        if tok in RESERVED_WORDS:
            raise ParseError(
                f"reserved word {tok!r} cannot be used as an identifier",
                line_no,
                stripped.index(tok) + 1,
            )
    if second is None:
        return ConceptAssertion(head, first)
    return RoleAssertion(head, first, second)


def parse_abox(text: str) -> ABox:
    """Parse ABox text: one ``A(a)`` or ``r(a, b)`` line per assertion."""
    assertions = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = _strip_comment(line)
        if not stripped.strip():
            continue
        assertions.append(parse_assertion(line, line_no))
    return ABox(assertions)
