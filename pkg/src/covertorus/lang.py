"""The torus/point/linear/cell input language and its printer.

Line breaks are not significant; declarations are keyword-introduced and
eq-lines attach to the preceding torus header. Spans are character offsets
into the input and survive into diagnostics. The printer emits canonical
text that reparses to an equal AST (round-trip identity), which is also
how verifier certificates and CLI outputs stay machine-auditable.

Surface names: `k` is the kernel generator, `e<i>` the generics, `g<i>`
the declared constants (usable without declaration; `const g<i>` merely
records the declaration). `u(q)` denotes exp(q*kappa).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .cover import CoverPoint, FieldPoint, exp_point
from .errors import ArityMismatchError
from .geometry import Cell, PQFSet
from .linear import LinearSet
from .torus import TorusPresentation

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[0-9]+")
_SYMBOLS = set("^*+-=/(){};,")
_KEYWORDS = {"const", "torus", "point", "linear", "cell", "eq"}
_E_RE = re.compile(r"^e([1-9][0-9]*)$")
_G_RE = re.compile(r"^g([1-9][0-9]*)$")
_X_RE = re.compile(r"^x([1-9][0-9]*)$")


@dataclass(frozen=True)
class Span:
    start: int
    end: int


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    message: str
    span: Span

    def render(self, text: str, origin: str = "input") -> str:
        line = text.count("\n", 0, self.span.start) + 1
        bol = text.rfind("\n", 0, self.span.start) + 1
        col = self.span.start - bol + 1
        return f"{origin}:{line}:{col}: {self.severity}: {self.message}"


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, INT, SYM, EOF
    text: str
    span: Span


class _ParseAbort(Exception):
    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic
        super().__init__(diagnostic.message)


def _tokenize(text: str) -> list[Token]:
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch == "#":
            nl = text.find("\n", i)
            i = n if nl < 0 else nl + 1
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            out.append(Token("IDENT", m.group(), Span(i, m.end())))
            i = m.end()
            continue
        m = _INT_RE.match(text, i)
        if m:
            out.append(Token("INT", m.group(), Span(i, m.end())))
            i = m.end()
            continue
        if ch in _SYMBOLS:
            out.append(Token("SYM", ch, Span(i, i + 1)))
            i += 1
            continue
        raise _ParseAbort(
            Diagnostic("error", f"unexpected character {ch!r}", Span(i, i + 1))
        )
    out.append(Token("EOF", "", Span(n, n)))
    return out


# -- AST ------------------------------------------------------------------


@dataclass(frozen=True)
class ConstDecl:
    name: str
    span: Span = field(compare=False, default=Span(0, 0))


@dataclass(frozen=True)
class PointDecl:
    name: str
    value: CoverPoint
    span: Span = field(compare=False, default=Span(0, 0))


@dataclass(frozen=True)
class TorusDecl:
    name: str
    torus: TorusPresentation
    span: Span = field(compare=False, default=Span(0, 0))


@dataclass(frozen=True)
class LinearDecl:
    name: str
    linear: LinearSet
    span: Span = field(compare=False, default=Span(0, 0))


@dataclass(frozen=True)
class CellDecl:
    name: str
    cell: Cell
    torus_ref: Optional[str]
    span: Span = field(compare=False, default=Span(0, 0))


Decl = Union[ConstDecl, PointDecl, TorusDecl, LinearDecl, CellDecl]


@dataclass(frozen=True)
class File:
    decls: tuple[Decl, ...]

    def points(self) -> dict[str, CoverPoint]:
        return {d.name: d.value for d in self.decls if isinstance(d, PointDecl)}

    def tori(self) -> dict[str, TorusPresentation]:
        return {d.name: d.torus for d in self.decls if isinstance(d, TorusDecl)}

    def linears(self) -> dict[str, LinearSet]:
        return {d.name: d.linear for d in self.decls if isinstance(d, LinearDecl)}

    def cell_sets(self) -> dict[str, PQFSet]:
        groups: dict[str, list[Cell]] = {}
        for d in self.decls:
            if isinstance(d, CellDecl):
                groups.setdefault(d.name, []).append(d.cell)
        return {name: PQFSet(tuple(cells)) for name, cells in groups.items()}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.points: dict[str, CoverPoint] = {}
        self.tori: dict[str, TorusPresentation] = {}
        self.decls: list[Decl] = []
        self.declared: set[str] = set()

    # -- token plumbing ---------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        raise _ParseAbort(Diagnostic("error", message, tok.span))

    def expect_sym(self, sym: str) -> Token:
        tok = self.peek()
        if tok.kind != "SYM" or tok.text != sym:
            self.fail(f"expected {sym!r}")
        return self.advance()

    def expect_ident(self, what: str = "name") -> Token:
        tok = self.peek()
        if tok.kind != "IDENT":
            self.fail(f"expected {what}")
        return self.advance()

    def expect_keyword(self, kw: str) -> Token:
        tok = self.peek()
        if tok.kind != "IDENT" or tok.text != kw:
            self.fail(f"expected {kw!r}")
        return self.advance()

    def expect_uint(self, what: str = "integer") -> int:
        tok = self.peek()
        if tok.kind != "INT":
            self.fail(f"expected {what}")
        self.advance()
        return int(tok.text)

    def parse_int(self) -> int:
        sign = 1
        if self.peek().kind == "SYM" and self.peek().text == "-":
            self.advance()
            sign = -1
        return sign * self.expect_uint()

    def parse_rational(self) -> Fraction:
        num = self.parse_int()
        if self.peek().kind == "SYM" and self.peek().text == "/":
            self.advance()
            den = self.expect_uint("denominator")
            if den == 0:
                self.fail("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def parse_count(self, label: str) -> int:
        self.expect_keyword(label)
        self.expect_sym("=")
        return self.expect_uint()

    # -- grammar ----------------------------------------------------------

    def parse_file(self) -> File:
        while self.peek().kind != "EOF":
            self.parse_decl()
        return File(tuple(self.decls))

    def parse_decl(self) -> None:
        tok = self.peek()
        if tok.kind != "IDENT":
            self.fail("expected a declaration keyword")
        if tok.text == "const":
            self.parse_const()
        elif tok.text == "torus":
            self.parse_torus_decl()
        elif tok.text == "point":
            self.parse_point_decl()
        elif tok.text == "linear":
            self.parse_linear_decl()
        elif tok.text == "cell":
            self.parse_cell_decl()
        else:
            self.fail(f"unknown declaration {tok.text!r}")

    def fresh_name(self, tok: Token) -> str:
        name = tok.text
        if name in _KEYWORDS:
            self.fail("keywords cannot be used as names", tok)
        if name in self.declared:
            self.fail(f"name {name!r} already declared", tok)
        self.declared.add(name)
        return name

    def parse_const(self) -> None:
        start = self.advance()
        tok = self.expect_ident("constant name")
        if not _G_RE.match(tok.text):
            self.fail("constant names use the g<i> family", tok)
        self.decls.append(ConstDecl(tok.text, Span(start.span.start, tok.span.end)))

    def parse_torus_decl(self) -> None:
        start = self.advance()
        name = self.fresh_name(self.expect_ident("torus name"))
        n = self.parse_count("n")
        if n < 1:
            self.fail("arity must be positive")
        rows = self.parse_eq_lines(n)
        torus = TorusPresentation(n, rows)
        self.tori[name] = torus
        end = self.peek(-1) if self.pos else start
        self.decls.append(
            TorusDecl(name, torus, Span(start.span.start, self.tokens[self.pos - 1].span.end))
        )

    def parse_eq_lines(self, n: int) -> list:
        rows = []
        while self.peek().kind == "IDENT" and self.peek().text == "eq":
            self.advance()
            z = self.parse_monomial(n)
            self.expect_sym("=")
            c = self.parse_constexpr()
            rows.append((z, c))
        return rows

    def parse_monomial(self, n: int) -> tuple[int, ...]:
        z = [0] * n
        while True:
            tok = self.expect_ident("variable x<i>")
            m = _X_RE.match(tok.text)
            if not m:
                self.fail("expected variable x<i>", tok)
            idx = int(m.group(1))
            if idx > n:
                self.fail(f"variable index exceeds arity n={n}", tok)
            power = 1
            if self.peek().kind == "SYM" and self.peek().text == "^":
                self.advance()
                nxt = self.peek()
                if nxt.kind != "INT" and not (nxt.kind == "SYM" and nxt.text == "-"):
                    self.fail("expected integer exponent")
                power = self.parse_int()
            z[idx - 1] += power
            if self.peek().kind == "SYM" and self.peek().text == "*":
                self.advance()
                continue
            return tuple(z)

    def parse_constexpr(self) -> FieldPoint:
        acc = CoverPoint.zero()
        while True:
            acc = acc + self.parse_factor()
            if self.peek().kind == "SYM" and self.peek().text == "*":
                self.advance()
                continue
            return exp_point(acc)

    def parse_factor(self) -> CoverPoint:
        tok = self.expect_ident("constant factor")
        if tok.text == "u":
            self.expect_sym("(")
            q = self.parse_rational()
            self.expect_sym(")")
            return CoverPoint.kappa(q)
        base = self.resolve_base(tok)
        if self.peek().kind == "SYM" and self.peek().text == "^":
            self.advance()
            nxt = self.peek()
            if nxt.kind != "INT" and not (nxt.kind == "SYM" and nxt.text == "-"):
                self.fail("expected rational exponent")
            q = self.parse_rational()
            return q * base
        return base

    def resolve_base(self, tok: Token) -> CoverPoint:
        name = tok.text
        if name == "k":
            return CoverPoint.kappa()
        m = _E_RE.match(name)
        if m:
            return CoverPoint.e(int(m.group(1)))
        m = _G_RE.match(name)
        if m:
            return CoverPoint.g(int(m.group(1)))
        if name in self.points:
            return self.points[name]
        self.fail(f"undeclared name {name!r}", tok)

    def parse_point_expr(self) -> CoverPoint:
        acc = self.parse_pterm()
        while self.peek().kind == "SYM" and self.peek().text in "+-":
            op = self.advance().text
            term = self.parse_pterm()
            acc = acc + term if op == "+" else acc - term
        return acc

    def parse_pterm(self) -> CoverPoint:
        tok = self.peek()
        if tok.kind == "INT" or (tok.kind == "SYM" and tok.text == "-"):
            q = self.parse_rational()
            self.expect_sym("*")
            base = self.resolve_base(self.expect_ident("basis name"))
            return q * base
        return self.resolve_base(self.expect_ident("basis name"))

    def parse_point_decl(self) -> None:
        start = self.advance()
        name = self.fresh_name(self.expect_ident("point name"))
        self.expect_sym("=")
        value = self.parse_point_expr()
        self.points[name] = value
        self.decls.append(
            PointDecl(name, value, Span(start.span.start, self.tokens[self.pos - 1].span.end))
        )

    def parse_linear_rows(self, n: Optional[int]) -> list:
        self.expect_sym("{")
        rows = []
        while not (self.peek().kind == "SYM" and self.peek().text == "}"):
            coeffs = [self.parse_rational()]
            while self.peek().kind == "SYM" and self.peek().text == ",":
                self.advance()
                coeffs.append(self.parse_rational())
            row_tok = self.peek()
            self.expect_sym("=")
            rhs = self.parse_point_expr()
            self.expect_sym(";")
            if n is not None and len(coeffs) != n:
                self.fail(f"row has {len(coeffs)} coefficients, expected {n}", row_tok)
            rows.append((tuple(coeffs), rhs))
        self.expect_sym("}")
        return rows

    def parse_linear_decl(self) -> None:
        start = self.advance()
        name = self.fresh_name(self.expect_ident("linear set name"))
        n = self.parse_count("n")
        if n < 1:
            self.fail("arity must be positive")
        rows = self.parse_linear_rows(n)
        linear = LinearSet(n, rows)
        self.decls.append(
            LinearDecl(name, linear, Span(start.span.start, self.tokens[self.pos - 1].span.end))
        )

    def parse_cell_decl(self) -> None:
        start = self.advance()
        name = "_"
        if not (
            self.peek().kind == "IDENT"
            and self.peek().text == "m"
            and self.peek(1).kind == "SYM"
            and self.peek(1).text == "="
        ):
            tok = self.expect_ident("cell name")
            if tok.text in _KEYWORDS:
                self.fail("keywords cannot be used as names", tok)
            name = tok.text
        m = self.parse_count("m")
        if m < 1:
            self.fail("cell scale must be positive")
        self.expect_keyword("linear")
        rows = self.parse_linear_rows(None)
        self.expect_keyword("torus")
        torus_ref: Optional[str] = None
        if self.peek().kind == "IDENT":
            tok = self.advance()
            torus_ref = tok.text
            if torus_ref not in self.tori:
                self.fail(f"undeclared torus {torus_ref!r}", tok)
            torus = self.tori[torus_ref]
        elif self.peek().kind == "SYM" and self.peek().text == "{":
            self.advance()
            n = self.parse_count("n")
            torus = TorusPresentation(n, self.parse_eq_lines(n))
            self.expect_sym("}")
        else:
            self.fail("expected torus name or inline torus block")
        for row, _ in rows:
            if len(row) != torus.n:
                self.fail(f"linear row arity differs from torus arity n={torus.n}")
        cell = Cell(m, LinearSet(torus.n, rows), torus)
        self.decls.append(
            CellDecl(name, cell, torus_ref, Span(start.span.start, self.tokens[self.pos - 1].span.end))
        )


def parse(text: str) -> tuple[Optional[File], list[Diagnostic]]:
    """Parse a declaration file; on failure the AST is None and at least
    one diagnostic with a span is returned."""
    try:
        return _Parser(text).parse_file(), []
    except _ParseAbort as abort:
        return None, [abort.diagnostic]


def parse_point_tuple(text: str, points: Optional[dict[str, CoverPoint]] = None):
    """Parse a standalone `(expr, expr, ...)` tuple of points."""
    parser = _Parser(text)
    parser.points = dict(points or {})
    parser.expect_sym("(")
    out = [parser.parse_point_expr()]
    while parser.peek().kind == "SYM" and parser.peek().text == ",":
        parser.advance()
        out.append(parser.parse_point_expr())
    parser.expect_sym(")")
    if parser.peek().kind != "EOF":
        parser.fail("trailing input after tuple")
    return tuple(out)


# -- printing -------------------------------------------------------------


def print_rational(q: Fraction) -> str:
    return str(q)


def _basis_name(i: int) -> str:
    if i == 0:
        return "k"
    if i % 2 == 1:
        return f"g{(i + 1) // 2}"
    return f"e{i // 2}"


def print_point(p: CoverPoint) -> str:
    items = list(p.items())
    if not items:
        return "0*k"
    parts = []
    for idx, (i, q) in enumerate(items):
        name = _basis_name(i)
        mag = abs(q)
        body = name if mag == 1 else f"{print_rational(mag)}*{name}"
        if idx == 0:
            parts.append(body if q > 0 else (f"-1*{name}" if mag == 1 else f"-{body}"))
        else:
            parts.append(("+ " if q > 0 else "- ") + body)
    return " ".join(parts)


def print_constexpr(c: FieldPoint) -> str:
    rep = c.rep
    if rep.is_zero():
        return "u(0)"
    factors = []
    kq = rep.coeff(0)
    if kq:
        factors.append(f"u({print_rational(kq)})")
    for i, q in rep.items():
        if i == 0:
            continue
        name = _basis_name(i)
        factors.append(name if q == 1 else f"{name}^{print_rational(q)}")
    return "*".join(factors)


def print_monomial(z) -> str:
    factors = []
    for i, zi in enumerate(z, start=1):
        if zi == 0:
            continue
        factors.append(f"x{i}" if zi == 1 else f"x{i}^{zi}")
    if not factors:
        return "x1^0"
    return "*".join(factors)


def print_torus_body(T: TorusPresentation, indent: str = "  ") -> str:
    lines = []
    for z, c in T.rows:
        lines.append(f"{indent}eq {print_monomial(z)} = {print_constexpr(c)}")
    return "\n".join(lines)


def print_torus_decl(name: str, T: TorusPresentation) -> str:
    header = f"torus {name} n={T.n}"
    body = print_torus_body(T)
    return header + ("\n" + body if body else "")


def print_linear_rows(L: LinearSet, indent: str = "  ") -> str:
    lines = []
    for q, rhs in L.constraints:
        coeffs = ", ".join(print_rational(x) for x in q)
        lines.append(f"{indent}{coeffs} = {print_point(rhs)} ;")
    return "\n".join(lines)

def print_linear_decl(name: str, L: LinearSet) -> str:
    rows = print_linear_rows(L)
    if rows:
        return f"linear {name} n={L.n} {{\n{rows}\n}}"
    return f"linear {name} n={L.n} {{ }}"


def print_point_decl(name: str, p: CoverPoint) -> str:
    return f"point {name} = {print_point(p)}"


def print_cell_decl(name: str, cell: Cell, torus_ref: Optional[str] = None) -> str:
    rows = print_linear_rows(cell.L, indent="  ")
    linear_part = f"linear {{\n{rows}\n}}" if rows else "linear { }"
    if torus_ref is not None:
        torus_part = f"torus {torus_ref}"
    else:
        body = print_torus_body(cell.T, indent="  ")
        inner = f"n={cell.T.n}" + ("\n" + body if body else "")
        torus_part = f"torus {{ {inner} }}"
    head = f"cell {name} " if name != "_" else "cell "
    return f"{head}m={cell.m} {linear_part} {torus_part}"


def print_tuple(points) -> str:
    return "(" + ", ".join(print_point(p) for p in points) + ")"


def print_decl(d: Decl) -> str:
    if isinstance(d, ConstDecl):
        return f"const {d.name}"
    if isinstance(d, PointDecl):
        return print_point_decl(d.name, d.value)
    if isinstance(d, TorusDecl):
        return print_torus_decl(d.name, d.torus)
    if isinstance(d, LinearDecl):
        return print_linear_decl(d.name, d.linear)
    if isinstance(d, CellDecl):
        return print_cell_decl(d.name, d.cell, d.torus_ref)
    raise TypeError(f"unknown declaration {type(d).__name__}")


def print_file(ast: File) -> str:
    return "\n".join(print_decl(d) for d in ast.decls) + "\n"
