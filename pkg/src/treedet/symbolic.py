"""Commutative expression algebra over named variables with exact rational constants.

Expressions are immutable trees of :class:`Const`, :class:`Var`, :class:`Sum`
and :class:`Prod`.  ``+``, ``-`` and ``*`` work between expressions and plain
numbers, so the graph code can treat numeric and symbolic weights alike.

Construction only flattens and folds constants; it never expands.  Use
:func:`canonical_polynomial` (or :func:`equivalent`) to decide equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number, Rational
from typing import Any, Iterable, Mapping

from .errors import ExpansionTooLarge, ExprParseError, UnboundVariable

MAX_MONOMIALS = 10**6


class Expr:
    """Base class; arithmetic operators build flattened trees."""

    __slots__ = ()

    def __add__(self, other):
        return expr_add(self, as_expr(other))

    def __radd__(self, other):
        return expr_add(as_expr(other), self)

    def __sub__(self, other):
        return expr_add(self, expr_neg(as_expr(other)))

    def __rsub__(self, other):
        return expr_add(as_expr(other), expr_neg(self))

    def __mul__(self, other):
        return expr_mul(self, as_expr(other))

    def __rmul__(self, other):
        return expr_mul(as_expr(other), self)

    def __neg__(self):
        return expr_neg(self)

    def __str__(self):
        return render(self)


@dataclass(frozen=True, repr=False)
class Const(Expr):
    value: Fraction

    def __repr__(self):
        return f"Const({self.value})"


@dataclass(frozen=True, repr=False)
class Var(Expr):
    name: str

    def __repr__(self):
        return f"Var({self.name})"


@dataclass(frozen=True, repr=False)
class Sum(Expr):
    terms: tuple[Expr, ...]

    def __repr__(self):
        return f"Sum({', '.join(map(repr, self.terms))})"


@dataclass(frozen=True, repr=False)
class Prod(Expr):
    factors: tuple[Expr, ...]

    def __repr__(self):
        return f"Prod({', '.join(map(repr, self.factors))})"


ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def var_name(i: int, j: int) -> str:
    """Name of the weight variable for arc (i, j); ``u{i}_{j}`` once an index passes 9."""
    if i < 10 and j < 10:
        return f"u{i}{j}"
    return f"u{i}_{j}"


def u(i: int, j: int) -> Var:
    return Var(var_name(i, j))


def as_expr(x: Any) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not weights")
    if isinstance(x, (int, Fraction)):
        return Const(Fraction(x))
    if isinstance(x, float):
        # exact binary value; Expr never holds floats
        return Const(Fraction(x))
    if isinstance(x, str):
        return parse(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Expr")


def _fold(children: Iterable[Expr], node_type: type, identity: Fraction):
    flat: list[Expr] = []
    const = identity
    for c in children:
        parts = c.terms if node_type is Sum and isinstance(c, Sum) else (
            c.factors if node_type is Prod and isinstance(c, Prod) else (c,))
        for p in parts:
            if isinstance(p, Const):
                const = const + p.value if node_type is Sum else const * p.value
            else:
                flat.append(p)
    return flat, const


def expr_add(a: Expr, b: Expr) -> Expr:
    terms, const = _fold((a, b), Sum, Fraction(0))
    if const != 0:
        terms.append(Const(const))
    if not terms:
        return ZERO
    if len(terms) == 1:
        return terms[0]
    return Sum(tuple(terms))


def expr_mul(a: Expr, b: Expr) -> Expr:
    factors, const = _fold((a, b), Prod, Fraction(1))
    if const == 0:
        return ZERO
    if const != 1:
        factors.insert(0, Const(const))
    if not factors:
        return ONE
    if len(factors) == 1:
        return factors[0]
    return Prod(tuple(factors))


def expr_neg(a: Expr) -> Expr:
    return expr_mul(Const(Fraction(-1)), a)


def expr_sum(items: Iterable[Any]) -> Expr:
    total: Expr = ZERO
    for x in items:
        total = expr_add(total, as_expr(x))
    return total


def expr_prod(items: Iterable[Any]) -> Expr:
    total: Expr = ONE
    for x in items:
        total = expr_mul(total, as_expr(x))
    return total


# --- polynomial normal form -------------------------------------------------

Monomial = tuple[str, ...]


def _name_key(name: str):
    # natural order: u2 < u10, u1_2 < u1_10
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name))


def _mono_key(m: Monomial):
    return tuple(_name_key(v) for v in m)


def to_poly(e: Any) -> dict[Monomial, Fraction]:
    """Expand ``e`` into ``{sorted variable tuple: coefficient}`` with zero terms dropped."""
    e = as_expr(e)
    if isinstance(e, Const):
        return {(): e.value} if e.value else {}
    if isinstance(e, Var):
        return {(e.name,): Fraction(1)}
    if isinstance(e, Sum):
        acc: dict[Monomial, Fraction] = {}
        for t in e.terms:
            for m, c in to_poly(t).items():
                acc[m] = acc.get(m, 0) + c
        return {m: c for m, c in acc.items() if c}
    if isinstance(e, Prod):
        acc = {(): Fraction(1)}
        for f in e.factors:
            fp = to_poly(f)
            if len(acc) * len(fp) > MAX_MONOMIALS:
                raise ExpansionTooLarge(
                    f"expansion would exceed {MAX_MONOMIALS} monomials")
            nxt: dict[Monomial, Fraction] = {}
            for m1, c1 in acc.items():
                for m2, c2 in fp.items():
                    m = tuple(sorted(m1 + m2, key=_name_key))
                    nxt[m] = nxt.get(m, 0) + c1 * c2
            acc = {m: c for m, c in nxt.items() if c}
            if not acc:
                return {}
        return acc
    raise TypeError(f"unknown node {e!r}")


def from_poly(poly: Mapping[Monomial, Fraction]) -> Expr:
    terms: list[Expr] = []
    for m in sorted(poly, key=_mono_key):
        c = Fraction(poly[m])
        if c == 0:
            continue
        factors: list[Expr] = [Var(v) for v in m]
        if c != 1 or not factors:
            factors.insert(0, Const(c))
        terms.append(factors[0] if len(factors) == 1 else Prod(tuple(factors)))
    if not terms:
        return ZERO
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def canonical_polynomial(e: Any) -> Expr:
    """Fully expanded form: monomials in lexicographic order, like terms merged."""
    return from_poly(to_poly(e))


def equivalent(a: Any, b: Any) -> bool:
    """Semantic equality of two weights (numbers or expressions)."""
    if not isinstance(a, Expr) and not isinstance(b, Expr):
        return a == b
    return to_poly(a) == to_poly(b)


def variables(e: Any) -> set[str]:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Sum):
        return set().union(*(variables(t) for t in e.terms))
    if isinstance(e, Prod):
        return set().union(*(variables(f) for f in e.factors))
    return set()


def evaluate(e: Any, assignment: Mapping[str, Any] | None = None):
    """Evaluate with ``assignment`` mapping variable names to numbers."""
    if not isinstance(e, Expr):
        return e
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        try:
            return assignment[e.name]
        except (KeyError, TypeError):
            raise UnboundVariable(f"no value for variable {e.name}") from None
    if isinstance(e, Sum):
        total = 0
        for t in e.terms:
            total = total + evaluate(t, assignment)
        return total
    total = 1
    for f in e.factors:
        total = total * evaluate(f, assignment)
    return total


# --- weights in general -----------------------------------------------------

def is_symbolic(w: Any) -> bool:
    return isinstance(w, Expr)


def is_zero(w: Any) -> bool:
    if isinstance(w, Expr):
        return isinstance(w, Const) and w.value == 0
    return w == 0


def format_number(x: Any) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float) and x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x) if isinstance(x, float) else str(x)


def format_weight(w: Any) -> str:
    return render(w) if isinstance(w, Expr) else format_number(w)


# --- text rendering and parsing --------------------------------------------

def _is_negative(e: Expr) -> bool:
    if isinstance(e, Const):
        return e.value < 0
    return isinstance(e, Prod) and isinstance(e.factors[0], Const) and e.factors[0].value < 0


def render(e: Any) -> str:
    """``u11·(u12 + u22)`` style: products joined by ``·``, inner sums parenthesized."""
    if not isinstance(e, Expr):
        return format_number(e)
    if isinstance(e, Const):
        return format_number(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Sum):
        out = render(e.terms[0])
        for t in e.terms[1:]:
            if _is_negative(t):
                pos = expr_neg(t)
                out += " - " + (f"({render(pos)})" if isinstance(pos, Sum) else render(pos))
            else:
                out += " + " + render(t)
        return out
    factors = list(e.factors)
    prefix = ""
    if isinstance(factors[0], Const) and factors[0].value == -1:
        prefix = "-"
        factors = factors[1:]
    parts = []
    for f in factors:
        s = render(f)
        if isinstance(f, Sum) or (isinstance(f, Const) and f.value < 0):
            s = f"({s})"
        parts.append(s)
    return prefix + "·".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*·()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} in {text!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Expr:
        if not self.tokens:
            raise ExprParseError("empty expression")
        e = self.expr()
        if self.i != len(self.tokens):
            raise ExprParseError(f"trailing input in {self.text!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            t = self.term()
            e = expr_add(e, t if op == "+" else expr_neg(t))
        return e

    def term(self) -> Expr:
        e = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*·":
                self.take()
            elif not (kind in ("num", "name") or (kind, val) == ("op", "(")):
                return e
            e = expr_mul(e, self.unary())

    def unary(self) -> Expr:
        if self.peek() == ("op", "-"):
            self.take()
            return expr_neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        kind, val = self.take()
        if kind == "num":
            return Const(Fraction(val))
        if kind == "name":
            return Var(val)
        if (kind, val) == ("op", "("):
            e = self.expr()
            if self.take() != ("op", ")"):
                raise ExprParseError(f"missing ')' in {self.text!r}")
            return e
        raise ExprParseError(f"unexpected token {val!r} in {self.text!r}")


def parse(text: str) -> Expr:
    """Parse the rendering grammar: ``+``/``-``, ``*``/``·``/juxtaposition, parentheses, numbers."""
    return _Parser(text).parse()


# --- JSON AST ---------------------------------------------------------------

def to_ast(e: Any) -> dict:
    e = as_expr(e)
    if isinstance(e, Const):
        return {"const": format_number(e.value)}
    if isinstance(e, Var):
        return {"var": e.name}
    if isinstance(e, Sum):
        return {"sum": [to_ast(t) for t in e.terms]}
    return {"prod": [to_ast(f) for f in e.factors]}


def from_ast(node: Mapping[str, Any]) -> Expr:
    if "const" in node:
        return Const(Fraction(str(node["const"])))
    if "var" in node:
        return Var(node["var"])
    if "sum" in node:
        return Sum(tuple(from_ast(t) for t in node["sum"]))
    if "prod" in node:
        return Prod(tuple(from_ast(f) for f in node["prod"]))
    raise ExprParseError(f"bad AST node {node!r}")


def is_number(x: Any) -> bool:
    return isinstance(x, Number) and not isinstance(x, bool)


def exact(x: Any) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)
