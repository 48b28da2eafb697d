"""Recursive-descent parser for the textual element grammar (see docs/grammar.md).

    expr   := ["+" | "-"] term (("+" | "-") term)*
    term   := factor (["*"] factor)*
    factor := atom ["^" INT]
    atom   := NUMBER ["/" NUMBER] | "d" "(" expr ")" | NAME | "(" expr ")"

Products are juxtaposition, so ``1/2 x^2 dy`` is one term.  Parsing builds a
small tree; evaluation against an algebra or a model happens afterwards so
that unknown names are reported with their column.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import CoeffPoly, GradedAlgebra, GradedElement
from .derivation import Derivation, apply
from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


@dataclass
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    col: int


def tokenize(text: str, path: str | None = None) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        num, name, op = m.groups()
        col = m.start(m.lastindex) + 1
        if num is not None:
            out.append(Token("num", num, col))
        elif name is not None:
            out.append(Token("name", name, col))
        else:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}", col, path)
            out.append(Token("op", op, col))
        pos = m.end()
    out.append(Token("end", "", len(text) + 1))
    return out


# syntax tree: ("num", Fraction), ("name", str, col), ("d", node, col),
# ("add", [(sign, node)]), ("mul", [node]), ("pow", node, int)

class _Parser:
    def __init__(self, text: str, path: str | None):
        self.toks = tokenize(text, path)
        self.i = 0
        self.path = path

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(msg, tok.col, self.path)

    def eat(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.eat(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def parse(self):
        if self.tok.kind == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        terms = []
        sign = 1
        if self.eat("-"):
            sign = -1
        else:
            self.eat("+")
        terms.append((sign, self.term()))
        while self.tok.kind == "op" and self.tok.text in "+-":
            sign = -1 if self.tok.text == "-" else 1
            self.i += 1
            terms.append((sign, self.term()))
        return ("add", terms)

    def _starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")

    def term(self):
        if not self._starts_factor():
            raise self.error(f"expected a term, found {self.tok.text or 'end of input'!r}")
        factors = [self.factor()]
        while True:
            if self.eat("*"):
                factors.append(self.factor())
            elif self._starts_factor():
                factors.append(self.factor())
            else:
                break
        return ("mul", factors)

    def factor(self):
        node = self.atom()
        if self.eat("^"):
            if self.tok.kind != "num":
                raise self.error("exponent must be a non-negative integer")
            k = int(self.tok.text)
            self.i += 1
            node = ("pow", node, k)
        return node

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            value = Fraction(int(t.text))
            if self.eat("/"):
                if self.tok.kind != "num":
                    raise self.error("expected a denominator")
                den = int(self.tok.text)
                if den == 0:
                    raise self.error("zero denominator")
                self.i += 1
                value /= den
            return ("num", value)
        if t.kind == "name":
            self.i += 1
            if t.text == "d" and self.tok.kind == "op" and self.tok.text == "(":
                self.i += 1
                inner = self.expr()
                self.expect(")")
                return ("d", inner, t.col)
            return ("name", t.text, t.col)
        if self.eat("("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error(f"unexpected {t.text or 'end of input'!r}")


def parse_tree(text: str, path: str | None = None):
    if not isinstance(text, str):
        raise ParseError(f"expected an expression string, got {type(text).__name__}", 0, path)
    return _Parser(text, path).parse()


def _fold(node, leaf, d_op, path):
    """Evaluate a tree with ``leaf(name, col)`` for names and ``d_op(value, col)`` for d(...)."""
    kind = node[0]
    if kind == "num":
        return leaf(None, node[1])
    if kind == "name":
        return leaf(node[1], node[2])
    if kind == "d":
        return d_op(_fold(node[1], leaf, d_op, path), node[2])
    if kind == "pow":
        base = _fold(node[1], leaf, d_op, path)
        out = leaf(None, Fraction(1))
        for _ in range(node[2]):
            out = out * base
        return out
    if kind == "mul":
        out = None
        for f in node[1]:
            v = _fold(f, leaf, d_op, path)
            out = v if out is None else out * v
        return out
    out = None
    for sign, t in node[1]:
        v = _fold(t, leaf, d_op, path)
        v = v if sign > 0 else -v
        out = v if out is None else out + v
    return out


def parse_element(text: str, algebra: GradedAlgebra, d: Derivation | None = None,
                  path: str | None = None) -> GradedElement:
    """Parse ``text`` to an element of ``algebra``; ``d(...)`` applies ``d`` when given."""
    tree = parse_tree(text, path)
    known = set(algebra.index) | set(algebra.coords)

    def leaf(name, value):
        if name is None:
            return algebra.const(value)
        if name not in known:
            raise ParseError(f"unknown generator or coordinate {name!r}", value, path)
        return algebra.gen(name)

    def d_op(v, col):
        if d is None:
            raise ParseError("d(...) is not available here", col, path)
        return apply(d, v)

    return _fold(tree, leaf, d_op, path)


class _FieldValue:
    """Polynomial coefficient or a polynomial combination of basis fields."""

    __slots__ = ("poly", "field")

    def __init__(self, poly=None, field=None):
        self.poly, self.field = poly, field

    def __mul__(self, other):
        if self.field is not None and other.field is not None:
            raise ValueError("product of two vector fields")
        if self.field is None and other.field is None:
            return _FieldValue(self.poly * other.poly)
        p, f = (self.poly, other.field) if self.field is None else (other.poly, self.field)
        return _FieldValue(field={k: p * v for k, v in f.items()})

    def __neg__(self):
        if self.field is None:
            return _FieldValue(-self.poly)
        return _FieldValue(field={k: -v for k, v in self.field.items()})

    def __add__(self, other):
        if (self.field is None) != (other.field is None):
            raise ValueError("sum of a function and a vector field")
        if self.field is None:
            return _FieldValue(self.poly + other.poly)
        out = dict(self.field)
        for k, v in other.field.items():
            out[k] = out[k] + v if k in out else v
        return _FieldValue(field=out)


def parse_vector_field(text: str, model, path: str | None = None):
    """Parse e.g. ``x Dy - y Dx`` into a VectorField of ``model``."""
    from .models import VectorField

    tree = parse_tree(text, path)
    coords = model.algebra.coords
    one = CoeffPoly.constant(coords, 1)

    def leaf(name, value):
        if name is None:
            return _FieldValue(CoeffPoly.constant(coords, value))
        if name in model.fields:
            return _FieldValue(field={name: one})
        if name in coords:
            return _FieldValue(CoeffPoly.variable(coords, name))
        raise ParseError(f"unknown field or coordinate {name!r}", value, path)

    def d_op(v, col):
        raise ParseError("d(...) is not allowed in a vector field", col, path)

    try:
        value = _fold(tree, leaf, d_op, path)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), 1, path) from None
    if value.field is None:
        if value.poly.is_zero():
            return VectorField(model, {})
        raise ParseError("expression has no vector-field factor", 1, path)
    return VectorField(model, value.field)


__all__ = ["tokenize", "parse_tree", "parse_element", "parse_vector_field"]
