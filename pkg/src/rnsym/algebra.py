"""Exact graded-commutative algebras over polynomial coefficient rings.

An algebra is free graded-commutative on a list of named generators, with
coefficients in a polynomial ring on degree-zero coordinates.  Odd
generators square to zero.  Monomials are stored as exponent tuples in the
declaration order of the generators, which is the canonical order used for
Koszul signs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .errors import DegreeError, ForeignGeneratorError

Scalar = Fraction


def scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def _add_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _mono_str(names, exps) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return " ".join(parts)


def _coeff_str(c: Fraction, bare: bool) -> str:
    """Format a coefficient; ``bare`` means nothing follows it."""
    if not bare and c == 1:
        return ""
    if not bare and c == -1:
        return "-"
    return str(c)


def _format_terms(pieces) -> str:
    """Join (coefficient, monomial-string) pairs into a signed sum."""
    out = []
    for c, mono in pieces:
        neg = c < 0
        body = _coeff_str(abs(c), not mono)
        text = f"{body} {mono}".strip() if body else mono
        if not out:
            out.append(f"-{text}" if neg else text)
        else:
            out.append(f"- {text}" if neg else f"+ {text}")
    return " ".join(out) if out else "0"


class CoeffPoly:
    """Polynomial in named degree-zero coordinates with rational coefficients.

    With ``cap`` set, monomials of total degree above the cap are dropped and
    ``truncated`` records that this happened somewhere in the history.
    """

    __slots__ = ("coords", "terms", "cap", "truncated")

    def __init__(self, coords: Iterable[str], terms: Mapping | None = None,
                 cap: int | None = None, truncated: bool = False):
        self.coords = tuple(coords)
        self.cap = cap
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.coords):
                raise ValueError("exponent length does not match coordinates")
            c = scalar(c)
            if c == 0:
                continue
            if cap is not None and sum(exps) > cap:
                truncated = True
                continue
            clean[exps] = clean.get(exps, Fraction(0)) + c
            if clean[exps] == 0:
                del clean[exps]
        self.terms = clean
        self.truncated = truncated

    @classmethod
    def constant(cls, coords, value, cap=None) -> "CoeffPoly":
        coords = tuple(coords)
        return cls(coords, {(0,) * len(coords): value}, cap)

    @classmethod
    def variable(cls, coords, name, cap=None) -> "CoeffPoly":
        coords = tuple(coords)
        exps = tuple(1 if c == name else 0 for c in coords)
        if sum(exps) != 1:
            raise ValueError(f"unknown coordinate {name!r}")
        return cls(coords, {exps: 1}, cap)

    def _check(self, other: "CoeffPoly"):
        if other.coords != self.coords:
            raise ForeignGeneratorError("coefficient polynomials use different coordinates")

    def _cap_with(self, other):
        caps = [c for c in (self.cap, other.cap) if c is not None]
        return min(caps) if caps else None

    def _lift(self, other):
        if isinstance(other, CoeffPoly):
            self._check(other)
            return other
        return CoeffPoly.constant(self.coords, other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return CoeffPoly(self.coords, terms, self._cap_with(other),
                         self.truncated or other.truncated)

    __radd__ = __add__

    def __neg__(self):
        return CoeffPoly(self.coords, {e: -c for e, c in self.terms.items()},
                         self.cap, self.truncated)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            k = scalar(other)
            return CoeffPoly(self.coords, {e: c * k for e, c in self.terms.items()},
                             self.cap, self.truncated)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return CoeffPoly(self.coords, terms, self._cap_with(other),
                         self.truncated or other.truncated)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = CoeffPoly.constant(self.coords, 1, self.cap)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, CoeffPoly):
            return self.coords == other.coords and self.terms == other.terms
        try:
            return self == CoeffPoly.constant(self.coords, other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.coords, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.coords), Fraction(0))

    def diff(self, name: str) -> "CoeffPoly":
        i = self.coords.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                terms[tuple(f)] = c * e[i]
        return CoeffPoly(self.coords, terms, self.cap, self.truncated)

    def uncapped(self) -> "CoeffPoly":
        return CoeffPoly(self.coords, self.terms, None, self.truncated)

    def leading(self):
        """Leading (exponent, coefficient) in graded-lex order."""
        e = max(self.terms, key=lambda x: (sum(x), x))
        return e, self.terms[e]

    def divexact(self, other: "CoeffPoly") -> "CoeffPoly":
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rest = self.uncapped()
        quot: dict = {}
        le, lc = other.leading()
        while not rest.is_zero():
            e, c = rest.leading()
            diff = tuple(a - b for a, b in zip(e, le))
            if any(x < 0 for x in diff):
                raise ArithmeticError("polynomial division is not exact")
            q = c / lc
            quot[diff] = quot.get(diff, Fraction(0)) + q
            rest = rest - CoeffPoly(self.coords, {diff: q}) * other
        return CoeffPoly(self.coords, quot, self.cap)

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for name, k in zip(self.coords, e):
                if k:
                    v *= scalar(point[name]) ** k
            total += v
        return total

    def __repr__(self):
        return f"CoeffPoly({self})"

    def __str__(self):
        keys = sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
        return _format_terms((self.terms[e], _mono_str(self.coords, e)) for e in keys)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


class GradedAlgebra:
    """Free graded-commutative algebra over a polynomial coefficient ring."""

    def __init__(self, generators: Iterable[Generator | tuple], coords: Iterable[str] = (),
                 cap: int | None = None):
        gens = []
        for g in generators:
            g = g if isinstance(g, Generator) else Generator(*g)
            if g.degree == 0:
                raise DegreeError(f"generator {g.name!r} has degree 0; use a coordinate")
            gens.append(g)
        self.generators = tuple(gens)
        self.coords = tuple(coords)
        self.cap = cap
        names = [g.name for g in gens] + list(self.coords)
        if len(set(names)) != len(names):
            raise ValueError("generator and coordinate names must be distinct")
        self.index = {g.name: i for i, g in enumerate(gens)}
        self.coord_index = {c: i for i, c in enumerate(self.coords)}
        self.degrees = tuple(g.degree for g in gens)
        self.odd_idx = tuple(i for i, g in enumerate(gens) if g.odd)
        self.zero_g = (0,) * len(gens)
        self.zero_c = (0,) * len(self.coords)
        self._key = (self.generators, self.coords, cap)

    def __eq__(self, other):
        return isinstance(other, GradedAlgebra) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"GradedAlgebra([{gens}], coords={list(self.coords)}, cap={self.cap})"

    @property
    def names(self):
        return tuple(g.name for g in self.generators)

    def with_cap(self, cap: int | None) -> "GradedAlgebra":
        return GradedAlgebra(self.generators, self.coords, cap)

    def extended(self, generators: Iterable, prepend: Iterable = ()) -> "GradedAlgebra":
        pre = [g if isinstance(g, Generator) else Generator(*g) for g in prepend]
        post = [g if isinstance(g, Generator) else Generator(*g) for g in generators]
        return GradedAlgebra(pre + list(self.generators) + post, self.coords, self.cap)

    def gexp_degree(self, gexp) -> int:
        return sum(e * d for e, d in zip(gexp, self.degrees))

    def mono_sign(self, g1, g2) -> int:
        """Koszul sign of bringing g1 * g2 into canonical order, 0 if an odd square appears."""
        suffix = 0
        parity = 0
        for i in reversed(self.odd_idx):
            if g2[i]:
                if g1[i]:
                    return 0
                parity ^= suffix & 1
            if g1[i]:
                suffix += 1
        return -1 if parity else 1

    # construction helpers

    def zero(self) -> "GradedElement":
        return GradedElement(self, {})

    def one(self) -> "GradedElement":
        return GradedElement(self, {(self.zero_g, self.zero_c): Fraction(1)})

    def const(self, value) -> "GradedElement":
        return self.one() * value

    def gen(self, name: str) -> "GradedElement":
        if name in self.index:
            g = [0] * len(self.generators)
            g[self.index[name]] = 1
            return GradedElement(self, {(tuple(g), self.zero_c): Fraction(1)})
        if name in self.coord_index:
            c = [0] * len(self.coords)
            c[self.coord_index[name]] = 1
            return GradedElement(self, {(self.zero_g, tuple(c)): Fraction(1)})
        raise ForeignGeneratorError(f"{name!r} is not a generator or coordinate of {self!r}")

    def monomial(self, gexp, cexp=None, coeff=1) -> "GradedElement":
        cexp = self.zero_c if cexp is None else tuple(cexp)
        return GradedElement(self, {(tuple(gexp), cexp): scalar(coeff)})

    def from_poly(self, poly: CoeffPoly) -> "GradedElement":
        if isinstance(poly, GradedElement):
            return poly
        if not isinstance(poly, CoeffPoly):
            return self.const(poly)
        if poly.coords != self.coords:
            raise ForeignGeneratorError("polynomial coordinates differ from the algebra's")
        return GradedElement(self, {(self.zero_g, e): c for e, c in poly.terms.items()},
                             poly.truncated)

    def poly(self, terms=None) -> CoeffPoly:
        return CoeffPoly(self.coords, terms or {}, self.cap)

    def embed(self, e: "GradedElement") -> "GradedElement":
        """Reinterpret an element of a subalgebra (matching names) inside this algebra."""
        src = e.algebra
        if src is self:
            return e
        if src.coords != self.coords:
            raise ForeignGeneratorError("coordinate sets differ")
        gmap = []
        for g in src.generators:
            j = self.index.get(g.name)
            if j is None or self.generators[j].degree != g.degree:
                raise ForeignGeneratorError(f"generator {g.name!r} is not in the target algebra")
            gmap.append(j)
        out = {}
        for (gexp, cexp), c in e.terms.items():
            # declaration order may differ, so rebuild the monomial factor by factor
            r = self._ordered_monomial(gexp, gmap)
            if r is None:
                continue
            sign, key = r
            out[(key, cexp)] = out.get((key, cexp), Fraction(0)) + sign * c
        return GradedElement(self, out, e.truncated)

    def _ordered_monomial(self, gexp, gmap):
        g = self.zero_g
        sign = 1
        for i, k in enumerate(gexp):
            for _ in range(k):
                unit = [0] * len(self.generators)
                unit[gmap[i]] = 1
                s = self.mono_sign(g, tuple(unit))
                if s == 0:
                    return None
                sign *= s
                g = _add_exp(g, tuple(unit))
        return sign, g

    def restrict(self, e: "GradedElement", target: "GradedAlgebra") -> "GradedElement":
        """Project onto ``target``: monomials using generators absent from it are dropped."""
        keep = [target.index.get(g.name) for g in self.generators]
        out = {}
        for (gexp, cexp), c in e.terms.items():
            if any(k and keep[i] is None for i, k in enumerate(gexp)):
                continue
            r = target._ordered_monomial(gexp, keep)
            if r is None:
                continue
            sign, key = r
            out[(key, cexp)] = out.get((key, cexp), Fraction(0)) + sign * c
        return GradedElement(target, out, e.truncated)


class GradedElement:
    """Finite sum of (rational, coordinate monomial, generator monomial) terms."""

    __slots__ = ("algebra", "terms", "truncated")

    def __init__(self, algebra: GradedAlgebra, terms: Mapping, truncated: bool = False):
        self.algebra = algebra
        cap = algebra.cap
        clean = {}
        for key, c in terms.items():
            if c == 0:
                continue
            if cap is not None and sum(key[1]) > cap:
                truncated = True
                continue
            clean[key] = c
        self.terms = clean
        self.truncated = truncated

    def _same(self, other: "GradedElement"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise ForeignGeneratorError("elements belong to different algebras")

    def _coerce(self, other):
        if isinstance(other, GradedElement):
            self._same(other)
            return other
        if isinstance(other, CoeffPoly):
            return self.algebra.from_poly(other)
        return self.algebra.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return GradedElement(self.algebra, terms, self.truncated or other.truncated)

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(self.algebra, {k: -c for k, c in self.terms.items()}, self.truncated)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            k = scalar(other)
            return GradedElement(self.algebra, {key: c * k for key, c in self.terms.items()},
                                 self.truncated)
        if not isinstance(other, (GradedElement, CoeffPoly)):
            return NotImplemented
        other = self._coerce(other)
        alg = self.algebra
        sign_of = alg.mono_sign
        terms: dict = {}
        for (g1, c1), v1 in self.terms.items():
            for (g2, c2), v2 in other.terms.items():
                s = sign_of(g1, g2)
                if s == 0:
                    continue
                key = (_add_exp(g1, g2), _add_exp(c1, c2))
                terms[key] = terms.get(key, 0) + s * v1 * v2
        return GradedElement(alg, terms, self.truncated or other.truncated)

    def __rmul__(self, other):
        if isinstance(other, (GradedElement, CoeffPoly)):
            return self._coerce(other) * self
        return self * other

    def __pow__(self, k: int):
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GradedElement):
            return (other.algebra is self.algebra or other.algebra == self.algebra) \
                and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.algebra.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.algebra.gexp_degree(g) for g, _ in self.terms}

    @property
    def degree(self) -> int | None:
        """Degree of a homogeneous element; None for zero; raises if mixed."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise DegreeError(f"element is not homogeneous (degrees {sorted(ds)})")
        return ds.pop()

    def component(self, degree: int) -> "GradedElement":
        alg = self.algebra
        return GradedElement(alg, {k: c for k, c in self.terms.items()
                                   if alg.gexp_degree(k[0]) == degree}, self.truncated)

    def coefficient(self, gexp) -> CoeffPoly:
        gexp = tuple(gexp)
        return CoeffPoly(self.algebra.coords,
                         {c: v for (g, c), v in self.terms.items() if g == gexp},
                         self.algebra.cap, self.truncated)

    def coefficients(self) -> dict:
        """Map generator monomial -> coefficient polynomial."""
        out: dict = {}
        for (g, c), v in self.terms.items():
            out.setdefault(g, {})[c] = v
        return {g: CoeffPoly(self.algebra.coords, t, self.algebra.cap) for g, t in out.items()}

    def to_poly(self) -> CoeffPoly:
        if any(g != self.algebra.zero_g for g, _ in self.terms):
            raise DegreeError("element involves generators, it is not a coefficient")
        return self.coefficient(self.algebra.zero_g)

    def scalar_value(self) -> Fraction:
        p = self.to_poly()
        if not p.is_constant():
            raise DegreeError("element is not a constant")
        return p.constant_value()

    def max_coeff_degree(self) -> int:
        return max((sum(c) for _, c in self.terms), default=-1)

    def sorted_keys(self):
        alg = self.algebra
        return sorted(self.terms, key=lambda k: (alg.gexp_degree(k[0]), sum(k[1]),
                                                 tuple(-x for x in k[0]), tuple(-x for x in k[1])))

    def __str__(self):
        alg = self.algebra
        pieces = []
        for key in self.sorted_keys():
            g, c = key
            mono = " ".join(filter(None, [_mono_str(alg.coords, c), _mono_str(alg.names, g)]))
            pieces.append((self.terms[key], mono))
        return _format_terms(pieces)

    def __repr__(self):
        return f"<{self}>"


def normal_form(alg: GradedAlgebra, word: Iterable[str], coeff=1) -> GradedElement:
    """Product of the named factors, in the given order, in canonical form."""
    out = alg.const(coeff)
    for name in word:
        out = out * alg.gen(name)
    return out


def multiply(a: GradedElement, b: GradedElement) -> GradedElement:
    return a * b


def _gexps_in_degree(degrees, odd, k):
    """Exponent vectors over positive-degree generators with weighted sum k."""
    n = len(degrees)
    out = []

    def rec(i, remaining, acc):
        if i == n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        top = 1 if odd[i] else remaining // degrees[i]
        for e in range(min(top, remaining // degrees[i]) + 1):
            acc.append(e)
            rec(i + 1, remaining - e * degrees[i], acc)
            acc.pop()

    rec(0, k, [])
    return out


def coeff_monomials(ncoords: int, cap: int) -> list[tuple]:
    """Exponent tuples of total degree at most ``cap``."""
    return sorted((e for e in product(range(cap + 1), repeat=ncoords) if sum(e) <= cap),
                  key=lambda e: (sum(e), tuple(-x for x in e)))


def basis_monomials(alg: GradedAlgebra, k: int, coeff_cap: int | None = None) -> list[tuple]:
    """Keys (gexp, cexp) spanning degree ``k``; coordinates need a coefficient cap."""
    if k < 0:
        return []
    if any(d < 0 for d in alg.degrees):
        raise DegreeError("basis enumeration needs positive-degree generators")
    cap = coeff_cap if coeff_cap is not None else alg.cap
    if alg.coords and cap is None:
        raise ValueError("a coefficient degree cap is required to enumerate a basis")
    cexps = coeff_monomials(len(alg.coords), cap) if alg.coords else [alg.zero_c]
    odd = [g.odd for g in alg.generators]
    gexps = _gexps_in_degree(alg.degrees, odd, k)
    return [(g, c) for g in gexps for c in cexps]


def basis_in_degree(alg: GradedAlgebra, k: int, coeff_cap: int | None = None) -> list[GradedElement]:
    return [GradedElement(alg, {key: Fraction(1)}) for key in basis_monomials(alg, k, coeff_cap)]
