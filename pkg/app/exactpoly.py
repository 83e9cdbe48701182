"""Exact rational polynomial algebra and linear algebra over Q.

Forms are sympy ``Poly`` objects over ``QQ`` in the generators x, y, z; local
equations on blow-up charts are ``Poly`` objects in u, v. Linear algebra uses
fraction-free (integer pivoting) Gauss-Jordan elimination.
"""
import logging
import math
import re
from dataclasses import dataclass
from functools import reduce
from itertools import combinations_with_replacement
from tokenize import TokenError
from typing import Iterable, Mapping, Sequence

from sympy import QQ, Poly, Rational, SympifyError, symbols
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)
from sympy.polys.polyerrors import CoercionFailed, PolynomialError

from app.errors import FormSyntaxError, NotHomogeneous, ZeroForm

logger = logging.getLogger(__name__)

Rat = Rational
X, Y, Z = symbols("x y z")
U, V = symbols("u v")
GENS = (X, Y, Z)
LOCAL_GENS = (U, V)

ProjPoint = tuple[Rational, Rational, Rational]

_TRANSFORMATIONS = standard_transformations + (implicit_multiplication_application, convert_xor)
_ALLOWED = re.compile(r"^[0-9xyz+\-*/^()\s]+$")
_CHART_AXES = {"z": (0, 1), "y": (0, 2), "x": (1, 2)}


def monomials(degree: int) -> list[tuple[int, int, int]]:
    """All exponent triples of total degree ``degree``, x-heaviest first."""
    triples = []
    for picks in combinations_with_replacement(range(3), degree):
        triples.append(tuple(picks.count(i) for i in range(3)))
    return sorted(triples, reverse=True)


@dataclass(frozen=True)
class TernaryForm:
    degree: int
    poly: Poly

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if not self.poly.is_zero:
            if not self.poly.is_homogeneous:
                raise NotHomogeneous(f"{self.poly.as_expr()} is not homogeneous")
            if self.poly.total_degree() != self.degree:
                raise ValueError("degree does not match the polynomial")

    @classmethod
    def from_expr(cls, expr, degree: int | None = None) -> "TernaryForm":
        poly = Poly(expr, *GENS, domain=QQ)
        if degree is None:
            degree = 0 if poly.is_zero else poly.total_degree()
        return cls(degree, poly)

    @classmethod
    def from_coefficients(cls, degree: int, coefficients: Mapping[tuple[int, int, int], Rational]) -> "TernaryForm":
        terms = {m: Rational(c) for m, c in coefficients.items() if c != 0}
        if any(sum(m) != degree for m in terms):
            raise NotHomogeneous("exponent triple does not sum to the degree")
        if not terms:
            return cls.zero(degree)
        return cls(degree, Poly.from_dict(terms, *GENS, domain=QQ))

    @classmethod
    def zero(cls, degree: int) -> "TernaryForm":
        return cls(degree, Poly(0, *GENS, domain=QQ))

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    @property
    def coefficients(self) -> dict[tuple[int, int, int], Rational]:
        return {m: c for m, c in self.poly.terms() if c != 0}

    def coefficient_vector(self, basis: Sequence[tuple[int, int, int]] | None = None) -> list[Rational]:
        coeffs = self.coefficients
        return [coeffs.get(m, Rational(0)) for m in (basis or monomials(self.degree))]

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        if other.degree != self.degree:
            raise NotHomogeneous("cannot add forms of different degrees")
        return TernaryForm(self.degree, self.poly + other.poly)

    def __sub__(self, other: "TernaryForm") -> "TernaryForm":
        return self + other.scale(-1)

    def __mul__(self, other: "TernaryForm") -> "TernaryForm":
        return TernaryForm(self.degree + other.degree, self.poly * other.poly)

    def scale(self, c) -> "TernaryForm":
        return TernaryForm(self.degree, self.poly.mul_ground(Rational(c)))

    def diff(self, var) -> "TernaryForm":
        if self.degree == 0:
            return TernaryForm.zero(0)
        return TernaryForm(self.degree - 1, self.poly.diff(var))

    def evaluate(self, point: Sequence) -> Rational:
        value = Rational(0)
        for (a, b, c), coeff in self.poly.terms():
            value += coeff * point[0] ** a * point[1] ** b * point[2] ** c
        return value

    def dehomogenize(self, chart: str) -> Poly:
        """Affine equation in the standard chart ``chart`` (the variable set to 1)."""
        i, j = _CHART_AXES[chart]
        terms: dict[tuple[int, int], Rational] = {}
        for m, c in self.poly.terms():
            key = (m[i], m[j])
            terms[key] = terms.get(key, 0) + c
        return Poly.from_dict(terms, *LOCAL_GENS, domain=QQ) if terms else Poly(0, *LOCAL_GENS, domain=QQ)

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        pieces = []
        for m, c in sorted(self.poly.terms(), reverse=True):
            factors = [f"{name}^{e}" if e > 1 else name for name, e in zip("xyz", m) if e]
            mono = "*".join(factors)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_text()


def parse_form(text: str) -> TernaryForm:
    """Parse ``text`` into a homogeneous form in x, y, z with rational coefficients."""
    if not text or not text.strip() or not _ALLOWED.match(text):
        raise FormSyntaxError(f"cannot parse {text!r}")
    try:
        expr = parse_expr(text, local_dict={"x": X, "y": Y, "z": Z}, transformations=_TRANSFORMATIONS)
        poly = Poly(expr, *GENS, domain=QQ)
    except (SyntaxError, TokenError, TypeError, ValueError, SympifyError, PolynomialError,
            CoercionFailed, ZeroDivisionError) as exc:
        raise FormSyntaxError(f"cannot parse {text!r}: {exc}") from exc
    if poly.is_zero:
        return TernaryForm.zero(0)
    if not poly.is_homogeneous:
        raise NotHomogeneous(f"{text!r} mixes total degrees")
    return TernaryForm(poly.total_degree(), poly)


def primitive_part(form: TernaryForm) -> TernaryForm:
    coeffs = form.coefficients.values()
    den = math.lcm(*(Rational(c).q for c in coeffs))
    num = math.gcd(*(int(Rational(c) * den) for c in coeffs))
    return form.scale(Rational(den, num))


def squarefree_and_primitive(form: TernaryForm) -> tuple[bool, TernaryForm]:
    """Whether ``form`` is squarefree (gcd with its partials is constant) and its primitive part."""
    if form.is_zero:
        raise ZeroForm("the zero form has no primitive part")
    g = reduce(lambda a, b: a.gcd(b), (form.diff(v).poly for v in GENS), form.poly)
    return g.total_degree() == 0, primitive_part(form)


def is_irreducible_over_q(form: TernaryForm) -> bool:
    if form.is_zero or form.degree == 0:
        return False
    _, factors = form.poly.factor_list()
    return len(factors) == 1 and factors[0][1] == 1


def combine(forms: Sequence[TernaryForm], coefficients: Sequence) -> TernaryForm:
    total = TernaryForm.zero(forms[0].degree)
    for form, c in zip(forms, coefficients):
        if c:
            total = total + form.scale(c)
    return total


def gcd_all(polys: Iterable[Poly]) -> Poly:
    return reduce(lambda a, b: a.gcd(b), polys)


def rational_roots(poly: Poly) -> tuple[list[Rational], bool]:
    """Rational roots of a nonzero univariate polynomial, and whether a nonlinear factor remains."""
    if poly.is_zero:
        raise ZeroForm("the zero polynomial has every root")
    if poly.degree() <= 0:
        return [], False
    _, factors = poly.factor_list()
    roots, nonlinear = set(), False
    for factor, _ in factors:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            roots.add(-b / a)
        else:
            nonlinear = True
    return sorted(roots), nonlinear


def nonlinear_factors(poly: Poly) -> list[Poly]:
    if poly.is_zero or poly.degree() <= 1:
        return []
    _, factors = poly.factor_list()
    return [f.monic() for f, _ in factors if f.degree() > 1]


def normalize_point(point: Sequence) -> ProjPoint:
    """Scale a projective point so its last nonzero coordinate is 1."""
    coords = [Rational(c) for c in point]
    for c in reversed(coords):
        if c != 0:
            return tuple(v / c for v in coords)
    raise ValueError("[0:0:0] is not a projective point")


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Rational, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("matrix dimensions do not match its entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [tuple(Rational(e) for e in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    def rank(self) -> int:
        return len(_fraction_free_echelon(self)[1])


def _integer_row(row: Sequence[Rational]) -> list[int]:
    den = math.lcm(*(r.q for r in row)) if row else 1
    return [int(r * den) for r in row]


def _primitive_row(row: list[int]) -> list[int]:
    g = math.gcd(*row)
    return [e // g for e in row] if g > 1 else row


def _fraction_free_echelon(m: RatMatrix) -> tuple[list[list[int]], list[int]]:
    # reduced echelon form over Z: every pivot column is zero outside its pivot row
    rows = [_primitive_row(_integer_row(r)) for r in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(len(rows)):
            a = rows[i][c]
            if i != r and a != 0:
                rows[i] = _primitive_row([p * s - a * t for s, t in zip(rows[i], rows[r])])
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _primitive_vector(vec: list[Rational]) -> tuple[Rational, ...]:
    ints = _primitive_row(_integer_row(vec))
    return tuple(Rational(e) for e in ints)


def kernel_basis(m: RatMatrix) -> list[tuple[Rational, ...]]:
    """Exact basis of the right null space, one primitive integer vector per free column."""
    rows, pivots = _fraction_free_echelon(m)
    basis = []
    for f in (c for c in range(m.cols) if c not in pivots):
        vec = [Rational(0)] * m.cols
        vec[f] = Rational(1)
        for row, pc in zip(rows, pivots):
            vec[pc] = Rational(-row[f], row[pc])
        basis.append(_primitive_vector(vec))
    return basis


def rank_of(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return RatMatrix.from_rows(vectors).rank()
