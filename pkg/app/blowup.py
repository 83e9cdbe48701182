"""Blow-up geometry: local equations, multiplicities and strict/total/virtual transforms.

Divisors on the blown-up surface S_K are handled through their classes: degree,
multiplicities ``e_P`` and coefficients on the strict exceptional curves ``E~_P``.
Local computations on charts only serve to read off multiplicities.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from sympy import QQ, Poly, Rational

from app.cluster import (
    CHART_I,
    Cluster,
    InfNearPoint,
    ProximityMatrix,
    Step,
    WeightedCluster,
    proximity_matrix,
)
from app.errors import CurveError, ZeroForm
from app.exactpoly import LOCAL_GENS, U, V, TernaryForm, gcd_all, rational_roots

logger = logging.getLogger(__name__)

_ZERO = Poly(0, *LOCAL_GENS, domain=QQ)


@dataclass(frozen=True)
class AffinePoly:
    poly: Poly
    chart: str

    @property
    def order(self) -> int:
        return order(self.poly)

    def __str__(self) -> str:
        return str(self.poly.as_expr())


def order(g: Poly) -> int:
    """Lowest total degree of ``g``, i.e. its multiplicity at the origin."""
    degrees = [sum(m) for m, c in g.terms() if c != 0]
    if not degrees:
        raise ZeroForm("the zero polynomial has no order")
    return min(degrees)


def lowest_form(g: Poly) -> Poly:
    e = order(g)
    return Poly.from_dict({m: c for m, c in g.terms() if sum(m) == e and c != 0}, *LOCAL_GENS, domain=QQ)


def normalize_sign(g: Poly) -> Poly:
    """Make the leading coefficient of the lowest-order part positive."""
    if g.is_zero:
        return g
    lead = max(lowest_form(g).terms())[1]
    return g if lead > 0 else -g


def translate(g: Poly, a, b) -> Poly:
    if a == 0 and b == 0:
        return g
    moved = g.as_expr().subs({U: U + Rational(a), V: V + Rational(b)}, simultaneous=True)
    return Poly(moved, *LOCAL_GENS, domain=QQ)


def blow_up(g: Poly, e: int, chart: int) -> Poly:
    """Pull ``g`` back to a chart of the blow-up at the origin and divide by the exceptional coordinate to the power ``e``."""
    if g.is_zero:
        return g
    terms = {}
    for (a, b), c in g.terms():
        if c == 0:
            continue
        key = (a + b - e, b) if chart == CHART_I else (a, a + b - e)
        if min(key) < 0:
            raise ValueError(f"exceptional coordinate does not divide to the power {e}")
        terms[key] = c
    return Poly.from_dict(terms, *LOCAL_GENS, domain=QQ)


def advance(g: Poly, e: int, step: Step) -> Poly:
    return translate(blow_up(g, e, step.chart), *step.coords)


def local_equation(form: TernaryForm, point: InfNearPoint) -> Poly:
    """Equation of ``form`` in the standard chart of a proper point, centred at it."""
    origin = point.origin
    a, b = {"z": (origin[0], origin[1]), "y": (origin[0], origin[2]), "x": (origin[1], origin[2])}[point.chart]
    return translate(form.dehomogenize(point.chart), a, b)


@lru_cache(maxsize=8192)
def strict_local(form: TernaryForm, point: InfNearPoint) -> Poly:
    """Local equation of the strict transform of ``form`` at ``point``, centred at the origin."""
    if form.is_zero:
        raise ZeroForm("the zero form has no strict transform")
    if point.is_proper:
        return local_equation(form, point)
    below = strict_local(form, point.parent)
    return advance(below, order(below), point.path[-1])


def virtual_local(form: TernaryForm, point: InfNearPoint, weights: Mapping[InfNearPoint, int]) -> Poly:
    """Local equation of the virtual transform of ``form`` at ``point`` w.r.t. the ancestors' weights.

    Raises ValueError when the form does not go through an ancestor's weight.
    """
    g = local_equation(form, InfNearPoint(point.origin))
    for k, step in enumerate(point.path):
        g = advance(g, weights[InfNearPoint(point.origin, point.path[:k])], step)
    return g


def strict_transform_local(form: TernaryForm, point: InfNearPoint) -> AffinePoly:
    tag = "/".join([point.chart] + [s.label() for s in point.path])
    return AffinePoly(normalize_sign(strict_local(form, point)), tag)


def multiplicity(form: TernaryForm, point: InfNearPoint) -> int:
    """``e_P(F)``; zero when ``point`` is not on the successive strict transforms."""
    return order(strict_local(form, point))


def on_exceptional_line(g: Poly) -> Poly:
    """Restriction of a chart-I polynomial to ``u = 0``, as a polynomial in v."""
    terms = {(b,): c for (a, b), c in g.terms() if a == 0 and c != 0}
    return Poly.from_dict(terms or {(0,): 0}, V, domain=QQ)


def exceptional_zeros(
    first: Sequence[Poly],
    second: Sequence[Poly],
    on_irrational: type[CurveError] | None = None,
) -> list[Step]:
    """Common zeros on the exceptional line of polynomials given in chart I and chart II.

    A nonlinear common factor means a common zero without rational coordinates:
    it raises ``on_irrational`` when given, and is skipped otherwise.
    """
    restricted = [on_exceptional_line(g) for g in first]
    nonzero = [r for r in restricted if not r.is_zero]
    if not nonzero:
        raise ValueError("the exceptional line is a common component")
    roots, nonlinear = rational_roots(gcd_all(nonzero))
    if nonlinear and on_irrational is not None:
        raise on_irrational("a common zero on an exceptional line has no rational coordinates")
    steps = [Step.first(t) for t in roots]
    if all(g.coeff_monomial(1) == 0 for g in second):
        steps.append(Step.second())
    return steps


@dataclass(frozen=True)
class ExcDecomposition:
    """``D~ + sum exc_P E~_P`` on S_K, with the class of the whole divisor in the E-bar basis."""

    degree: int
    proximity: ProximityMatrix
    strict_multiplicities: tuple[int, ...]
    exc_coefficients: tuple[int, ...]
    ebar_class: tuple[int, ...]

    @property
    def points(self) -> tuple[InfNearPoint, ...]:
        return self.proximity.points

    def e(self, point: InfNearPoint) -> int:
        return self.strict_multiplicities[self.proximity.index(point)]

    def exc(self, point: InfNearPoint) -> int:
        return self.exc_coefficients[self.proximity.index(point)]

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.exc_coefficients)

    def equals_strict(self) -> bool:
        return all(c == 0 for c in self.exc_coefficients)

    def strict_ebar(self) -> list[int]:
        shift = self.proximity.apply(self.exc_coefficients)
        return [w - s for w, s in zip(self.ebar_class, shift)]

    def strict_self_intersection(self) -> int:
        """``(D~)^2`` from the pairing ``H^2 = 1``, ``H.E-bar = 0``, ``E-bar_P.E-bar_Q = -delta``."""
        return self.degree ** 2 - sum(c * c for c in self.strict_ebar())

    def self_intersection(self) -> int:
        return self.degree ** 2 - sum(c * c for c in self.ebar_class)

    def to_dict(self) -> dict:
        return {"degree": self.degree, "e": list(self.strict_multiplicities), "exc": list(self.exc_coefficients)}


def total_transform(form: TernaryForm, cluster: Cluster) -> ExcDecomposition:
    prox = proximity_matrix(cluster)
    e = tuple(multiplicity(form, p) for p in prox.points)
    return ExcDecomposition(form.degree, prox, e, tuple(prox.solve(e)), (0,) * len(e))


def virtual_transform(form: TernaryForm, weighted: WeightedCluster) -> ExcDecomposition:
    """``D-check = D-bar - sum m_P E-bar_P`` expanded on the strict exceptional curves."""
    prox = proximity_matrix(weighted.cluster)
    weights = weighted.weights
    m = [weights[p] for p in prox.points]
    e = tuple(multiplicity(form, p) for p in prox.points)
    exc = prox.solve([a - b for a, b in zip(e, m)])
    return ExcDecomposition(form.degree, prox, e, tuple(exc), tuple(-w for w in m))


def goes_through(form: TernaryForm, weighted: WeightedCluster) -> bool:
    if form.is_zero:
        raise ZeroForm("only effective divisors go through a weighted cluster")
    return virtual_transform(form, weighted).is_effective()


def goes_through_effectively(form: TernaryForm, weighted: WeightedCluster) -> bool:
    if form.is_zero:
        raise ZeroForm("only effective divisors go through a weighted cluster")
    return all(multiplicity(form, p) == w for p, w in weighted.items)
