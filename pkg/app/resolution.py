"""The weighted cluster of singular points of a curve, by iterated blow-up.

Common zeros of forms (singular points, base points) are found on the chart z = 1 from
the resultant in y of two seeded random combinations of the forms: its rational roots
are the candidate abscissae, checked by an exact gcd in y of every form, and each of
its nonlinear factors q is checked by a gcd over Q[x]/(q). The line at infinity is
read off the restrictions directly.
"""
import logging
import random
from typing import Sequence

from sympy import QQ, Poly

from app.blowup import blow_up, exceptional_zeros, multiplicity, order, strict_local
from app.cluster import CHART_I, CHART_II, Cluster, InfNearPoint, WeightedCluster
from app.config import settings
from app.errors import (
    CurveError,
    DepthExceeded,
    NonRationalSingularity,
    PositiveDimensionalSingularLocus,
)
from app.exactpoly import (
    GENS,
    U,
    V,
    X,
    Y,
    TernaryForm,
    gcd_all,
    nonlinear_factors,
    normalize_point,
    rational_roots,
)

logger = logging.getLogger(__name__)

COMBINATION_DRAWS = 8


def _coprime_pair(polys: list[Poly], on_positive) -> tuple[Poly, Poly]:
    """Two random combinations of ``polys`` without a common factor."""
    rng = random.Random(len(polys))
    for _ in range(COMBINATION_DRAWS):
        a, b = (
            sum((rng.choice((-1, 1)) * rng.randint(1, 9) * p for p in polys), Poly(0, Y, X, domain=QQ))
            for _ in range(2)
        )
        if not a.is_zero and not b.is_zero and a.gcd(b).total_degree() == 0:
            return a, b
    raise on_positive("no two combinations of the forms are coprime")


def _coefficients_mod(g: Poly, q: Poly) -> list[Poly]:
    """Coefficients in y of ``g``, highest first, reduced modulo ``q(x)``."""
    coeffs = [Poly(c, X, domain=QQ).rem(q) for c in Poly(g.as_expr(), Y, domain=QQ[X]).all_coeffs()]
    return _strip(coeffs)


def _strip(coeffs: list[Poly]) -> list[Poly]:
    while coeffs and coeffs[0].is_zero:
        coeffs = coeffs[1:]
    return coeffs


def _rem_mod(a: list[Poly], b: list[Poly], q: Poly) -> list[Poly]:
    inverse = b[0].invert(q)
    a = list(a)
    while len(a) >= len(b):
        factor = (a[0] * inverse).rem(q)
        for i, c in enumerate(b):
            a[i] = (a[i] - factor * c).rem(q)
        a = _strip(a)
    return a


def _share_root_mod(polys: list[Poly], q: Poly) -> bool:
    """Whether ``polys`` have a common zero whose abscissa is a root of the irreducible ``q``."""
    g: list[Poly] = []
    for p in polys:
        h = _coefficients_mod(p, q)
        while h:
            g, h = h, _rem_mod(g, h, q)
    return len(g) > 1


def _affine_zeros(polys: list[Poly], on_irrational, on_positive) -> list[tuple]:
    """Common zeros in the chart z = 1 of polynomials in y, x."""
    if any(p.total_degree() == 0 for p in polys):
        return []
    a, b = _coprime_pair(polys, on_positive)
    r = a.resultant(b)
    if r.is_zero:
        raise on_positive("the forms share infinitely many zeros")
    r = Poly(r.as_expr(), X, domain=QQ)
    if r.degree() <= 0:
        return []
    if any(_share_root_mod(polys, q) for q in nonlinear_factors(r)):
        raise on_irrational("a common zero has an irrational coordinate")
    zeros = []
    for x0 in rational_roots(r)[0]:
        fibre = [Poly(p.as_expr().subs(X, x0), Y, domain=QQ) for p in polys]
        fibre = [f for f in fibre if not f.is_zero]
        if not fibre:
            raise on_positive(f"the forms share the line x = {x0}")
        ys, nonlinear = rational_roots(gcd_all(fibre))
        if nonlinear:
            raise on_irrational("a common zero has an irrational coordinate")
        zeros.extend((x0, y0, 1) for y0 in ys)
    return zeros


def common_zeros(
    forms: Sequence[TernaryForm],
    on_irrational: type[CurveError] = NonRationalSingularity,
    on_positive: type[CurveError] = PositiveDimensionalSingularLocus,
) -> list[tuple]:
    """All points of P^2 where every form vanishes, normalized and sorted."""
    forms = [f for f in forms if not f.is_zero]
    if not forms:
        raise on_positive("every form vanishes identically")
    if any(f.degree == 0 for f in forms):
        return []
    if gcd_all([f.poly for f in forms]).total_degree() > 0:
        raise on_positive("the forms share a common component")
    affine = [Poly(f.dehomogenize("z").as_expr().subs({U: X, V: Y}), Y, X, domain=QQ) for f in forms]
    zeros = _affine_zeros(affine, on_irrational, on_positive)
    # line at infinity: points [x:1:0], then [1:0:0]
    at_infinity = [Poly(f.poly.as_expr().subs({GENS[1]: 1, GENS[2]: 0}), X, domain=QQ) for f in forms]
    at_infinity = [p for p in at_infinity if not p.is_zero]
    if at_infinity:
        xs, nonlinear = rational_roots(gcd_all(at_infinity))
        if nonlinear:
            raise on_irrational("a common zero at infinity has an irrational coordinate")
        zeros.extend((a, 1, 0) for a in xs)
    if all(f.evaluate((1, 0, 0)) == 0 for f in forms):
        zeros.append((1, 0, 0))
    return sorted({normalize_point(p) for p in zeros})


def singular_points(form: TernaryForm) -> list[tuple]:
    """Proper singular points: common zeros of the curve and its partial derivatives."""
    if form.degree <= 1:
        return []
    return common_zeros([form] + [form.diff(v) for v in GENS])


def _charts(h: Poly, e: int) -> tuple[Poly, Poly]:
    return blow_up(h, e, CHART_I), blow_up(h, e, CHART_II)


def _with_partials(g: Poly) -> list[Poly]:
    return [g, g.diff(U), g.diff(V)]


def neighbourhood_points(form: TernaryForm, point: InfNearPoint) -> list[tuple[InfNearPoint, int]]:
    """Points of the first neighbourhood of ``point`` on the strict transform, with multiplicities.

    Points without rational coordinates are left out.
    """
    h = strict_local(form, point)
    e = order(h)
    if e == 0:
        return []
    first, second = _charts(h, e)
    children = [point.child(s) for s in exceptional_zeros([first], [second])]
    return [(q, multiplicity(form, q)) for q in children]


def singular_children(form: TernaryForm, point: InfNearPoint) -> list[InfNearPoint]:
    """Singular points of the strict transform on the exceptional line of ``point``."""
    h = strict_local(form, point)
    e = order(h)
    if e < 2:
        return []
    first, second = _charts(h, e)
    steps = exceptional_zeros(_with_partials(first), _with_partials(second), NonRationalSingularity)
    return [point.child(s) for s in steps]


def singular_cluster(form: TernaryForm, max_depth: int | None = None) -> WeightedCluster:
    max_depth = settings.max_depth if max_depth is None else max_depth
    weights: dict[InfNearPoint, int] = {}
    stack = [InfNearPoint(p) for p in reversed(singular_points(form))]
    while stack:
        p = stack.pop()
        if p.level > max_depth:
            raise DepthExceeded(f"more than {max_depth} blow-ups over {p.origin}")
        weights[p] = multiplicity(form, p)
        logger.debug("singular point %s of multiplicity %d", p.label(), weights[p])
        stack.extend(reversed(singular_children(form, p)))
    return WeightedCluster.from_mapping(weights)


def is_resolved(form: TernaryForm, cluster: Cluster) -> bool:
    """Whether the strict transform of ``form`` on the surface blown up along ``cluster`` is nonsingular."""
    try:
        if any(InfNearPoint(p) not in cluster for p in singular_points(form)):
            return False
        for p in cluster:
            if multiplicity(form, p) < 2:
                continue
            if any(q not in cluster for q in singular_children(form, p)):
                return False
    except NonRationalSingularity:
        return False
    return True
