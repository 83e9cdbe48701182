"""Rational curves of nonnegative type and their greatest rational linear system.

For an irreducible curve C of degree d with singular cluster (K, e):

* ``nu_tilde``   the self-intersection of the strict transform, d^2 - sum e_P^2
* ``genus``      (d-1)(d-2)/2 - sum e_P(e_P-1)/2
* ``L_C``        the degree-d forms going through (K, e)

A curve lies on a rational linear system iff it is rational and of nonnegative type.
"""
import logging
import random
from dataclasses import dataclass, field

from sympy import QQ, Poly, symbols

from app.blowup import ExcDecomposition, goes_through_effectively, multiplicity, total_transform
from app.cluster import InfNearPoint, WeightedCluster, restrict_gt1
from app.config import Settings, settings as default_settings
from app.errors import (
    CurveError,
    FixedComponentPresent,
    GenusNegative,
    NonRationalBasePoint,
    NotIrreducible,
    NotMember,
    NotNonnegativeType,
    NotRational,
    ZeroForm,
)
from app.exactpoly import (
    GENS,
    TernaryForm,
    is_irreducible_over_q,
    normalize_point,
    rational_roots,
    squarefree_and_primitive,
)
from app.linsys import (
    LinearSystem,
    base_cluster,
    is_base_point_free,
    system_through,
)
from app.models import CheckStatus
from app.resolution import singular_cluster

logger = logging.getLogger(__name__)

POINT_SEARCH_RANGE = range(-12, 13)
T = symbols("t")


CHECKS = (
    "dimension",
    "base_cluster",
    "goes_through_effectively",
    "general_member",
    "sub_pencil",
    "transformed_base_point_free",
)


def certify(form: TernaryForm, assume_irreducible: bool = False) -> TernaryForm:
    """Primitive part of ``form`` once it is known squarefree and (heuristically) irreducible."""
    if form.is_zero:
        raise ZeroForm("the zero form defines no curve")
    if form.degree == 0:
        raise NotIrreducible("a nonzero constant defines no curve")
    squarefree, primitive = squarefree_and_primitive(form)
    if not squarefree:
        raise NotIrreducible(f"{form} has a repeated factor")
    if not assume_irreducible and not is_irreducible_over_q(primitive):
        raise NotIrreducible(f"{form} factors over Q")
    return primitive


def arithmetic_genus(degree: int) -> int:
    return (degree - 1) * (degree - 2) // 2


def delta_invariant(cluster: WeightedCluster) -> int:
    return sum(m * (m - 1) // 2 for _, m in cluster.items)


def genus_from_cluster(degree: int, cluster: WeightedCluster) -> int:
    genus = arithmetic_genus(degree) - delta_invariant(cluster)
    if genus < 0:
        raise GenusNegative(f"genus {genus} < 0: the curve is reducible")
    return genus


def nu_tilde_from_cluster(form: TernaryForm, cluster: WeightedCluster) -> int:
    return total_transform(form, cluster.cluster).strict_self_intersection()


def nu_tilde(form: TernaryForm) -> int:
    return nu_tilde_from_cluster(form, singular_cluster(form))


def geometric_genus(form: TernaryForm) -> int:
    return genus_from_cluster(form.degree, singular_cluster(form))


def omega_nonempty(form: TernaryForm) -> bool:
    cluster = singular_cluster(form)
    return genus_from_cluster(form.degree, cluster) == 0 and nu_tilde_from_cluster(form, cluster) >= 0


def _lc_from_cluster(form: TernaryForm, cluster: WeightedCluster) -> LinearSystem:
    return system_through(form.degree, cluster)


def compute_LC(form: TernaryForm) -> LinearSystem:
    cluster = singular_cluster(form)
    if genus_from_cluster(form.degree, cluster) != 0:
        raise NotRational(f"{form} has positive genus")
    if nu_tilde_from_cluster(form, cluster) < 0:
        raise NotNonnegativeType(f"{form} has negative self-intersection after resolution")
    return _lc_from_cluster(form, cluster)


def membership_is_rational_system(form: TernaryForm, system: LinearSystem) -> bool:
    """Whether ``system`` (a system containing the curve) is rational, i.e. lies in ``L_C``."""
    if not system.contains(form):
        raise NotMember(f"{form} is not a member of the system")
    if system.proj_dim < 1:
        raise ValueError("a rational linear system has dimension at least 1")
    return compute_LC(form).span_contains(system)


@dataclass
class CurveAnalysis:
    form: TernaryForm
    degree: int
    singular_cluster: WeightedCluster
    nu_tilde: int
    arithmetic_genus: int
    delta: int
    geometric_genus: int
    is_rational: bool
    omega_nonempty: bool
    total: ExcDecomposition | None = None
    lc: LinearSystem | None = None
    lc_base: WeightedCluster | None = None

    @property
    def dim_lc(self) -> int | None:
        return None if self.lc is None else self.lc.proj_dim


def analyze(form: TernaryForm, settings: Settings = default_settings) -> CurveAnalysis:
    curve = certify(form, settings.assume_irreducible)
    cluster = singular_cluster(curve, settings.max_depth)
    genus = genus_from_cluster(curve.degree, cluster)
    total = total_transform(curve, cluster.cluster)
    nu = total.strict_self_intersection()
    rational = genus == 0
    omega = rational and nu >= 0
    lc = _lc_from_cluster(curve, cluster) if omega else None
    lc_base = None
    if lc is not None:
        try:
            lc_base = base_cluster(lc, settings.max_depth)
        except CurveError as err:
            logger.warning("base cluster of L_C failed: %s", err.code)
    logger.info("analyzed %s: nu~=%d genus=%d", curve, nu, genus)
    return CurveAnalysis(
        form=curve,
        degree=curve.degree,
        singular_cluster=cluster,
        nu_tilde=nu,
        arithmetic_genus=arithmetic_genus(curve.degree),
        delta=delta_invariant(cluster),
        geometric_genus=genus,
        is_rational=rational,
        omega_nonempty=omega,
        total=total,
        lc=lc,
        lc_base=lc_base,
    )


def _line_points(form: TernaryForm, line_point, direction) -> list[tuple]:
    """Rational points of the curve on the line through two points, from linear factors."""
    param = [p + T * q for p, q in zip(line_point, direction)]
    restricted = form.poly.as_expr().subs(dict(zip(GENS, param)), simultaneous=True)
    poly = Poly(restricted, T, domain=QQ)
    if poly.is_zero or poly.degree() <= 0:
        return []
    roots, _ = rational_roots(poly)
    return [tuple(p + r * q for p, q in zip(line_point, direction)) for r in roots]


def smooth_rational_points(form: TernaryForm, cluster: WeightedCluster, count: int) -> list[tuple]:
    """Up to ``count`` smooth rational points of the curve, away from the singular cluster."""
    singular = {p.origin for p in cluster.cluster.proper_points()}
    anchors = [p.origin for p in cluster.cluster.proper_points()]
    anchors += [normalize_point(e) for e in ((0, 0, 1), (0, 1, 0), (1, 0, 0)) if form.evaluate(e) == 0]
    lines = [((a, 0, 1), (0, 1, 0)) for a in POINT_SEARCH_RANGE]
    lines += [((0, b, 1), (1, 0, 0)) for b in POINT_SEARCH_RANGE]
    lines += [(anchor, (1, s, 0)) for anchor in anchors for s in POINT_SEARCH_RANGE]
    found: list[tuple] = []
    for base, direction in lines:
        if len(found) >= count:
            break
        if normalize_point(base) == normalize_point(direction):
            continue
        for pt in _line_points(form, base, direction):
            if all(c == 0 for c in pt):
                continue
            pt = normalize_point(pt)
            if pt in singular or pt in found:
                continue
            if multiplicity(form, InfNearPoint(pt)) == 1:
                found.append(pt)
    return sorted(found[:count])


def rational_sub_pencil(
    analysis: CurveAnalysis, rng: random.Random, retries: int
) -> tuple[LinearSystem, WeightedCluster] | None:
    """A pencil ``<C, G>`` inside ``L_C`` whose base points are all rational, with its base cluster."""
    form, cluster = analysis.form, analysis.singular_cluster
    points = smooth_rational_points(form, cluster, analysis.nu_tilde)
    if len(points) < analysis.nu_tilde:
        logger.warning("only %d of %d rational points found on %s", len(points), analysis.nu_tilde, form)
        return None
    assigned = WeightedCluster(cluster.items + tuple((InfNearPoint(p), 1) for p in points))
    sub = system_through(form.degree, assigned)
    for attempt in range(retries):
        g = sub.random_member(rng)
        pencil = LinearSystem.from_forms([form, g])
        if pencil.proj_dim != 1:
            continue
        try:
            return pencil, base_cluster(pencil)
        except (NonRationalBasePoint, FixedComponentPresent) as err:
            logger.warning("sub-pencil attempt %d rejected: %s", attempt + 1, err.code)
    return None


def _general_member_ok(analysis: CurveAnalysis, base: WeightedCluster, rng: random.Random, retries: int) -> bool:
    heavy = restrict_gt1(base)
    for attempt in range(retries):
        member = analysis.lc.random_member(rng)
        try:
            cluster = singular_cluster(member)
            genus = genus_from_cluster(member.degree, cluster)
        except CurveError as err:
            logger.warning("non-generic member on attempt %d: %s", attempt + 1, err.code)
            continue
        if genus == 0 and cluster == heavy == analysis.singular_cluster:
            return True
        logger.warning("member %s is not general (attempt %d)", member, attempt + 1)
    return False


@dataclass
class VerificationReport:
    curve: str
    analysis: CurveAnalysis
    checks: dict[str, CheckStatus] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return any(s is CheckStatus.failed for s in self.checks.values())


def _status(ok: bool) -> CheckStatus:
    return CheckStatus.passed if ok else CheckStatus.failed


def verify_theorem(form: TernaryForm, settings: Settings = default_settings) -> VerificationReport:
    analysis = analyze(form, settings)
    report = VerificationReport(curve=analysis.form.to_text(), analysis=analysis)
    if not analysis.omega_nonempty:
        report.checks = {name: CheckStatus.skipped for name in CHECKS}
        return report
    rng = random.Random(settings.seed)
    lc, cluster = analysis.lc, analysis.singular_cluster
    checks = report.checks

    checks["dimension"] = _status(lc.contains(analysis.form) and lc.proj_dim == analysis.nu_tilde + 1)
    base = analysis.lc_base
    checks["base_cluster"] = _status(base == cluster)
    checks["goes_through_effectively"] = _status(base is not None and goes_through_effectively(analysis.form, base))

    if base is None:
        checks["general_member"] = CheckStatus.failed
    else:
        checks["general_member"] = _status(
            all(_general_member_ok(analysis, base, rng, settings.retries) for _ in range(settings.member_samples))
        )

    pencil = rational_sub_pencil(analysis, rng, settings.retries)
    if pencil is None:
        checks["sub_pencil"] = CheckStatus.skipped
    else:
        _, pencil_base = pencil
        inside = cluster.cluster.issubset(pencil_base.cluster)
        strict_square = total_transform(analysis.form, pencil_base.cluster).strict_self_intersection()
        extra = len(pencil_base.cluster) - len(cluster.cluster)
        checks["sub_pencil"] = _status(inside and analysis.nu_tilde == strict_square + extra)

    checks["transformed_base_point_free"] = _status(is_base_point_free(lc, cluster.cluster))
    if report.failed:
        logger.warning("verification of %s failed: %s", report.curve, {k: v.value for k, v in checks.items()})
    return report
