"""Linear systems of plane curves with assigned (virtual) base points.

A system is stored by a basis of forms; its transforms on blown-up surfaces are never
materialized, only the local equations of basis members at the points that matter.
"""
import logging
import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from app.blowup import (
    advance,
    blow_up,
    exceptional_zeros,
    goes_through,
    goes_through_effectively,
    local_equation,
    multiplicity,
    order,
    virtual_local,
    virtual_transform,
)
from app.cluster import CHART_I, CHART_II, Cluster, InfNearPoint, WeightedCluster, restrict_gt1
from app.config import settings
from app.errors import (
    DepthExceeded,
    EmptySystem,
    FixedComponentPresent,
    NonRationalBasePoint,
    NotClosed,
    NotMember,
)
from app.exactpoly import (
    RatMatrix,
    TernaryForm,
    combine,
    gcd_all,
    kernel_basis,
    monomials,
    primitive_part,
    rank_of,
)
from app.resolution import common_zeros, is_resolved, singular_cluster

logger = logging.getLogger(__name__)

NONZERO_COEFFICIENTS = [c for c in range(-9, 10) if c != 0]


def coefficient_rows(forms: Sequence[TernaryForm], degree: int) -> list[list]:
    basis = monomials(degree)
    return [f.coefficient_vector(basis) for f in forms]


@dataclass(frozen=True)
class LinearSystem:
    degree: int
    basis: tuple[TernaryForm, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if not self.basis:
            raise EmptySystem("a linear system needs at least one member")
        if any(f.degree != self.degree or f.is_zero for f in self.basis):
            raise ValueError(f"basis members must be nonzero forms of degree {self.degree}")
        if rank_of(coefficient_rows(self.basis, self.degree)) != len(self.basis):
            raise ValueError("basis members are linearly dependent")

    @classmethod
    def from_forms(cls, forms: Iterable[TernaryForm], degree: int | None = None) -> "LinearSystem":
        """The span of ``forms``, keeping an independent subset in the given order."""
        forms = [f for f in forms if not f.is_zero]
        if not forms:
            raise EmptySystem("no nonzero form given")
        degree = forms[0].degree if degree is None else degree
        kept: list[TernaryForm] = []
        for f in forms:
            if rank_of(coefficient_rows(kept + [f], degree)) > len(kept):
                kept.append(f)
        return cls(degree, tuple(kept))

    @classmethod
    def complete(cls, degree: int) -> "LinearSystem":
        return cls(degree, tuple(TernaryForm.from_coefficients(degree, {m: 1}) for m in monomials(degree)))

    @property
    def proj_dim(self) -> int:
        return len(self.basis) - 1

    @cached_property
    def fixed_part(self) -> TernaryForm:
        g = gcd_all([f.poly for f in self.basis])
        return primitive_part(TernaryForm.from_expr(g.as_expr()))

    def has_fixed_component(self) -> bool:
        return self.fixed_part.degree > 0

    def require_no_fixed_component(self) -> None:
        if self.has_fixed_component():
            raise FixedComponentPresent(f"every member contains {self.fixed_part}")

    def contains(self, form: TernaryForm) -> bool:
        if form.is_zero:
            return True
        if form.degree != self.degree:
            return False
        return rank_of(coefficient_rows(list(self.basis) + [form], self.degree)) == len(self.basis)

    def span_contains(self, other: "LinearSystem") -> bool:
        return all(self.contains(f) for f in other.basis)

    def member(self, coefficients: Sequence) -> TernaryForm:
        return combine(self.basis, coefficients)

    def random_member(self, rng: random.Random) -> TernaryForm:
        return self.member([rng.choice(NONZERO_COEFFICIENTS) for _ in self.basis])

    def to_dict(self) -> dict:
        return {"degree": self.degree, "basis": [f.to_text() for f in self.basis], "projDim": self.proj_dim}


def system_through(degree: int, weighted: WeightedCluster) -> LinearSystem:
    """Degree-``degree`` forms going (virtually) through ``weighted``."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    if not weighted.cluster.is_closed():
        raise NotClosed("the weighted points do not form a cluster")
    weights = weighted.weights
    basis = list(LinearSystem.complete(degree).basis)
    for p, m in weighted.items:
        if m <= 0:
            continue
        locals_ = [virtual_local(f, p, weights) for f in basis]
        jets = [(a, b) for a in range(m) for b in range(m - a)]
        rows = [[g.coeff_monomial((a, b)) for g in locals_] for a, b in jets]
        kernel = kernel_basis(RatMatrix.from_rows(rows, cols=len(basis)))
        if not kernel:
            raise EmptySystem(f"no curve of degree {degree} goes through the weighted cluster")
        basis = [combine(basis, vec) for vec in kernel]
        logger.debug("after %s (weight %d): %d forms remain", p.label(), m, len(basis))
    return LinearSystem(degree, tuple(basis))


def system_multiplicities(system: LinearSystem, points: Iterable[InfNearPoint]) -> dict[InfNearPoint, int]:
    """``e_P(L)`` at ``points`` and all their predecessors."""
    system.require_no_fixed_component()
    wanted = set(points)
    for p in list(wanted):
        wanted.update(p.ancestors())
    weights: dict[InfNearPoint, int] = {}
    for p in sorted(wanted, key=lambda q: q.sort_key):
        weights[p] = min(order(virtual_local(f, p, weights)) for f in system.basis)
    return weights


def multiplicity_of_system(system: LinearSystem, point: InfNearPoint) -> int:
    return system_multiplicities(system, [point])[point]


def base_cluster(system: LinearSystem, max_depth: int | None = None) -> WeightedCluster:
    """The weighted cluster of base points, explored breadth-first."""
    max_depth = settings.max_depth if max_depth is None else max_depth
    system.require_no_fixed_component()
    if system.degree == 0:
        return WeightedCluster()
    proper = common_zeros(system.basis, NonRationalBasePoint, FixedComponentPresent)
    queue = deque()
    for origin in proper:
        p = InfNearPoint(origin)
        queue.append((p, [local_equation(f, p) for f in system.basis]))
    weights: dict[InfNearPoint, int] = {}
    while queue:
        p, locals_ = queue.popleft()
        if p.level > max_depth:
            raise DepthExceeded(f"more than {max_depth} blow-ups over {p.origin}")
        e = min(order(g) for g in locals_)
        if e == 0:
            continue
        weights[p] = e
        logger.debug("base point %s of multiplicity %d", p.label(), e)
        firsts = [blow_up(g, e, CHART_I) for g in locals_]
        seconds = [blow_up(g, e, CHART_II) for g in locals_]
        for step in exceptional_zeros(firsts, seconds, NonRationalBasePoint):
            queue.append((p.child(step), [advance(g, e, step) for g in locals_]))
    return WeightedCluster.from_mapping(weights)


def base_locus(system: LinearSystem) -> list[tuple]:
    """Proper base points of ``system``."""
    return [p.origin for p in base_cluster(system).cluster.proper_points()]


def is_base_point_free(system: LinearSystem, cluster: Cluster) -> bool:
    """Whether the transform of ``system`` on the surface blown up along ``cluster`` has no base points."""
    if not cluster.is_closed():
        raise NotClosed("not a cluster")
    weights = system_multiplicities(system, cluster)
    try:
        if any(InfNearPoint(q) not in cluster for q in common_zeros(system.basis, NonRationalBasePoint, FixedComponentPresent)):
            return False
        for p in cluster:
            e = weights[p]
            if e == 0:
                continue
            locals_ = [virtual_local(f, p, weights) for f in system.basis]
            firsts = [blow_up(g, e, CHART_I) for g in locals_]
            seconds = [blow_up(g, e, CHART_II) for g in locals_]
            if any(p.child(s) not in cluster for s in exceptional_zeros(firsts, seconds, NonRationalBasePoint)):
                return False
    except NonRationalBasePoint:
        return False
    return True


def _require_member(system: LinearSystem, form: TernaryForm) -> None:
    if form.is_zero or not system.contains(form):
        raise NotMember(f"{form} is not a member of the system")


def system_weighted(system: LinearSystem, cluster: Cluster) -> WeightedCluster:
    """``(K, e(L))``."""
    weights = system_multiplicities(system, cluster)
    return WeightedCluster(tuple((p, weights[p]) for p in cluster))


# the four equivalent conditions on a member D of L and a cluster K


def strict_transform_in_system(system: LinearSystem, form: TernaryForm, cluster: Cluster) -> bool:
    """``D~^K`` belongs to the transformed system ``L~^K``."""
    _require_member(system, form)
    return virtual_transform(form, system_weighted(system, cluster)).equals_strict()


def member_strict_in_transformed(system: LinearSystem, form: TernaryForm, cluster: Cluster) -> bool:
    """``e_P(D) = e_P(L)`` for every ``P`` in ``cluster``."""
    _require_member(system, form)
    weighted = system_weighted(system, cluster)
    return all(multiplicity(form, p) == w for p, w in weighted.items)


def multiplicities_bounded(system: LinearSystem, form: TernaryForm, cluster: Cluster) -> bool:
    _require_member(system, form)
    weighted = system_weighted(system, cluster)
    return all(multiplicity(form, p) <= w for p, w in weighted.items)


def goes_through_system_cluster(system: LinearSystem, form: TernaryForm, cluster: Cluster) -> bool:
    _require_member(system, form)
    return goes_through_effectively(form, system_weighted(system, cluster))


def goes_through_base_cluster(system: LinearSystem, form: TernaryForm) -> bool:
    """Every member goes (virtually) through the base cluster."""
    _require_member(system, form)
    return goes_through(form, base_cluster(system))


def is_general_member(system: LinearSystem, form: TernaryForm, base: WeightedCluster | None = None) -> bool:
    """``K^D = K_L^(>1)``, ``D~`` nonsingular in ``L~`` over ``K_L``, and ``D`` goes through ``K_L`` effectively."""
    _require_member(system, form)
    base = base_cluster(system) if base is None else base
    heavy = restrict_gt1(base)
    return (
        singular_cluster(form) == heavy
        and strict_transform_in_system(system, form, base.cluster)
        and is_resolved(form, base.cluster)
        and goes_through_effectively(form, base)
    )
