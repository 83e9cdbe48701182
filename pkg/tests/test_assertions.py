"""Randomized checks of the passage conditions, seeded so every run sees the same instances."""
import random

import pytest

from app.blowup import goes_through, goes_through_effectively, multiplicity, total_transform, virtual_transform
from app.cluster import Cluster, InfNearPoint, Step, WeightedCluster, proximate_points, proximity_matrix, restrict_gt1
from app.errors import CurveError, NotClosed, NotMember
from app.exactpoly import parse_form
from app.linsys import (
    LinearSystem,
    base_cluster,
    goes_through_base_cluster,
    goes_through_system_cluster,
    is_general_member,
    member_strict_in_transformed,
    multiplicities_bounded,
    strict_transform_in_system,
)
from app.rational import compute_LC, genus_from_cluster, membership_is_rational_system
from app.resolution import singular_cluster

from conftest import CORPUS, SMOOTH_CUBIC

CURVES = [c[0] for c in CORPUS] + [SMOOTH_CUBIC, "x^3 + y^3 - x*y*z"]
ORIGINS = [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1), (-1, 0, 1)]
STEPS = [Step.first(-1), Step.first(0), Step.first(1), Step.second()]
INSTANCES = 100


def _random_cluster(rng: random.Random, form) -> Cluster:
    points = set(singular_cluster(form).points) if rng.random() < 0.5 else set()
    for _ in range(rng.randint(1, 4)):
        p = InfNearPoint(rng.choice(ORIGINS))
        for _ in range(rng.randint(0, 3)):
            p = p.child(rng.choice(STEPS))
        points.add(p)
        points.update(p.ancestors())
    return Cluster.closed(points)


def _random_weights(rng: random.Random, form, cluster: Cluster) -> WeightedCluster:
    return WeightedCluster(tuple((p, max(0, multiplicity(form, p) + rng.randint(-1, 1))) for p in cluster))


def _instances():
    rng = random.Random(0)
    out = []
    for k in range(INSTANCES):
        form = parse_form(CURVES[k % len(CURVES)])
        cluster = _random_cluster(rng, form)
        out.append((form, _random_weights(rng, form, cluster), rng.randrange(1 << 30)))
    return out


INSTANCE_LIST = _instances()


@pytest.mark.parametrize("index", range(INSTANCES))
def test_subcluster_monotonicity(index):
    form, weighted, seed = INSTANCE_LIST[index]
    if not goes_through(form, weighted):
        return
    rng = random.Random(seed)
    keep = set()
    for p in weighted.points:
        if rng.random() < 0.6:
            keep.add(p)
            keep.update(p.ancestors())
    assert goes_through(form, weighted.restrict(keep))


@pytest.mark.parametrize("index", range(INSTANCES))
def test_forced_equality(index):
    form, weighted, _ = INSTANCE_LIST[index]
    bounded = all(multiplicity(form, p) <= m for p, m in weighted.items)
    if goes_through(form, weighted) and bounded:
        assert all(multiplicity(form, p) == m for p, m in weighted.items)


@pytest.mark.parametrize("index", range(INSTANCES))
def test_intersection_bookkeeping(index):
    form, weighted, _ = INSTANCE_LIST[index]
    expected = form.degree ** 2 - sum(multiplicity(form, p) ** 2 for p in weighted.points)
    assert total_transform(form, weighted.cluster).strict_self_intersection() == expected
    assert virtual_transform(form, weighted).strict_self_intersection() == expected


def test_instances_are_not_vacuous():
    passing = [i for i, (form, w, _) in enumerate(INSTANCE_LIST) if goes_through(form, w)]
    assert 0 < len(passing) < INSTANCES


RATIONAL = [c[0] for c in CORPUS]
SYSTEMS = {text: compute_LC(parse_form(text)) for text in RATIONAL}


def _member_through(system, origin):
    """A member of ``system`` vanishing at the proper point ``origin``."""
    values = [f.evaluate(origin) for f in system.basis]
    k = next((i for i, v in enumerate(values) if v != 0), None)
    if k is None:
        return system.basis[0]
    j = (k + 1) % len(values)
    return system.basis[j].scale(values[k]) - system.basis[k].scale(values[j])


def _member_instances():
    rng = random.Random(0)
    out = []
    for k in range(INSTANCES):
        text = RATIONAL[k % len(RATIONAL)]
        form, lc = parse_form(text), SYSTEMS[text]
        cluster = _random_cluster(rng, form)
        if k % 4 == 0:
            member = form
        elif k % 4 == 1:
            origin = rng.choice(ORIGINS)
            member = _member_through(lc, origin)
            cluster = Cluster.closed(cluster.points | {InfNearPoint(origin)})
        else:
            member = lc.random_member(rng)
        out.append((lc, member, cluster))
    return out


MEMBER_INSTANCES = _member_instances()


@pytest.mark.parametrize("index", range(len(MEMBER_INSTANCES)))
def test_four_conditions_agree(index):
    system, member, cluster = MEMBER_INSTANCES[index]
    values = [
        strict_transform_in_system(system, member, cluster),
        member_strict_in_transformed(system, member, cluster),
        multiplicities_bounded(system, member, cluster),
        goes_through_system_cluster(system, member, cluster),
    ]
    assert len(set(values)) == 1


@pytest.mark.parametrize("text", RATIONAL)
def test_general_member_goes_through_base_cluster_effectively(text):
    system = compute_LC(parse_form(text))
    rng = random.Random(0)
    for _ in range(8):
        try:
            if is_general_member(system, system.random_member(rng)):
                return
        except CurveError:
            continue
    pytest.fail("no general member found in 8 draws")


def test_four_conditions_are_not_vacuous():
    outcomes = {goes_through_system_cluster(system, member, cluster) for system, member, cluster in MEMBER_INSTANCES}
    assert outcomes == {True, False}


@pytest.mark.parametrize("index", range(INSTANCES))
def test_effective_passage_characterizations(index):
    form, weighted, _ = INSTANCE_LIST[index]
    equal = all(multiplicity(form, p) == m for p, m in weighted.items)
    effective = goes_through_effectively(form, weighted)
    assert effective == equal
    assert effective == (goes_through(form, weighted) and equal)
    assert effective == (goes_through(form, weighted) and virtual_transform(form, weighted).equals_strict())


@pytest.mark.parametrize("text", CURVES)
def test_curves_go_through_their_singular_cluster_effectively(text):
    form = parse_form(text)
    weighted = singular_cluster(form)
    assert goes_through_effectively(form, weighted)
    assert virtual_transform(form, weighted).equals_strict()


def _pipeline_weighted():
    weighted = [singular_cluster(parse_form(text)) for text in CURVES]
    weighted += [base_cluster(system) for system in SYSTEMS.values()]
    weighted += [w for _, w, _ in INSTANCE_LIST]
    return weighted


PIPELINE = _pipeline_weighted()


def test_exceptional_curves_expand_over_proximate_points():
    for weighted in PIPELINE:
        prox = proximity_matrix(weighted.cluster)
        n = len(prox.points)
        columns = []
        for j, p in enumerate(prox.points):
            expected = [int(i == j) for i in range(n)]
            for i, q in enumerate(prox.points):
                if p in proximate_points(q):
                    expected[i] -= 1
            column = [prox.matrix[i][j] for i in range(n)]
            assert column == expected
            columns.append(column)
        for j, p in enumerate(prox.points):
            for k in range(n):
                pairing = -sum(a * b for a, b in zip(columns[j], columns[k]))
                if k == j:
                    assert pairing == prox.exceptional_self_intersection(p)
                else:
                    assert pairing in (0, 1)


def test_proximity_inverse_is_nonnegative():
    for weighted in PIPELINE:
        inverse = proximity_matrix(weighted.cluster).inverse()
        assert all(entry >= 0 for row in inverse for entry in row)


def test_restrict_gt1_is_idempotent():
    heavy_clusters = 0
    for weighted in PIPELINE:
        try:
            heavy = restrict_gt1(weighted)
        except NotClosed:
            continue
        assert restrict_gt1(heavy) == heavy
        heavy_clusters += bool(len(heavy))
    assert heavy_clusters > 0


@pytest.mark.parametrize("text", RATIONAL)
def test_members_go_through_the_base_cluster(text):
    system = SYSTEMS[text]
    rng = random.Random(2)
    for _ in range(3):
        assert goes_through_base_cluster(system, system.random_member(rng))
    with pytest.raises(NotMember):
        goes_through_base_cluster(system, parse_form(SMOOTH_CUBIC))


@pytest.mark.parametrize("text", RATIONAL)
def test_members_of_rational_subsystems_are_rational(text):
    form, lc = parse_form(text), SYSTEMS[text]
    rng = random.Random(3)
    for extra in (1, 2):
        sub = LinearSystem.from_forms([form])
        while sub.proj_dim < extra:
            sub = LinearSystem.from_forms([*sub.basis, lc.random_member(rng)])
        assert membership_is_rational_system(form, sub)
        genera = []
        for _ in range(5):
            member = sub.random_member(rng)
            try:
                genera.append(genus_from_cluster(member.degree, singular_cluster(member)))
            except CurveError:
                continue
        assert genera and set(genera) == {0}
