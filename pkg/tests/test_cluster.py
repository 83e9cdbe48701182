import pytest

from app.cluster import (
    CHART_II,
    Cluster,
    InfNearPoint,
    Step,
    WeightedCluster,
    canonical_order,
    enriques_dot,
    exceptional_lines,
    proximate_points,
    proximity_matrix,
    restrict_gt1,
    subcluster_check,
)
from app.errors import NotClosed

P = InfNearPoint((0, 0, 1))
P1 = P.child(Step.first(0))
P2_free = P1.child(Step.first(1))
P2_sat = P1.child(Step.first(0))
P2_vertical = P1.child(Step.second())


def test_step_must_be_canonical():
    with pytest.raises(ValueError):
        Step(1, (1, 0))
    with pytest.raises(ValueError):
        Step(CHART_II, (0, 2))


def test_origin_is_normalized():
    assert InfNearPoint((0, 0, 5)) == P
    assert InfNearPoint((0, 3, 0)).origin == (0, 1, 0)
    assert InfNearPoint((2, 0, 0)).chart == "x"


def test_natural_order():
    assert P.precedes(P1) and P1.precedes(P2_free)
    assert not P1.precedes(P)
    assert not P2_free.precedes(P2_sat)
    assert P2_sat.ancestors() == [P, P1]
    assert P2_sat.parent == P1 and P.parent is None


def test_first_neighbour_is_free():
    assert proximate_points(P1) == (P,)


def test_satellite_points():
    # the point of E_P1 on the strict transform of E_P is reached through chart II
    assert set(proximate_points(P2_vertical)) == {P, P1}
    # v = 0 in chart I is the strict transform of the old v = 0 line, not of E_P
    assert proximate_points(P2_sat) == (P1,)
    assert proximate_points(P2_free) == (P1,)


def test_exceptional_lines_follow_charts():
    assert exceptional_lines(P1) == ((P, "u"),)
    assert exceptional_lines(P2_vertical) == ((P, "u"), (P1, "v"))


def test_closure():
    assert Cluster.closed([P, P1]).is_closed()
    with pytest.raises(NotClosed):
        Cluster.closed([P, P2_free])
    assert subcluster_check(Cluster.closed([P]), Cluster.closed([P, P1]))
    assert not subcluster_check(Cluster(frozenset([P1])), Cluster.closed([P, P1]))


def test_canonical_order_puts_ancestors_first():
    q = InfNearPoint((0, 1, 0))
    assert canonical_order([q, P2_free, P1, P]) == [P, P1, P2_free, q]


def test_minimal_and_maximal_points():
    cluster = Cluster.closed([P, P1, P2_free, P2_vertical])
    assert cluster.minimal_points() == [P]
    assert set(cluster.maximal_points()) == {P2_free, P2_vertical}
    assert cluster.proper_points() == [P]


def test_proximity_matrix_and_inverse():
    cluster = Cluster.closed([P, P1, P2_vertical])
    prox = proximity_matrix(cluster)
    assert prox.points == (P, P1, P2_vertical)
    assert prox.matrix == ((1, 0, 0), (-1, 1, 0), (-1, -1, 1))
    inverse = prox.inverse()
    for i in range(3):
        row = prox.apply([inverse[k][i] for k in range(3)])
        assert row == [int(i == k) for k in range(3)]


def test_exceptional_self_intersections():
    prox = proximity_matrix(Cluster.closed([P, P1, P2_vertical]))
    assert prox.exceptional_self_intersection(P) == -3
    assert prox.exceptional_self_intersection(P1) == -2
    assert prox.exceptional_self_intersection(P2_vertical) == -1


def test_weighted_cluster_is_sorted_and_unique():
    w = WeightedCluster(((P1, 2), (P, 3)))
    assert w.points == [P, P1]
    assert w.weight(P) == 3
    with pytest.raises(ValueError):
        WeightedCluster(((P, 1), (P, 2)))


def test_restrict_gt1():
    w = WeightedCluster(((P, 2), (P1, 1), (InfNearPoint((1, 0, 0)), 3)))
    assert restrict_gt1(w).points == [P, InfNearPoint((1, 0, 0))]
    with pytest.raises(NotClosed):
        restrict_gt1(WeightedCluster(((P, 1), (P1, 2))))


def test_enriques_dot():
    dot = enriques_dot(WeightedCluster(((P, 3), (P1, 2), (P2_vertical, 1))))
    assert dot.startswith("digraph enriques {")
    assert dot.count("->") == 3
    assert dot.count("style=dashed") == 1
    assert 'label="3"' in dot
    assert enriques_dot(WeightedCluster()).count("->") == 0
