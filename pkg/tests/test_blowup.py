import pytest
from sympy import QQ, Poly

from app.blowup import (
    CHART_I,
    blow_up,
    goes_through,
    goes_through_effectively,
    multiplicity,
    order,
    strict_transform_local,
    total_transform,
    translate,
    virtual_transform,
)
from app.cluster import CHART_II, Cluster, InfNearPoint, Step, WeightedCluster
from app.errors import ZeroForm
from app.exactpoly import U, V, TernaryForm, parse_form

import oracle

P = InfNearPoint((0, 0, 1))
Q = InfNearPoint((0, 1, 0))


def _poly(expr):
    return Poly(expr, U, V, domain=QQ)


def test_order_and_zero():
    assert order(_poly(V**2 - U**2 - U**3)) == 2
    with pytest.raises(ZeroForm):
        order(_poly(0))


def test_blow_up_charts():
    g = _poly(V**2 - U**3)
    assert blow_up(g, 2, CHART_I) == _poly(V**2 - U)
    assert blow_up(g, 2, CHART_II) == _poly(1 - U**3 * V)
    with pytest.raises(ValueError):
        blow_up(g, 3, CHART_I)


def test_translate():
    assert translate(_poly(U * V), 1, -1) == _poly((U + 1) * (V - 1))


@pytest.mark.parametrize(
    "text, point, expected",
    [
        ("y^2*z - x^3 - x^2*z", (0, 0, 1), 2),
        ("y^2*z^3 - x^5", (0, 1, 0), 3),
        ("y^2*z^3 - x^5", (0, 0, 1), 2),
        ("x + y + z", (0, 0, 1), 0),
        ("x^2 + y*z", (0, 0, 1), 1),
    ],
)
def test_multiplicity_at_proper_points(text, point, expected):
    form = parse_form(text)
    assert multiplicity(form, InfNearPoint(point)) == expected
    assert oracle.lowest_degree(form.poly.as_expr(), point) == expected


def test_multiplicity_along_a_path(quintic):
    assert multiplicity(quintic, P.child(Step.first(0))) == 2
    assert multiplicity(quintic, P.child(Step.first(0)).child(Step.first(0))) == 1
    assert multiplicity(quintic, Q.child(Step.first(0))) == 2
    assert multiplicity(quintic, P.child(Step.first(1))) == 0
    assert multiplicity(quintic, P.child(Step.second())) == 0


def test_multiplicity_is_additive_over_factors():
    a, b = parse_form("y - x"), parse_form("y^2*z - x^3")
    assert multiplicity(a * b, P) == multiplicity(a, P) + multiplicity(b, P)
    p1 = P.child(Step.first(1))
    assert multiplicity(a * b, p1) == multiplicity(a, p1) + multiplicity(b, p1) == 1


def test_strict_transform_local(cuspidal):
    strict = strict_transform_local(cuspidal, P.child(Step.first(0)))
    assert strict.poly == _poly(V**2 - U) or strict.poly == _poly(U - V**2)
    assert strict.order == 1
    assert strict.chart == "z/I(0)"


def test_strict_transform_sign_is_normalized(nodal):
    strict = strict_transform_local(nodal, P)
    lowest = max((m, c) for m, c in strict.poly.terms() if sum(m) == 2)
    assert lowest[1] > 0


def test_total_transform_of_cusp(cuspidal):
    cluster = Cluster.closed([P, P.child(Step.first(0))])
    total = total_transform(cuspidal, cluster)
    assert total.strict_multiplicities == (2, 1)
    assert total.exc_coefficients == (2, 3)
    assert total.strict_self_intersection() == 9 - 4 - 1
    assert total.self_intersection() == 9


def test_virtual_transform(nodal):
    assert goes_through(nodal, WeightedCluster(((P, 2),)))
    assert goes_through(nodal, WeightedCluster(((P, 1),)))
    assert not goes_through(nodal, WeightedCluster(((P, 3),)))
    virtual = virtual_transform(nodal, WeightedCluster(((P, 1),)))
    assert virtual.exc_coefficients == (1,)
    assert virtual.strict_self_intersection() == 9 - 4


def test_virtual_transform_through_an_unreached_point(nodal):
    # the nodal cubic misses this first-neighbour point: e = 0 there
    free = P.child(Step.first(0))
    weighted = WeightedCluster(((P, 2), (free, 1)))
    virtual = virtual_transform(nodal, weighted)
    assert virtual.strict_multiplicities == (2, 0)
    assert virtual.exc_coefficients == (0, -1)
    assert not goes_through(nodal, weighted)


def test_goes_through_effectively(quintic):
    p1 = P.child(Step.first(0))
    assert goes_through_effectively(quintic, WeightedCluster(((P, 2), (p1, 2))))
    assert not goes_through_effectively(quintic, WeightedCluster(((P, 1), (p1, 1))))
    assert goes_through(quintic, WeightedCluster(((P, 1), (p1, 1))))


def test_zero_form_is_rejected():
    with pytest.raises(ZeroForm):
        goes_through(TernaryForm.zero(3), WeightedCluster(((P, 1),)))


def test_empty_cluster():
    form = parse_form("x^2 + y*z")
    assert goes_through(form, WeightedCluster())
    assert total_transform(form, Cluster()).strict_self_intersection() == 4
