"""Infinitely near points, clusters, weighted clusters and proximity.

A point of S* is a proper point of P^2 plus a path of blow-up steps. Every step
blows up the current point (translated to the origin of its chart) and lands on
the exceptional line either in chart I, ``(u, v) <- (u, u*v)``, at ``(0, t)``, or
in chart II, ``(u, v) <- (u*v, v)``, at the origin when the direction is vertical.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from sympy import Rational

from app.errors import NotClosed
from app.exactpoly import ProjPoint, normalize_point

logger = logging.getLogger(__name__)

CHART_I = 1
CHART_II = 2


@dataclass(frozen=True)
class Step:
    chart: int
    coords: tuple[Rational, Rational]

    def __post_init__(self):
        coords = tuple(Rational(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if self.chart not in (CHART_I, CHART_II):
            raise ValueError(f"unknown chart {self.chart}")
        if coords[0] != 0 or (self.chart == CHART_II and coords[1] != 0):
            raise ValueError("a step must land on the exceptional line in canonical coordinates")

    @classmethod
    def first(cls, t) -> "Step":
        return cls(CHART_I, (0, t))

    @classmethod
    def second(cls) -> "Step":
        return cls(CHART_II, (0, 0))

    @property
    def key(self) -> tuple:
        return (self.chart, self.coords)

    def label(self) -> str:
        return f"I({self.coords[1]})" if self.chart == CHART_I else "II"


def origin_chart(origin: ProjPoint) -> str:
    if origin[2] != 0:
        return "z"
    return "y" if origin[1] != 0 else "x"


@dataclass(frozen=True)
class InfNearPoint:
    origin: ProjPoint
    path: tuple[Step, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "origin", normalize_point(self.origin))
        object.__setattr__(self, "path", tuple(self.path))

    @property
    def level(self) -> int:
        return len(self.path)

    @property
    def is_proper(self) -> bool:
        return not self.path

    @property
    def chart(self) -> str:
        return origin_chart(self.origin)

    @property
    def parent(self) -> "InfNearPoint | None":
        if self.is_proper:
            return None
        return InfNearPoint(self.origin, self.path[:-1])

    def ancestors(self) -> list["InfNearPoint"]:
        """Points strictly below this one, proper point first."""
        return [InfNearPoint(self.origin, self.path[:k]) for k in range(self.level)]

    def child(self, step: Step) -> "InfNearPoint":
        return InfNearPoint(self.origin, self.path + (step,))

    def precedes(self, other: "InfNearPoint") -> bool:
        """The natural order: ``self <= other``."""
        return self.origin == other.origin and other.path[: self.level] == self.path

    @property
    def sort_key(self) -> tuple:
        return (self.origin, tuple(s.key for s in self.path))

    def label(self) -> str:
        head = "[" + ":".join(str(c) for c in self.origin) + "]"
        return "/".join([head] + [s.label() for s in self.path])

    def __repr__(self) -> str:
        return f"InfNearPoint({self.label()})"


@lru_cache(maxsize=8192)
def exceptional_lines(point: InfNearPoint) -> tuple[tuple[InfNearPoint, str], ...]:
    """Exceptional curves through ``point`` as (owner, local line) with line ``u`` or ``v`` = 0."""
    if point.is_proper:
        return ()
    step = point.path[-1]
    parent = point.parent
    through = []
    for owner, line in exceptional_lines(parent):
        if line == "v" and step.chart == CHART_I and step.coords[1] == 0:
            through.append((owner, "v"))
        elif line == "u" and step.chart == CHART_II:
            through.append((owner, "u"))
    through.append((parent, "u" if step.chart == CHART_I else "v"))
    return tuple(through)


def proximate_points(point: InfNearPoint) -> tuple[InfNearPoint, ...]:
    """The points ``point`` is proximate to: its parent, and a satellite centre if any."""
    return tuple(owner for owner, _ in exceptional_lines(point))


def canonical_order(points: Iterable[InfNearPoint]) -> list[InfNearPoint]:
    return sorted(points, key=lambda p: p.sort_key)


def is_cluster(points: Iterable[InfNearPoint]) -> bool:
    pts = set(points)
    return all(a in pts for p in pts for a in p.ancestors())


@dataclass(frozen=True)
class Cluster:
    points: frozenset[InfNearPoint] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "points", frozenset(self.points))

    @classmethod
    def closed(cls, points: Iterable[InfNearPoint]) -> "Cluster":
        cluster = cls(frozenset(points))
        if not cluster.is_closed():
            raise NotClosed("the point set is not closed under the natural order")
        return cluster

    def is_closed(self) -> bool:
        return is_cluster(self.points)

    @cached_property
    def ordered(self) -> tuple[InfNearPoint, ...]:
        return tuple(canonical_order(self.points))

    def __iter__(self) -> Iterator[InfNearPoint]:
        return iter(self.ordered)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, point) -> bool:
        return point in self.points

    def issubset(self, other: "Cluster") -> bool:
        return self.points <= other.points

    def proper_points(self) -> list[InfNearPoint]:
        return [p for p in self.ordered if p.is_proper]

    def minimal_points(self) -> list[InfNearPoint]:
        return [p for p in self.ordered if not any(q != p and q.precedes(p) for q in self.points)]

    def maximal_points(self) -> list[InfNearPoint]:
        return [p for p in self.ordered if not any(q != p and p.precedes(q) for q in self.points)]


def subcluster_check(sub: Cluster, cluster: Cluster) -> bool:
    return sub.issubset(cluster) and sub.is_closed()


@dataclass(frozen=True)
class WeightedCluster:
    items: tuple[tuple[InfNearPoint, int], ...] = ()

    def __post_init__(self):
        items = tuple(sorted(((p, int(w)) for p, w in self.items), key=lambda pw: pw[0].sort_key))
        if len({p for p, _ in items}) != len(items):
            raise ValueError("a point carries two weights")
        object.__setattr__(self, "items", items)

    @classmethod
    def from_mapping(cls, weights: Mapping[InfNearPoint, int]) -> "WeightedCluster":
        return cls(tuple(weights.items()))

    @classmethod
    def uniform(cls, cluster: Cluster, weight: int) -> "WeightedCluster":
        return cls(tuple((p, weight) for p in cluster))

    @property
    def cluster(self) -> Cluster:
        return Cluster(frozenset(p for p, _ in self.items))

    @property
    def weights(self) -> dict[InfNearPoint, int]:
        return dict(self.items)

    @property
    def points(self) -> list[InfNearPoint]:
        return [p for p, _ in self.items]

    def weight(self, point: InfNearPoint) -> int:
        return self.weights[point]

    def restrict(self, points: Iterable[InfNearPoint]) -> "WeightedCluster":
        keep = set(points)
        return WeightedCluster(tuple((p, w) for p, w in self.items if p in keep))

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, point) -> bool:
        return any(p == point for p, _ in self.items)


@dataclass(frozen=True)
class ProximityMatrix:
    points: tuple[InfNearPoint, ...]
    matrix: tuple[tuple[int, ...], ...]

    def index(self, point: InfNearPoint) -> int:
        return self.points.index(point)

    def proximate_to(self, point: InfNearPoint) -> list[InfNearPoint]:
        """Points of the cluster proximate to ``point``."""
        j = self.index(point)
        return [q for i, q in enumerate(self.points) if self.matrix[i][j] == -1]

    def apply(self, vec: Sequence[int]) -> list[int]:
        return [sum(row[j] * vec[j] for j in range(len(vec))) for row in self.matrix]

    def solve(self, vec: Sequence[int]) -> list[int]:
        """``P^-1 vec`` by forward substitution (parents come first)."""
        out: list[int] = []
        for i, row in enumerate(self.matrix):
            out.append(vec[i] - sum(row[j] * out[j] for j in range(i)))
        return out

    def inverse(self) -> tuple[tuple[int, ...], ...]:
        n = len(self.points)
        cols = [self.solve([int(i == k) for i in range(n)]) for k in range(n)]
        return tuple(tuple(cols[k][i] for k in range(n)) for i in range(n))

    def exceptional_self_intersection(self, point: InfNearPoint) -> int:
        """``(E~_P)^2`` on the surface blown up along the whole cluster."""
        return -1 - len(self.proximate_to(point))


def proximity_matrix(cluster: Cluster) -> ProximityMatrix:
    points = cluster.ordered
    index = {p: i for i, p in enumerate(points)}
    rows = []
    for i, q in enumerate(points):
        row = [0] * len(points)
        row[i] = 1
        for r in proximate_points(q):
            if r in index:
                row[index[r]] = -1
        rows.append(tuple(row))
    return ProximityMatrix(points, tuple(rows))


def restrict_gt1(weighted: WeightedCluster) -> WeightedCluster:
    """The weighted subcluster of points of weight > 1."""
    heavy = weighted.restrict(p for p, w in weighted.items if w > 1)
    if not heavy.cluster.is_closed():
        raise NotClosed("points of weight > 1 do not form a cluster")
    return heavy


def enriques_dot(weighted: WeightedCluster, name: str = "enriques") -> str:
    """Graphviz DOT text: solid parent->child edges, dashed edges for satellite proximities."""
    ids = {p: f"p{i}" for i, p in enumerate(weighted.points)}
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for p, w in weighted.items:
        lines.append(f'  {ids[p]} [label="{w}", tooltip="{p.label()}"];')
    for p in weighted.points:
        parent = p.parent
        for r in proximate_points(p):
            if r not in ids:
                continue
            if r == parent:
                lines.append(f"  {ids[r]} -> {ids[p]};")
            else:
                lines.append(f"  {ids[r]} -> {ids[p]} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
