"""Finite metric spaces, short (1-Lipschitz) maps, and the tensor product.

All distances are exact ``fractions.Fraction`` values and every invariant
(metric axioms, shortness) is checked exhaustively at construction time.
Values are immutable after construction; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Iterable, Mapping

Label = Hashable

TERMINAL_POINT = "*"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class FinMetricSpace:
    """A finite metric space: ordered point labels and an exact distance matrix.

    Construction validates the full set of metric axioms: zero diagonal,
    strict positivity off the diagonal (genuine metric, not pseudometric),
    symmetry, and the triangle inequality over all triples. Distinct points
    at distance zero are rejected, never quotiented.

    ``factors`` records how a space was built by :func:`tensor`; it is
    construction metadata and takes no part in equality or hashing.
    """

    points: tuple
    dist: tuple
    factors: tuple | None = field(default=None, compare=False)
    _index: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        points = tuple(self.points)
        dist = tuple(tuple(_as_fraction(x) for x in row) for row in self.dist)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "dist", dist)
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(points)})
        n = len(points)
        if n == 0:
            raise ValueError("a metric space needs at least one point")
        if len(self._index) != n:
            raise ValueError("point labels must be pairwise distinct")
        if len(dist) != n or any(len(row) != n for row in dist):
            raise ValueError(f"distance matrix must be {n}x{n}")
        for i in range(n):
            if dist[i][i] != 0:
                raise ValueError(f"dist({points[i]!r}, {points[i]!r}) must be 0")
            for j in range(n):
                if i != j and dist[i][j] <= 0:
                    raise ValueError(
                        f"distinct points {points[i]!r}, {points[j]!r} require "
                        f"positive distance, got {dist[i][j]}"
                    )
                if dist[i][j] != dist[j][i]:
                    raise ValueError(
                        f"asymmetric distances between {points[i]!r} and {points[j]!r}"
                    )
        for i in range(n):
            for j in range(n):
                dij = dist[i][j]
                for k in range(n):
                    if dij > dist[i][k] + dist[k][j]:
                        raise ValueError(
                            "triangle inequality violated: "
                            f"d({points[i]!r},{points[j]!r}) = {dij} > "
                            f"d({points[i]!r},{points[k]!r}) + d({points[k]!r},{points[j]!r}) = "
                            f"{dist[i][k] + dist[k][j]}"
                        )

    def __len__(self) -> int:
        return len(self.points)

    def index(self, point: Label) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise ValueError(f"unknown point {point!r}") from None

    def distance(self, a: Label, b: Label) -> Fraction:
        return self.dist[self.index(a)][self.index(b)]


def terminal() -> FinMetricSpace:
    """The one-point space; the tensor unit and terminal object."""
    return FinMetricSpace((TERMINAL_POINT,), ((Fraction(0),),))


@lru_cache(maxsize=1024)
def tensor(x: FinMetricSpace, y: FinMetricSpace) -> FinMetricSpace:
    """Product of point sets with the sum metric.

    d((a, b), (a', b')) = d(a, a') + d(b, b').  Points are ordered pairs in
    row-major order with the left factor outer, and the result remembers its
    factors so marginals need no inference. Results are cached: spaces are
    immutable, so repeated tensors of equal factors share one instance.
    """
    points = tuple((a, b) for a in x.points for b in y.points)
    ny = len(y)
    dist = tuple(
        tuple(
            x.dist[i // ny][k // ny] + y.dist[i % ny][k % ny]
            for k in range(len(points))
        )
        for i in range(len(points))
    )
    return FinMetricSpace(points, dist, factors=(x, y))


@dataclass(frozen=True)
class ShortMap:
    """A 1-Lipschitz function given by a total lookup table.

    ``table`` lists the codomain label for each domain point, aligned with
    ``domain.points``. Shortness is checked exhaustively on construction.
    """

    domain: FinMetricSpace
    codomain: FinMetricSpace
    table: tuple

    def __post_init__(self):
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != len(self.domain):
            raise ValueError("table must assign a value to every domain point")
        targets = [self.codomain.index(t) for t in table]
        dd, cd = self.domain.dist, self.codomain.dist
        for i in range(len(table)):
            for j in range(i + 1, len(table)):
                if cd[targets[i]][targets[j]] > dd[i][j]:
                    raise ValueError(
                        "map is not short: "
                        f"d({table[i]!r},{table[j]!r}) = {cd[targets[i]][targets[j]]} > "
                        f"d({self.domain.points[i]!r},{self.domain.points[j]!r}) = {dd[i][j]}"
                    )

    @classmethod
    def from_mapping(
        cls,
        domain: FinMetricSpace,
        codomain: FinMetricSpace,
        mapping: Mapping[Label, Label],
    ) -> "ShortMap":
        missing = [p for p in domain.points if p not in mapping]
        if missing:
            raise ValueError(f"table missing domain points: {missing!r}")
        return cls(domain, codomain, tuple(mapping[p] for p in domain.points))

    def __call__(self, point: Label) -> Label:
        return self.table[self.domain.index(point)]


def identity(x: FinMetricSpace) -> ShortMap:
    return ShortMap(x, x, x.points)


def compose(f: ShortMap, g: ShortMap) -> ShortMap:
    """Apply ``f`` then ``g`` (diagrammatic order)."""
    if f.codomain != g.domain:
        raise ValueError("compose: codomain of the first map must equal the domain of the second")
    return ShortMap(f.domain, g.codomain, tuple(g(t) for t in f.table))


def tensor_map(f: ShortMap, g: ShortMap) -> ShortMap:
    """The map f x g between tensor spaces, (a, b) -> (f(a), g(b))."""
    dom = tensor(f.domain, g.domain)
    cod = tensor(f.codomain, g.codomain)
    return ShortMap(dom, cod, tuple((f(a), g(b)) for a, b in dom.points))


def bang(x: FinMetricSpace) -> ShortMap:
    """The unique map to the terminal space."""
    return ShortMap(x, terminal(), (TERMINAL_POINT,) * len(x))


def proj1(x: FinMetricSpace, y: FinMetricSpace) -> ShortMap:
    """First projection from the tensor, (a, b) -> a."""
    dom = tensor(x, y)
    return ShortMap(dom, x, tuple(a for a, _ in dom.points))


def proj2(x: FinMetricSpace, y: FinMetricSpace) -> ShortMap:
    """Second projection from the tensor, (a, b) -> b."""
    dom = tensor(x, y)
    return ShortMap(dom, y, tuple(b for _, b in dom.points))


def braiding(x: FinMetricSpace, y: FinMetricSpace) -> ShortMap:
    """The swap isometry tensor(x, y) -> tensor(y, x)."""
    dom = tensor(x, y)
    return ShortMap(dom, tensor(y, x), tuple((b, a) for a, b in dom.points))


def unitor_left(x: FinMetricSpace) -> ShortMap:
    """The isometry tensor(terminal(), x) -> x dropping the unit coordinate."""
    dom = tensor(terminal(), x)
    return ShortMap(dom, x, tuple(b for _, b in dom.points))


def unitor_right(x: FinMetricSpace) -> ShortMap:
    """The isometry tensor(x, terminal()) -> x dropping the unit coordinate."""
    dom = tensor(x, terminal())
    return ShortMap(dom, x, tuple(a for a, _ in dom.points))


def associator(
    x: FinMetricSpace, y: FinMetricSpace, z: FinMetricSpace
) -> ShortMap:
    """The re-association isometry tensor(tensor(x,y),z) -> tensor(x,tensor(y,z))."""
    dom = tensor(tensor(x, y), z)
    cod = tensor(x, tensor(y, z))
    return ShortMap(dom, cod, tuple((a, (b, c)) for (a, b), c in dom.points))


def middle_interchange(
    w: FinMetricSpace, x: FinMetricSpace, y: FinMetricSpace, z: FinMetricSpace
) -> ShortMap:
    """The isometry tensor(tensor(w,x), tensor(y,z)) -> tensor(tensor(w,y), tensor(x,z)).

    Swaps the two middle coordinates; distances are preserved because the sum
    metric is invariant under permuting coordinates.
    """
    dom = tensor(tensor(w, x), tensor(y, z))
    cod = tensor(tensor(w, y), tensor(x, z))
    return ShortMap(dom, cod, tuple(((a, c), (b, d)) for (a, b), (c, d) in dom.points))


@dataclass(frozen=True)
class ShortFunctional:
    """A 1-Lipschitz rational-valued function on a finite metric space.

    ``values`` is aligned with ``domain.points``. The Lipschitz bound
    |f(a) - f(b)| <= d(a, b) is checked over all pairs on construction.
    """

    domain: FinMetricSpace
    values: tuple

    def __post_init__(self):
        values = tuple(_as_fraction(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != len(self.domain):
            raise ValueError("functional must assign a value to every point")
        d = self.domain.dist
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                gap = values[i] - values[j]
                if gap < 0:
                    gap = -gap
                if gap > d[i][j]:
                    raise ValueError(
                        "functional is not short: "
                        f"|f({self.domain.points[i]!r}) - f({self.domain.points[j]!r})| = {gap} > "
                        f"d = {d[i][j]}"
                    )

    @classmethod
    def from_mapping(
        cls, domain: FinMetricSpace, mapping: Mapping[Label, Fraction]
    ) -> "ShortFunctional":
        return cls(domain, tuple(_as_fraction(mapping.get(p, 0)) for p in domain.points))

    def __call__(self, point: Label) -> Fraction:
        return self.values[self.domain.index(point)]


def zero_functional(x: FinMetricSpace) -> ShortFunctional:
    return ShortFunctional(x, (Fraction(0),) * len(x))


def sum_functional(f: ShortFunctional, g: ShortFunctional) -> ShortFunctional:
    """(a, b) -> f(a) + g(b) on tensor(f.domain, g.domain).

    Short for the sum metric: the increments in each coordinate add up, so
    the constructor check never fails.
    """
    dom = tensor(f.domain, g.domain)
    return ShortFunctional(
        dom, tuple(f(a) + g(b) for a, b in dom.points)
    )


def mcshane_closure(space: FinMetricSpace, values: Iterable) -> ShortFunctional:
    """Repair arbitrary rational values into a short functional.

    Replaces f by x -> min over y of (f(y) + d(x, y)). The result is always
    short and the operation fixes inputs that were already short.
    """
    raw = [_as_fraction(v) for v in values]
    if len(raw) != len(space):
        raise ValueError("need one value per point")
    d = space.dist
    closed = tuple(
        min(raw[j] + d[i][j] for j in range(len(raw))) for i in range(len(raw))
    )
    return ShortFunctional(space, closed)
