"""Monad structure: nested measures, averaging, and spaces of measures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .measure import Measure, dirac, pushforward
from .metric import FinMetricSpace, ShortMap, _as_fraction
from .transport import wasserstein_distance


@dataclass(frozen=True)
class NestedMeasure:
    """A finitely-supported measure over measures on a common base space.

    The outer distribution is stored extensionally: an ordered list of inner
    measures and one exact weight each. Duplicate inner measures are allowed
    here and merged only where distinct points are required (see
    :func:`wasserstein_space`).
    """

    base: FinMetricSpace
    inner: tuple
    weights: tuple

    def __post_init__(self):
        inner = tuple(self.inner)
        weights = tuple(_as_fraction(w) for w in self.weights)
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "weights", weights)
        if not inner:
            raise ValueError("a nested measure needs at least one inner measure")
        if len(inner) != len(weights):
            raise ValueError("need exactly one weight per inner measure")
        for m in inner:
            if m.space != self.base:
                raise ValueError("all inner measures must live on the base space")
        for w in weights:
            if w < 0:
                raise ValueError(f"negative weight {w}")
        if sum(weights) != 1:
            raise ValueError("outer weights must sum to exactly 1")


def expectation(mu: NestedMeasure) -> Measure:
    """The monad multiplication: the average of the inner measures."""
    totals = [Fraction(0)] * len(mu.base)
    for m, w in zip(mu.inner, mu.weights):
        if w:
            for k, x in enumerate(m.weights):
                if x:
                    totals[k] += w * x
    return Measure(mu.base, tuple(totals))


def unit_nested(p: Measure) -> NestedMeasure:
    """All outer mass on the single inner measure p."""
    return NestedMeasure(p.space, (p,), (Fraction(1),))


def diracs_nested(p: Measure) -> NestedMeasure:
    """The image of p under the point-to-Dirac map.

    Inner measures are the Diracs of the base points, weighted by p, so
    averaging recovers p.
    """
    return NestedMeasure(
        p.space, tuple(dirac(p.space, x) for x in p.space.points), p.weights
    )


def pushforward_nested(f: ShortMap, mu: NestedMeasure) -> NestedMeasure:
    """Apply the pushforward along f to every inner measure."""
    if f.domain != mu.base:
        raise ValueError("map domain must be the base space")
    return NestedMeasure(
        f.codomain, tuple(pushforward(f, m) for m in mu.inner), mu.weights
    )


def merge_duplicates(mu: NestedMeasure) -> NestedMeasure:
    """Sum the weights of repeated inner measures, keeping first-seen order."""
    seen = []
    weights = []
    for m, w in zip(mu.inner, mu.weights):
        for k, other in enumerate(seen):
            if other == m:
                weights[k] += w
                break
        else:
            seen.append(m)
            weights.append(w)
    return NestedMeasure(mu.base, tuple(seen), tuple(weights))


def wasserstein_space(measures: Sequence[Measure]) -> FinMetricSpace:
    """The finite subspace of the measure space spanned by the given measures.

    Points are the measures themselves; distances are their exact pairwise
    Wasserstein-1 values. The construction re-verifies the metric axioms,
    which hold because distinct weight tables are at positive distance.
    """
    measures = tuple(measures)
    if not measures:
        raise ValueError("need at least one measure")
    base = measures[0].space
    for m in measures:
        if m.space != base:
            raise ValueError("all measures must live on one base space")
    for i in range(len(measures)):
        for j in range(i + 1, len(measures)):
            if measures[i] == measures[j]:
                raise ValueError(f"duplicate measures at positions {i} and {j}")
    cache = {}

    def w1(i, j):
        if i > j:
            i, j = j, i
        if (i, j) not in cache:
            cache[(i, j)] = wasserstein_distance(measures[i], measures[j])
        return cache[(i, j)]

    n = len(measures)
    dist = tuple(
        tuple(Fraction(0) if i == j else w1(i, j) for j in range(n)) for i in range(n)
    )
    return FinMetricSpace(measures, dist)


def nested_distance(mu: NestedMeasure, nu: NestedMeasure) -> Fraction:
    """Wasserstein-1 between two nested measures, one level up.

    Builds the Wasserstein space on the union of the inner supports (after
    merging duplicates) and solves the outer transport problem there.
    """
    if mu.base != nu.base:
        raise ValueError("nested measures live on different base spaces")
    mu = merge_duplicates(mu)
    nu = merge_duplicates(nu)
    union = list(mu.inner)
    for m in nu.inner:
        if m not in union:
            union.append(m)
    space = wasserstein_space(union)

    def as_point_measure(nested):
        return Measure.from_mapping(space, dict(zip(nested.inner, nested.weights)))

    return wasserstein_distance(as_point_measure(mu), as_point_measure(nu))


def monad_law_check(sample) -> list:
    """Evaluate the monad laws on supplied instances.

    ``sample`` is a mapping with keys ``measures`` (list of Measure),
    ``nested`` (list of NestedMeasure), and ``double_nested`` (list of
    (weights, nested measures) pairs). Returns one (name, ok, detail) triple
    per law; failures are entries, never exceptions.
    """
    results = []

    def record(name, ok, detail=""):
        results.append((name, ok, detail))

    for p in sample.get("measures", ()):
        ok = expectation(unit_nested(p)) == p
        record("left_unit", ok, "" if ok else f"averaging a point mass at {p} moved it")
        ok = expectation(diracs_nested(p)) == p
        record("right_unit", ok, "" if ok else f"averaging the Diracs of {p} moved it")

    for weights, nesteds in sample.get("double_nested", ()):
        base = nesteds[0].base
        averaged_inner = NestedMeasure(
            base, tuple(expectation(nu) for nu in nesteds), weights
        )
        flattened = NestedMeasure(
            base,
            tuple(m for nu in nesteds for m in nu.inner),
            tuple(w * x for nu, w in zip(nesteds, weights) for x in nu.weights),
        )
        lhs = expectation(averaged_inner)
        rhs = expectation(flattened)
        record(
            "associativity",
            lhs == rhs,
            "" if lhs == rhs else f"{lhs.weights} != {rhs.weights}",
        )
    return results
