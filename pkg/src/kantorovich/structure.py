"""Product joints, marginals, independence, strength, and convolution.

The product map sends a pair of measures to their independent joint on the
tensor space; the marginal map splits a joint into its two components.
Together they make the measure functor lax and oplax monoidal, and the
law suite checks all coherence conditions exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .measure import Measure, dirac, pushforward
from .metric import FinMetricSpace, Label, ShortMap, tensor


@dataclass(frozen=True)
class Law:
    """A space together with a chosen probability measure on it."""

    space: FinMetricSpace
    measure: Measure

    def __post_init__(self):
        if self.measure.space != self.space:
            raise ValueError("law measure must live on the law space")


@dataclass(frozen=True)
class InternalMonoid:
    """A monoid object: a short multiplication on a space with a unit point.

    Associativity and unitality are checked exhaustively over all triples
    and points at construction.
    """

    carrier: FinMetricSpace
    mult: ShortMap
    unit: Label

    def __post_init__(self):
        expected_domain = tensor(self.carrier, self.carrier)
        if self.mult.domain != expected_domain or self.mult.codomain != self.carrier:
            raise ValueError("multiplication must map carrier x carrier to carrier")
        self.carrier.index(self.unit)
        op = self.mult
        for x in self.carrier.points:
            if op((self.unit, x)) != x or op((x, self.unit)) != x:
                raise ValueError(f"unit law fails at {x!r}")
            for y in self.carrier.points:
                for z in self.carrier.points:
                    if op((op((x, y)), z)) != op((x, op((y, z)))):
                        raise ValueError(
                            f"associativity fails at ({x!r}, {y!r}, {z!r})"
                        )

    def apply(self, x: Label, y: Label) -> Label:
        return self.mult((x, y))


def product(p: Measure, q: Measure) -> Measure:
    """The independent joint of p and q on the tensor of their spaces."""
    space = tensor(p.space, q.space)
    return Measure(
        space, tuple(wp * wq for wp in p.weights for wq in q.weights)
    )


def _factors(r: Measure):
    factors = r.space.factors
    if factors is None:
        raise ValueError(
            "marginals need a space built by tensor(); this one carries no factorization"
        )
    return factors


def marginals(r: Measure):
    """The pair of marginal measures of a joint on a tensor space."""
    x, y = _factors(r)
    ny = len(y)
    wx = [Fraction(0)] * len(x)
    wy = [Fraction(0)] * ny
    for k, w in enumerate(r.weights):
        if w:
            wx[k // ny] += w
            wy[k % ny] += w
    return Measure(x, tuple(wx)), Measure(y, tuple(wy))


def is_independent(r: Measure) -> bool:
    """Whether a joint equals the product of its own marginals, exactly."""
    px, py = marginals(r)
    return product(px, py) == r


def product_n(measures: Sequence[Measure]) -> Measure:
    """Iterated product, nested to the left."""
    measures = list(measures)
    if not measures:
        raise ValueError("need at least one measure")
    out = measures[0]
    for m in measures[1:]:
        out = product(out, m)
    return out


def marginals_n(r: Measure, arity: int) -> list:
    """Peel a left-nested n-fold joint into its n marginal measures."""
    if arity < 1:
        raise ValueError("arity must be at least 1")
    if arity == 1:
        return [r]
    left, last = marginals(r)
    return marginals_n(left, arity - 1) + [last]


def is_independent_family(r: Measure, arity: int) -> bool:
    """Whether an n-fold joint is the product of its n marginals."""
    return product_n(marginals_n(r, arity)) == r


def strength(x: Label, q: Measure, space: FinMetricSpace) -> Measure:
    """The joint of a deterministic point with a measure: dirac(x) times q."""
    return product(dirac(space, x), q)


def pushforward_joint(f: ShortMap, p: Measure, q: Measure) -> Measure:
    """Form the independent joint of p and q, then push it through f."""
    expected = tensor(p.space, q.space)
    if f.domain != expected:
        raise ValueError("map domain must be the tensor of the two measure spaces")
    return pushforward(f, product(p, q))


def convolve(p: Measure, q: Measure, m: InternalMonoid) -> Measure:
    """Convolution of measures on a monoid: joint, then multiply."""
    if p.space != m.carrier or q.space != m.carrier:
        raise ValueError("both measures must live on the monoid carrier")
    return pushforward(m.mult, product(p, q))


def law_product(r: Law, s: Law) -> Law:
    """The independent joint of two laws on the tensor of their spaces."""
    joint = product(r.measure, s.measure)
    return Law(joint.space, joint)


def tupling_table(f1: ShortMap, f2: ShortMap):
    """The raw pairing a -> (f1(a), f2(a)) into the tensor of the codomains.

    The pairing need not be short for the sum metric (the tensor is not a
    cartesian product), so this returns the plain table plus a flag saying
    whether the shortness bound happens to hold.
    """
    if f1.domain != f2.domain:
        raise ValueError("the two maps must share their domain")
    a = f1.domain
    cod = tensor(f1.codomain, f2.codomain)
    table = tuple((f1(x), f2(x)) for x in a.points)
    short = True
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            ti, tj = cod.index(table[i]), cod.index(table[j])
            if cod.dist[ti][tj] > a.dist[i][j]:
                short = False
                break
        if not short:
            break
    return cod, table, short


def independent_maps(s: Law, f1: ShortMap, f2: ShortMap) -> bool:
    """Whether two observables of a law are independent.

    Pushes the law forward along the pairing of f1 and f2 and tests the
    resulting joint for independence. Call :func:`tupling_table` for the
    shortness diagnostic of the pairing itself.
    """
    if f1.domain != s.space or f2.domain != s.space:
        raise ValueError("maps must be defined on the law's space")
    cod, table, _ = tupling_table(f1, f2)
    weights = [Fraction(0)] * len(cod)
    for target, w in zip(table, s.measure.weights):
        if w:
            weights[cod.index(target)] += w
    return is_independent(Measure(cod, tuple(weights)))
