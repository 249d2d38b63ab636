"""Randomized law-checking engine.

Every structural equation and inequality of the package is a catalog entry
with its own instance generator and an exact checker. A suite run is fully
deterministic: each law draws its instances from a private generator seeded
by a stable hash of the suite seed and the law id, so adding a law never
perturbs the instances of another. Failures never abort a run; they are
recorded in the report together with the first counterexample.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import jsonio
from .generate import (
    random_double_nested,
    random_functional,
    random_measure,
    random_measure_with_support,
    random_monoid,
    random_nested,
    random_short_map,
    random_space,
)
from .measure import Measure, dirac, integrate, partial_integral, pushforward
from .metric import (
    FinMetricSpace,
    associator,
    bang,
    braiding,
    middle_interchange,
    proj1,
    proj2,
    sum_functional,
    tensor,
    tensor_map,
    terminal,
    unitor_left,
    unitor_right,
)
from .monad import (
    NestedMeasure,
    diracs_nested,
    expectation,
    nested_distance,
    pushforward_nested,
    unit_nested,
)
from .structure import (
    Law,
    convolve,
    independent_maps,
    is_independent,
    is_independent_family,
    marginals,
    marginals_n,
    product,
    product_n,
    strength,
)
from .transport import wasserstein, wasserstein_distance, wasserstein_oracle

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class SizeBudget:
    """Limits for generated instances.

    Defaults keep every exact solve sub-second while still exercising
    degenerate cases: spaces of 2 to 6 points, weight numerators up to 64
    before normalization, tensor factors of 2 to 3 points (2 for four-factor
    laws), and nestings of at most 3 by 3.
    """

    max_points: int = 6
    max_factor_points: int = 3
    max_quad_points: int = 2
    max_numerator: int = 64
    max_inner: int = 3
    max_oracle_support: int = 4

    def to_json(self):
        return {
            "max_points": self.max_points,
            "max_factor_points": self.max_factor_points,
            "max_quad_points": self.max_quad_points,
            "max_numerator": self.max_numerator,
            "max_inner": self.max_inner,
            "max_oracle_support": self.max_oracle_support,
        }


DEFAULT_BUDGET = SizeBudget()


@dataclass
class CheckOutcome:
    ok: bool
    lhs: object = None
    rhs: object = None


@dataclass(frozen=True)
class LawCatalogEntry:
    id: str
    statement: str
    generate: Callable[[random.Random, SizeBudget], dict]
    check: Callable[[dict], CheckOutcome]
    expected_counterexample: bool = False


def _weights_json(m: Measure):
    return {
        jsonio.label_key(p): jsonio.format_fraction(w)
        for p, w in zip(m.space.points, m.weights)
    }


def _pair_json(pair):
    return [_weights_json(m) for m in pair]


def _frac(x) -> str:
    return jsonio.format_fraction(x)


def _space_pair(rng, budget):
    k = budget.max_factor_points
    return (
        random_space(rng, max_points=k, prefix="a"),
        random_space(rng, max_points=k, prefix="b"),
    )


def _space_quad(rng, budget):
    k = budget.max_quad_points
    return tuple(
        random_space(rng, max_points=k, prefix=p) for p in ("w", "x", "y", "z")
    )


# ---------------------------------------------------------------------------
# Generators and checkers, one pair per catalog entry.


def _gen_measure_pair_on_factors(rng, budget):
    x, y = _space_pair(rng, budget)
    return {
        "p": random_measure(rng, x, budget.max_numerator),
        "q": random_measure(rng, y, budget.max_numerator),
    }


def _check_marginals_of_product(inst):
    p, q = inst["p"], inst["q"]
    got = marginals(product(p, q))
    return CheckOutcome(got == (p, q), _pair_json(got), _pair_json((p, q)))


def _gen_correlated_witness(rng, budget):
    bit = FinMetricSpace(("0", "1"), ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))))
    pair = tensor(bit, bit)
    r = Measure.from_mapping(
        pair, {("0", "0"): Fraction(1, 2), ("1", "1"): Fraction(1, 2)}
    )
    return {"r": r}


def _check_correlated_witness(inst):
    r = inst["r"]
    back = product(*marginals(r))
    quarter = all(w == Fraction(1, 4) for w in back.weights)
    found = quarter and back != r and not is_independent(r)
    return CheckOutcome(found, _weights_json(back), _weights_json(r))


def _gen_isometry(rng, budget):
    x, y = _space_pair(rng, budget)
    return {
        "p": random_measure(rng, x, budget.max_numerator),
        "p2": random_measure(rng, x, budget.max_numerator),
        "q": random_measure(rng, y, budget.max_numerator),
        "q2": random_measure(rng, y, budget.max_numerator),
    }


def _check_isometry(inst):
    p, p2, q, q2 = inst["p"], inst["p2"], inst["q"], inst["q2"]
    lhs = wasserstein_distance(product(p, q), product(p2, q2))
    rhs = wasserstein_distance(p, p2) + wasserstein_distance(q, q2)
    return CheckOutcome(lhs == rhs, _frac(lhs), _frac(rhs))


def _gen_joint_pair(rng, budget):
    x, y = _space_pair(rng, budget)
    xy = tensor(x, y)
    return {
        "r": random_measure(rng, xy, budget.max_numerator),
        "r2": random_measure(rng, xy, budget.max_numerator),
    }


def _check_marginals_short(inst):
    r, r2 = inst["r"], inst["r2"]
    rx, ry = marginals(r)
    sx, sy = marginals(r2)
    lhs = wasserstein_distance(rx, sx) + wasserstein_distance(ry, sy)
    rhs = wasserstein_distance(r, r2)
    return CheckOutcome(lhs <= rhs, _frac(lhs), _frac(rhs))


def _gen_measure(rng, budget):
    x = random_space(rng, max_points=budget.max_points)
    return {"p": random_measure(rng, x, budget.max_numerator)}


def _check_left_unit(inst):
    p = inst["p"]
    got = expectation(unit_nested(p))
    return CheckOutcome(got == p, _weights_json(got), _weights_json(p))


def _check_right_unit(inst):
    p = inst["p"]
    got = expectation(diracs_nested(p))
    return CheckOutcome(got == p, _weights_json(got), _weights_json(p))


def _gen_double_nested(rng, budget):
    x = random_space(rng, max_points=budget.max_factor_points + 1)
    weights, nesteds = random_double_nested(
        rng, x, max_outer=budget.max_inner, max_inner=budget.max_inner
    )
    return {"weights": list(weights), "layers": list(nesteds)}


def _check_monad_associativity(inst):
    weights = tuple(inst["weights"])
    nesteds = tuple(inst["layers"])
    base = nesteds[0].base
    via_inner = expectation(
        NestedMeasure(base, tuple(expectation(nu) for nu in nesteds), weights)
    )
    via_flatten = expectation(
        NestedMeasure(
            base,
            tuple(m for nu in nesteds for m in nu.inner),
            tuple(w * v for nu, w in zip(nesteds, weights) for v in nu.weights),
        )
    )
    return CheckOutcome(
        via_inner == via_flatten, _weights_json(via_inner), _weights_json(via_flatten)
    )


def _gen_nested_map(rng, budget):
    x = random_space(rng, max_points=budget.max_factor_points + 1, prefix="a")
    y = random_space(rng, max_points=budget.max_factor_points + 1, prefix="b")
    return {
        "f": random_short_map(rng, x, y),
        "mu": random_nested(rng, x, budget.max_inner, budget.max_numerator),
    }


def _check_expectation_naturality(inst):
    f, mu = inst["f"], inst["mu"]
    lhs = expectation(pushforward_nested(f, mu))
    rhs = pushforward(f, expectation(mu))
    return CheckOutcome(lhs == rhs, _weights_json(lhs), _weights_json(rhs))


def _gen_nested_pair_on_factors(rng, budget):
    x, y = _space_pair(rng, budget)
    return {
        "mu": random_nested(rng, x, budget.max_inner, budget.max_numerator),
        "nu": random_nested(rng, y, budget.max_inner, budget.max_numerator),
    }


def _check_expectation_product(inst):
    mu, nu = inst["mu"], inst["nu"]
    joint_space = tensor(mu.base, nu.base)
    doubled = NestedMeasure(
        joint_space,
        tuple(product(p, q) for p in mu.inner for q in nu.inner),
        tuple(w * v for w in mu.weights for v in nu.weights),
    )
    lhs = expectation(doubled)
    rhs = product(expectation(mu), expectation(nu))
    return CheckOutcome(lhs == rhs, _weights_json(lhs), _weights_json(rhs))


def _gen_nested_joint(rng, budget):
    x, y = _space_pair(rng, budget)
    xy = tensor(x, y)
    return {"mu": random_nested(rng, xy, budget.max_inner, budget.max_numerator)}


def _check_expectation_marginals(inst):
    mu = inst["mu"]
    x, y = mu.base.factors
    lhs = marginals(expectation(mu))
    split = [marginals(m) for m in mu.inner]
    rhs = (
        expectation(NestedMeasure(x, tuple(s[0] for s in split), mu.weights)),
        expectation(NestedMeasure(y, tuple(s[1] for s in split), mu.weights)),
    )
    return CheckOutcome(lhs == rhs, _pair_json(lhs), _pair_json(rhs))


def _gen_nested_same_base(rng, budget):
    x = random_space(rng, max_points=budget.max_factor_points)
    return {
        "mu": random_nested(rng, x, budget.max_inner, budget.max_numerator),
        "nu": random_nested(rng, x, budget.max_inner, budget.max_numerator),
    }


def _check_expectation_short(inst):
    mu, nu = inst["mu"], inst["nu"]
    lhs = wasserstein_distance(expectation(mu), expectation(nu))
    rhs = nested_distance(mu, nu)
    return CheckOutcome(lhs <= rhs, _frac(lhs), _frac(rhs))


def _gen_measure_pair(rng, budget):
    x = random_space(rng, max_points=budget.max_points)
    return {
        "p": random_measure(rng, x, budget.max_numerator),
        "q": random_measure(rng, x, budget.max_numerator),
    }


def _check_duality(inst):
    p, q = inst["p"], inst["q"]
    cost, plan, witness = wasserstein(p, q)
    attained = integrate(witness.potential, p) - integrate(witness.potential, q)
    ok = attained == cost == plan.cost
    return CheckOutcome(ok, _frac(cost), _frac(attained))


def _gen_measure_triple(rng, budget):
    x = random_space(rng, max_points=budget.max_points)
    return {
        "p": random_measure(rng, x, budget.max_numerator),
        "q": random_measure(rng, x, budget.max_numerator),
        "r": random_measure(rng, x, budget.max_numerator),
    }


def _check_metric_axioms(inst):
    p, q, r = inst["p"], inst["q"], inst["r"]
    pq = wasserstein_distance(p, q)
    qp = wasserstein_distance(q, p)
    pr = wasserstein_distance(p, r)
    qr = wasserstein_distance(q, r)
    ok = pq == qp and pr <= pq + qr and (pq == 0) == (p == q)
    return CheckOutcome(ok, _frac(pq), _frac(qp))


def _gen_oracle(rng, budget):
    x = random_space(rng, max_points=budget.max_points)
    cap = budget.max_oracle_support
    return {
        "p": random_measure_with_support(rng, x, cap, budget.max_numerator),
        "q": random_measure_with_support(rng, x, cap, budget.max_numerator),
    }


def _check_oracle(inst):
    p, q = inst["p"], inst["q"]
    fast = wasserstein_distance(p, q)
    slow = wasserstein_oracle(p, q)
    return CheckOutcome(fast == slow, _frac(fast), _frac(slow))


def _gen_map_pair_measures(rng, budget):
    k = budget.max_factor_points
    x = random_space(rng, max_points=k, prefix="a")
    y = random_space(rng, max_points=k, prefix="b")
    z = random_space(rng, max_points=k, prefix="c")
    w = random_space(rng, max_points=k, prefix="d")
    return {
        "f": random_short_map(rng, x, z),
        "g": random_short_map(rng, y, w),
        "p": random_measure(rng, x, budget.max_numerator),
        "q": random_measure(rng, y, budget.max_numerator),
    }


def _check_product_naturality(inst):
    f, g, p, q = inst["f"], inst["g"], inst["p"], inst["q"]
    lhs = pushforward(tensor_map(f, g), product(p, q))
    rhs = product(pushforward(f, p), pushforward(g, q))
    return CheckOutcome(lhs == rhs, _weights_json(lhs), _weights_json(rhs))


def _gen_map_pair_joint(rng, budget):
    k = budget.max_factor_points
    x = random_space(rng, max_points=k, prefix="a")
    y = random_space(rng, max_points=k, prefix="b")
    z = random_space(rng, max_points=k, prefix="c")
    w = random_space(rng, max_points=k, prefix="d")
    return {
        "f": random_short_map(rng, x, z),
        "g": random_short_map(rng, y, w),
        "r": random_measure(rng, tensor(x, y), budget.max_numerator),
    }


def _check_marginals_naturality(inst):
    f, g, r = inst["f"], inst["g"], inst["r"]
    rx, ry = marginals(r)
    lhs = marginals(pushforward(tensor_map(f, g), r))
    rhs = (pushforward(f, rx), pushforward(g, ry))
    return CheckOutcome(lhs == rhs, _pair_json(lhs), _pair_json(rhs))


def _gen_map_measures_same(rng, budget):
    x = random_space(rng, max_points=budget.max_points, prefix="a")
    y = random_space(rng, max_points=budget.max_points, prefix="b")
    return {
        "f": random_short_map(rng, x, y),
        "p": random_measure(rng, x, budget.max_numerator),
        "q": random_measure(rng, x, budget.max_numerator),
    }


def _check_pushforward_contraction(inst):
    f, p, q = inst["f"], inst["p"], inst["q"]
    lhs = wasserstein_distance(pushforward(f, p), pushforward(f, q))
    rhs = wasserstein_distance(p, q)
    return CheckOutcome(lhs <= rhs, _frac(lhs), _frac(rhs))


def _gen_point_pair(rng, budget):
    x, y = _space_pair(rng, budget)
    return {
        "xspace": x,
        "yspace": y,
        "x": rng.choice(x.points),
        "y": rng.choice(y.points),
    }


def _check_dirac_product(inst):
    x, y = inst["xspace"], inst["yspace"]
    lhs = product(dirac(x, inst["x"]), dirac(y, inst["y"]))
    rhs = dirac(tensor(x, y), (inst["x"], inst["y"]))
    return CheckOutcome(lhs == rhs, _weights_json(lhs), _weights_json(rhs))


def _check_dirac_marginals(inst):
    x, y = inst["xspace"], inst["yspace"]
    lhs = marginals(dirac(tensor(x, y), (inst["x"], inst["y"])))
    rhs = (dirac(x, inst["x"]), dirac(y, inst["y"]))
    return CheckOutcome(lhs == rhs, _pair_json(lhs), _pair_json(rhs))


def _gen_point_and_measure(rng, budget):
    x, y = _space_pair(rng, budget)
    return {
        "xspace": x,
        "x": rng.choice(x.points),
        "q": random_measure(rng, y, budget.max_numerator),
    }


def _check_strength(inst):
    x, pt, q = inst["xspace"], inst["x"], inst["q"]
    st = strength(pt, q, x)
    ok_marg = marginals(st) == (dirac(x, pt), q)
    swapped = pushforward(braiding(x, q.space), st)
    ok_braid = swapped == product(q, dirac(x, pt))
    return CheckOutcome(
        ok_marg and ok_braid, _pair_json(marginals(st)), _weights_json(swapped)
    )


def _gen_product_triple(rng, budget):
    k = max(2, budget.max_factor_points - 1)
    x = random_space(rng, max_points=k, prefix="a")
    y = random_space(rng, max_points=k, prefix="b")
    z = random_space(rng, max_points=k, prefix="c")
    return {
        "p": random_measure(rng, x, budget.max_numerator),
        "q": random_measure(rng, y, budget.max_numerator),
        "r": random_measure(rng, z, budget.max_numerator),
    }


def _check_product_associative(inst):
    p, q, r = inst["p"], inst["q"], inst["r"]
    left = product(product(p, q), r)
    reassoc = pushforward(associator(p.space, q.space, r.space), left)
    right = product(p, product(q, r))
    return CheckOutcome(reassoc == right, _weights_json(reassoc), _weights_json(right))


def _check_family_independence(inst):
    ms = [inst["p"], inst["q"], inst["r"]]
    joint = product_n(ms)
    ok = is_independent_family(joint, 3) and marginals_n(joint, 3) == ms
    return CheckOutcome(ok, _weights_json(joint), _pair_json(tuple(ms)))


def _gen_triple_joint(rng, budget):
    k = max(2, budget.max_factor_points - 1)
    x = random_space(rng, max_points=k, prefix="a")
    y = random_space(rng, max_points=k, prefix="b")
    z = random_space(rng, max_points=k, prefix="c")
    xyz = tensor(tensor(x, y), z)
    return {"r": random_measure(rng, xyz, budget.max_numerator)}


def _check_marginals_coassociative(inst):
    r = inst["r"]
    xy, z = r.space.factors
    x, y = xy.factors
    rxy, rz = marginals(r)
    rx, ry = marginals(rxy)
    shifted = pushforward(associator(x, y, z), r)
    rx2, ryz = marginals(shifted)
    ry2, rz2 = marginals(ryz)
    ok = (rx, ry, rz) == (rx2, ry2, rz2)
    return CheckOutcome(
        ok, _pair_json((rx, ry)) + [_weights_json(rz)],
        _pair_json((rx2, ry2)) + [_weights_json(rz2)],
    )


def _gen_unit_joint(rng, budget):
    x = random_space(rng, max_points=budget.max_points)
    one = terminal()
    right = random_measure(rng, tensor(x, one), budget.max_numerator)
    left = random_measure(rng, tensor(one, x), budget.max_numerator)
    return {"right": right, "left": left}


def _check_marginals_counital(inst):
    right, left = inst["right"], inst["left"]
    x = right.space.factors[0]
    rx, r1 = marginals(right)
    ok_right = rx == pushforward(unitor_right(x), right) and r1.weights == (1,)
    x2 = left.space.factors[1]
    l1, lx = marginals(left)
    ok_left = lx == pushforward(unitor_left(x2), left) and l1.weights == (1,)
    return CheckOutcome(
        ok_right and ok_left, _weights_json(rx), _weights_json(lx)
    )


def _gen_product_unital(rng, budget):
    x = random_space(rng, max_points=budget.max_points)
    return {"p": random_measure(rng, x, budget.max_numerator)}


def _check_product_unital(inst):
    p = inst["p"]
    one = dirac(terminal(), "*")
    via_right = pushforward(unitor_right(p.space), product(p, one))
    via_left = pushforward(unitor_left(p.space), product(one, p))
    ok = via_right == p and via_left == p
    return CheckOutcome(ok, _weights_json(via_right), _weights_json(p))


def _gen_braiding(rng, budget):
    x, y = _space_pair(rng, budget)
    return {
        "p": random_measure(rng, x, budget.max_numerator),
        "q": random_measure(rng, y, budget.max_numerator),
        "r": random_measure(rng, tensor(x, y), budget.max_numerator),
    }


def _check_product_braiding(inst):
    p, q = inst["p"], inst["q"]
    lhs = pushforward(braiding(p.space, q.space), product(p, q))
    rhs = product(q, p)
    return CheckOutcome(lhs == rhs, _weights_json(lhs), _weights_json(rhs))


def _check_marginals_braiding(inst):
    r = inst["r"]
    x, y = r.space.factors
    rx, ry = marginals(r)
    swapped = pushforward(braiding(x, y), r)
    lhs = marginals(swapped)
    return CheckOutcome(lhs == (ry, rx), _pair_json(lhs), _pair_json((ry, rx)))


def _gen_quad_joints(rng, budget):
    w, x, y, z = _space_quad(rng, budget)
    return {
        "p": random_measure(rng, tensor(w, x), budget.max_numerator),
        "q": random_measure(rng, tensor(y, z), budget.max_numerator),
    }


def _check_bimonoidality(inst):
    p, q = inst["p"], inst["q"]
    w, x = p.space.factors
    y, z = q.space.factors
    shuffled = pushforward(middle_interchange(w, x, y, z), product(p, q))
    wy, xz = marginals(shuffled)
    pw, px = marginals(p)
    qy, qz = marginals(q)
    ok = wy == product(pw, qy) and xz == product(px, qz)
    return CheckOutcome(ok, _pair_json((wy, xz)), _pair_json((product(pw, qy), product(px, qz))))


def _check_decomposition(inst):
    p, q = inst["p"], inst["q"]
    w, x = p.space.factors
    y, z = q.space.factors
    shuffled = pushforward(middle_interchange(w, x, y, z), product(p, q))
    wy, xz = marginals(shuffled)
    ok = is_independent(wy) and is_independent(xz)
    return CheckOutcome(ok, _weights_json(wy), _weights_json(xz))


def _gen_dirac_marginal_joint(rng, budget):
    x, y = _space_pair(rng, budget)
    xy = tensor(x, y)
    pt = rng.choice(x.points)
    while True:
        raw = [rng.randint(0, budget.max_numerator) for _ in y.points]
        total = sum(raw)
        if total:
            break
    weights = {
        (pt, ypt): Fraction(n, total) for ypt, n in zip(y.points, raw) if n
    }
    return {"r": Measure.from_mapping(xy, weights)}


def _check_dirac_marginal_independence(inst):
    r = inst["r"]
    ok = is_independent(r)
    back = product(*marginals(r))
    return CheckOutcome(ok, _weights_json(r), _weights_json(back))


def _gen_projection_independence(rng, budget):
    x, y = _space_pair(rng, budget)
    p = random_measure(rng, x, budget.max_numerator)
    q = random_measure(rng, y, budget.max_numerator)
    joint = product(p, q)
    arbitrary = random_measure(rng, tensor(x, y), budget.max_numerator)
    return {"joint": joint, "arbitrary": arbitrary}


def _check_projection_independence(inst):
    joint, arbitrary = inst["joint"], inst["arbitrary"]
    x, y = joint.space.factors
    law = Law(joint.space, joint)
    ok_product = independent_maps(law, proj1(x, y), proj2(x, y))
    other = Law(arbitrary.space, arbitrary)
    ok_trivial = independent_maps(other, proj1(x, y), bang(arbitrary.space))
    return CheckOutcome(ok_product and ok_trivial, ok_product, ok_trivial)


def _gen_convolution(rng, budget):
    m = random_monoid(rng)
    return {
        "monoid": m,
        "p": random_measure(rng, m.carrier, budget.max_numerator),
        "q": random_measure(rng, m.carrier, budget.max_numerator),
        "r": random_measure(rng, m.carrier, budget.max_numerator),
    }


def _check_convolution_monoid(inst):
    m, p, q, r = inst["monoid"], inst["p"], inst["q"], inst["r"]
    assoc_l = convolve(convolve(p, q, m), r, m)
    assoc_r = convolve(p, convolve(q, r, m), m)
    e = dirac(m.carrier, m.unit)
    ok = (
        assoc_l == assoc_r
        and convolve(e, p, m) == p
        and convolve(p, e, m) == p
    )
    return CheckOutcome(ok, _weights_json(assoc_l), _weights_json(assoc_r))


def _gen_affine(rng, budget):
    x = random_space(rng, max_points=budget.max_points)
    return {"p": random_measure(rng, x, budget.max_numerator)}


def _check_affine(inst):
    p = inst["p"]
    collapsed = pushforward(bang(p.space), p)
    one = dirac(terminal(), "*")
    return CheckOutcome(
        collapsed == one, _weights_json(collapsed), _weights_json(one)
    )


def _gen_partial_integral(rng, budget):
    x, y = _space_pair(rng, budget)
    xy = tensor(x, y)
    return {
        "f": random_functional(rng, xy),
        "p": random_measure(rng, x, budget.max_numerator),
        "x": rng.choice(x.points),
    }


def _check_partial_integral(inst):
    f, p, pt = inst["f"], inst["p"], inst["x"]
    try:
        averaged = partial_integral(f, p)
    except ValueError as exc:
        return CheckOutcome(False, str(exc), None)
    x, y = f.domain.factors
    slice_at = partial_integral(f, dirac(x, pt))
    expected = tuple(f((pt, ypt)) for ypt in y.points)
    ok = slice_at.values == expected
    return CheckOutcome(
        ok,
        [_frac(v) for v in slice_at.values],
        [_frac(v) for v in expected],
    )


def _gen_sum_functional(rng, budget):
    x, y = _space_pair(rng, budget)
    return {
        "f": random_functional(rng, x),
        "g": random_functional(rng, y),
        "p": random_measure(rng, x, budget.max_numerator),
        "q": random_measure(rng, y, budget.max_numerator),
    }


def _check_sum_functional(inst):
    f, g, p, q = inst["f"], inst["g"], inst["p"], inst["q"]
    try:
        combined = sum_functional(f, g)
    except ValueError as exc:
        return CheckOutcome(False, str(exc), None)
    lhs = integrate(combined, product(p, q))
    rhs = integrate(f, p) + integrate(g, q)
    return CheckOutcome(lhs == rhs, _frac(lhs), _frac(rhs))


def _entry(law_id, statement, generate, check, expected_counterexample=False):
    return LawCatalogEntry(law_id, statement, generate, check, expected_counterexample)


CATALOG = {
    e.id: e
    for e in [
        _entry(
            "affine_terminal",
            "pushing any measure to the one-point space gives its unique measure",
            _gen_affine,
            _check_affine,
        ),
        _entry(
            "bimonoidality_square",
            "middle-interchanged product of joints has the paired products as marginals",
            _gen_quad_joints,
            _check_bimonoidality,
        ),
        _entry(
            "convolution_monoid",
            "convolve is associative with unit dirac(monoid unit)",
            _gen_convolution,
            _check_convolution_monoid,
        ),
        _entry(
            "decomposition_independence",
            "marginals of a product of joints are independent pairs",
            _gen_quad_joints,
            _check_decomposition,
        ),
        _entry(
            "dirac_marginal_independence",
            "a joint with a deterministic marginal is independent",
            _gen_dirac_marginal_joint,
            _check_dirac_marginal_independence,
        ),
        _entry(
            "dirac_marginals",
            "marginals(dirac((x, y))) == (dirac(x), dirac(y))",
            _gen_point_pair,
            _check_dirac_marginals,
        ),
        _entry(
            "dirac_product",
            "product(dirac(x), dirac(y)) == dirac((x, y))",
            _gen_point_pair,
            _check_dirac_product,
        ),
        _entry(
            "expectation_marginals",
            "marginals of the average equal the averages of the marginals",
            _gen_nested_joint,
            _check_expectation_marginals,
        ),
        _entry(
            "expectation_naturality",
            "expectation(pushforward_nested(f, mu)) == pushforward(f, expectation(mu))",
            _gen_nested_map,
            _check_expectation_naturality,
        ),
        _entry(
            "expectation_product",
            "averaging the product of nestings equals the product of the averages",
            _gen_nested_pair_on_factors,
            _check_expectation_product,
        ),
        _entry(
            "expectation_short",
            "W1(E(mu), E(nu)) <= W1 between mu and nu one level up",
            _gen_nested_same_base,
            _check_expectation_short,
        ),
        _entry(
            "family_independence",
            "an n-fold product is independent as a family, with the factors as marginals",
            _gen_product_triple,
            _check_family_independence,
        ),
        _entry(
            "kantorovich_duality",
            "primal optimal cost equals the dual witness value exactly",
            _gen_measure_pair,
            _check_duality,
        ),
        _entry(
            "marginals_braiding",
            "marginals commute with the braiding swap",
            _gen_braiding,
            _check_marginals_braiding,
        ),
        _entry(
            "marginals_coassociative",
            "the three marginals agree whichever pairing is split first",
            _gen_triple_joint,
            _check_marginals_coassociative,
        ),
        _entry(
            "marginals_counital",
            "marginals against the one-point factor return the measure itself",
            _gen_unit_joint,
            _check_marginals_counital,
        ),
        _entry(
            "marginals_naturality",
            "marginals(pushforward(f x g, r)) == (pushforward(f, r_X), pushforward(g, r_Y))",
            _gen_map_pair_joint,
            _check_marginals_naturality,
        ),
        _entry(
            "marginals_of_product_identity",
            "marginals(product(p, q)) == (p, q)",
            _gen_measure_pair_on_factors,
            _check_marginals_of_product,
        ),
        _entry(
            "marginals_short",
            "W1(r_X, r'_X) + W1(r_Y, r'_Y) <= W1(r, r')",
            _gen_joint_pair,
            _check_marginals_short,
        ),
        _entry(
            "monad_associativity",
            "averaging inner layers first or flattening first agree",
            _gen_double_nested,
            _check_monad_associativity,
        ),
        _entry(
            "monad_left_unit",
            "expectation of the point mass at p is p",
            _gen_measure,
            _check_left_unit,
        ),
        _entry(
            "monad_right_unit",
            "expectation of the Dirac-image of p is p",
            _gen_measure,
            _check_right_unit,
        ),
        _entry(
            "oracle_equivalence",
            "network simplex equals brute-force vertex enumeration",
            _gen_oracle,
            _check_oracle,
        ),
        _entry(
            "partial_integral_short",
            "integrating out one tensor coordinate leaves a short functional",
            _gen_partial_integral,
            _check_partial_integral,
        ),
        _entry(
            "product_associative",
            "left-nested and right-nested products agree under re-association",
            _gen_product_triple,
            _check_product_associative,
        ),
        _entry(
            "product_braiding",
            "pushing product(p, q) along the braiding gives product(q, p)",
            _gen_braiding,
            _check_product_braiding,
        ),
        _entry(
            "product_isometry",
            "W1(p x q, p' x q') == W1(p, p') + W1(q, q')",
            _gen_isometry,
            _check_isometry,
        ),
        _entry(
            "product_naturality",
            "pushforward(f x g, product(p, q)) == product(pushforward(f, p), pushforward(g, q))",
            _gen_map_pair_measures,
            _check_product_naturality,
        ),
        _entry(
            "product_of_marginals_not_identity",
            "the correlated uniform pair is not the product of its marginals",
            _gen_correlated_witness,
            _check_correlated_witness,
            expected_counterexample=True,
        ),
        _entry(
            "product_unital",
            "product with the one-point measure is the measure itself",
            _gen_product_unital,
            _check_product_unital,
        ),
        _entry(
            "projection_independence",
            "projections of a product law are independent observables",
            _gen_projection_independence,
            _check_projection_independence,
        ),
        _entry(
            "pushforward_contraction",
            "W1(f_* p, f_* q) <= W1(p, q) for short f",
            _gen_map_measures_same,
            _check_pushforward_contraction,
        ),
        _entry(
            "strength_marginals",
            "dirac(x) x q has marginals (dirac(x), q) and braids to q x dirac(x)",
            _gen_point_and_measure,
            _check_strength,
        ),
        _entry(
            "sum_functional_short",
            "f(x) + g(y) is short on the tensor and integrates factorwise",
            _gen_sum_functional,
            _check_sum_functional,
        ),
        _entry(
            "wasserstein_metric_axioms",
            "W1 is symmetric, triangular, and zero exactly on equal measures",
            _gen_measure_triple,
            _check_metric_axioms,
        ),
    ]
}


@dataclass
class LawReport:
    """Outcome of a suite run; deterministic given (seed, cases, budget)."""

    seed: int
    cases: int
    budget: SizeBudget
    entries: dict = field(default_factory=dict)

    def all_passed(self) -> bool:
        return all(e["failures"] == 0 for e in self.entries.values())

    def to_json(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "seed": self.seed,
            "cases": self.cases,
            "budget": self.budget.to_json(),
            "all_passed": self.all_passed(),
            "laws": self.entries,
        }


def _law_rng(seed: int, law_id: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{law_id}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def run_law(law_id: str, seed: int, cases: int, budget: SizeBudget = DEFAULT_BUDGET):
    """Run one catalog law for the given number of cases; returns its entry."""
    entry = CATALOG.get(law_id)
    if entry is None:
        raise ValueError(f"unknown law {law_id!r}")
    rng = _law_rng(seed, law_id)
    runs = 1 if entry.expected_counterexample else cases
    failures = 0
    first = None
    for _ in range(runs):
        instance = entry.generate(rng, budget)
        outcome = entry.check(instance)
        if not outcome.ok:
            failures += 1
            if first is None:
                first = {
                    "instance": jsonio.instance_to_json(instance),
                    "lhs": outcome.lhs,
                    "rhs": outcome.rhs,
                }
    if entry.expected_counterexample:
        status = "expected-counterexample found" if failures == 0 else "fail"
    else:
        status = "pass" if failures == 0 else "fail"
    return {
        "statement": entry.statement,
        "cases_run": runs,
        "failures": failures,
        "status": status,
        "first_counterexample": first,
    }


def run_suite(
    seed: int,
    cases: int,
    budget: SizeBudget = DEFAULT_BUDGET,
    law_ids: Optional[list] = None,
) -> LawReport:
    """Evaluate the catalog on fresh seeded instances; never aborts early."""
    if cases < 1:
        raise ValueError("cases must be at least 1")
    if law_ids is None:
        law_ids = sorted(CATALOG)
    else:
        for law_id in law_ids:
            if law_id not in CATALOG:
                raise ValueError(f"unknown law {law_id!r}")
    report = LawReport(seed=seed, cases=cases, budget=budget)
    for law_id in sorted(law_ids):
        report.entries[law_id] = run_law(law_id, seed, cases, budget)
    return report


def check_law(law_id: str, instance) -> CheckOutcome:
    """Replay a single serialized instance against one law.

    ``instance`` is either a dict of live objects or their typed JSON form,
    as found under ``first_counterexample.instance`` in a report.
    """
    entry = CATALOG.get(law_id)
    if entry is None:
        raise ValueError(f"unknown law {law_id!r}")
    if instance and all(
        isinstance(v, dict) and "type" in v for v in instance.values()
    ):
        instance = jsonio.instance_from_json(instance)
    return entry.check(instance)
