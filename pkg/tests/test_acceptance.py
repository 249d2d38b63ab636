"""Acceptance suite.

One test per criterion, each at its stated number of random cases with
tolerance zero: every comparison is exact rational equality or an exact
inequality. Each test prints a single pass/fail line (visible under
``pytest -s``) before asserting.
"""

import time
from fractions import Fraction

from kantorovich import (
    FinMetricSpace,
    Measure,
    dirac,
    is_independent,
    jsonio,
    marginals,
    product,
    tensor,
)
from kantorovich.generate import cyclic_monoid, min_monoid
from kantorovich.laws import run_law, run_suite
from kantorovich.structure import convolve

SEED = 42


def _criterion(number, description, ok):
    print(f"[criterion {number:02d}] {description}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {number} failed: {description}"


def _law_passes(law_id, cases):
    entry = run_law(law_id, SEED, cases)
    return entry["failures"] == 0


def test_criterion_01_marginals_of_product_identity():
    _criterion(
        1,
        "marginals(product(p, q)) == (p, q) on 200 random cases",
        _law_passes("marginals_of_product_identity", 200),
    )


def test_criterion_02_correlated_witness():
    bit = FinMetricSpace(("0", "1"), ((0, 1), (1, 0)))
    pair = tensor(bit, bit)
    r = Measure.from_mapping(
        pair, {("0", "0"): Fraction(1, 2), ("1", "1"): Fraction(1, 2)}
    )
    back = product(*marginals(r))
    ok = (
        back.weights == (Fraction(1, 4),) * 4
        and back != r
        and not is_independent(r)
    )
    _criterion(2, "correlated uniform pair is a product-of-marginals counterexample", ok)


def test_criterion_03_product_isometry():
    _criterion(
        3,
        "W1(p x q, p' x q') == W1(p, p') + W1(q, q') on 200 random cases",
        _law_passes("product_isometry", 200),
    )


def test_criterion_04_marginal_shortness():
    _criterion(
        4,
        "W1(r_X, r'_X) + W1(r_Y, r'_Y) <= W1(r, r') on 200 random cases",
        _law_passes("marginals_short", 200),
    )


def test_criterion_05_monad_laws_and_naturality():
    ok = (
        _law_passes("monad_left_unit", 200)
        and _law_passes("monad_right_unit", 200)
        and _law_passes("monad_associativity", 200)
        and _law_passes("expectation_naturality", 200)
    )
    _criterion(5, "monad unit laws, associativity, and naturality on 200 cases each", ok)


def test_criterion_06_monoidal_monad_diagrams():
    ok = _law_passes("dirac_product", 100) and _law_passes("expectation_product", 100)
    _criterion(
        6,
        "dirac and expectation respect products on 100 nested cases",
        ok,
    )


def test_criterion_07_opmonoidal_monad_diagrams():
    ok = _law_passes("dirac_marginals", 100) and _law_passes(
        "expectation_marginals", 100
    )
    _criterion(
        7,
        "dirac and expectation respect marginals on 100 nested cases",
        ok,
    )


def test_criterion_08_bimonoidality_square():
    _criterion(
        8,
        "both composites of the four-factor interchange diagram agree on 100 cases",
        _law_passes("bimonoidality_square", 100),
    )


def test_criterion_09_decomposition():
    _criterion(
        9,
        "marginal pairs of a product of joints are independent on 100 cases",
        _law_passes("decomposition_independence", 100),
    )


def test_criterion_10_kantorovich_duality():
    # every solve validates its own certificates; this re-checks 200 fresh ones
    _criterion(
        10,
        "primal cost equals the short dual witness value on every solve",
        _law_passes("kantorovich_duality", 200),
    )


def test_criterion_11_oracle_equivalence():
    _criterion(
        11,
        "network simplex equals brute-force polytope enumeration on 200 cases",
        _law_passes("oracle_equivalence", 200),
    )


def test_criterion_12_convolution():
    random_part = _law_passes("convolution_monoid", 100)
    exhaustive = True
    for monoid in (
        cyclic_monoid(2),
        cyclic_monoid(3),
        cyclic_monoid(4),
        min_monoid(2),
        min_monoid(3),
    ):
        for x in monoid.carrier.points:
            for y in monoid.carrier.points:
                got = convolve(
                    dirac(monoid.carrier, x), dirac(monoid.carrier, y), monoid
                )
                exhaustive = exhaustive and got == dirac(
                    monoid.carrier, monoid.apply(x, y)
                )
    _criterion(
        12,
        "convolution monoid laws on 100 cases and exhaustively on point masses",
        random_part and exhaustive,
    )


def test_criterion_13_determinism():
    started = time.time()
    report = run_suite(seed=SEED, cases=200)
    first = jsonio.dumps(report.to_json())
    first_elapsed = time.time() - started
    second = jsonio.dumps(run_suite(seed=SEED, cases=200).to_json())
    ok = first == second and report.all_passed()
    _criterion(
        13,
        f"two 200-case suite runs are byte-identical ({first_elapsed:.1f}s per run)",
        ok,
    )
    assert first_elapsed < 60, "a 200-case suite must finish within the time budget"
