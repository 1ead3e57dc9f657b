"""Acceptance criteria, one test per criterion.

Each test records a pass/fail line that is printed in the terminal summary.
Seeds are fixed so the sampled instances are reproducible.
"""

import itertools
import json
import math
import random
import time

import numpy as np

from polyfun.cli import main
from polyfun.framework import PolContext, units_theorem_check
from polyfun.ivp import (
    IntSubset,
    NotRingset,
    Ringset,
    SingletonNotRingset,
    check_ringset_mod,
    frac_eval_check,
    prime_powers,
    ringset_scan,
    singleton_classify,
)
from polyfun.nullmod import (
    brute_force_classify,
    classify_null_ideal_set,
    count_poly_functions,
    kernel_intersection,
    null_kernel,
    power_profile,
    verify_witness,
)
from polyfun.poly import Poly, middle_expansion_check
from polyfun.ring import (
    SubsetSpec,
    conjugation_orbits,
    element_to_matrix,
    is_unit_generated_over_center,
    make_cyclic_ring,
    make_matrix_ring,
    make_triangular_ring,
    subset,
)

from conftest import table_ring


def every_subset(R):
    els = list(R.elements())
    for mask in range(1 << len(els)):
        yield SubsetSpec(R, tuple(e for i, e in enumerate(els) if mask >> i & 1))


def random_poly(R, rng, max_degree):
    return Poly(R, [[rng.randrange(R.modulus) for _ in range(R.rank)] for _ in range(rng.randint(0, max_degree) + 1)])


def random_element(R, rng):
    return R.element([rng.randrange(R.modulus) for _ in range(R.rank)])


def test_ac1_middle_expansion(acceptance):
    rings = [
        make_cyclic_ring(8),
        make_matrix_ring(2, 4),
        make_triangular_ring(3, 3),
        table_ring("quat3"),
        table_ring("f2s3"),
        table_ring("dual4"),
    ]
    rng = random.Random(1)
    start = time.perf_counter()
    trials = failures = 0
    for R in rings:
        for _ in range(1700):
            g, f, s = random_poly(R, rng, 3), random_poly(R, rng, 3), random_element(R, rng)
            trials += 1
            failures += not middle_expansion_check(g, f, s)
    elapsed = time.perf_counter() - start
    ok = trials >= 10_000 and failures == 0 and elapsed < 10
    acceptance("AC1", "middle-expansion identity", ok, f"{trials} trials, {failures} failures, {elapsed:.1f}s")
    assert ok


def test_ac2_left_right_ideal_fact(acceptance):
    checked = bad = 0
    for R in (make_triangular_ring(2, 2), make_cyclic_ring(4)):
        x = Poly.x(R)
        for S in every_subset(R):
            d = power_profile(S).degree_bound
            for side in ("right", "left"):
                K = null_kernel(R, S, side, degree=d)
                K_next = null_kernel(R, S, side, degree=d + 1)
                for f in K.polys():
                    for b in R.basis_elements():
                        # right evaluation: constants on the left; left evaluation: mirrored
                        g = b * f if side == "right" else f * b
                        checked += 1
                        bad += not K.contains(g)
                    checked += 1
                    bad += not K_next.contains(x * f)
    ok = bad == 0 and checked > 0
    acceptance("AC2", "null kernels are one-sided ideals", ok, f"{checked} products, {bad} escapes")
    assert ok


def test_ac3_oracle_equivalence(acceptance):
    start = time.perf_counter()
    cases = mismatches = 0

    def compare(R, S, side):
        nonlocal cases, mismatches
        fast = classify_null_ideal_set(R, S, side)
        slow = brute_force_classify(R, S, side, dmax=max(fast.degree_bound, 1))
        assert slow.exact
        cases += 1
        mismatches += fast.is_null_ideal_set != slow.is_null_ideal_set

    t2z2 = make_triangular_ring(2, 2)
    for S in every_subset(t2z2):
        compare(t2z2, S, "right")
        compare(t2z2, S, "left")
    z4 = make_cyclic_ring(4)
    for S in every_subset(z4):
        compare(z4, S, "right")

    # brute force must reach degree D* to be exact; keep subsets whose D* fits the cap
    m2z2 = make_matrix_ring(2, 2)
    els = list(m2z2.elements())
    rng = random.Random(3)
    seen, sampled = set(), 0
    while sampled < 200:
        S = SubsetSpec(m2z2, tuple(rng.sample(els, rng.randint(1, 16))))
        key = frozenset(e.coords for e in S)
        if key in seen or power_profile(S).degree_bound > 4:
            continue
        seen.add(key)
        sampled += 1
        compare(m2z2, S, "right")
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and sampled >= 200 and elapsed < 120
    acceptance("AC3", "classifier agrees with brute force", ok, f"{cases} cases, {mismatches} mismatches, {elapsed:.1f}s")
    assert ok


def test_ac4_singleton_failure(acceptance):
    R = make_matrix_ring(2, 2)
    S = subset(R, ["e11"])
    c = classify_null_ideal_set(R, S)
    w = c.witness
    direct = (w.f * w.r).eval_right(w.s)
    ok = (
        not c.is_null_ideal_set
        and c.exact
        and verify_witness(null_kernel(R, S), w)
        and w.f.eval_right(R.parse_element("e11")).is_zero()
        and direct == w.value
        and not direct.is_zero()
    )
    acceptance("AC4", "{e11} in M2(Z/2) is not a null-ideal set", ok, f"f={w.f.pretty()}, r={R.format_element(w.r)}")
    assert ok


def test_ac5_singleton_ringset(acceptance):
    from fractions import Fraction

    s = ((1, 0), (0, 0))
    res = singleton_classify(s)
    ok = isinstance(res, SingletonNotRingset)
    if ok:
        t, d = res.t, res.modulus
        ts_st = [[sum(t[i][k] * s[k][j] - s[i][k] * t[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
        expected = tuple(tuple(Fraction(v, d) for v in row) for row in ts_st)
        ok = res.lift.value == expected == ((0, Fraction(-1, 2)), (0, 0))
    scalars = all(isinstance(singleton_classify(((k, 0), (0, k))), Ringset) for k in (0, 1, -3))
    ok = ok and scalars
    acceptance("AC5", "singleton ringset criterion", ok, "e11 -> -1/2 e12; 0, I, -3I central")
    assert ok


def sample_integer_subset(rng):
    """A subset of M2(Z) with entries in [-2, 2]: general, diagonal or scalar matrices."""
    n = rng.randint(1, 3)
    kind = rng.random()
    if kind < 0.4:
        return [tuple(tuple(rng.randint(-2, 2) for _ in range(2)) for _ in range(2)) for _ in range(n)]
    if kind < 0.7:
        return [((rng.randint(-2, 2), 0), (0, rng.randint(-2, 2))) for _ in range(n)]
    return [((k, 0), (0, k)) for k in (rng.randint(-2, 2) for _ in range(n))]


def test_ac6_lift_consistency(acceptance):
    rng = random.Random(6)
    moduli = prime_powers(9)
    sampled = negatives = lift_failures = 0
    crt_bad = 0
    patterns = set()
    seen = set()
    while sampled < 120:
        S = IntSubset.of("full", 2, sample_integer_subset(rng))
        key = frozenset(S.matrices)
        if key in seen:
            continue
        seen.add(key)
        sampled += 1
        verdict = ringset_scan(S, "right", moduli)
        if isinstance(verdict, NotRingset):
            negatives += 1
            lift = verdict.lift
            good = (
                frac_eval_check(lift.F, S)
                and frac_eval_check(lift.G, S)
                and not lift.product.is_integral_at(lift.s, "right")
                and lift.product == lift.F * lift.G
            )
            lift_failures += not good
        six, two, three = (check_ringset_mod(S, d).classification.is_null_ideal_set for d in (6, 2, 3))
        patterns.add((two, three))
        crt_bad += six != (two and three)
    ok = sampled >= 100 and negatives > 0 and lift_failures == 0 and crt_bad == 0 and len(patterns) >= 3
    acceptance(
        "AC6",
        "lifted counterexamples and CRT consistency",
        ok,
        f"{sampled} subsets, {negatives} lifts, {lift_failures} bad; "
        f"{sampled} mod-6 checks over {len(patterns)} verdict patterns, {crt_bad} bad",
    )
    assert ok


def test_ac7_units_theorem(acceptance):
    start = time.perf_counter()
    R = make_matrix_ring(2, 2)
    generated, _ = is_unit_generated_over_center(R)
    orbits = conjugation_orbits(R)
    unions = violations = 0
    for mask in range(1 << len(orbits)):
        S = SubsetSpec(R, tuple(e for i, o in enumerate(orbits) if mask >> i & 1 for e in o))
        unions += 1
        report = units_theorem_check(PolContext.null(R, S, "right"))
        violations += not (report.hypothesis and report.conclusion)
        violations += not classify_null_ideal_set(R, S, "right").is_null_ideal_set
    elapsed = time.perf_counter() - start
    ok = generated and violations == 0 and elapsed < 60
    acceptance("AC7", "units theorem on M2(Z/2)", ok, f"{unions} orbit unions, {violations} violations, {elapsed:.1f}s")
    assert ok


def test_ac8_non_necessity(acceptance):
    R = make_triangular_ring(2, 2)
    generated, sub = is_unit_generated_over_center(R)
    S = SubsetSpec(R, tuple(R.elements()))
    both = all(classify_null_ideal_set(R, S, side).is_null_ideal_set for side in ("right", "left"))
    ok = not generated and both
    acceptance("AC8", "T2(Z/2) positive without unit generation", ok, f"units generate {sub.size} of {R.order}")
    assert ok


def test_ac9_union_closure(acceptance):
    R = make_matrix_ring(2, 2)
    els = list(R.elements())
    rng = random.Random(9)
    pairs = span_bad = implication_bad = both_positive = 0
    for _ in range(150):
        A = SubsetSpec(R, tuple(rng.sample(els, rng.randint(0, 6))))
        B = SubsetSpec(R, tuple(rng.sample(els, rng.randint(0, 6))))
        U = A.union(B)
        d = power_profile(U).degree_bound
        KA, KB, KU = (null_kernel(R, X, degree=d) for X in (A, B, U))
        span_bad += kernel_intersection(KA, KB) != KU.basis
        pa, pb = (classify_null_ideal_set(R, X).is_null_ideal_set for X in (A, B))
        if pa and pb:
            both_positive += 1
            implication_bad += not classify_null_ideal_set(R, U).is_null_ideal_set
        pairs += 1
    ok = pairs >= 100 and span_bad == 0 and implication_bad == 0
    acceptance(
        "AC9", "union closure", ok, f"{pairs} pairs ({both_positive} both positive), {span_bad + implication_bad} failures"
    )
    assert ok


def kempner_count(n):
    total, k = 1, 0
    while math.factorial(k) % n:
        total *= n // math.gcd(n, math.factorial(k))
        k += 1
    return total


def m2z2_function_count(side, degree):
    """Count functions M2(Z/2) -> M2(Z/2) given by polynomials of degree <= ``degree``.

    Works with plain 2x2 integer matrices: each monomial c x^k is tabulated
    over all 16 inputs as a 64-bit word, and the set of all polynomial
    functions is enumerated as the XOR span of those words.
    """
    mats = [np.array(bits, dtype=np.int64).reshape(2, 2) for bits in itertools.product((0, 1), repeat=4)]
    units = [np.array(bits, dtype=np.int64).reshape(2, 2) for bits in itertools.product((0, 1), repeat=4) if bits.count(1) == 1]
    words = []
    for k in range(degree + 1):
        for c in units:
            word = 0
            for i, s in enumerate(mats):
                p = np.linalg.matrix_power(s, k) % 2
                v = (c @ p) % 2 if side == "right" else (p @ c) % 2
                for j, bit in enumerate(v.flatten()):
                    word |= int(bit) << (4 * i + j)
            words.append(word)
    span = np.zeros(1, dtype=np.uint64)
    for w in words:
        w = np.uint64(w)
        pos = np.searchsorted(span, w)
        if pos < len(span) and span[pos] == w:
            continue
        # w lies outside the current span, so the coset span ^ w is disjoint from it
        span = np.sort(np.concatenate([span, span ^ w]))
    return len(span)


def test_ac10_function_counts(acceptance):
    z2 = count_poly_functions(make_cyclic_ring(2))
    z4 = count_poly_functions(make_cyclic_ring(4))
    R = make_matrix_ring(2, 2)
    dstar = power_profile(SubsetSpec(R, tuple(R.elements()))).degree_bound
    counts = {}
    for side in ("right", "left"):
        counts[side] = (count_poly_functions(R, side), m2z2_function_count(side, dstar + 2))
    ok = (
        z2 == kempner_count(2) == 4
        and z4 == kempner_count(4) == 64
        and all(a == b for a, b in counts.values())
    )
    acceptance("AC10", "polynomial function counts", ok, f"Z/2: {z2}, Z/4: {z4}, M2(Z/2): {counts['right'][0]}")
    assert ok


def test_ac11_search(acceptance, capsys, tmp_path):
    start = time.perf_counter()
    outputs = []
    codes = []
    for jobs in (1, 4):
        out = tmp_path / f"search_{jobs}.jsonl"
        codes.append(main(["search", "--builtin-max-order", "16", "--jobs", str(jobs), "--out", str(out)]))
        outputs.append(
            [{k: v for k, v in json.loads(line).items() if k != "elapsed_ms"} for line in out.read_text().splitlines()]
        )
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    findings = sum(r["status"] == "finding" for r in outputs[0])
    ok = codes == [0, 0] and findings == 0 and outputs[0] == outputs[1] and len(outputs[0]) == 17 and elapsed < 300
    acceptance("AC11", "open-question search, order <= 16", ok, f"{len(outputs[0])} rings, {findings} findings, {elapsed:.1f}s")
    assert ok
