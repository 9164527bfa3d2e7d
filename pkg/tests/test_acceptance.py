"""One pass/fail line per acceptance criterion.

Run ``pytest tests/test_acceptance.py -v``; the lines are collected in the
"acceptance criteria" section of the terminal summary.  Criterion 11 runs
only when ``CREPANT_STRETCH=1``.
"""
import os
import random
import time
from fractions import Fraction
from itertools import product

import pytest

from conftest import record
from goldens import PTILDE_0J, POTENTIALS, SERIES, printed_genus1_one_point

from crepant.anomaly import degree_report, genus1_one_point, hae_residual, hae_series_residual
from crepant.appendixid import verify_lemma_ci
from crepant.crc import apply_P, crc_residual, crc_sign
from crepant.exactalg import DERIVATIONS, RingElem
from crepant.frobenius import tqft_genus_value
from crepant.graphs import aut_count, brute_force_aut, canonical_form, enumerate_stable_graphs
from crepant.graphsum import decorated_potential, potential, tqft_limit
from crepant.mirror import build_mirror_data, picard_fuchs_residual
from crepant.psi import tau_intersection
from crepant.rmatrix import bare_rmatrix, ptilde_table, rmatrix, symplectic_residual


def series_mismatches():
    bad = []
    for geometry, table in SERIES.items():
        data = build_mirror_data(geometry, max(t for _, t in table.values()) + 3)
        for name, (coeffs, through) in table.items():
            s = data.get(name)
            got = [s[n].to_fraction() for n in range(through + 1)]
            want = [Fraction(coeffs.get(n, 0)) for n in range(through + 1)]
            if got != want:
                bad.append(f"{geometry} {name} got {[str(g) for g in got]}")
    return bad


def test_criterion_1_series_goldens():
    t = time.perf_counter()
    bad = series_mismatches()
    dt = time.perf_counter() - t
    ok = not bad and dt < 1
    record("1", ok, f"{dt:.2f}s; mismatches: {bad}" if bad else f"{dt:.2f}s, all series match")
    assert ok, bad


def test_criterion_2_ptilde_goldens():
    t = time.perf_counter()
    table = ptilde_table("orbifold", 3, "tilde")
    bad = [(k, j) for k in range(4) for j in range(3) if table.entry(k, 0, j) != PTILDE_0J[k]]
    dt = time.perf_counter() - t
    ok = not bad and dt < 10
    record("2", ok, f"{dt:.2f}s, mismatches {bad}")
    assert ok


def test_criterion_3_picard_fuchs():
    res = picard_fuchs_residual(30)
    printed = picard_fuchs_residual(30, printed_sign=True)
    ok = not res
    record("3", ok, f"corrected operator residual zero to theta^30: {not res}; "
                    f"operator with the printed sign leaves a residual: {bool(printed)}")
    assert ok


def test_criterion_4_symplectic():
    true_ok = {g: not symplectic_residual(rmatrix(g, 12)) for g in ("orbifold", "kp2")}
    bare = symplectic_residual(bare_rmatrix("orbifold", 12))
    ok = all(true_ok.values()) and bool(bare)
    record("4", ok, f"true R symplectic to z^12 {true_ok}; bare R~ fails at z^{sorted(bare)}")
    assert ok


def test_criterion_5_potentials():
    t = time.perf_counter()
    bad = [key for key, want in POTENTIALS.items() if potential(*key).value != want]
    dt = time.perf_counter() - t
    ok = not bad and dt < 120
    record("5", ok, f"F2, F3 for both geometries in {dt:.1f}s, mismatches {bad}")
    assert ok


def test_criterion_6_holomorphic_anomaly():
    printed = {g: hae_residual(g, "printed").is_zero() for g in (2, 3)}
    graph = {g: hae_residual(g, "graph").is_zero() and hae_series_residual(g).is_zero() for g in (2, 3)}
    g1 = genus1_one_point("graph")
    equal = g1 == printed_genus1_one_point()
    ratio = g1 == printed_genus1_one_point() * -3
    ok = all(printed.values()) and equal
    record("6", ok, f"HAE zero with printed genus-1 input {printed}; "
                    f"with graph-sum genus-1 input {graph}; "
                    f"graph-sum <<phi1>>_1 equals L^3A2/(18C1): {equal}, equals -3 times it: {ratio}")
    assert ok


def test_criterion_7_crc():
    g23 = {g: crc_residual(g).is_zero() for g in (2, 3)}
    g1 = crc_residual(1, (1,)).is_zero() and crc_sign(1, 1) == -1
    ok = all(g23.values()) and g1
    record("7", ok, f"F_g^orb = P(F_g^KP2) {g23}; genus 1 phi1 with sign -1: {g1}")
    assert ok


def test_criterion_8_lemma_ci():
    res = {i: verify_lemma_ci(i, 9).is_zero() for i in range(3)}
    ok = all(res.values())
    record("8", ok, f"residual zero to z^9 {res}")
    assert ok


def test_criterion_9_degree_bounds():
    reps = {g: degree_report(g) for g in (2, 3)}
    ok = all(r["a2_bound"] and r["l_bound"] for r in reps.values())
    sharper = {g: (r["l_min"], r["l_max"], r["sharper_l_bound"]) for g, r in reps.items()}
    record("9", ok, f"A2 degrees {[r['a2_degree'] for r in reps.values()]}; "
                    f"L range and sharper [0, 6g-6] check {sharper}")
    assert ok and all(r["sharper_l_bound"] for r in reps.values())


def _random_exponents(rng, g, n):
    # n non-negative integers adding up to 3g - 3 + n
    total = 3 * g - 3 + n
    cuts = sorted(rng.randint(0, total) for _ in range(n - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


def string_dilaton_suite(rng, cases=100):
    string_ok = dilaton_ok = True
    for _ in range(cases):
        g = rng.randint(0, 3)
        n = rng.randint(3 if g == 0 else 1, 5)
        a = _random_exponents(rng, g, n + 1)[:n]
        # string: <tau_0 prod tau_a>_g = sum_i <... tau_(a_i - 1) ...>_g
        lhs = tau_intersection(g, [0] + a)
        rhs = sum((tau_intersection(g, a[:i] + [a[i] - 1] + a[i + 1:]) for i in range(n) if a[i]), Fraction(0))
        string_ok &= lhs == rhs
        g = rng.randint(0, 3)
        n = rng.randint(3 if g == 0 else 1, 5)
        a = _random_exponents(rng, g, n)
        # dilaton: <tau_1 prod tau_a>_g = (2g - 2 + n) <prod tau_a>_g
        dilaton_ok &= tau_intersection(g, [1] + a) == (2 * g - 2 + n) * tau_intersection(g, a)
    return string_ok, dilaton_ok


def _random_ring(rng, terms=4):
    e = RingElem()
    for _ in range(terms):
        e = e + RingElem.mono(rng.randint(0, 3), rng.randint(-2, 2), rng.randint(-4, 4),
                              Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
    return e


def algebra_suite(rng, cases=100):
    hom_ok = leibniz_ok = True
    for _ in range(cases):
        a, b = _random_ring(rng), _random_ring(rng)
        hom_ok &= apply_P(a * b) == apply_P(a) * apply_P(b) and apply_P(a + b) == apply_P(a) + apply_P(b)
        for D in DERIVATIONS.values():
            leibniz_ok &= D(a * b) == D(a) * b + a * D(b)
    return hom_ok, leibniz_ok


def aut_equivalence(g, n=0):
    # sum over all decorations of 1/|Aut G| equals the sum over isomorphism
    # classes of decorated graphs of 1/|Aut(G, p)|
    for G in enumerate_stable_graphs(g, n):
        if aut_count(G.genera, G.edges, G.legs) != brute_force_aut(G.genera, G.edges, G.legs):
            return False
        classes = {}
        for dec in product(range(3), repeat=len(G.genera)):
            labels = tuple(zip(G.genera, dec))
            classes.setdefault(canonical_form(labels, G.edges, G.legs), labels)
        lhs = Fraction(3 ** len(G.genera), G.aut)
        rhs = sum((Fraction(1, aut_count(lab, G.edges, G.legs)) for lab in classes.values()), Fraction(0))
        if lhs != rhs:
            return False
    return all(decorated_potential(geo, g) == potential(geo, g).value for geo in ("orbifold", "kp2"))


def tqft_suite():
    for geometry in ("orbifold", "kp2"):
        for g in (2, 3):
            t = tqft_limit(geometry, g)
            if not (t["edges_vanish"] and t["weight"] == tqft_genus_value(geometry, g)):
                return False
    return True


def test_criterion_10_property_suites():
    rng = random.Random(20241)
    string_ok, dilaton_ok = string_dilaton_suite(rng)
    tqft_ok = tqft_suite()
    aut_ok = aut_equivalence(2)
    hom_ok, leibniz_ok = algebra_suite(rng)
    parts = {"string": string_ok, "dilaton": dilaton_ok, "tqft": tqft_ok,
             "aut": aut_ok, "ring hom": hom_ok, "leibniz": leibniz_ok}
    ok = all(parts.values())
    record("10", ok, str(parts))
    assert ok


@pytest.mark.skipif(os.environ.get("CREPANT_STRETCH") != "1", reason="set CREPANT_STRETCH=1")
def test_criterion_11_stretch_genus4():
    t = time.perf_counter()
    F4 = potential("orbifold", 4).value
    ok = hae_residual(4, via="dT", F=F4).is_zero()
    dt = time.perf_counter() - t
    rep = degree_report(4, F=F4)
    record("11", ok and dt < 1800, f"g=4 HAE residual zero: {ok} in {dt:.0f}s; "
                                   f"A2 degree {rep['a2_degree']}, L range [{rep['l_min']}, {rep['l_max']}]")
    assert ok and dt < 1800


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
