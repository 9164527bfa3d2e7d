from fractions import Fraction

from crepant.anomaly import (change_to_A2, d_T, degree_report, genus1_one_point, hae_residual,
                             hae_series_residual, two_point, verify_hae)
from crepant.exactalg import RingElem
from crepant.graphsum import potential

from goldens import printed_genus1_one_point


def test_change_of_basis_round_trip():
    e = RingElem.mono(2, -1, 3, 5) + RingElem.L(-2, Fraction(1, 7))
    assert change_to_A2(e).to_ring() == e


def test_hae_genus2_and_3_with_graph_input():
    for g in (2, 3):
        assert hae_residual(g).is_zero()
        assert hae_residual(g, via="dT").is_zero()
    assert hae_series_residual(2).is_zero()


def test_genus1_one_point_relation_to_printed():
    assert genus1_one_point("graph") == printed_genus1_one_point() * -3
    assert genus1_one_point("printed") == printed_genus1_one_point()


def test_hae_with_printed_genus1_input_is_nonzero():
    assert not hae_residual(2, "printed").is_zero()


def test_two_point_routes_agree():
    assert two_point(2, via="legs") == two_point(2, via="dT")
    assert potential("orbifold", 1, (1, 1)).value == d_T(genus1_one_point("graph"))


def test_degree_report():
    r = degree_report(2)
    assert (r["a2_degree"], r["l_min"], r["l_max"]) == (3, 0, 6)
    assert r["c1_free"] and r["a2_bound"] and r["l_bound"] and r["sharper_l_bound"]


def test_perturbed_potential_is_detected():
    F2 = potential("orbifold", 2).value + RingElem.mono(2, 0, -3, Fraction(1, 1000))
    assert verify_hae(2).is_zero()
    assert not verify_hae(2, F=F2).is_zero()
