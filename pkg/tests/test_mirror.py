from fractions import Fraction

import pytest

from crepant.exactalg import DERIVATIONS, RingElem
from crepant.mirror import (build_mirror_data, picard_fuchs_residual,
                            ring_to_theta_series, structural_relations_check)


def coeffs(s, n):
    return [s[k].to_fraction() for k in range(n + 1)]


def test_orbifold_L_closed_form():
    d = build_mirror_data("orbifold", 12)
    # L^3 = -theta^3 / (1 + theta^3/27)
    t3 = d.L ** 3
    assert coeffs(t3 * (1 + d.L.__class__.monomial(3, 12, c=Fraction(1, 27))), 12) == [0, 0, 0, -1] + [0] * 9


def test_kp2_L_closed_form():
    d = build_mirror_data("kp2", 10)
    assert coeffs(d.L ** -3, 10) == [1, 27] + [0] * 9


@pytest.mark.parametrize("geometry", ["orbifold", "kp2"])
def test_structural_relations(geometry):
    for name, res in structural_relations_check(build_mirror_data(geometry, 18)).items():
        assert res.truncate(12).is_zero(), name


@pytest.mark.parametrize("geometry", ["orbifold", "kp2"])
def test_derivation_matches_series(geometry):
    D = DERIVATIONS[geometry]
    for e in (RingElem.L(), RingElem.X(), RingElem.C1(-1), RingElem.mono(2, 1, -2, 3)):
        lhs = ring_to_theta_series(D(e), 18, geometry).truncate(10)
        rhs = ring_to_theta_series(e, 18, geometry).D().truncate(10)
        assert lhs == rhs


def test_orbifold_examples():
    d = build_mirror_data("orbifold", 12)
    assert coeffs(d.X, 6) == [1, 0, 0, Fraction(-1, 54), 0, 0, Fraction(1, 1620)]
    assert ring_to_theta_series(RingElem(), 5, "orbifold").is_zero()


def test_picard_fuchs():
    assert picard_fuchs_residual(30) == {}
    assert picard_fuchs_residual(9, printed_sign=True) != {}


def test_undefined_series():
    with pytest.raises(KeyError):
        build_mirror_data("kp2", 5).get("A2")
    with pytest.raises(ValueError):
        build_mirror_data("P2", 5)


def test_picard_fuchs_accepts_mirror_data():
    assert picard_fuchs_residual(build_mirror_data("orbifold", 10)) == {}
    with pytest.raises(ValueError):
        picard_fuchs_residual(build_mirror_data("kp2", 5))
