from fractions import Fraction

import pytest

from crepant.exactalg import RingElem
from crepant.frobenius import (FrobeniusData, check_canonical_coordinates, check_idempotents, pairing,
                               product, psi_inverse, psi_matrix, three_point, tqft_genus_value, tqft_norms)

GEOS = ("orbifold", "kp2")


@pytest.mark.parametrize("geometry", GEOS)
def test_idempotents_and_canonical_coordinates(geometry):
    assert check_idempotents(geometry)
    assert check_canonical_coordinates(geometry)


def test_norms():
    assert tqft_norms("orbifold") == [Fraction(1, 9)] * 3
    assert tqft_norms("kp2") == [Fraction(-1, 9)] * 3
    assert FrobeniusData("orbifold").norm == Fraction(1, 9)


@pytest.mark.parametrize("geometry", GEOS)
def test_unit_and_symmetry(geometry):
    for i in range(3):
        unit = product(geometry, 0, i)
        assert unit == [RingElem.const(int(m == i)) for m in range(3)]
        for j in range(3):
            for k in range(3):
                t = three_point(geometry, i, j, k)
                assert t == three_point(geometry, j, i, k) == three_point(geometry, i, k, j)


@pytest.mark.parametrize("geometry", GEOS)
def test_psi_inverse(geometry):
    P, Q = psi_matrix(geometry), psi_inverse(geometry)
    for a in range(3):
        for b in range(3):
            s = sum((P[a][i] * Q[i][b] for i in range(3)), RingElem())
            assert s == RingElem.const(int(a == b))


@pytest.mark.parametrize("geometry", GEOS)
@pytest.mark.parametrize("g", [0, 1, 2, 3, 4])
def test_handle_element_matches_norm_sum(geometry, g):
    c = FrobeniusData(geometry).norm
    assert tqft_genus_value(geometry, g) == 3 * c ** (1 - g)


def test_pairings_opposite():
    assert pairing("orbifold") == [[-v for v in row] for row in pairing("kp2")]
