import pytest

from crepant.exactalg import DERIVATIONS, RingElem
from crepant.frobenius import three_point
from crepant.graphsum import decorated_potential, potential, required_zorder, tqft_limit

from goldens import POTENTIALS

GEOS = ("orbifold", "kp2")


@pytest.mark.parametrize("geometry", GEOS)
def test_genus2_golden(geometry):
    assert potential(geometry, 2).value == POTENTIALS[(geometry, 2)]


@pytest.mark.parametrize("geometry", GEOS)
@pytest.mark.parametrize("ins", [(1, 1, 1), (0, 1, 2), (2, 2, 2), (0, 0, 0)])
def test_genus0_three_point(geometry, ins):
    assert potential(geometry, 0, ins).value == three_point(geometry, *ins)


@pytest.mark.parametrize("geometry", GEOS)
def test_insertion_is_derivative(geometry):
    F2 = potential(geometry, 2).value
    assert potential(geometry, 2, (1,)).value == DERIVATIONS[geometry](F2) / RingElem.C1()


@pytest.mark.parametrize("geometry", GEOS)
def test_string_equation_for_unit_insertion(geometry):
    # the unit insertion kills potentials of positive dimension at t = 0
    assert potential(geometry, 2, (0,)).value.is_zero()


@pytest.mark.parametrize("geometry", GEOS)
def test_decorated_sum_matches(geometry):
    assert decorated_potential(geometry, 2) == potential(geometry, 2).value


@pytest.mark.parametrize("geometry", GEOS)
def test_potential_is_rational(geometry):
    assert potential(geometry, 2).value.is_rational()


def test_tqft_limit():
    for g in (2, 3):
        t = tqft_limit("orbifold", g)
        assert t["edges_vanish"] and t["potential"].is_zero()


def test_parallel_matches_serial():
    assert potential("kp2", 2, (1, 1), jobs=2).value == potential("kp2", 2, (1, 1), jobs=1).value


def test_errors():
    with pytest.raises(ValueError):
        potential("orbifold", 1)
    with pytest.raises(ValueError):
        potential("orbifold", 2, (3,))
    assert required_zorder(3) == 7
