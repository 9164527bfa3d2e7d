import random
from fractions import Fraction

import pytest

from crepant.psi import double_factorial, tau_intersection

from test_acceptance import string_dilaton_suite


@pytest.mark.parametrize("g,ex,val", [
    (0, (0, 0, 0), 1),
    (1, (1,), Fraction(1, 24)),
    (2, (4,), Fraction(1, 1152)),
    (2, (2, 3), Fraction(29, 5760)),
    (3, (7,), Fraction(1, 82944)),
    (1, (1, 1), Fraction(1, 24)),
])
def test_known_values(g, ex, val):
    assert tau_intersection(g, ex) == val


def test_one_point_closed_form():
    # <tau_{3g-2}>_g = 1/(24^g g!)
    from math import factorial

    for g in range(1, 7):
        assert tau_intersection(g, (3 * g - 2,)) == Fraction(1, 24 ** g * factorial(g))


def test_dimension_mismatch_is_zero():
    assert tau_intersection(1, (0,)) == 0


def test_unstable_raises():
    with pytest.raises(ValueError):
        tau_intersection(0, (0, 0))


def test_double_factorial():
    assert [double_factorial(n) for n in (-1, 0, 1, 5, 6)] == [1, 1, 1, 15, 48]


def test_string_and_dilaton_random():
    assert string_dilaton_suite(random.Random(7), 100) == (True, True)


def test_tau_query_argument():
    from crepant.psi import TauQuery

    assert tau_intersection(TauQuery(2, (3, 2))) == Fraction(29, 5760)
