"""Printed reference values, entered from their numerators and denominators."""
from fractions import Fraction

from crepant.exactalg import RingElem

F = Fraction

# series: {name: {power: coefficient}}, exact up to and including ``through``
SERIES = {
    "orbifold": {
        "L": ({1: -1, 4: F(1, 81), 7: F(-2, 6561), 10: F(14, 1594323)}, 10),
        "C1": ({1: 1, 4: F(-1, 162), 7: F(4, 32805)}, 7),
        "A2": ({3: F(1, 4860), 6: F(-41, 472392)}, 6),
        "X": ({0: 1, 3: F(-1, 54), 6: F(1, 1620)}, 6),
    },
    "kp2": {
        "L": ({0: 1, 1: -9, 2: 162}, 2),
        "C1": ({0: 1, 1: -6, 2: 90}, 2),
        "X": ({1: -6, 2: 144}, 2),
    },
}

PTILDE_0J = {
    0: RingElem.const(1),
    1: RingElem.L(2, F(1, 162)),
    2: RingElem.L(1, F(1, 81)) + RingElem.L(4, F(25, 52488)),
    3: RingElem.L(3, F(7, 4374)) + RingElem.L(6, F(1225, 25509168)),
}


def _block(x: int, nums: dict, den: int, lshift: int) -> RingElem:
    out = RingElem()
    for p, n in nums.items():
        out = out + RingElem.mono(x, 0, p + lshift, F(n, den))
    return out


def _build(blocks) -> RingElem:
    out = RingElem()
    for x, nums, den, lshift in blocks:
        out = out + _block(x, nums, den, lshift)
    return out


F2_ORBIFOLD = _build([
    (0, {0: -291600, 3: -25893, 6: -784, 9: -8}, 466560, -3),
    (1, {0: 1}, 9, 0),
    (1, {0: 15}, 8, -3),
    (1, {3: 13}, 7776, 0),
    (2, {0: -1}, 18, 0),
    (2, {0: -15}, 8, -3),
    (3, {0: 5}, 8, -3),
])

F2_KP2 = _build([
    (0, {0: 400, 3: -959, 6: 784, 9: -216}, 17280, -3),
    (1, {0: -1}, 3, 0),
    (1, {0: 5}, 24, -3),
    (1, {3: 13}, 96, 0),
    (2, {0: -1}, 2, 0),
    (2, {0: 5}, 8, -3),
    (3, {0: 5}, 8, -3),
])

F3_ORBIFOLD = _build([
    (0, {0: 26784626400, 3: 7043364720, 6: 767774781, 9: 44032896,
         12: 1398288, 15: 23328, 18: 160}, 9523422720, -6),
    (1, {0: -318864600, 3: -66331710, 6: -5521446, 9: -228393, 12: -4681, 15: -38}, 18895680, -6),
    (2, {0: 531441000, 3: 83980800, 6: 4996566, 9: 132147, 12: 1307}, 12597120, -6),
    (3, {0: -47239200, 3: -5318784, 6: -200772, 9: -2539}, 839808, -6),
    (4, {0: 35}, 648, 0),
    (4, {0: 675}, 16, -6),
    (4, {0: 289}, 96, -3),
    (5, {0: -5 * 324, 3: -5 * 11}, 96, -6),
    (6, {0: 45}, 16, -6),
])

F3_KP2 = _build([
    (0, {0: 16800, 3: -119280, 6: 351063, 9: -543616, 12: 466096,
         15: -209952, 18: 38880}, 4354560, -6),
    (1, {0: 600, 3: -3370, 6: 7574, 9: -8459, 12: 4681, 15: -1026}, 8640, -6),
    (2, {0: 3000, 3: -12800, 6: 20562, 9: -14683, 12: 3921}, 5760, -6),
    (3, {0: 2400, 3: -7296, 6: 7436, 9: -2539}, 1152, -6),
    (4, {0: 35}, 8, 0),
    (4, {0: 75}, 16, -6),
    (4, {0: -289}, 32, -3),
    (5, {0: -15 * -12, 3: -15 * 11}, 32, -6),
    (6, {0: 45}, 16, -6),
])

POTENTIALS = {
    ("orbifold", 2): F2_ORBIFOLD,
    ("kp2", 2): F2_KP2,
    ("orbifold", 3): F3_ORBIFOLD,
    ("kp2", 3): F3_KP2,
}


def printed_genus1_one_point() -> RingElem:
    """``L^3 A2/(18 C1)`` with ``L^3 A2 = 3X - 3 - L^3/18``."""
    l3a2 = RingElem.X(1, 3) - 3 - RingElem.L(3, F(1, 18))
    return l3a2 / RingElem.C1() * F(1, 18)
