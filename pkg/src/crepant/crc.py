"""The ring map from local P^2 generators to orbifold generators.

``P(L~) = -L/3``, ``P(X~) = -X/3``, ``P(C1~) = C1/3``.  The correspondence
reads ``F^orb_{g,n}(phi_i...) = (-1)^(2g-2+n) P(F^KP2_{g,n}(H^i...))``.
"""
from __future__ import annotations

from fractions import Fraction

from .exactalg import RingElem
from .frobenius import pairing, three_point
from .graphsum import potential

__all__ = ["apply_P", "crc_sign", "crc_residual", "verify_crc", "genus0_match"]


def apply_P(e: RingElem) -> RingElem:
    return e.substitute(RingElem.X(1, Fraction(-1, 3)), RingElem.C1(1, Fraction(1, 3)), RingElem.L(1, Fraction(-1, 3)))


def crc_sign(g: int, n: int) -> int:
    return (-1) ** (2 * g - 2 + n)


def crc_residual(g: int, insertions=()) -> RingElem:
    ins = tuple(insertions)
    orb = potential("orbifold", g, ins).value
    kp2 = potential("kp2", g, ins).value
    return orb - apply_P(kp2) * crc_sign(g, len(ins))


def verify_crc(g: int, insertions=()) -> RingElem:
    """Same as :func:`crc_residual`; zero when the correspondence holds."""
    return crc_residual(g, insertions)


def genus0_match() -> bool:
    """Three-point functions and pairings correspond with the sign ``-1``."""
    for i in range(3):
        for j in range(3):
            if pairing("orbifold")[i][j] != -pairing("kp2")[i][j]:
                return False
            for k in range(3):
                if three_point("orbifold", i, j, k) != apply_P(three_point("kp2", i, j, k)) * crc_sign(0, 3):
                    return False
    return True
