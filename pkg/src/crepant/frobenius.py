"""Genus-zero Frobenius structure at ``t = 0`` for both geometries.

Basis ``phi_0, phi_1, phi_2`` (for local P^2 read ``1, H, H^2``).  With
``s = -1`` on the orbifold and ``s = +1`` on local P^2:

* ``phi_1 . phi_1 = s L^3/C1^3 phi_2``, ``phi_1 . phi_2 = phi_0``,
  ``phi_2 . phi_2 = s C1^3/L^3 phi_1``;
* the pairing is ``kappa`` times the antidiagonal-in-``(1, 2)`` matrix,
  ``kappa = 1/3`` (orbifold) or ``-1/3`` (local P^2).

The normalized vectors ``phi~_1 = s C1/L phi_1`` and ``phi~_2 = s L/C1 phi_2``
multiply like the group ring of Z/3, so ``e_a = 1/3 sum_i zeta^(-a i) phi~_i``
are idempotents with constant norm ``kappa/3``.
"""
from __future__ import annotations

from fractions import Fraction

from .exactalg import Cyc, RingElem, zeta_pow
from .mirror import check_geometry

__all__ = [
    "SIGMA", "KAPPA", "FrobeniusData", "frobenius_data", "pairing",
    "product", "three_point", "psi_matrix", "psi_inverse", "psi_at_origin",
    "idempotents", "tqft_norms", "canonical_coordinate_derivatives",
    "check_idempotents", "check_canonical_coordinates", "tqft_genus_value",
]

SIGMA = {"orbifold": -1, "kp2": 1}
KAPPA = {"orbifold": Fraction(1, 3), "kp2": Fraction(-1, 3)}


class FrobeniusData:
    """Products, pairing and the normalized idempotent frame of one geometry."""

    def __init__(self, geometry: str):
        self.geometry = check_geometry(geometry)
        self.sigma = SIGMA[geometry]
        self.kappa = KAPPA[geometry]
        L, C = RingElem.L(), RingElem.C1()
        s = self.sigma
        # weights w_i with phi~_i = w_i phi_i
        self.weights = (RingElem.const(1), C / L * s, L / C * s)

    @property
    def norm(self) -> Fraction:
        """``g(e_a, e_a)``; the same for every ``a``."""
        return self.kappa / 3

    @property
    def psi_phase(self) -> str:
        # the orthonormal frame needs 1/sqrt(norm); on local P^2 the norm is
        # negative and the frame picks up a factor -i that cancels in every
        # graph sum, so matrices here are kept in the e-frame
        return "1" if self.kappa > 0 else "-i"


def frobenius_data(geometry: str) -> FrobeniusData:
    return FrobeniusData(geometry)


def pairing(geometry: str) -> list[list[Fraction]]:
    k = KAPPA[check_geometry(geometry)]
    return [[k, 0, 0], [0, 0, k], [0, k, 0]]


def product(geometry: str, i: int, j: int) -> list[RingElem]:
    """Coordinates of ``phi_i . phi_j`` in the ``phi`` basis."""
    s = SIGMA[check_geometry(geometry)]
    L, C = RingElem.L(), RingElem.C1()
    out = [RingElem(), RingElem(), RingElem()]
    i, j = sorted((i, j))
    if i == 0:
        out[j] = RingElem.const(1)
    elif (i, j) == (1, 1):
        out[2] = (L ** 3) / (C ** 3) * s
    elif (i, j) == (1, 2):
        out[0] = RingElem.const(1)
    else:
        out[1] = (C ** 3) / (L ** 3) * s
    return out


def three_point(geometry: str, i: int, j: int, k: int) -> RingElem:
    """``<<phi_i, phi_j, phi_k>>_{0,3}`` at ``t = 0``."""
    g = pairing(geometry)
    prod = product(geometry, i, j)
    return sum((prod[m] * g[m][k] for m in range(3) if g[m][k]), RingElem())


def _mul(geometry, u, v):
    out = [RingElem(), RingElem(), RingElem()]
    for i in range(3):
        if u[i].is_zero():
            continue
        for j in range(3):
            if v[j].is_zero():
                continue
            p = product(geometry, i, j)
            for m in range(3):
                if not p[m].is_zero():
                    out[m] = out[m] + u[i] * v[j] * p[m]
    return out


def idempotents(geometry: str) -> list[list[RingElem]]:
    """``e_a`` in the ``phi`` basis, ``a = 0, 1, 2``."""
    w = FrobeniusData(geometry).weights
    return [[w[i] * (zeta_pow(-a * i) * Fraction(1, 3)) for i in range(3)] for a in range(3)]


def psi_matrix(geometry: str) -> list[list[RingElem]]:
    """Change of basis ``phi_i = sum_a Psi[a][i] e_a`` (rows indexed by ``a``)."""
    w = FrobeniusData(geometry).weights
    # phi~_i = sum_a zeta^(a i) e_a and phi_i = phi~_i / w_i; 1/w_i = w_{-i}
    return [[w[-i % 3] * zeta_pow(a * i) for i in range(3)] for a in range(3)]


def psi_inverse(geometry: str) -> list[list[RingElem]]:
    """``e_a = sum_i Psi^-1[i][a] phi_i``; the transpose layout of :func:`idempotents`."""
    e = idempotents(geometry)
    return [[e[a][i] for a in range(3)] for i in range(3)]


def psi_at_origin(geometry: str) -> list[list[Cyc]]:
    """Normalized ``Psi`` at ``t = 0`` with ``L/C1 = 1``.

    On the orbifold this is ``1/3 [zeta^(a i)]``.  On local P^2 the orthonormal
    version carries the extra scalar ``FrobeniusData.psi_phase == '-i'``.
    """
    check_geometry(geometry)
    return [[zeta_pow(a * i) * Fraction(1, 3) for i in range(3)] for a in range(3)]


def tqft_norms(geometry: str) -> list[Fraction]:
    """``g(e_a, e_a)`` computed from the pairing and the idempotent coordinates."""
    g = pairing(geometry)
    out = []
    for e in idempotents(geometry):
        v = RingElem()
        for i in range(3):
            for j in range(3):
                if g[i][j]:
                    v = v + e[i] * e[j] * g[i][j]
        if set(v.terms) - {(0, 0, 0)}:
            raise ArithmeticError(f"norm is not constant: {v}")
        out.append(v.coeff(0, 0, 0).to_fraction())
    return out


def tqft_genus_value(geometry: str, g: int) -> Fraction:
    """``eps(H^g)`` with the handle element ``H = sum g^ij phi_i . phi_j``.

    Computed from the pairing and products alone; equals ``sum_a c^(1-g)``.
    """
    pair = pairing(geometry)
    inv = [[Fraction(0)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            if pair[i][j]:
                inv[j][i] = 1 / pair[i][j]
    H = [RingElem(), RingElem(), RingElem()]
    for i in range(3):
        for j in range(3):
            if inv[i][j]:
                p = product(geometry, i, j)
                H = [H[m] + p[m] * inv[i][j] for m in range(3)]
    acc = [RingElem.const(1), RingElem(), RingElem()]
    for _ in range(g):
        acc = _mul(geometry, acc, H)
    val = sum((acc[m] * pair[0][m] for m in range(3) if pair[0][m]), RingElem())
    if set(val.terms) - {(0, 0, 0)}:
        raise ArithmeticError("handle element power is not constant")
    return val.coeff(0, 0, 0).to_fraction()


def check_idempotents(geometry: str) -> bool:
    """``e_a . e_b = delta_ab e_a`` and ``sum_a e_a = phi_0``."""
    es = idempotents(geometry)
    for a in range(3):
        for b in range(3):
            p = _mul(geometry, es[a], es[b])
            want = es[a] if a == b else [RingElem()] * 3
            if any(p[m] != want[m] for m in range(3)):
                return False
    total = [sum((e[m] for e in es), RingElem()) for m in range(3)]
    return total == [RingElem.const(1), RingElem(), RingElem()]


def canonical_coordinate_derivatives(geometry: str) -> list[RingElem]:
    """``D u^a`` where ``sum_a du^a e_a = dt_1 phi_1`` and ``D = C1 d/dt_1``.

    Read off from the ``e``-coordinates of ``phi_1``.
    """
    psi = psi_matrix(geometry)
    return [psi[a][1] * RingElem.C1() for a in range(3)]


def check_canonical_coordinates(geometry: str) -> bool:
    """``D u^a = s zeta^a L`` for each ``a``."""
    s = SIGMA[check_geometry(geometry)]
    du = canonical_coordinate_derivatives(geometry)
    return all(du[a] == RingElem.L(1, zeta_pow(a) * s) for a in range(3))
