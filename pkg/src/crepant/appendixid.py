"""Bernoulli polynomials, the constants N_{k,j} and a_{ik}, and the identity
relating the constant terms of the two R-matrices.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .exactalg import Cyc, Series, zeta_pow

__all__ = [
    "INV", "bernoulli_poly", "bernoulli_value", "n_constant",
    "orbifold_b_series", "kp2_b_series", "a_constants", "a_constant_x_parts",
    "verify_lemma_ci", "ORBIFOLD_POINT_X",
]

INV = (0, 2, 1)


@lru_cache(maxsize=None)
def _bernoulli_numbers(m: int) -> tuple:
    # t/(e^t - 1) = sum B_n t^n/n!; B_n = -1/(n+1) sum_{k<n} C(n+1,k) B_k
    b = [Fraction(1)]
    for n in range(1, m + 1):
        b.append(-sum(comb(n + 1, k) * b[k] for k in range(n)) / (n + 1))
    return tuple(b)


def bernoulli_poly(m: int) -> list[Fraction]:
    """Coefficients ``[c_0, ..., c_m]`` of ``B_m(x) = sum c_k x^k``.

    From ``t e^{tx}/(e^t - 1)``: ``B_m(x) = sum_k C(m,k) B_{m-k} x^k``.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    b = _bernoulli_numbers(m)
    return [comb(m, k) * b[m - k] for k in range(m + 1)]


def bernoulli_value(m: int, x) -> Fraction:
    x = Fraction(x)
    return sum((c * x ** k for k, c in enumerate(bernoulli_poly(m))), Fraction(0))


def n_constant(k: int, j: int) -> Cyc:
    """``N_{k,j} = (-1/(3 zeta^j))^k + sum_{l=1,2} (zeta^j - zeta^{j+l})^{-k}``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    zj = zeta_pow(j)
    out = (Cyc(-1, 0) / (zj * 3)) ** k
    for l in (1, 2):
        out = out + (zj - zeta_pow(j + l)).inverse() ** k
    return out


def orbifold_b_series(i: int, order: int) -> Series:
    """``Exp(3 sum_k (-1)^{k+1} B_{3k+1}(i/3)/(3k+1) z^{3k}/(3k))`` in ``z``."""
    coeffs = [Fraction(0)] * (order + 1)
    for k in range(1, order // 3 + 1):
        coeffs[3 * k] = 3 * (-1) ** (k + 1) * bernoulli_value(3 * k + 1, Fraction(i, 3)) / (3 * k + 1) / (3 * k)
    return Series(coeffs, order, "z").exp()


def kp2_b_series(order: int) -> Series:
    """``Exp(-sum_k N_{2k-1,0}/(2k-1) B_{2k}(0)/(2k) z^{2k-1})`` in ``z``."""
    b = _bernoulli_numbers(2 * (order // 2 + 1))
    coeffs = [Cyc(0)] * (order + 1)
    for k in range(1, (order + 1) // 2 + 1):
        n = 2 * k - 1
        if n > order:
            break
        coeffs[n] = -(n_constant(n, 0) * b[2 * k]) / (n * 2 * k)
    return Series(coeffs, order, "z").exp()


# X~ at the orbifold point: P(X~) = -X/3 and X = 1 at theta = 0
ORBIFOLD_POINT_X = Fraction(-1, 3)


def a_constant_x_parts(i: int, K: int) -> list:
    """The ``X``-dependent part of the ``L^0`` coefficient of ``P~^k_{i0}``, k <= K."""
    from .rmatrix import ptilde_table

    table = ptilde_table("kp2", K, "tilde")
    out = []
    for k in range(K + 1):
        e = table.entry(k, i)
        out.append({key[0]: v for key, v in e.terms.items() if key[2] == 0 and key[0] > 0})
    return out


def a_constants(i: int, K: int, x_value=ORBIFOLD_POINT_X) -> list[Fraction]:
    """``a_{ik}``: the ``L^0`` coefficient of the local P^2 ``P~^k_{i0}``, k <= K.

    From ``k = 6`` on, row 1 carries ``X L^0`` terms; ``X`` is evaluated at
    ``x_value`` (by default its value at the orbifold point).
    """
    from .rmatrix import ptilde_table

    table = ptilde_table("kp2", K, "tilde")
    x = Fraction(x_value)
    out = []
    for k in range(K + 1):
        e = table.entry(k, i)
        c = Cyc(0)
        for (xe, ce, le), v in e.terms.items():
            if le != 0:
                continue
            if ce != 0:
                raise ValueError(f"a_{i}{k} depends on C1")
            c = c + v * x ** xe
        out.append(c.to_fraction())
    return out


def verify_lemma_ci(i: int, K: int = 9, x_value=ORBIFOLD_POINT_X) -> Series:
    """Left side minus right side of the identity, to ``z^K``."""
    if i not in (0, 1, 2):
        raise ValueError("i must be 0, 1 or 2")
    a = a_constants(INV[i], K, x_value)
    lhs = kp2_b_series(K) * Series(a, K, "z")
    rhs = orbifold_b_series(i, K)
    return lhs - rhs
