"""Witten-Kontsevich intersection numbers of psi classes.

``tau_intersection(g, (a1, ..., an))`` is the integral of
``psi_1^a1 ... psi_n^an`` over the moduli space of stable genus ``g``
curves with ``n`` markings, computed by the DVV recursion.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

__all__ = ["tau_intersection", "TauQuery", "double_factorial"]


def double_factorial(n: int) -> int:
    """``n!!`` with the convention ``(-1)!! = 1``."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


class TauQuery(tuple):
    """A ``(genus, sorted exponents)`` key."""

    def __new__(cls, genus: int, exponents):
        return super().__new__(cls, (genus, tuple(sorted(exponents))))

    @property
    def genus(self) -> int:
        return self[0]

    @property
    def exponents(self) -> tuple:
        return self[1]


def _stable(g: int, n: int) -> bool:
    return 2 * g - 2 + n > 0


def tau_intersection(g, exponents=None) -> Fraction:
    """``<tau_a1 ... tau_an>_g`` as an exact rational.

    Takes ``(g, exponents)`` or a single :class:`TauQuery`.

    Returns 0 when the exponents do not add up to ``3g - 3 + n``.
    Raises ``ValueError`` outside the stable range.
    """
    if exponents is None:
        g, exponents = g
    ex = tuple(sorted(int(a) for a in exponents))
    if g < 0 or any(a < 0 for a in ex):
        raise ValueError("genus and exponents must be non-negative")
    if not _stable(g, len(ex)):
        raise ValueError(f"unstable moduli space (g={g}, n={len(ex)})")
    return _tau(g, ex)


def _tau(g: int, ex: tuple) -> Fraction:
    if not _stable(g, len(ex)) or sum(ex) != 3 * g - 3 + len(ex):
        return Fraction(0)
    return _dvv(g, ex)


# lru_cache is safe under concurrent use; a racing miss only recomputes the
# same canonical value.
@lru_cache(maxsize=None)
def _dvv(g: int, ex: tuple) -> Fraction:
    n = len(ex)
    if (g, n) == (0, 3):
        return Fraction(1)
    if (g, n) == (1, 1):
        return Fraction(1, 24)
    # recurse on the largest exponent
    d = ex[-1]
    rest = ex[:-1]
    total = Fraction(0)
    for j, dj in enumerate(rest):
        others = rest[:j] + rest[j + 1:]
        k = d + dj - 1
        if k < 0:
            continue
        coef = Fraction(double_factorial(2 * d + 2 * dj - 1), double_factorial(2 * dj - 1))
        total += coef * _tau(g, tuple(sorted(others + (k,))))
    for a in range(d - 1):
        b = d - 2 - a
        w = Fraction(double_factorial(2 * a + 1) * double_factorial(2 * b + 1), 2)
        if g >= 1:
            total += w * _tau(g - 1, tuple(sorted(rest + (a, b))))
        idx = range(len(rest))
        for size in range(len(rest) + 1):
            for part in combinations(idx, size):
                left = tuple(rest[i] for i in part)
                right = tuple(rest[i] for i in idx if i not in part)
                for g1 in range(g + 1):
                    total += w * _tau(g1, tuple(sorted(left + (a,)))) * _tau(g - g1, tuple(sorted(right + (b,))))
    return total / double_factorial(2 * d + 1)
