"""B-model series for both geometries.

Orbifold series are in ``theta``, local P^2 series in ``q``. Everything is
computed in exact rationals from closed product formulas.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exactalg import DERIVATIONS, RingElem, Series

GEOMETRIES = ("orbifold", "kp2")
DEFAULT_ORDER = {"orbifold": 30, "kp2": 15}


def check_geometry(geometry: str) -> str:
    if geometry not in GEOMETRIES:
        raise ValueError(f"unknown geometry {geometry!r}; expected one of {GEOMETRIES}")
    return geometry


@dataclass(frozen=True)
class MirrorData:
    geometry: str
    order: int
    L: Series
    C1: Series
    C2: Series
    X: Series
    A2: Series | None = None
    I0: Series | None = None
    I1: Series | None = None
    I2: Series | None = None
    T: Series | None = None
    mu: Series | None = None
    extras: dict = field(default_factory=dict, compare=False)

    @property
    def var(self) -> str:
        return self.L.var

    def get(self, name: str) -> Series:
        s = getattr(self, name, None)
        if s is None:
            raise KeyError(f"series {name!r} is not defined for {self.geometry}")
        return s


def _orbifold_i_coefficient(n: int, s: int) -> Fraction:
    """Coefficient of ``theta^n z^(3s-n)`` in the small I-function.

    The z-polynomial attached to ``theta^n`` is ``prod (1 - (k z)^3)`` over
    ``k = r/3 + m < n/3`` with ``r = n mod 3``.
    """
    r = n % 3
    ks = [Fraction(r, 3) + m for m in range(n // 3)]
    # elementary symmetric e_s of the cubes
    e = [Fraction(1)] + [Fraction(0)] * len(ks)
    for k in ks:
        c = k ** 3
        for j in range(len(ks), 0, -1):
            e[j] += e[j - 1] * c
    if s > len(ks):
        return Fraction(0)
    return Fraction((-1) ** s) * e[s] / factorial(n)


def orbifold_i_function(order: int) -> dict:
    """Nonzero coefficients ``{(n, e): c}`` of ``theta^n z^e`` for ``n <= order``."""
    out = {}
    for n in range(order + 1):
        for s in range(n // 3 + 1):
            c = _orbifold_i_coefficient(n, s)
            if c:
                out[(n, 3 * s - n)] = c
    return out


def _i_component(order: int, j: int) -> Series:
    coeffs = [Fraction(0)] * (order + 1)
    for n in range(j, order + 1, 3):
        coeffs[n] = _orbifold_i_coefficient(n, (n - j) // 3)
    return Series(coeffs, order, "theta")


@lru_cache(maxsize=None)
def build_mirror_data(geometry: str, order: int | None = None) -> MirrorData:
    """All defining series of ``geometry`` to absolute precision ``order``."""
    check_geometry(geometry)
    if order is None:
        order = DEFAULT_ORDER[geometry]
    if order < 1:
        raise ValueError("order must be >= 1")
    if geometry == "orbifold":
        return _orbifold(order)
    return _kp2(order)


def _orbifold(N: int) -> MirrorData:
    t = Series.monomial(1, N, "theta")
    I0 = _i_component(N, 0)
    I1 = _i_component(N, 1)
    I2 = _i_component(N, 2)
    C1 = I1.D()
    C2 = (I2.D() / C1).D()
    L = -(t * (1 + (t ** 3).scale(Fraction(1, 27))).power(Fraction(-1, 3)))
    X = C1.D() / C1
    L3 = L ** 3
    A2 = ((X.scale(3) - 3 - L3.scale(Fraction(1, 18))) / L3).truncate(N - 3)
    return MirrorData("orbifold", N, L=L, C1=C1, C2=C2, X=X, A2=A2,
                      I0=I0, I1=I1, I2=I2, T=I1)


def _kp2(N: int) -> MirrorData:
    q = Series.monomial(1, N, "q")
    L = (1 + q.scale(27)).power(Fraction(-1, 3))
    C1 = Series([Fraction(factorial(3 * d), factorial(d) ** 3) * (-1) ** d for d in range(N + 1)], N, "q")
    X = C1.D() / C1
    C2 = -(L ** 3) / (C1 * C1)
    mu = (L - 1).D_inverse()
    # mirror map log q + D^{-1}(C1 - 1); only the power-series part is stored
    T = (C1 - 1).D_inverse()
    return MirrorData("kp2", N, L=L, C1=C1, C2=C2, X=X, T=T, mu=mu)


def ring_to_theta_series(e: RingElem, order: int, geometry: str) -> Series:
    """Image of a ring element under the canonical map into Laurent series."""
    data = build_mirror_data(geometry, order)
    if not e.terms:
        return Series.zero(order, data.var)
    return e.to_series(data.L, data.X, data.C1)


def structural_relations_check(data: MirrorData) -> dict[str, Series]:
    """Residual series of the defining differential relations (all should vanish)."""
    d = DERIVATIONS[data.geometry]
    L, X, C1, C2 = data.L, data.X, data.C1, data.C2
    out = {}
    dl = d.dl_over_l.to_series(L, X, C1)
    out["C1^2 C2 + L^3"] = C1 * C1 * C2 + L ** 3
    out["DL - L*(DL/L)"] = L.D() - L * dl
    out["DX - dx"] = X.D() - d.dx.to_series(L, X, C1)
    out["X C1 - D C1"] = X * C1 - C1.D()
    if data.geometry == "orbifold":
        out["X^2 - 3(DL/L)X + 2DL/L + DX"] = X * X - (dl * X).scale(3) + dl.scale(2) + X.D()
        L3 = L ** 3
        out["X - (L^3 A2/3 + 1 + L^3/54)"] = X - ((L3 * data.A2).scale(Fraction(1, 3)) + 1 + L3.scale(Fraction(1, 54)))
    else:
        out["L^-3 - (1 + 27q)"] = L ** -3 - (1 + Series.monomial(1, data.order, "q", 27))
        out["D mu - (L - 1)"] = data.mu.D() - (L - 1)
    return out


def picard_fuchs_residual(order=30, printed_sign: bool = False) -> dict:
    """Apply the orbifold Picard-Fuchs operator to the I-function.

    The operator ``-(zD)^3/27 + 1 - theta^-3 (zD)(zD - z)(zD - 2z)``
    annihilates ``I``.  With ``printed_sign=True`` the cubic term enters as
    ``+(zD)^3/27`` instead, which leaves a nonzero residual.

    Returns ``{i: {(n, e): c}}``, the nonzero coefficients of
    ``theta^n z^e`` (``n <= order``) along the basis vector ``phi_i``
    with ``i = -e mod 3``.  An empty dict means the residual vanishes.
    ``order`` may also be an orbifold :class:`MirrorData`, whose order is used.
    """
    if isinstance(order, MirrorData):
        if order.geometry != "orbifold":
            raise ValueError("the Picard-Fuchs operator is defined for the orbifold")
        order = order.order
    cubic = Fraction(1 if printed_sign else -1, 27)
    res: dict = {}
    for (n, e), c in orbifold_i_function(order + 3).items():
        if n <= order:
            res[(n, e + 3)] = res.get((n, e + 3), 0) + cubic * n ** 3 * c
            res[(n, e)] = res.get((n, e), 0) + c
        if 3 <= n <= order + 3:
            k = (n - 3, e + 3)
            res[k] = res.get(k, 0) - n * (n - 1) * (n - 2) * c
    out: dict = {}
    for (n, e), c in res.items():
        if c:
            out.setdefault((-e) % 3, {})[(n, e)] = c
    return out
