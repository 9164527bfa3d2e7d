"""The A2 generator, the derivative along T and the holomorphic anomaly check.

On the orbifold side ``X = L^3 A2/3 + 1 + L^3/54``, so at fixed ``L`` the
partial derivative along ``A2`` is ``(L^3/3) d/dX``.  ``d/dT`` acts on the
ring as ``D/C1``.
"""
from __future__ import annotations

from fractions import Fraction

from .exactalg import DERIVATIONS, RingElem, Series
from .graphsum import potential
from .mirror import build_mirror_data

__all__ = [
    "A2Elem", "change_to_A2", "d_T", "d_X", "genus1_one_point",
    "genus1_two_point", "one_point", "two_point", "hae_residual",
    "hae_series_residual", "verify_hae", "degree_report",
]


class A2Elem:
    """Element of ``C[L^+-1][A2, C1^+-1]``, keyed by ``(a2, c1, l)`` exponents."""

    __slots__ = ("poly",)

    def __init__(self, poly: RingElem):
        # the X slot of ``poly`` stands for A2
        self.poly = poly

    @property
    def terms(self) -> dict:
        return self.poly.terms

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def a2_degree(self) -> int:
        return self.poly.x_degree()

    def l_range(self):
        return self.poly.l_range()

    def a2_part(self, n: int) -> RingElem:
        return self.poly.x_part(n)

    def derivative(self) -> "A2Elem":
        """Formal ``d/dA2`` at fixed ``L`` and ``C1``."""
        return A2Elem(d_X(self.poly))

    def to_ring(self) -> RingElem:
        """Back to ``X`` via ``A2 = (3X - 3 - L^3/18)/L^3``."""
        a2 = (RingElem.X(1, 3) - 3 - RingElem.L(3, Fraction(1, 18))) / RingElem.L(3)
        return self.poly.substitute(a2, RingElem.C1(), RingElem.L())

    def __eq__(self, o):
        if not isinstance(o, A2Elem):
            return NotImplemented
        return self.poly == o.poly

    __hash__ = None

    def __sub__(self, o):
        return A2Elem(self.poly - o.poly)

    def __add__(self, o):
        return A2Elem(self.poly + o.poly)

    def __repr__(self):
        return f"A2Elem({self.poly.sorted_terms()!r})"

    def __str__(self):
        return str(self.poly).replace("X", "A2")


def change_to_A2(e: RingElem) -> A2Elem:
    x = RingElem.mono(1, 0, 3, Fraction(1, 3)) + 1 + RingElem.L(3, Fraction(1, 54))
    return A2Elem(e.substitute(x, RingElem.C1(), RingElem.L()))


def d_X(e: RingElem) -> RingElem:
    return RingElem({(x - 1, c, l): v * x for (x, c, l), v in e.terms.items() if x})


def d_T(e: RingElem, geometry: str = "orbifold") -> RingElem:
    """``D(e)/C1``."""
    return DERIVATIONS[geometry](e) / RingElem.C1()


def genus1_one_point(source: str = "graph") -> RingElem:
    """``<<phi_1>>_{1,1}`` on the orbifold.

    ``source="graph"`` runs the graph sum; ``source="printed"`` returns the
    closed form ``L^3 A2/(18 C1)`` written in ``X``.
    """
    if source == "graph":
        return potential("orbifold", 1, (1,)).value
    if source == "printed":
        return (RingElem.X(1, 3) - 3 - RingElem.L(3, Fraction(1, 18))) / RingElem.C1() * Fraction(1, 18)
    raise ValueError("source must be 'graph' or 'printed'")


def genus1_two_point(source: str = "graph") -> RingElem:
    if source == "graph":
        return potential("orbifold", 1, (1, 1)).value
    return d_T(genus1_one_point(source))


def one_point(h: int, genus1: str = "graph", via: str = "legs") -> RingElem:
    if h == 1:
        return genus1_one_point(genus1)
    if via == "legs":
        return potential("orbifold", h, (1,)).value
    return d_T(potential("orbifold", h).value)


def two_point(h: int, genus1: str = "graph", via: str = "legs") -> RingElem:
    if h == 1:
        return genus1_two_point(genus1)
    if via == "legs":
        return potential("orbifold", h, (1, 1)).value
    return d_T(d_T(potential("orbifold", h).value))


def _hae_parts(g, genus1, via, F=None):
    if g < 2:
        raise ValueError("the anomaly equation is stated for g >= 2")
    if F is None:
        F = potential("orbifold", g).value
    lhs = d_X(F) * RingElem.L(3, Fraction(1, 3)) / RingElem.C1(2)
    rhs = two_point(g - 1, genus1, via) * Fraction(1, 2)
    for i in range(1, g):
        rhs = rhs + one_point(g - i, genus1, via) * one_point(i, genus1, via) * Fraction(1, 2)
    return lhs, rhs


def hae_residual(g: int, genus1: str = "graph", via: str = "legs", F=None) -> A2Elem:
    """``C1^-2 dF_g/dA2 - 1/2 sum F'_(g-i) F'_i - 1/2 F''_(g-1)`` in the A2 basis."""
    lhs, rhs = _hae_parts(g, genus1, via, F)
    return change_to_A2(lhs - rhs)


def hae_series_residual(g: int, order: int = 24, genus1: str = "graph", F=None) -> Series:
    """The same residual as a theta series, with ``d/dT`` taken on series."""
    if F is None:
        F = potential("orbifold", g).value
    d = build_mirror_data("orbifold", order)
    ev = lambda e: e.to_series(d.L, d.X, d.C1)
    dt = lambda s: s.D() / d.C1
    lhs = ev(d_X(F) * RingElem.L(3, Fraction(1, 3)) / RingElem.C1(2))
    one = {i: ev(genus1_one_point(genus1) if i == 1 else potential("orbifold", i).value) for i in range(1, g)}
    # F'_i for i >= 2 differentiated as series
    prime = {i: (one[i] if i == 1 else dt(one[i])) for i in one}
    rhs = dt(prime[g - 1]).scale(Fraction(1, 2))
    for i in range(1, g):
        rhs = rhs + (prime[g - i] * prime[i]).scale(Fraction(1, 2))
    res = lhs - rhs
    return res.truncate(min(res.order, order - 6))


def verify_hae(g: int, genus1: str = "graph", via: str = "legs", F=None) -> A2Elem:
    """The ring residual of the anomaly equation; its theta-series image is
    :func:`hae_series_residual`."""
    return hae_residual(g, genus1, via, F)


def degree_report(g: int, F=None) -> dict:
    """A2-degree and L-range of ``F_g`` in the A2 basis, with the two bound checks."""
    if F is None:
        F = potential("orbifold", g).value
    a = change_to_A2(F)
    lo, hi = a.l_range()
    return {
        "genus": g,
        "a2_degree": a.a2_degree(),
        "l_min": lo,
        "l_max": hi,
        "c1_free": a.poly.c1_exponents() <= {0},
        "a2_bound": a.a2_degree() <= 3 * g - 3,
        "l_bound": 9 - 9 * g <= lo and hi <= 6 * g - 6,
        "sharper_l_bound": 0 <= lo and hi <= 6 * g - 6,
    }
