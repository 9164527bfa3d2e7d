"""R-matrices of both geometries.

The R-matrix is stored in the idempotent frame ``e_a``.  Its z^k coefficient
is determined by three ring elements ``p_0^k, p_1^k, p_2^k`` (the normalized
entries ``P~^k_{ij}``, which do not depend on ``j``):

    R_k[a][j] = 1/3 zeta^(-k j) sum_i zeta^(i (a - j)) p_i^k

Flatness of ``Psi^-1 R e^(U/z)`` turns into the ring recursion (``s = -1`` on
the orbifold, ``+1`` on local P^2, ``E = DL/L^2 - X/L``)

    p_2^k = p_0^k + s D p_0^(k-1) / L
    p_1^k = p_2^k + s (D p_2^(k-1) / L + E p_2^(k-1))
    p_0^k = p_1^k + s (D p_1^(k-1) / L - E p_1^(k-1))

which leaves one Euler equation ``D p_0^k = g`` per level.  It is solved in
``C[L^+-1]`` up to a constant.  The "tilde" solution fixes that constant by
``p_0^k = 0`` at the orbifold point (at ``q = 0`` on local P^2).  The true
R-matrix multiplies by a scalar series ``delta(z)`` on the right.

:func:`solve_rtilde_theta_series` is an independent route: it solves the
flatness equation entry by entry as series and :func:`reconstruct_ptilde_ring`
fits the result back into the ring.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .exactalg import DERIVATIONS, Cyc, RingElem, Series, zeta_pow
from .frobenius import SIGMA, FrobeniusData, psi_inverse, psi_matrix
from .mirror import build_mirror_data, check_geometry

__all__ = [
    "solve_euler", "PTildeTable", "ptilde_table", "base_point_value",
    "identity_correction", "delta_series", "RMatrix",
    "rmatrix", "bare_rmatrix", "assemble_full_R", "symplectic_residual",
    "EdgeKernel", "edge_kernel", "solve_rtilde_theta_series",
    "reconstruct_ptilde_ring", "check_recursion", "check_degree_bounds",
]

# D L / L = a + b L^3
_EULER = {"orbifold": (Fraction(1), Fraction(1, 27)), "kp2": (Fraction(-1, 3), Fraction(1, 3))}


def _laurent_coeffs(e: RingElem) -> dict:
    out = {}
    for (x, c, l), v in e.terms.items():
        if x or c:
            raise ValueError(f"expected an element of C[L^+-1], got {e}")
        out[l] = v
    return out


def solve_euler(g: RingElem, geometry: str, const=0) -> RingElem:
    """The ``f`` in ``C[L^+-1]`` with ``D f = g`` and constant term ``const``.

    With ``DL/L = a + b L^3`` the coefficients obey
    ``a m f_m + b (m - 3) f_(m-3) = g_m``, solved from the top degree down.
    Raises ``ArithmeticError`` when no Laurent polynomial solution exists.
    """
    a, b = _EULER[check_geometry(geometry)]
    gl = _laurent_coeffs(g)
    f = {}
    if gl:
        lo, m = min(gl), max(gl)
        zero = Cyc(0)
        while m >= lo or any(not f.get(k, zero).is_zero() for k in (m, m - 1, m - 2)):
            if m < lo - 3 * (max(gl) - lo + 3):
                raise ArithmeticError("Euler equation has no Laurent polynomial solution")
            rem = gl.get(m, zero) - f.get(m, zero) * (a * m)
            if m == 3:
                if not rem.is_zero():
                    raise ArithmeticError("Euler equation is inconsistent at L^3")
            elif not rem.is_zero():
                f[m - 3] = rem / (b * (m - 3))
            m -= 1
    f[0] = Cyc.coerce(const)
    return RingElem({(0, 0, l): v for l, v in f.items()})


class PTildeTable:
    """``p_i^k`` for ``k = 0..K``; ``entry(k, i, j)`` is independent of ``j``."""

    def __init__(self, geometry: str, kind: str, rows):
        self.geometry = geometry
        self.kind = kind
        self.rows = tuple(tuple(r) for r in rows)

    @property
    def K(self) -> int:
        return len(self.rows) - 1

    def entry(self, k: int, i: int, j: int = 0) -> RingElem:
        if j not in (0, 1, 2) or i not in (0, 1, 2):
            raise IndexError("matrix indices run over 0, 1, 2")
        return self.rows[k][i]

    def __eq__(self, o):
        if not isinstance(o, PTildeTable):
            return NotImplemented
        return self.geometry == o.geometry and self.rows == o.rows

    __hash__ = None


_TILDE: dict = {}


def _tilde_rows(geometry: str, K: int) -> list:
    rows = _TILDE.setdefault(geometry, [(RingElem.const(1),) * 3])
    s = SIGMA[geometry]
    D = DERIVATIONS[geometry]
    L = RingElem.L()
    LE = D.dl_over_l - RingElem.X()
    E = LE / L
    while len(rows) <= K:
        q0, q1, q2 = rows[-1]
        alpha = D(q0) / L * s
        beta = (D(q2) / L + E * q2) * s
        # the three lines close up only if D p_0^k = (L E beta - D(2 alpha + beta))/3
        f = solve_euler((LE * beta - D(alpha * 2 + beta)) * Fraction(1, 3), geometry)
        if geometry == "kp2":
            # vanish at q = 0, where L = 1
            f = f - sum(f.terms.values(), Cyc(0))
        rows.append((f, f + alpha + beta, f + alpha))
    return rows[:K + 1]


def delta_series(geometry: str, K: int) -> list:
    """Coefficients ``delta_0..delta_K`` of the scalar correction.

    Orbifold: the constant-term series of row 0 at ``-z``.  Local P^2: the
    Bernoulli exponential built from ``N_{k,0}``.
    """
    from .appendixid import kp2_b_series, orbifold_b_series

    if check_geometry(geometry) == "orbifold":
        b = orbifold_b_series(0, K)
        return [b[m] * (-1) ** m for m in range(K + 1)]
    b = kp2_b_series(K)
    return [b[m] for m in range(K + 1)]


def base_point_value(e: RingElem, geometry: str) -> Cyc:
    """Value of a ring element at ``theta = 0`` (orbifold) or ``q = 0`` (local P^2)."""
    lo = min((k[2] for k in e.terms), default=0)
    order = max(3, 3 - lo) + 3 * e.x_degree()
    s = e.to_series(*(lambda d: (d.L, d.X, d.C1))(build_mirror_data(geometry, order)))
    s = s.normalized()
    if s.val < 0 and not s.is_zero():
        raise ArithmeticError("element has a pole at the base point")
    return s[0]


def identity_correction(geometry: str, K: int) -> list:
    """Scalar ``eps(z)`` making every diagonal entry of ``R~_k`` vanish at the base point.

    The diagonal of ``R~_k`` there is ``zeta^(-k j)/3 sum_i p_i^k``, so
    ``eps_k = -1/3 sum_{m<k} s_(k-m) eps_m`` with ``s_n = sum_i p_i^n``.
    """
    tilde = _tilde_rows(geometry, K)
    sums = [sum((base_point_value(e, geometry) for e in row), Cyc(0)) for row in tilde]
    eps = [Cyc(1)]
    for k in range(1, K + 1):
        eps.append(-sum((sums[k - m] * eps[m] for m in range(k)), Cyc(0)) / 3)
    return eps


@lru_cache(maxsize=None)
def ptilde_table(geometry: str, K: int, kind: str = "true") -> PTildeTable:
    """Table of ``p_i^k`` for ``k <= K``.

    ``kind``:

    * ``"tilde"`` -- ``p_0^k`` vanishes at the base point for ``k >= 1``;
    * ``"bare"`` -- the diagonal of ``R~`` is the identity at the base point
      (as close to ``R~ = Id`` there as the flatness equation allows);
    * ``"true"`` -- the R-matrix of the theory.

    All three differ by a scalar series in ``z`` multiplied on the right.
    """
    check_geometry(geometry)
    if K < 0:
        raise ValueError("K must be non-negative")
    tilde = _tilde_rows(geometry, K)
    if kind == "tilde":
        return PTildeTable(geometry, kind, tilde)
    if kind == "bare":
        d = identity_correction(geometry, K)
    elif kind == "true":
        d = delta_series(geometry, K)
    else:
        raise ValueError("kind must be 'tilde', 'bare' or 'true'")
    rows = []
    for k in range(K + 1):
        rows.append(tuple(sum((tilde[k - m][i] * d[m] for m in range(k + 1) if not d[m].is_zero()), RingElem())
                          for i in range(3)))
    return PTildeTable(geometry, kind, rows)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def _zero3():
    return [[RingElem() for _ in range(3)] for _ in range(3)]


def _ident3():
    return [[RingElem.const(int(i == j)) for j in range(3)] for i in range(3)]


def _mm(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(3)), RingElem()) for j in range(3)] for i in range(3)]


def _madd(A, B, c=1):
    return [[A[i][j] + B[i][j] * c for j in range(3)] for i in range(3)]


def _tr(A):
    return [[A[j][i] for j in range(3)] for i in range(3)]


class RMatrix:
    """A matrix series ``sum_k R_k z^k`` truncated at ``z^K``, in the ``e`` frame."""

    def __init__(self, geometry: str, coeffs):
        self.geometry = geometry
        self.coeffs = [tuple(tuple(r) for r in M) for M in coeffs]
        self._inv = None

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def inverse(self) -> "RMatrix":
        """Series inverse, ``R^-1_k = -sum_{m=1..k} R_m R^-1_(k-m)``."""
        if self._inv is None:
            inv = [_ident3()]
            for k in range(1, self.K + 1):
                acc = _zero3()
                for m in range(1, k + 1):
                    acc = _madd(acc, _mm(self.coeffs[m], inv[k - m]))
                inv.append([[-v for v in row] for row in acc])
            self._inv = RMatrix(self.geometry, inv)
            self._inv._inv = self
        return self._inv

    def transpose(self) -> "RMatrix":
        return RMatrix(self.geometry, [_tr(M) for M in self.coeffs])

    def is_identity(self) -> bool:
        return self.coeffs[0] == tuple(tuple(r) for r in _ident3()) and all(
            all(v.is_zero() for row in M for v in row) for M in self.coeffs[1:])


def _rows_to_matrix(table: PTildeTable, K: int) -> RMatrix:
    out = []
    for k in range(K + 1):
        p = table.rows[k]
        M = [[sum((p[i] * (zeta_pow(-k * j + i * (a - j)) * Fraction(1, 3)) for i in range(3)), RingElem())
              for j in range(3)] for a in range(3)]
        out.append(M)
    return RMatrix(table.geometry, out)


@lru_cache(maxsize=None)
def rmatrix(geometry: str, K: int) -> RMatrix:
    """The true R-matrix to ``z^K``."""
    return _rows_to_matrix(ptilde_table(geometry, K, "true"), K)


@lru_cache(maxsize=None)
def bare_rmatrix(geometry: str, K: int, kind: str = "bare") -> RMatrix:
    """``R~`` with the base-point normalization ``kind`` (see :func:`ptilde_table`)."""
    return _rows_to_matrix(ptilde_table(geometry, K, kind), K)


def assemble_full_R(geometry: str, K: int) -> RMatrix:
    return rmatrix(geometry, K)


def identity_rmatrix(geometry: str, K: int) -> RMatrix:
    return RMatrix(geometry, [_ident3()] + [_zero3() for _ in range(K)])


def symplectic_residual(R: RMatrix) -> dict:
    """Nonzero coefficients of ``R(z) R(-z)^t - Id``, as ``{k: 3x3 matrix}``."""
    out = {}
    for k in range(R.K + 1):
        acc = _zero3()
        for m in range(k + 1):
            acc = _madd(acc, _mm(R[m], _tr(R[k - m])), (-1) ** (k - m))
        if k == 0:
            acc = _madd(acc, _ident3(), -1)
        if any(not v.is_zero() for row in acc for v in row):
            out[k] = acc
    return out


class EdgeKernel:
    """Coefficients of ``(Id - R^-1(z) R^-1(w)^t) / (z + w)`` divided by the norm."""

    def __init__(self, R: RMatrix, norm):
        self.R = R
        self.Ri = R.inverse()
        self.norm = Fraction(norm)
        self._cache = {}

    def numerator(self, i: int, j: int, a: int, b: int) -> RingElem:
        """``z^i w^j`` coefficient of ``Id - R^-1(z) R^-1(w)^t``, entry ``(a, b)``."""
        Ri = self.Ri
        v = RingElem.const(int(i == 0 and j == 0 and a == b))
        for k in range(3):
            v = v - Ri[i][a][k] * Ri[j][b][k]
        return v

    def __call__(self, a: int, b: int, x: int, y: int) -> RingElem:
        key = (a, b, x, y)
        e = self._cache.get(key)
        if e is None:
            if x + y + 1 > self.R.K:
                raise ValueError(f"edge term z^{x} w^{y} needs R to z^{x + y + 1}")
            e = sum((self.numerator(x + 1 + i, y - i, a, b) * (-1) ** i for i in range(y + 1)), RingElem())
            e = e / self.norm
            self._cache[key] = e
        return e

    def check_divisibility(self) -> bool:
        """``(z + w)`` divides the numerator to the available order."""
        for a in range(3):
            for b in range(3):
                if not self.numerator(0, 0, a, b).is_zero():
                    return False
                for y in range(1, self.R.K + 1):
                    if self.numerator(0, y, a, b) != self(a, b, 0, y - 1) * self.norm:
                        return False
        return True


def edge_kernel(geometry: str, K: int) -> EdgeKernel:
    return EdgeKernel(rmatrix(geometry, K), FrobeniusData(geometry).norm)


# ---------------------------------------------------------------------------
# series route
# ---------------------------------------------------------------------------

def _series_of(e: RingElem, data) -> Series:
    return e.to_series(data.L, data.X, data.C1)


def solve_rtilde_theta_series(geometry: str, K: int, order: int | None = None, row0=None,
                              initial: str = "row0") -> list:
    """Solve ``A R_k + D R_k = [DU, R_(k+1)]`` coefficientwise in series.

    ``A = Psi D(Psi^-1)`` and ``DU = diag(s zeta^a L)``.  Off-diagonal
    entries of ``R_(k+1)`` are read off directly; the diagonal solves
    ``D R_aa = -sum_b A_ab R_ba`` with its constant fixed by
    ``sum_a R_k[a][j] = zeta^(-k j) row0[k]`` at the base point
    (``row0`` defaults to ``[1, 0, 0, ...]``, the tilde normalization).
    With ``initial="identity"`` the diagonal constants are instead chosen so
    that every diagonal entry of ``R_k``, ``k >= 1``, vanishes at the base
    point; this is as close to ``R|_base = Id`` as the equation allows.

    Returns ``[R_0, ..., R_K]`` as 3x3 lists of :class:`Series`.
    """
    check_geometry(geometry)
    if order is None:
        order = 3 * K + 3
    data = build_mirror_data(geometry, order + K + 3)
    if row0 is None:
        row0 = [1] + [0] * K
    s = SIGMA[geometry]
    psi = [[_series_of(v, data) for v in row] for row in psi_matrix(geometry)]
    dinv = [[_series_of(v, data).D() for v in row] for row in psi_inverse(geometry)]
    A = [[sum((psi[a][i] * dinv[i][b] for i in range(3)), Series.zero(data.order, data.var))
          for b in range(3)] for a in range(3)]
    L = data.L
    one = Series.one(data.order, data.var)
    zero = Series.zero(data.order, data.var)
    R = [[[one if a == j else zero for j in range(3)] for a in range(3)]]
    for k in range(1, K + 1):
        prev = R[-1]
        M = [[None] * 3 for _ in range(3)]
        for a in range(3):
            for b in range(3):
                if a == b:
                    continue
                rhs = sum((A[a][m] * prev[m][b] for m in range(3)), zero) + prev[a][b].D()
                M[a][b] = rhs / (L.scale(s * (zeta_pow(a) - zeta_pow(b))))
        for a in range(3):
            g = -sum((A[a][b] * M[b][a] for b in range(3) if b != a), zero)
            g = g.normalized()
            if g.val < 0:
                raise ArithmeticError("diagonal equation has a pole")
            if g.order >= 0 and not g[0].is_zero():
                raise ArithmeticError(f"diagonal equation at level {k} is inconsistent")
            M[a][a] = g.D_inverse()
        c = Cyc.coerce(row0[k])
        for j in range(3):
            if initial == "identity":
                target = Cyc(0)
            else:
                target = zeta_pow(-k * j) * c - sum((M[a][j][0] for a in range(3) if a != j), Cyc(0))
            M[j][j] = M[j][j] + target
        R.append(M)
    return R


def _fit_laurent(f: Series, geometry: str, lo: int, hi: int) -> RingElem:
    """Write a series as ``sum_{lo..hi} c_n L^n``; raises if it is not of that form."""
    data = build_mirror_data(geometry, f.order + max(0, -lo) + 3)
    f = f.normalized()
    if geometry == "orbifold":
        # theta as a series in L, then read off Laurent coefficients in L
        theta = data.L.truncate(f.order - min(f.val, 0) + 2).revert()
        v = f.val if f.order >= f.val else 0
        g = Series(f.coeffs, f.order - v, "theta", 0)
        h = g.compose(theta) * theta ** v
        if h.order < hi:
            raise ArithmeticError("not enough precision to fit")
        coeffs = {n: h[n] for n in range(h.val, h.order + 1) if not h[n].is_zero()}
    else:
        # t = L - 1; multiply by L^(-lo) to get a polynomial in t
        t = (data.L - 1).truncate(f.order)
        q = t.revert()
        g = f.truncate(f.order)
        T = Series.monomial(1, q.order, q.var)
        h = g.compose(q) * (T + 1) ** (-lo)
        deg = hi - lo
        if h.order < deg:
            raise ArithmeticError("not enough precision to fit")
        tail = [h[n] for n in range(deg + 1, h.order + 1)]
        if any(not c.is_zero() for c in tail):
            raise ArithmeticError("series is not a Laurent polynomial in L in the given range")
        # P(t) = sum p_n t^n = sum p_n (L - 1)^n
        coeffs = {}
        for n in range(deg + 1):
            for m in range(n + 1):
                c = h[n] * (comb(n, m) * (-1) ** (n - m))
                coeffs[m + lo] = coeffs.get(m + lo, Cyc(0)) + c
        coeffs = {n: c for n, c in coeffs.items() if not c.is_zero()}
    bad = [n for n in coeffs if n < lo or n > hi]
    if bad:
        raise ArithmeticError(f"L-exponents {bad} fall outside [{lo}, {hi}]")
    return RingElem({(0, 0, n): c for n, c in coeffs.items()})


def reconstruct_ptilde_ring(geometry: str, K: int, order: int | None = None) -> PTildeTable:
    """Series solve followed by a ring fit; an independent route to the tilde table.

    Uses the ansatz ``p_0^k, p_2^k`` in ``C[L^+-1]`` with exponents in
    ``[-i, 2k]`` and ``p_1^k = Q(L) - s X p_2^(k-1)/L``.
    """
    s = SIGMA[check_geometry(geometry)]
    if order is None:
        order = 3 * K + 3
    R = solve_rtilde_theta_series(geometry, K, order)
    data = build_mirror_data(geometry, order + K + 3)
    X = RingElem.X()
    rows = [(RingElem.const(1),) * 3]
    for k in range(1, K + 1):
        p = []
        for i in range(3):
            # p_i^k = sum_a zeta^(-i a) R_k[a][0]
            p.append(sum((R[k][a][0].scale(zeta_pow(-i * a)) for a in range(3)),
                         Series.zero(data.order, data.var)))
        fitted = [None] * 3
        for i in (0, 2):
            fitted[i] = _fit_laurent(p[i], geometry, -i, 2 * k)
        xpart = X * rows[k - 1][2] / RingElem.L() * (-s)
        rest = p[1] - _series_of(xpart, data).truncate(p[1].order)
        fitted[1] = _fit_laurent(rest, geometry, -1, 2 * k) + xpart
        rows.append(tuple(fitted))
    return PTildeTable(geometry, "tilde", rows)


def check_recursion(table: PTildeTable) -> bool:
    """All three flatness lines hold exactly between consecutive levels."""
    g = table.geometry
    s = SIGMA[g]
    D = DERIVATIONS[g]
    L = RingElem.L()
    E = (D.dl_over_l - RingElem.X()) / L
    for k in range(1, table.K + 1):
        q0, q1, q2 = table.rows[k - 1]
        p0, p1, p2 = table.rows[k]
        if p2 != p0 + D(q0) / L * s:
            return False
        if p1 != p2 + (D(q2) / L + E * q2) * s:
            return False
        if p0 != p1 + (D(q1) / L - E * q1) * s:
            return False
    return True


def check_degree_bounds(table: PTildeTable) -> bool:
    """``p_i^k`` has L-exponents in ``[-i, 2k]``."""
    for k, row in enumerate(table.rows):
        for i, e in enumerate(row):
            r = e.l_range()
            if r is not None and (r[0] < -i or r[1] > 2 * k):
                return False
    return True
