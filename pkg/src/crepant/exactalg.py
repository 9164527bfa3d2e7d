"""Exact scalars, truncated series and the potential ring.

Three value types live here:

* :class:`Cyc` -- an element ``a + b*zeta`` of Q(zeta), zeta a primitive
  cube root of unity (``zeta**2 == -1 - zeta``).
* :class:`Series` -- a truncated Laurent series in one formal variable with
  :class:`Cyc` coefficients and an explicit absolute precision.
* :class:`RingElem` -- a finite sum of monomials ``X^x C1^c L^l`` with
  ``x >= 0`` and ``c, l`` arbitrary integers.

All values are immutable; every operation returns a new object.
"""
from __future__ import annotations

from fractions import Fraction

__all__ = [
    "Cyc", "ZETA", "Series", "RingElem", "Derivation", "DERIVATIONS",
    "cyc_arith", "series_compose_invert", "ring_derivation_D",
]


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to an exact rational")


class Cyc:
    """Element ``a + b*zeta`` of the cyclotomic field Q(zeta_3)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _frac(a)
        self.b = _frac(b)

    @classmethod
    def coerce(cls, v) -> "Cyc":
        if isinstance(v, Cyc):
            return v
        return cls(v, 0)

    def is_rational(self) -> bool:
        return self.b == 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    def conj(self) -> "Cyc":
        # a + b*zeta^2 = (a - b) - b*zeta
        return Cyc(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def __add__(self, o):
        if isinstance(o, Cyc):
            return Cyc(self.a + o.a, self.b + o.b)
        if isinstance(o, (int, Fraction)):
            return Cyc(self.a + o, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Cyc(-self.a, -self.b)

    def __sub__(self, o):
        if isinstance(o, Cyc):
            return Cyc(self.a - o.a, self.b - o.b)
        if isinstance(o, (int, Fraction)):
            return Cyc(self.a - o, self.b)
        return NotImplemented

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, Cyc):
            a, b, c, d = self.a, self.b, o.a, o.b
            if b == 0:
                return Cyc(a * c, a * d)
            if d == 0:
                return Cyc(a * c, b * c)
            bd = b * d
            return Cyc(a * c - bd, a * d + b * c - bd)
        if isinstance(o, (int, Fraction)):
            return Cyc(self.a * o, self.b * o)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        c = self.conj()
        return Cyc(c.a / n, c.b / n)

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            if o == 0:
                raise ZeroDivisionError("division by zero in Q(zeta)")
            return Cyc(self.a / o, self.b / o)
        return self * Cyc.coerce(o).inverse()

    def __rtruediv__(self, o):
        return Cyc.coerce(o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = Cyc(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, o):
        if isinstance(o, Cyc):
            return self.a == o.a and self.b == o.b
        if isinstance(o, (int, Fraction)):
            return self.b == 0 and self.a == o
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __repr__(self):
        if self.b == 0:
            return f"Cyc({self.a})"
        return f"Cyc({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"({self.a} + {self.b}*zeta)"


ZETA = Cyc(0, 1)
_ZERO = Cyc(0)
_ONE = Cyc(1)


def zeta_pow(k: int) -> Cyc:
    """``zeta**k`` for any integer ``k``."""
    k %= 3
    if k == 0:
        return _ONE
    if k == 1:
        return ZETA
    return Cyc(-1, -1)


def cyc_arith(op: str, x: Cyc, y: Cyc) -> Cyc:
    """Dispatch ``add``/``sub``/``mul``/``div`` on two field elements."""
    x, y = Cyc.coerce(x), Cyc.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# truncated Laurent series
# ---------------------------------------------------------------------------

class Series:
    """Truncated Laurent series ``sum_{n=val}^{order} c_n t^n + O(t^{order+1})``.

    ``coeffs[i]`` is the coefficient of ``t**(val + i)``. Coefficients at or
    below ``order`` are exact; nothing above ``order`` is known.
    """

    __slots__ = ("var", "val", "order", "coeffs")

    def __init__(self, coeffs, order: int, var: str = "theta", val: int = 0):
        cs = [Cyc.coerce(c) for c in coeffs]
        n = order - val + 1
        if n < 0:
            n = 0
        if len(cs) < n:
            cs.extend([_ZERO] * (n - len(cs)))
        self.coeffs = cs[:n]
        self.order = order
        self.var = var
        self.val = val

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, order: int, var: str = "theta") -> "Series":
        return cls([], order, var)

    @classmethod
    def one(cls, order: int, var: str = "theta") -> "Series":
        return cls([1], order, var)

    @classmethod
    def monomial(cls, n: int, order: int, var: str = "theta", c=1) -> "Series":
        if n > order:
            return cls([], order, var, min(n, 0))
        return cls([c], order, var, n)

    # access -------------------------------------------------------------
    def __getitem__(self, n: int) -> Cyc:
        if n > self.order:
            raise IndexError(f"coefficient t^{n} beyond precision O(t^{self.order + 1})")
        i = n - self.val
        if i < 0:
            return _ZERO
        return self.coeffs[i]

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return self.val + i
        return None

    def normalized(self) -> "Series":
        """Drop leading zero coefficients."""
        v = self.valuation()
        if v is None:
            return Series([], self.order, self.var, self.order + 1)
        if v == self.val:
            return self
        return Series(self.coeffs[v - self.val:], self.order, self.var, v)

    def truncate(self, order: int) -> "Series":
        if order >= self.order:
            return self
        return Series(self.coeffs[: max(order - self.val + 1, 0)], order, self.var, self.val)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def rational_coeffs(self) -> list[Fraction]:
        return [c.to_fraction() for c in self.coeffs]

    def _check(self, o: "Series"):
        if self.var != o.var:
            raise ValueError(f"variable mismatch: {self.var} vs {o.var}")

    # arithmetic ---------------------------------------------------------
    def __add__(self, o):
        if not isinstance(o, Series):
            return self + Series([o], self.order, self.var)
        self._check(o)
        order = min(self.order, o.order)
        val = min(self.val, o.val)
        out = []
        for n in range(val, order + 1):
            out.append(self[n] + o[n])
        return Series(out, order, self.var, val)

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.order, self.var, self.val)

    def __sub__(self, o):
        if not isinstance(o, Series):
            return self + (-Cyc.coerce(o))
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def scale(self, c) -> "Series":
        c = Cyc.coerce(c)
        return Series([c * x for x in self.coeffs], self.order, self.var, self.val)

    def shift(self, k: int) -> "Series":
        """Multiply by ``t**k`` (exact, precision moves with it)."""
        return Series(self.coeffs, self.order + k, self.var, self.val + k)

    def __mul__(self, o):
        if not isinstance(o, Series):
            return self.scale(o)
        self._check(o)
        a, b = self.normalized(), o.normalized()
        va, vb = a.val, b.val
        order = min(a.order + min(vb, 0), b.order + min(va, 0))
        val = va + vb
        n = order - val + 1
        if n <= 0:
            return Series([], order, self.var, min(val, 0))
        ca, cb = a.coeffs, b.coeffs
        out = [_ZERO] * n
        for i in range(min(n, len(ca))):
            x = ca[i]
            if x.is_zero():
                continue
            lim = min(n - i, len(cb))
            if x.b == 0:
                xa = x.a
                for j in range(lim):
                    y = cb[j]
                    if y.a or y.b:
                        out[i + j] = out[i + j] + y * xa
            else:
                for j in range(lim):
                    y = cb[j]
                    if y.a or y.b:
                        out[i + j] = out[i + j] + x * y
        return Series(out, order, self.var, val)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        a = self.normalized()
        v = a.valuation()
        if v is None:
            raise ZeroDivisionError("inverse of a series with no known nonzero coefficient")
        # a = t^v * u, u a unit power series known through order - v
        u = Series(a.coeffs[v - a.val:], a.order - v, a.var, 0)
        n = u.order + 1
        inv0 = u.coeffs[0].inverse()
        out = [inv0]
        for k in range(1, n):
            s = _ZERO
            for i in range(1, k + 1):
                c = u.coeffs[i]
                if not c.is_zero():
                    s = s + c * out[k - i]
            out.append(-s * inv0)
        # precision of 1/(t^v u) is that of 1/u shifted by -v
        return Series(out, u.order, a.var, 0).shift(-v)

    def __truediv__(self, o):
        if not isinstance(o, Series):
            return self.scale(Cyc.coerce(o).inverse())
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Series.one(self.order, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def power(self, e: Fraction) -> "Series":
        """``self**e`` for rational ``e``; needs constant term 1."""
        e = _frac(e)
        if self.val < 0 and any(not c.is_zero() for c in self.coeffs[: -self.val]):
            raise ValueError("fractional power needs a power series")
        if self[0] != 1:
            raise ValueError("fractional power needs constant term 1")
        # f = 1 + h, (1+h)^e via the ODE f*D(g) = e*D(f)*g, exact in Q
        n = self.order + 1
        f = [self[k] for k in range(n)]
        g = [_ONE]
        for k in range(1, n):
            # k*g_k = sum_{i=1}^{k} (e*i - (k - i)) f_i g_{k-i}
            s = _ZERO
            for i in range(1, k + 1):
                if not f[i].is_zero():
                    s = s + f[i] * g[k - i] * (e * i - (k - i))
            g.append(s / k)
        return Series(g, self.order, self.var)

    def D(self) -> "Series":
        """Euler derivation ``t d/dt``."""
        return Series([c * (self.val + i) for i, c in enumerate(self.coeffs)],
                      self.order, self.var, self.val)

    def D_inverse(self) -> "Series":
        """Inverse of ``t d/dt`` with zero constant; needs ``c_0 == 0``."""
        if self.val <= 0 <= self.order and not self[0].is_zero():
            raise ValueError("t d/dt cannot produce a constant term")
        out = []
        for i, c in enumerate(self.coeffs):
            n = self.val + i
            out.append(_ZERO if n == 0 else c / n)
        return Series(out, self.order, self.var, self.val)

    def derivative(self) -> "Series":
        """Ordinary ``d/dt``."""
        return self.D().shift(-1)

    def exp(self) -> "Series":
        """``exp`` of a series with zero constant term."""
        if self.valuation() is not None and self.valuation() < 1:
            raise ValueError("exp needs zero constant term")
        n = self.order + 1
        f = [self[k] for k in range(n)]
        g = [_ONE]
        # D g = D(f) g
        for k in range(1, n):
            s = _ZERO
            for i in range(1, k + 1):
                if not f[i].is_zero():
                    s = s + f[i] * g[k - i] * i
            g.append(s / k)
        return Series(g, self.order, self.var)

    def log(self) -> "Series":
        """``log`` of a series with constant term 1."""
        if self[0] != 1:
            raise ValueError("log needs constant term 1")
        return (self.D() / self).D_inverse()

    def compose(self, g: "Series") -> "Series":
        """``self(g(t))`` for ``g`` with zero constant term."""
        if g.val < 0 or not g[0].is_zero():
            raise ValueError("inner series must have zero constant term")
        if self.val < 0:
            raise ValueError("outer series must be a power series")
        order = min(self.order, g.order)
        out = Series.zero(order, g.var)
        gp = Series.one(order, g.var)
        for k in range(0, order + 1):
            c = self[k] if k <= self.order else _ZERO
            if not c.is_zero():
                out = out + gp.scale(c)
            gp = (gp * g).truncate(order)
        return out

    def revert(self) -> "Series":
        """Compositional inverse of ``f = c t + ...`` with ``c != 0``."""
        if self.val < 0 or not self[0].is_zero() or self[1].is_zero():
            raise ValueError("reversion needs f(0) = 0 and f'(0) != 0")
        order = self.order
        c1inv = self[1].inverse()
        # Newton-free fixed point: g <- g - (f(g) - t)/c1, one order per pass
        g = Series.monomial(1, order, self.var, c1inv)
        t = Series.monomial(1, order, self.var)
        for _ in range(order):
            err = self.compose(g) - t
            if err.is_zero():
                break
            g = g - err.scale(c1inv)
        return g

    # comparison ---------------------------------------------------------
    def __eq__(self, o):
        if not isinstance(o, Series):
            return NotImplemented
        if self.var != o.var or self.order != o.order:
            return False
        return (self - o).is_zero()

    __hash__ = None

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                terms.append(f"{c}*{self.var}^{self.val + i}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O({self.var}^{self.order + 1})"


def series_compose_invert(f: Series, mode: str = "revert", g: Series | None = None) -> Series:
    """``mode='revert'`` returns the compositional inverse of ``f``;
    ``mode='compose'`` returns ``f(g)``."""
    if mode == "revert":
        return f.revert()
    if mode == "compose":
        if g is None:
            raise ValueError("compose needs an inner series")
        return f.compose(g)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# the ring K[L^{+-1}][X][C1^{+-1}]
# ---------------------------------------------------------------------------

Mono = tuple  # (x, c1, l)


class RingElem:
    """Finite sum of ``coeff * X^x * C1^c * L^l``.

    Terms are stored in a dict keyed by ``(x, c, l)``; zero coefficients are
    never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        if terms:
            for k, v in (terms.items() if isinstance(terms, dict) else terms):
                v = Cyc.coerce(v)
                if not v.is_zero():
                    if k[0] < 0:
                        raise ValueError("negative X exponent")
                    out[tuple(k)] = v
        self.terms = out

    @classmethod
    def _raw(cls, d: dict) -> "RingElem":
        r = cls.__new__(cls)
        r.terms = d
        return r

    @classmethod
    def const(cls, c) -> "RingElem":
        return cls({(0, 0, 0): c})

    @classmethod
    def L(cls, n: int = 1, c=1) -> "RingElem":
        return cls({(0, 0, n): c})

    @classmethod
    def X(cls, n: int = 1, c=1) -> "RingElem":
        return cls({(n, 0, 0): c})

    @classmethod
    def C1(cls, n: int = 1, c=1) -> "RingElem":
        return cls({(0, n, 0): c})

    @classmethod
    def mono(cls, x: int, c: int, l: int, coeff=1) -> "RingElem":
        return cls({(x, c, l): coeff})

    # inspection ---------------------------------------------------------
    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(v.is_rational() for v in self.terms.values())

    def coeff(self, x: int, c: int, l: int) -> Cyc:
        return self.terms.get((x, c, l), _ZERO)

    def x_degree(self) -> int:
        return max((k[0] for k in self.terms), default=0)

    def c1_exponents(self) -> set:
        return {k[1] for k in self.terms}

    def l_range(self) -> tuple[int, int] | None:
        if not self.terms:
            return None
        ls = [k[2] for k in self.terms]
        return min(ls), max(ls)

    def x_part(self, n: int) -> "RingElem":
        """Coefficient of ``X^n`` as an X-free element."""
        return RingElem._raw({(0, k[1], k[2]): v for k, v in self.terms.items() if k[0] == n})

    # arithmetic ---------------------------------------------------------
    def __add__(self, o):
        if not isinstance(o, RingElem):
            o = RingElem.const(o)
        out = dict(self.terms)
        for k, v in o.terms.items():
            w = out.get(k)
            if w is None:
                out[k] = v
            else:
                s = w + v
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
        return RingElem._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return RingElem._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        if not isinstance(o, RingElem):
            o = RingElem.const(o)
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, RingElem):
            c = Cyc.coerce(o)
            if c.is_zero():
                return RingElem._raw({})
            return RingElem._raw({k: v * c for k, v in self.terms.items()})
        out = {}
        for (x1, c1, l1), v1 in self.terms.items():
            for (x2, c2, l2), v2 in o.terms.items():
                k = (x1 + x2, c1 + c2, l1 + l2)
                p = v1 * v2
                w = out.get(k)
                out[k] = p if w is None else w + p
        return RingElem._raw({k: v for k, v in out.items() if not v.is_zero()})

    __rmul__ = __mul__

    def __truediv__(self, o):
        """Division by a scalar or by a single monomial."""
        if isinstance(o, RingElem):
            if len(o.terms) != 1:
                raise ZeroDivisionError("only monomial divisors are supported")
            (x, c, l), v = next(iter(o.terms.items()))
            if x != 0:
                raise ZeroDivisionError("X is not invertible in the ring")
            inv = v.inverse()
            return RingElem._raw({(k[0], k[1] - c, k[2] - l): w * inv for k, w in self.terms.items()})
        c = Cyc.coerce(o).inverse()
        return self * c

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ZeroDivisionError("negative powers need a monomial")
            return RingElem.const(1) / (self ** (-n))
        out = RingElem.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, Cyc)):
            o = RingElem.const(o)
        if not isinstance(o, RingElem):
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    # substitution ---------------------------------------------------------
    def substitute(self, x_img, c_img, l_img) -> "RingElem":
        """Image under ``X -> x_img``, ``C1 -> c_img``, ``L -> l_img``.

        ``c_img`` and ``l_img`` must be invertible monomials.
        """
        cache_x = {0: RingElem.const(1)}
        out = RingElem._raw({})
        for (x, c, l), v in self.sorted_terms():
            if x not in cache_x:
                cache_x[x] = x_img ** x
            out = out + cache_x[x] * (c_img ** c) * (l_img ** l) * v
        return out

    def to_series(self, L: Series, X: Series, C1: Series) -> Series:
        """Evaluate on concrete series (the canonical map into Laurent series)."""
        order = min(L.order, X.order, C1.order)
        out = Series.zero(order, L.var)
        powers = {}

        def pw(s, key, n):
            k = (key, n)
            if k not in powers:
                powers[k] = s ** n
            return powers[k]

        for (x, c, l), v in self.sorted_terms():
            t = pw(X, "x", x) * pw(C1, "c", c) * pw(L, "l", l)
            out = out + t.scale(v)
        return out

    def __repr__(self):
        return f"RingElem({self.sorted_terms()!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (x, c, l), v in self.sorted_terms():
            mon = []
            if x:
                mon.append("X" if x == 1 else f"X^{x}")
            if c:
                mon.append("C1" if c == 1 else f"C1^{c}")
            if l:
                mon.append("L" if l == 1 else f"L^{l}")
            parts.append(f"{v}" + ("*" + "*".join(mon) if mon else ""))
        return " + ".join(parts)


class Derivation:
    """The Euler derivation ``D`` on the ring of one geometry.

    ``D L = L * dl_over_l``, ``D X = dx``, ``D C1 = X * C1``.
    """

    def __init__(self, name: str, dl_over_l: RingElem, dx: RingElem):
        self.name = name
        self.dl_over_l = dl_over_l
        self.dx = dx

    def __call__(self, e: RingElem) -> RingElem:
        out = RingElem._raw({})
        for (x, c, l), v in e.terms.items():
            base = RingElem._raw({(x, c, l): v})
            if l:
                out = out + base * self.dl_over_l * l
            if c:
                out = out + RingElem._raw({(x + 1, c, l): v * c})
            if x:
                out = out + RingElem._raw({(x - 1, c, l): v * x}) * self.dx
        return out


def _orbifold_derivation() -> Derivation:
    dl = RingElem.const(1) + RingElem.L(3, Fraction(1, 27))
    X = RingElem.X()
    dx = -(X * X) + X * dl * 3 - dl * 2
    return Derivation("orbifold", dl, dx)


def _kp2_derivation() -> Derivation:
    # L = (1+27q)^(-1/3): D L = (L^4 - L)/3; C1 = 2F1(1/3,2/3;1;-27q)
    dl = (RingElem.L(3) - 1) * Fraction(1, 3)
    X = RingElem.X()
    dx = -(X * X) + (RingElem.L(3) - 1) * (X + Fraction(2, 9))
    return Derivation("kp2", dl, dx)


DERIVATIONS = {"orbifold": _orbifold_derivation(), "kp2": _kp2_derivation()}


def ring_derivation_D(e: RingElem, geometry: str = "orbifold") -> RingElem:
    """Apply ``D = theta d/dtheta`` (or ``q d/dq``) at ring level."""
    return DERIVATIONS[geometry](e)
