"""Givental graph sums for the potentials ``F_g`` and ``F_{g,n}``.

Everything is written in the idempotent frame ``e_a`` with the constant norm
``c = g(e_a, e_a)``.  A stable graph with decoration ``a(v)`` and flag
exponents contributes the product of

* vertices: ``c^(1 - g_v)`` times the psi-integral over ``M_{g_v, n_v + m}``
  with ``m`` extra points carrying ``T(psi) = psi (1 - R^-1(psi) 1)``;
* edges: the coefficient of ``z^x w^y`` in
  ``(Id - R^-1(z) R^-1(w)^t) / (c (z + w))``;
* legs ``phi_k``: the coefficient of ``z^x`` in ``R^-1(z)`` applied to the
  ``e``-coordinates of ``phi_k``;

divided by the automorphism count of the undecorated graph.
"""
from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
import multiprocessing

from .exactalg import RingElem
from .frobenius import FrobeniusData, psi_matrix
from .graphs import StableGraph, aut_count, canonical_form, enumerate_stable_graphs
from .mirror import check_geometry
from .psi import tau_intersection
from .rmatrix import RMatrix, identity_rmatrix, rmatrix

__all__ = [
    "GraphSum", "Potential", "potential", "enumerate_stable_graphs",
    "required_zorder", "decorated_potential", "tqft_limit", "StableGraph",
]


def _partitions(r: int, top: int | None = None):
    if top is None:
        top = r
    if r == 0:
        yield ()
        return
    for p in range(min(r, top), 0, -1):
        for rest in _partitions(r - p, p):
            yield (p,) + rest


def required_zorder(g: int, n: int = 0) -> int:
    """z-order of R needed for genus ``g`` with ``n`` legs."""
    return 3 * g - 3 + n + 1


class GraphSum:
    """Graph-sum engine for one geometry and one R-matrix."""

    def __init__(self, geometry: str, R: RMatrix):
        self.geometry = check_geometry(geometry)
        self.R = R
        self.Ri = R.inverse()
        self.c = FrobeniusData(geometry).norm
        self.psi = psi_matrix(geometry)
        K = R.K
        # T(z) = z (1 - R^-1(z) 1): coefficient of z^m is -(R^-1_(m-1) 1)
        self.T = {(a, m): -sum(self.Ri[m - 1][a], RingElem()) for a in range(3) for m in range(2, K + 2)}
        self._vertex = {}
        self._edge = {}
        self._leg = {}

    def vertex(self, gv: int, a: int, exps) -> RingElem:
        """Vertex weight for genus ``gv``, decoration ``a`` and flag exponents ``exps``."""
        exps = tuple(sorted(exps))
        key = (gv, a, exps)
        out = self._vertex.get(key)
        if out is not None:
            return out
        n = len(exps)
        r = 3 * gv - 3 + n - sum(exps)
        out = RingElem()
        if r >= 0:
            for lam in _partitions(r):
                if 2 * gv - 2 + n + len(lam) <= 0:
                    continue
                if any(p + 1 > self.R.K + 1 for p in lam):
                    raise ValueError("R-matrix too short for this vertex")
                w = tau_intersection(gv, exps + tuple(p + 1 for p in lam))
                if not w:
                    continue
                term = RingElem.const(w)
                for p in lam:
                    term = term * self.T[(a, p + 1)]
                den = 1
                for m in Counter(lam).values():
                    den *= factorial(m)
                out = out + term * Fraction(1, den)
        out = out * self.c ** (1 - gv)
        self._vertex[key] = out
        return out

    def edge(self, a: int, b: int, x: int, y: int) -> RingElem:
        key = (a, b, x, y)
        out = self._edge.get(key)
        if out is None:
            if x + y + 1 > self.R.K:
                raise ValueError(f"edge term z^{x} w^{y} needs R to z^{x + y + 1}")
            out = RingElem()
            for i in range(y + 1):
                out = out + self._numerator(x + 1 + i, y - i, a, b) * (-1) ** i
            out = out / self.c
            self._edge[key] = out
        return out

    def _numerator(self, i, j, a, b):
        v = RingElem.const(int(i == 0 and j == 0 and a == b))
        for k in range(3):
            v = v - self.Ri[i][a][k] * self.Ri[j][b][k]
        return v

    def leg(self, a: int, x: int, k: int) -> RingElem:
        """Leg weight for ``phi_k`` at a vertex decorated ``a`` with exponent ``x``."""
        key = (a, x, k)
        out = self._leg.get(key)
        if out is None:
            if x > self.R.K:
                raise ValueError(f"leg term z^{x} needs R to z^{x}")
            out = sum((self.Ri[x][a][b] * self.psi[b][k] for b in range(3)), RingElem())
            self._leg[key] = out
        return out

    def contribution(self, G: StableGraph, decoration, insertions=()) -> RingElem:
        """Sum over flag exponents for one decorated graph (no ``1/Aut``)."""
        return self._graph_value(G, [tuple(decoration)], insertions)

    def _graph_value(self, G: StableGraph, decorations, insertions) -> RingElem:
        """Sum over flag exponents and the given decorations.

        ``decorations`` is either ``None`` (all of them) or a list of tuples.
        The full sum is computed by eliminating vertices one at a time and
        caching on the decorations and exponents of half-edges that cross
        from processed to unprocessed vertices.
        """
        if len(insertions) != len(G.legs):
            raise ValueError("one insertion per leg is required")
        if decorations is not None:
            return sum((self._eliminate(G, insertions, d) for d in decorations), RingElem())
        return self._eliminate(G, insertions, None)

    def _eliminate(self, G: StableGraph, insertions, dec) -> RingElem:
        nv = len(G.genera)
        # per vertex: its half-edges (e, side), self-edges, edges back to earlier vertices, legs
        halves = [[] for _ in range(nv)]
        for e, (a, b) in enumerate(G.edges):
            halves[a].append((e, 0))
            halves[b].append((e, 1))
        legs = [[i for i, v in enumerate(G.legs) if v == u] for u in range(nv)]
        dims = [3 * G.genera[v] - 3 + G.valence(v) for v in range(nv)]
        # crossing[v]: half-edges (e, side) at vertices < v whose partner sits at a vertex >= v
        crossing = []
        for v in range(nv + 1):
            cr = []
            for e, (a, b) in enumerate(G.edges):
                lo, hi = min(a, b), max(a, b)
                if lo < v <= hi:
                    cr.append(e)
            crossing.append(tuple(cr))
        memo = {}

        def compositions(n, total):
            if n == 0:
                yield ()
                return
            for x in range(total + 1):
                for rest in compositions(n - 1, total - x):
                    yield (x,) + rest

        def value(v, state):
            # state: {e: (decoration, exponent)} for the processed end of each crossing edge
            if v == nv:
                return RingElem.const(1)
            key = (v, tuple(sorted(state.items())))
            out = memo.get(key)
            if out is not None:
                return out
            out = RingElem()
            flags = halves[v]
            nf = len(flags) + len(legs[v])
            for a in ((dec[v],) if dec is not None else range(3)):
                for exps in compositions(nf, dims[v]):
                    w = self.vertex(G.genera[v], a, exps)
                    if w.is_zero():
                        continue
                    mine = {}
                    for (e, side), x in zip(flags, exps):
                        mine.setdefault(e, {})[side] = x
                    for i, x in zip(legs[v], exps[len(flags):]):
                        w = w * self.leg(a, x, insertions[i])
                        if w.is_zero():
                            break
                    if w.is_zero():
                        continue
                    nxt = {}
                    for e, sides in mine.items():
                        ea, eb = G.edges[e]
                        if ea == eb:
                            w = w * self.edge(a, a, sides[0], sides[1])
                        elif e in state:
                            da, xa = state[e]
                            # the earlier end is side 0 when ea < eb
                            if ea < eb:
                                w = w * self.edge(da, a, xa, sides[1])
                            else:
                                w = w * self.edge(a, da, sides[0], xa)
                        else:
                            nxt[e] = (a, sides[0] if ea == v else sides[1])
                        if w.is_zero():
                            break
                    if w.is_zero():
                        continue
                    for e in crossing[v + 1]:
                        if e in state:
                            nxt[e] = state[e]
                    rest = value(v + 1, nxt)
                    if not rest.is_zero():
                        out = out + w * rest
            memo[key] = out
            return out

        return value(0, {})

    def graph_total(self, G: StableGraph, insertions=()) -> RingElem:
        """Sum over all decorations, divided by ``|Aut(G)|``."""
        return self._graph_value(G, None, insertions) * Fraction(1, G.aut)


@dataclass(frozen=True)
class Potential:
    geometry: str
    genus: int
    insertions: tuple
    value: RingElem


@lru_cache(maxsize=None)
def _engine(geometry: str, K: int) -> GraphSum:
    return GraphSum(geometry, rmatrix(geometry, K))


_WORKER = {}


def _work(args):
    idx, insertions = args
    eng, graphs = _WORKER["eng"], _WORKER["graphs"]
    return eng.graph_total(graphs[idx], insertions)


def default_jobs() -> int:
    v = os.environ.get("CREPANT_JOBS")
    return max(1, int(v)) if v else 1


def _check_insertions(insertions):
    ins = tuple(int(i) for i in insertions)
    if any(i not in (0, 1, 2) for i in ins):
        raise ValueError("insertions are flat basis indices 0, 1, 2")
    return ins


@lru_cache(maxsize=None)
def _potential(geometry: str, g: int, insertions: tuple, jobs: int) -> Potential:
    n = len(insertions)
    if g < 0 or 2 * g - 2 + n <= 0:
        raise ValueError(f"unstable (g={g}, n={n})")
    eng = _engine(geometry, required_zorder(g, n))
    graphs = enumerate_stable_graphs(g, n)
    if jobs > 1 and len(graphs) > 1 and "fork" in multiprocessing.get_all_start_methods():
        _WORKER["eng"], _WORKER["graphs"] = eng, graphs
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
            parts = list(pool.map(_work, [(i, insertions) for i in range(len(graphs))]))
    else:
        parts = [eng.graph_total(G, insertions) for G in graphs]
    value = sum(parts, RingElem())
    if not value.is_rational():
        raise ArithmeticError(f"potential F_{g} has a nonzero zeta part")
    return Potential(geometry, g, insertions, value)


def potential(geometry: str, g: int, insertions=(), jobs: int | None = None) -> Potential:
    """``F_g`` (no insertions) or ``<<phi_i1, ..., phi_in>>_{g,n}`` at ``t = 0``."""
    check_geometry(geometry)
    return _potential(geometry, int(g), _check_insertions(insertions), jobs or default_jobs())


def decorated_potential(geometry: str, g: int, insertions=()) -> RingElem:
    """The same sum over decorated graphs up to isomorphism, each with its own ``|Aut|``."""
    insertions = _check_insertions(insertions)
    eng = _engine(geometry, required_zorder(g, len(insertions)))
    total = RingElem()
    for G in enumerate_stable_graphs(g, len(insertions)):
        seen = set()
        for dec in product(range(3), repeat=len(G.genera)):
            labels = tuple(zip(G.genera, dec))
            key = canonical_form(labels, G.edges, G.legs)
            if key in seen:
                continue
            seen.add(key)
            aut = aut_count(labels, G.edges, G.legs)
            total = total + eng.contribution(G, dec, insertions) * Fraction(1, aut)
    return total


def tqft_limit(geometry: str, g: int) -> dict:
    """Run the graph sum with ``R = Id``.

    Returns the vertex class weight ``sum_a c^(1-g)`` of the single-vertex
    graph and whether every graph with an edge contributes zero.
    """
    eng = GraphSum(geometry, identity_rmatrix(geometry, required_zorder(g)))
    edges_vanish = True
    for G in enumerate_stable_graphs(g):
        if G.edges and not eng.graph_total(G).is_zero():
            edges_vanish = False
    weight = sum((eng.c ** (1 - g) for _ in range(3)), Fraction(0))
    return {"weight": weight, "edges_vanish": edges_vanish,
            "potential": sum((eng.graph_total(G) for G in enumerate_stable_graphs(g)), RingElem())}
