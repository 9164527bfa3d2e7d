"""Stable graphs of genus ``g`` with ``n`` labelled legs.

A graph is stored canonically as ``(genera, edges, legs)``: ``genera[v]`` is
the genus of vertex ``v``, ``edges`` is a sorted tuple of vertex pairs
``(a, b)`` with ``a <= b`` (``a == b`` is a self-edge), and ``legs[i]`` is
the vertex carrying marking ``i``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial

__all__ = ["StableGraph", "enumerate_stable_graphs", "canonical_form", "aut_count", "brute_force_aut"]


@dataclass(frozen=True)
class StableGraph:
    genera: tuple
    edges: tuple
    legs: tuple
    aut: int

    @property
    def genus(self) -> int:
        return sum(self.genera) + self.h1

    @property
    def h1(self) -> int:
        return len(self.edges) - len(self.genera) + 1

    def valence(self, v: int) -> int:
        """Number of half-edges and legs at ``v``."""
        n = sum((a == v) + (b == v) for a, b in self.edges)
        return n + sum(1 for l in self.legs if l == v)

    def half_edges(self) -> list:
        """``(edge index, side, vertex)`` for every half-edge."""
        out = []
        for e, (a, b) in enumerate(self.edges):
            out.append((e, 0, a))
            out.append((e, 1, b))
        return out


def _relabel(genera, edges, legs, perm):
    # perm[old] = new
    g2 = [0] * len(genera)
    for old, new in enumerate(perm):
        g2[new] = genera[old]
    e2 = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
    l2 = tuple(perm[v] for v in legs)
    return tuple(g2), e2, l2


def canonical_form(genera, edges, legs) -> tuple:
    """Lexicographically smallest relabelling over all vertex permutations."""
    n = len(genera)
    best = None
    for perm in permutations(range(n)):
        cand = _relabel(genera, edges, legs, perm)
        if best is None or cand < best:
            best = cand
    return best


def aut_count(genera, edges, legs) -> int:
    """Order of the automorphism group (legs fixed pointwise)."""
    n = len(genera)
    base = _relabel(genera, edges, legs, tuple(range(n)))
    vert = sum(1 for perm in permutations(range(n)) if _relabel(genera, edges, legs, perm) == base)
    mult = 1
    for (a, b), m in Counter(edges).items():
        mult *= factorial(m)
        if a == b:
            mult *= 2 ** m
    return vert * mult


def brute_force_aut(genera, edges, legs) -> int:
    """Count automorphisms as permutations of half-edges (slow oracle)."""
    n = len(genera)
    h = [(e, s) for e in range(len(edges)) for s in (0, 1)]

    def vert_of(e, s):
        return edges[e][s]

    count = 0
    for perm in permutations(range(n)):
        if any(perm[v] != v for v in legs):
            continue
        if any(genera[perm[v]] != genera[v] for v in range(n)):
            continue
        for hp in permutations(range(len(h))):
            ok = True
            for i, (e, s) in enumerate(h):
                e2, s2 = h[hp[i]]
                if vert_of(e2, s2) != perm[vert_of(e, s)]:
                    ok = False
                    break
                # partner of (e, s) must go to partner of the image
                pe, ps = h[hp[2 * e + (1 - s)]]
                if pe != e2 or ps == s2:
                    ok = False
                    break
            if ok:
                count += 1
    return count


def _degenerations(genera, edges, legs):
    """All one-step degenerations of a stable graph."""
    n = len(genera)
    for v in range(n):
        h = genera[v]
        if h >= 1:
            g2 = list(genera)
            g2[v] = h - 1
            yield tuple(g2), tuple(edges) + ((v, v),), tuple(legs)
        # split v into v and a new vertex w = n
        slots = []  # half-edge slots at v: ("e", index, side) or ("l", marking)
        for e, (a, b) in enumerate(edges):
            if a == v:
                slots.append(("e", e, 0))
            if b == v:
                slots.append(("e", e, 1))
        for i, l in enumerate(legs):
            if l == v:
                slots.append(("l", i))
        for mask in range(1 << len(slots)):
            moved = [slots[i] for i in range(len(slots)) if mask >> i & 1]
            n_w = len(moved) + 1
            n_v = len(slots) - len(moved) + 1
            for h1 in range(h + 1):
                h2 = h - h1
                if 2 * h1 - 2 + n_v <= 0 or 2 * h2 - 2 + n_w <= 0:
                    continue
                new_edges = [list(e) for e in edges]
                new_legs = list(legs)
                for s in moved:
                    if s[0] == "e":
                        new_edges[s[1]][s[2]] = n
                    else:
                        new_legs[s[1]] = n
                g2 = list(genera) + [h2]
                g2[v] = h1
                es = tuple(tuple(sorted(e)) for e in new_edges) + ((v, n),)
                yield tuple(g2), es, tuple(new_legs)


@lru_cache(maxsize=None)
def _all_graphs(g: int, n: int) -> tuple:
    start = canonical_form((g,), (), (0,) * n)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for gr in frontier:
            for d in _degenerations(*gr):
                c = canonical_form(*d)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    out = [StableGraph(gen, ed, lg, aut_count(gen, ed, lg)) for gen, ed, lg in seen]
    out.sort(key=lambda s: (len(s.edges), s.genera, s.edges, s.legs))
    return tuple(out)


def enumerate_stable_graphs(g: int, n: int = 0) -> list:
    """All stable graphs of genus ``g`` with ``n`` legs, up to isomorphism."""
    if g < 0 or n < 0:
        raise ValueError("genus and leg count must be non-negative")
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"unstable (g={g}, n={n})")
    return list(_all_graphs(g, n))
