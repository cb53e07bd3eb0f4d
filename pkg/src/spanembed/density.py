"""Exact 1-density and maximum 1-density of a graph.

The 1-density of a graph with at least two vertices is e/(v-1); the
maximum 1-density is the maximum of that ratio over all subgraphs with
at least two vertices.  Everything here is exact rational arithmetic:
values are `fractions.Fraction` and ties are never left to floats.

A maximizing subgraph may be assumed connected and induced: merging two
components strictly lowers the ratio (the denominator loses one fewer
than the sum of parts), and adding edges on a fixed vertex set never
lowers it.  We therefore work per connected component, enumerating
connected induced vertex sets exhaustively up to EXHAUSTIVE_LIMIT
vertices, and switching to a guess-and-verify search above that: binary
search over rational guesses g, with an exact min-cut test deciding
whether some vertex set S has e(S) - g(|S|-1) > 0.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor

from .errors import InvalidArgumentError
from .graphs import Graph, bits

EXHAUSTIVE_LIMIT = 20


def one_density(h: Graph) -> Fraction:
    """e(H) / (v(H) - 1) as an exact reduced fraction."""
    if h.n < 2:
        raise InvalidArgumentError("1-density needs at least two vertices")
    return Fraction(h.num_edges(), h.n - 1)


def max_one_density(h: Graph) -> tuple[Fraction, tuple[int, ...]]:
    """Maximum 1-density of ``h`` with a witness vertex set.

    Returns ``(value, vertices)`` where the subgraph induced on
    ``vertices`` attains the maximum.  The maximum runs over all
    subgraphs with at least two vertices.
    """
    if h.n < 2:
        raise InvalidArgumentError("maximum 1-density needs at least two vertices")
    best_num, best_den = 0, 1
    best_witness: tuple[int, ...] = (0, 1)
    for comp in h.connected_components():
        if len(comp) < 2:
            continue
        sub = h.induced(comp)
        if len(comp) <= EXHAUSTIVE_LIMIT:
            num, den, mask = _component_m1_exhaustive(sub)
        else:
            num, den, mask = _component_m1_flow(sub)
        if num * best_den > best_num * den:
            best_num, best_den = num, den
            best_witness = tuple(comp[i] for i in bits(mask))
    return Fraction(best_num, best_den), best_witness


# -- exhaustive path ---------------------------------------------------


def _component_m1_exhaustive(g: Graph) -> tuple[int, int, int]:
    """Best (e, v-1, vertex mask) over connected induced subsets of ``g``.

    Enumerates every connected vertex set exactly once by rooting each
    set at its minimum vertex and growing the frontier with a binary
    include/exclude branching; excluded vertices stay banned below that
    branch so no set is produced twice.
    """
    best_num, best_den, best_mask = 0, 1, 0b11 if g.n >= 2 else 0
    adj = g.adj
    for root in range(g.n):
        above = ((1 << g.n) - 1) & ~((1 << (root + 1)) - 1)
        # stack entries: (set mask, edge count, frontier mask, banned mask)
        stack = [(1 << root, 0, adj[root] & above, 0)]
        while stack:
            s_mask, e_cnt, frontier, banned = stack.pop()
            if frontier == 0:
                continue
            low = frontier & -frontier
            v = low.bit_length() - 1
            # exclude v here and below
            stack.append((s_mask, e_cnt, frontier ^ low, banned | low))
            # include v
            new_mask = s_mask | low
            new_e = e_cnt + (adj[v] & s_mask).bit_count()
            new_frontier = (frontier ^ low) | (adj[v] & above & ~new_mask & ~banned)
            if new_e * best_den > best_num * (new_mask.bit_count() - 1):
                best_num = new_e
                best_den = new_mask.bit_count() - 1
                best_mask = new_mask
            stack.append((new_mask, new_e, new_frontier, banned))
    return best_num, best_den, best_mask


# -- flow-based path ---------------------------------------------------


def _component_m1_flow(g: Graph) -> tuple[int, int, int]:
    """m1 of a connected component via binary search with exact cut tests.

    Any two candidate values e/(v-1) with v <= n have denominators at
    most n-1, so distinct candidates differ by more than 1/(n-1)^2.
    Bisect until the bracket is narrower than that, then the unique
    small-denominator fraction in the bracket is the answer.
    """
    n = g.n
    edges = g.sorted_edges()
    gap = Fraction(1, (n - 1) * (n - 1))
    lo = Fraction(1, 2)             # m1 >= 1 for any connected pair
    hi = Fraction(g.max_degree() + 1, 2)
    if hi <= lo:
        hi = Fraction(1)
    # invariant: m1 > lo (some set beats lo strictly), m1 <= hi
    while hi - lo >= gap:
        mid = (lo + hi) / 2
        if _exists_denser_than(n, edges, mid)[0]:
            lo = mid
        else:
            hi = mid
    value = _simplest_between(lo, hi)
    if value.denominator > n - 1:
        raise AssertionError("bracket failed to isolate a candidate density")
    # strict test just below the value recovers a maximizing vertex set
    found, mask = _exists_denser_than(n, edges, value - gap / 2)
    if not found:
        raise AssertionError("no witness below the computed maximum density")
    return value.numerator, value.denominator, mask


def _exists_denser_than(n: int, edges: list[tuple[int, int]], g: Fraction) -> tuple[bool, int]:
    """Exact test: is there S with e(S) - g(|S|-1) > 0?  Returns (found, mask).

    For S containing an anchor w, b*e(S) - a*|S minus w| > 0 with g = a/b
    is decided by a min cut in the usual edge-node network where w's sink
    arc is free.  Adding the anchor to any S never lowers the objective,
    so scanning anchors covers every candidate set.
    """
    a, b = g.numerator, g.denominator
    m = len(edges)
    order = sorted(range(n), key=lambda v: -sum(1 for e in edges if v in e))
    for w in order:
        flow = _DinicInt(2 + n + m)
        inf = b * m + a * n + 1
        for j, (u, v) in enumerate(edges):
            enode = 2 + n + j
            flow.add(0, enode, b)
            flow.add(enode, 2 + u, inf)
            flow.add(enode, 2 + v, inf)
        for v in range(n):
            if v != w:
                flow.add(2 + v, 1, a)
        if flow.max_flow(0, 1) < b * m:
            side = flow.min_cut_source_side(0)
            mask = 0
            for v in range(n):
                if 2 + v in side:
                    mask |= 1 << v
            return True, mask
    return False, 0


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Fraction with the smallest denominator in the closed interval [lo, hi]."""
    if lo > hi:
        raise InvalidArgumentError("empty interval")
    fl = floor(lo)
    if lo == fl:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    inner = _simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / inner


class _DinicInt:
    """Dinic max flow with integer capacities on a small static graph."""

    def __init__(self, n: int):
        self.n = n
        self.to: list[int] = []
        self.cap: list[int] = []
        self.head: list[list[int]] = [[] for _ in range(n)]

    def add(self, u: int, v: int, c: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def _bfs(self, s: int, t: int) -> bool:
        self.level = [-1] * self.n
        self.level[s] = 0
        q = [s]
        for u in q:
            for eid in self.head[u]:
                v = self.to[eid]
                if self.cap[eid] > 0 and self.level[v] < 0:
                    self.level[v] = self.level[u] + 1
                    q.append(v)
        return self.level[t] >= 0

    def _dfs(self, u: int, t: int, pushed: int) -> int:
        if u == t:
            return pushed
        while self.it[u] < len(self.head[u]):
            eid = self.head[u][self.it[u]]
            v = self.to[eid]
            if self.cap[eid] > 0 and self.level[v] == self.level[u] + 1:
                got = self._dfs(v, t, min(pushed, self.cap[eid]))
                if got:
                    self.cap[eid] -= got
                    self.cap[eid ^ 1] += got
                    return got
            self.it[u] += 1
        return 0

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while self._bfs(s, t):
            self.it = [0] * self.n
            while True:
                got = self._dfs(s, t, 1 << 62)
                if not got:
                    break
                total += got
        return total

    def min_cut_source_side(self, s: int) -> set[int]:
        side = {s}
        q = [s]
        for u in q:
            for eid in self.head[u]:
                v = self.to[eid]
                if self.cap[eid] > 0 and v not in side:
                    side.add(v)
                    q.append(v)
        return side
