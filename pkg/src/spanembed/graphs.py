"""Simple undirected graphs on vertex set {0..n-1}.

Graphs are immutable after construction and safe to share across
threads.  Adjacency is kept both as per-vertex bitmasks (Python ints,
fast set algebra) and as a lazily built numpy boolean matrix for the
vectorized inner loops.

Text format, shared by every module and the CLI::

    # comment
    n 7
    0 1
    2 5

First line ``n <count>``, then one ``u v`` pair per line, 0-based,
whitespace-separated.  Writers emit edges sorted with u < v.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArgumentError

Edge = tuple[int, int]


class Graph:
    """Immutable simple graph: no loops, no parallel edges."""

    __slots__ = ("n", "edges", "adj", "_adj_matrix")

    def __init__(self, n: int, edges: Iterable[Edge]):
        if n < 0:
            raise InvalidArgumentError(f"vertex count must be nonnegative, got {n}")
        self.n = n
        canon: set[Edge] = set()
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise InvalidArgumentError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidArgumentError(f"edge ({u},{v}) outside vertex range [0,{n})")
            if u > v:
                u, v = v, u
            canon.add((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.edges = frozenset(canon)
        self.adj = tuple(adj)
        self._adj_matrix = None

    # -- basic queries ------------------------------------------------

    def __contains__(self, edge: Edge) -> bool:
        u, v = edge
        return 0 <= u < self.n and bool(self.adj[u] >> v & 1)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    def max_degree(self) -> int:
        return max((m.bit_count() for m in self.adj), default=0)

    def min_degree(self) -> int:
        return min((m.bit_count() for m in self.adj), default=0)

    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def adjacency_matrix(self) -> np.ndarray:
        """Boolean n x n adjacency matrix (cached)."""
        if self._adj_matrix is None:
            m = np.zeros((self.n, self.n), dtype=bool)
            for u, v in self.edges:
                m[u, v] = m[v, u] = True
            self._adj_matrix = m
        return self._adj_matrix

    # -- derived graphs -----------------------------------------------

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        es = []
        for u in range(self.n):
            missing = full & ~self.adj[u] & ~(1 << u)
            for v in bits(missing):
                if v > u:
                    es.append((u, v))
        return Graph(self.n, es)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabeled to {0..k-1} in the given vertex order."""
        idx = {v: i for i, v in enumerate(vertices)}
        es = [
            (idx[u], idx[v])
            for u, v in self.edges
            if u in idx and v in idx
        ]
        return Graph(len(vertices), es)

    def connected_components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            frontier = 1 << s
            comp = frontier
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(bits(comp))
        return comps

    def bfs_distances(self, source: int) -> list[int]:
        """Hop distances from source; -1 for unreachable vertices."""
        dist = [-1] * self.n
        dist[source] = 0
        frontier = 1 << source
        seen = frontier
        d = 0
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
            d += 1
            for v in bits(frontier):
                dist[v] = d
        return dist

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


def bits(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# -- construction helpers --------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def empty_graph(n: int) -> Graph:
    return Graph(n, [])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidArgumentError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def complete_multipartite_graph(sizes: Sequence[int]) -> Graph:
    n = sum(sizes)
    offs = []
    o = 0
    for s in sizes:
        offs.append((o, o + s))
        o += s
    es = []
    for i, (lo1, hi1) in enumerate(offs):
        for lo2, hi2 in offs[i + 1:]:
            es.extend((u, v) for u in range(lo1, hi1) for v in range(lo2, hi2))
    return Graph(n, es)


def disjoint_union(*parts: Graph) -> Graph:
    n = 0
    es = []
    for g in parts:
        es.extend((u + n, v + n) for u, v in g.edges)
        n += g.n
    return Graph(n, es)


# -- text format ------------------------------------------------------


def parse_graph(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise InvalidArgumentError(
                    f"line {lineno}: expected header 'n <count>', got {raw!r}"
                )
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise InvalidArgumentError(f"line {lineno}: expected 'u v', got {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise InvalidArgumentError("missing 'n <count>' header")
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))


def is_valid_embedding(h: Graph, g: Graph, phi: dict[int, int] | Sequence[int]) -> bool:
    """True iff phi maps V(H) injectively into V(G) sending H-edges to G-edges."""
    if isinstance(phi, dict):
        items = phi
        get = phi.__getitem__
        dom = set(phi)
    else:
        items = range(len(phi))
        get = phi.__getitem__
        dom = set(range(len(phi)))
    if dom != set(range(h.n)):
        return False
    images = [get(x) for x in sorted(dom)]
    if len(set(images)) != len(images):
        return False
    if any(not (0 <= v < g.n) for v in images):
        return False
    return all(g.has_edge(get(x), get(y)) for x, y in h.edges)
