"""Random-subgraph experiments: G(p) sampling, containment, threshold scans.

G(p) keeps each host edge independently with probability p; a scan
reuses one trial seed across its whole p-grid, so the kept edge sets
are nested and containment is exactly monotone along the grid (shared
uniform per edge).  Containment of a spanning pattern is decided
exactly by a budgeted backtracking search, with polynomial special
cases for matchings (maximum matching) and clique factors (exact cover
over cliques).  Timeouts are first-class results, never coerced to no.

CSV schema for scans (column order frozen):
    kind,p,trials,successes,timeouts,fraction,wilson_lo,wilson_hi,flag
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .density import max_one_density
from .errors import InternalInvariantError, InvalidArgumentError
from .graphs import (
    Graph,
    bits,
    complete_graph,
    complete_multipartite_graph,
    cycle_graph,
    disjoint_union,
    mask_of,
)
from .seeds import child_seed, check_seed, np_rng, py_rng
from .switching import delta_e_upper_bound
from .tailbounds import hypergeo_chernoff_bound, wilson_interval

DEFAULT_BUDGET = 10_000_000

SCAN_COLUMNS = ("kind", "p", "trials", "successes", "timeouts",
                "fraction", "wilson_lo", "wilson_hi", "flag")


def sample_gp(g: Graph, p: float, seed: int) -> Graph:
    """Spanning random subgraph keeping each edge independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"p must lie in [0,1], got {p}")
    check_seed(seed)
    edges = g.sorted_edges()
    keep = np_rng(seed).random(len(edges)) < p
    return Graph(g.n, [e for e, k in zip(edges, keep) if k])


# -- exact spanning containment ----------------------------------------

YES, NO, TIMEOUT = "yes", "no", "timeout"


@dataclass(frozen=True)
class ContainVerdict:
    kind: str
    embedding: dict[int, int] | None = None
    nodes_used: int = 0

    @property
    def yes(self) -> bool:
        return self.kind == YES


def contains_spanning(gp: Graph, h: Graph, budget: int = DEFAULT_BUDGET) -> ContainVerdict:
    """Exact test whether H embeds spanningly into Gp, within a node budget.

    Special cases: patterns with maximum degree one reduce to maximum
    matching; disjoint unions of equal cliques covering every vertex
    reduce to exact cover backtracking.  Everything else runs a
    backtracking embedder with degree-sort and common-neighbourhood
    pruning.
    """
    if gp.n != h.n:
        raise InvalidArgumentError(f"need |V(Gp)| = |V(H)|, got {gp.n} != {h.n}")
    if h.max_degree() > gp.max_degree():
        return ContainVerdict(NO, nodes_used=0)
    if h.max_degree() <= 1:
        return _contains_matching(gp, h)
    factor_r = _clique_factor_shape(h)
    if factor_r is not None:
        return _contains_clique_factor(gp, h, factor_r, budget)
    return _contains_backtracking(gp, h, budget)


def _contains_matching(gp: Graph, h: Graph) -> ContainVerdict:
    need = h.num_edges()
    if need == 0:
        return ContainVerdict(YES, {x: x for x in range(h.n)})
    if 2 * need == gp.n and gp.min_degree() == 0:
        return ContainVerdict(NO)     # perfect matching with an isolated vertex
    greedy = _greedy_matching(gp)
    if len(greedy) >= need:
        pairs = greedy
    else:
        nxg = nx.Graph()
        nxg.add_nodes_from(range(gp.n))
        nxg.add_edges_from(gp.edges)
        matching = nx.max_weight_matching(nxg, maxcardinality=True)
        if len(matching) < need:
            return ContainVerdict(NO)
        pairs = [tuple(sorted(e)) for e in matching]
    phi: dict[int, int] = {}
    h_edges = h.sorted_edges()
    for (hx, hy), (gu, gv) in zip(h_edges, pairs):
        phi[hx], phi[hy] = gu, gv
    used = set(phi.values())
    free = iter(v for v in range(gp.n) if v not in used)
    for x in range(h.n):
        if x not in phi:
            phi[x] = next(free)
    return ContainVerdict(YES, phi)


def _greedy_matching(gp: Graph) -> list[tuple[int, int]]:
    used = 0
    out = []
    for v in range(gp.n):
        if used >> v & 1:
            continue
        free = gp.adj[v] & ~used
        if free:
            w = bits(free)[0]
            out.append((v, w))
            used |= (1 << v) | (1 << w)
    return out


def _clique_factor_shape(h: Graph) -> int | None:
    """r if H is a disjoint union of K_r's covering all vertices (r >= 3)."""
    comps = h.connected_components()
    sizes = {len(c) for c in comps}
    if len(sizes) != 1:
        return None
    r = sizes.pop()
    if r < 3 or h.num_edges() != len(comps) * r * (r - 1) // 2:
        return None
    return r


def _contains_clique_factor(gp: Graph, h: Graph, r: int, budget: int) -> ContainVerdict:
    """Exact cover of V(Gp) by disjoint r-cliques, found by backtracking."""
    n = gp.n
    nodes = 0
    full = (1 << n) - 1
    chosen: list[tuple[int, ...]] = []

    def extend(covered: int) -> str:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return TIMEOUT
        if covered == full:
            return YES
        v = bits(~covered & full)[0]
        for clique in _cliques_through(gp, v, r, covered):
            chosen.append(clique)
            res = extend(covered | mask_of(clique))
            if res != NO:
                return res
            chosen.pop()
        return NO

    res = extend(0)
    if res != YES:
        return ContainVerdict(res, nodes_used=nodes)
    phi: dict[int, int] = {}
    comps = sorted(h.connected_components())
    for comp, clique in zip(comps, chosen):
        for x, v in zip(sorted(comp), clique):
            phi[x] = v
    return ContainVerdict(YES, phi, nodes_used=nodes)


def _cliques_through(gp: Graph, v: int, r: int, covered: int):
    """All r-cliques containing v avoiding covered vertices, ascending."""
    avail = gp.adj[v] & ~covered
    out = []

    def grow(clique: list[int], common: int, start_bit: int):
        if len(clique) == r:
            out.append(tuple(clique))
            return
        m = common & ~((1 << start_bit) - 1)
        for u in bits(m):
            grow(clique + [u], common & gp.adj[u], u + 1)

    grow([v], avail, 0)
    return out


def _contains_backtracking(gp: Graph, h: Graph, budget: int) -> ContainVerdict:
    """General spanning-embedding backtracking with candidate pruning."""
    n = h.n
    order = sorted(range(n), key=lambda x: (-h.degree(x), x))
    pos = {x: i for i, x in enumerate(order)}
    gp_deg = gp.degrees()
    h_deg = h.degrees()
    nodes = 0
    phi = [-1] * n
    used = 0

    # neighbours of each h-vertex that come earlier in the order
    earlier = [[y for y in bits(h.adj[x]) if pos[y] < pos[x]] for x in range(n)]

    def place(i: int) -> str:
        nonlocal nodes, used
        if i == n:
            return YES
        nodes += 1
        if nodes > budget:
            return TIMEOUT
        x = order[i]
        cand = ~used & ((1 << gp.n) - 1)
        for y in earlier[x]:
            cand &= gp.adj[phi[y]]
        for v in bits(cand):
            if gp_deg[v] < h_deg[x]:
                continue
            phi[x] = v
            used |= 1 << v
            res = place(i + 1)
            if res != NO:
                return res
            used &= ~(1 << v)
            phi[x] = -1
        return NO

    res = place(0)
    if res == YES:
        return ContainVerdict(YES, {x: phi[x] for x in range(n)}, nodes_used=nodes)
    return ContainVerdict(res, nodes_used=nodes)


# -- clique-component split ---------------------------------------------


@dataclass(frozen=True)
class CliqueSplit:
    h1_components: tuple[tuple[int, ...], ...]
    h2_components: tuple[tuple[int, ...], ...]

    @property
    def h1_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for c in self.h1_components for v in c))

    @property
    def h2_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for c in self.h2_components for v in c))


def split_cliques(h: Graph, delta: int) -> CliqueSplit:
    """Separate the K_{delta+1} components of H from everything else."""
    if h.max_degree() > delta:
        raise InvalidArgumentError(
            f"pattern has maximum degree {h.max_degree()} > delta = {delta}")
    want = delta + 1
    h1, h2 = [], []
    for comp in h.connected_components():
        if len(comp) == want and all(
            h.has_edge(u, v) for i, u in enumerate(comp) for v in comp[i + 1:]
        ):
            h1.append(tuple(comp))
        else:
            h2.append(tuple(comp))
    return CliqueSplit(tuple(h1), tuple(h2))


# -- threshold scans -----------------------------------------------------


@dataclass(frozen=True)
class ThresholdScan:
    host: Graph
    pattern: Graph
    p_grid: tuple[float, ...]
    trials: int
    seed: int
    budget: int = DEFAULT_BUDGET
    kind: str = "scan"

    def __post_init__(self):
        if not self.p_grid:
            raise InvalidArgumentError("empty p-grid")
        if any(not 0 < p <= 1 for p in self.p_grid):
            raise InvalidArgumentError("p values must lie in (0,1]")
        if any(b >= a for a, b in zip(self.p_grid[1:], self.p_grid)):
            raise InvalidArgumentError("p-grid must be strictly increasing")


@dataclass(frozen=True)
class ScanRow:
    kind: str
    p: float
    trials: int
    successes: int
    timeouts: int
    flag: str = ""

    @property
    def fraction(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    def wilson(self) -> tuple[float, float]:
        return wilson_interval(self.successes, self.trials)

    def as_csv_row(self) -> list:
        lo, hi = self.wilson()
        return [self.kind, f"{self.p:.8g}", self.trials, self.successes,
                self.timeouts, f"{self.fraction:.6f}", f"{lo:.6f}", f"{hi:.6f}", self.flag]


def threshold_scan(scan: ThresholdScan) -> list[ScanRow]:
    """Empirical containment probability per grid point, coupled across p.

    Each trial reuses its seed across the entire grid, so the sampled
    edge sets are nested in p; containment is then monotone and any
    decrease across a coupled pair is a hard error.  Timeouts beyond
    20% of trials flag the row as unreliable.
    """
    m = len(scan.host.edges)
    successes = [0] * len(scan.p_grid)
    timeouts = [0] * len(scan.p_grid)
    edges = scan.host.sorted_edges()
    for t in range(scan.trials):
        uniforms = np_rng(child_seed(scan.seed, t)).random(m)
        prev_yes = False
        for gi, p in enumerate(scan.p_grid):
            gp = Graph(scan.host.n, [e for e, u in zip(edges, uniforms) if u < p])
            verdict = contains_spanning(gp, scan.pattern, scan.budget)
            if verdict.kind == TIMEOUT:
                timeouts[gi] += 1
                continue
            if verdict.yes:
                successes[gi] += 1
                prev_yes = True
            elif prev_yes:
                raise InternalInvariantError(
                    f"coupled monotonicity violated at p={p} on trial {t}")
    rows = []
    for gi, p in enumerate(scan.p_grid):
        flag = "scan-unreliable" if timeouts[gi] > 0.2 * scan.trials else ""
        rows.append(ScanRow(scan.kind, p, scan.trials, successes[gi], timeouts[gi], flag))
    return rows


def scan_thm91_grid(delta: int, n: int, gamma: float, seed: int,
                    trials: int = 200, budget: int = DEFAULT_BUDGET,
                    subset_trials: int = 2000) -> dict:
    """Two-grid scan for clique-plus-remainder mixtures, plus a tail check.

    The pattern mixes K_{delta+1} components with a K_{delta+1}-free
    remainder; one grid follows the n^(-1/m1) log n shape, the other
    the sharper n^(-2/(delta+1)) (log n)^(1/binom(delta+1,2)) shape.
    Also samples random half-size vertex subsets of the host and
    reports the frequency of degree-deficient vertices against the
    hypergeometric tail bound.
    """
    if delta != 2:
        raise InvalidArgumentError("exact factor scanning is desk-sized only for delta = 2")
    if n > 16:
        raise InvalidArgumentError(f"exact factor testing needs n <= 16, got {n}")
    pattern = mixture_pattern(n, delta)
    # at desk sizes the degree hypothesis can exceed n-1; clamp to the
    # complete graph and let the grids still probe the p-shape
    need = min(n - 1, math.ceil((float(delta_e_upper_bound(delta)) + gamma) * n))
    host = random_min_degree_host(n, need, seed)
    m1 = float(max_one_density(pattern)[0])
    logn = math.log(n)
    kb = math.comb(delta + 1, 2)
    base_a = n ** (-1 / m1) * logn
    base_b = n ** (-2 / (delta + 1)) * logn ** (1 / kb)
    grid_a = tuple(sorted(min(1.0, c * base_a) for c in (0.25, 0.5, 1.0, 2.0)))
    grid_b = tuple(sorted(min(1.0, c * base_b) for c in (0.25, 0.5, 1.0, 2.0)))
    rows = threshold_scan(ThresholdScan(host, pattern, _dedup(grid_a), trials,
                                        child_seed(seed, 1), budget, kind="m1-grid"))
    rows += threshold_scan(ThresholdScan(host, pattern, _dedup(grid_b), trials,
                                         child_seed(seed, 2), budget, kind="improved-grid"))

    k = n // 2
    eps = gamma / 2
    t = gamma * k / 2
    need = (float(delta_e_upper_bound(delta)) + gamma / 2) * k
    rng = py_rng(child_seed(seed, 3))
    bad = 0
    total = 0
    for _ in range(subset_trials):
        subset = rng.sample(range(n), k)
        smask = mask_of(subset)
        for v in subset:
            total += 1
            if (host.adj[v] & smask).bit_count() < need:
                bad += 1
    return {
        "rows": rows,
        "bad_vertex_frequency": bad / total if total else 0.0,
        "bad_vertex_bound": hypergeo_chernoff_bound(eps, t),
        "bad_vertex_samples": total,
        "host": host,
        "pattern": pattern,
    }


def _dedup(grid: Sequence[float]) -> tuple[float, ...]:
    out: list[float] = []
    for p in grid:
        if not out or p > out[-1]:
            out.append(p)
    return tuple(out)


# -- named hosts and patterns -------------------------------------------


def dirac_overlap_host(n: int) -> Graph:
    """Two cliques of size n/2 + 1 sharing two vertices; minimum degree n/2."""
    if n < 6 or n % 2:
        raise InvalidArgumentError("overlap host needs even n >= 6")
    a = n // 2 + 1
    edges = [(u, v) for u in range(a) for v in range(u + 1, a)]
    second = list(range(a - 2, n))
    edges += [(u, v) for i, u in enumerate(second) for v in second[i + 1:]]
    return Graph(n, edges)


def unbalanced_multipartite_host(n: int, delta: int) -> Graph:
    """Complete (delta+1)-partite host with slightly unbalanced parts."""
    k = delta + 1
    if n < 2 * k:
        raise InvalidArgumentError("host too small for the part structure")
    base, extra = divmod(n, k)
    sizes = [base + 1 if i < extra else base for i in range(k)]
    sizes[0] += 1
    sizes[-1] -= 1
    if sizes[-1] < 1:
        raise InvalidArgumentError("unbalancing emptied a part")
    return complete_multipartite_graph(sizes)


def random_min_degree_host(n: int, min_degree: int, seed: int) -> Graph:
    """Near-extremal host: delete random edges from K_n while min degree holds."""
    if min_degree > n - 1:
        raise InvalidArgumentError(f"min degree {min_degree} impossible on {n} vertices")
    rng = py_rng(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(edges)
    deg = [n - 1] * n
    kept = []
    for u, v in edges:
        if deg[u] > min_degree and deg[v] > min_degree:
            deg[u] -= 1
            deg[v] -= 1
        else:
            kept.append((u, v))
    return Graph(n, kept)


def perfect_matching_pattern(n: int) -> Graph:
    if n % 2:
        raise InvalidArgumentError("perfect matchings need even n")
    return Graph(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


def clique_factor_pattern(n: int, r: int) -> Graph:
    if n % r:
        raise InvalidArgumentError(f"{r} must divide n for a clique factor")
    return disjoint_union(*[complete_graph(r) for _ in range(n // r)])


def mixture_pattern(n: int, delta: int) -> Graph:
    """K_{delta+1} components plus a K_{delta+1}-free remainder, padded to n."""
    r = delta + 1
    if n < r + 5:
        raise InvalidArgumentError("mixture needs room for a clique and a 5-cycle")
    num_cliques = (n - 5) // r
    parts = [complete_graph(r) for _ in range(num_cliques)]
    parts.append(cycle_graph(5))
    g = disjoint_union(*parts)
    pad = n - g.n
    if pad:
        g = disjoint_union(g, Graph(pad, []))
    return g
