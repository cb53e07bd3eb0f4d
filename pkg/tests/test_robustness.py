import itertools
import math
import pytest

from spanembed.density import max_one_density
from spanembed.errors import InvalidArgumentError
from spanembed.graphs import (
    Graph,
    complete_graph,
    complete_multipartite_graph,
    cycle_graph,
    disjoint_union,
    path_graph,
)
from spanembed.robustness import (
    ThresholdScan,
    clique_factor_pattern,
    contains_spanning,
    dirac_overlap_host,
    mixture_pattern,
    perfect_matching_pattern,
    random_min_degree_host,
    sample_gp,
    scan_thm91_grid,
    split_cliques,
    threshold_scan,
    unbalanced_multipartite_host,
)


def permutation_oracle(gp, h):
    """Exhaustive containment oracle: try every bijection."""
    for perm in itertools.permutations(range(gp.n)):
        if all(gp.has_edge(perm[u], perm[v]) for u, v in h.edges):
            return True
    return False


def test_sample_gp_endpoints():
    g = complete_graph(8)
    assert sample_gp(g, 1.0, 5) == g
    assert sample_gp(g, 0.0, 5).num_edges() == 0
    with pytest.raises(InvalidArgumentError):
        sample_gp(g, 1.5, 0)


def test_sample_gp_mean_edges():
    g = complete_graph(20)
    total = sum(sample_gp(g, 0.5, seed).num_edges() for seed in range(10_000))
    mean = total / 10_000
    sigma = math.sqrt(190 * 0.25 / 10_000)
    assert abs(mean - 95) <= 3 * sigma


def test_contains_two_disjoint_edges_in_c4():
    h = Graph(4, [(0, 1), (2, 3)])
    v = contains_spanning(cycle_graph(4), h)
    assert v.yes
    assert permutation_oracle(cycle_graph(4), h)


def test_contains_degree_fast_path():
    h = Graph(4, [(0, 1), (0, 2), (0, 3)])
    gp = cycle_graph(4)
    assert contains_spanning(gp, h).kind == "no"


def test_contains_matches_permutation_oracle_small():
    import random
    rng = random.Random(0)
    for trial in range(28):
        n = rng.randint(4, 7) if trial < 22 else 8
        gp = Graph(n, [e for e in itertools.combinations(range(n), 2)
                       if rng.random() < 0.5])
        h = Graph(n, [e for e in itertools.combinations(range(n), 2)
                      if rng.random() < 0.3])
        got = contains_spanning(gp, h)
        assert got.kind in ("yes", "no")
        assert got.yes == permutation_oracle(gp, h), trial
        if got.yes:
            phi = got.embedding
            assert all(gp.has_edge(phi[u], phi[v]) for u, v in h.edges)


def test_contains_clique_factor_special_case():
    host = complete_multipartite_graph([4, 4, 4, 4])
    h = clique_factor_pattern(16, 4)
    v = contains_spanning(host, h)
    assert v.yes
    phi = v.embedding
    assert all(host.has_edge(phi[u], phi[v_]) for u, v_ in h.edges)
    # remove one part's worth of cross edges: no factor anymore
    broken = Graph(16, [e for e in host.edges if 0 not in e])
    assert not contains_spanning(broken, h).yes


def test_contains_timeout_is_distinct():
    host = complete_graph(12)
    h = clique_factor_pattern(12, 3)
    v = contains_spanning(host, h, budget=2)
    assert v.kind == "timeout"


def test_split_cliques_examples():
    h = disjoint_union(complete_graph(4), path_graph(3))
    s = split_cliques(h, 3)
    assert s.h1_components == ((0, 1, 2, 3),)
    assert s.h2_vertices == (4, 5, 6)

    no_cliques = cycle_graph(5)
    assert split_cliques(no_cliques, 2).h1_components == ()

    mix = disjoint_union(*([complete_graph(3)] * 3), cycle_graph(5))
    s = split_cliques(mix, 2)
    assert len(s.h1_components) == 3 and len(s.h2_vertices) == 5


def test_split_cliques_m1_is_componentwise_max():
    for seed in range(20):
        import random
        rng = random.Random(seed)
        comps = []
        for _ in range(rng.randint(1, 3)):
            kind = rng.choice(["k3", "path", "cycle"])
            comps.append({"k3": complete_graph(3), "path": path_graph(3),
                          "cycle": cycle_graph(4)}[kind])
        h = disjoint_union(*comps)
        if h.n > 8:
            continue
        s = split_cliques(h, 2)
        vals = []
        if s.h1_vertices:
            vals.append(max_one_density(h.induced(list(s.h1_vertices)))[0])
        if s.h2_vertices and len(s.h2_vertices) >= 2:
            vals.append(max_one_density(h.induced(list(s.h2_vertices)))[0])
        assert max_one_density(h)[0] == max(vals)


def test_threshold_scan_rows_and_monotone_coupling():
    host = dirac_overlap_host(20)
    scan = ThresholdScan(host, perfect_matching_pattern(20),
                         (0.05, 0.3, 1.0), trials=40, seed=2)
    rows = threshold_scan(scan)
    assert [r.p for r in rows] == [0.05, 0.3, 1.0]
    # p = 1 keeps the whole host, which satisfies the degree condition
    assert rows[-1].fraction == 1.0
    fracs = [r.fraction for r in rows]
    assert fracs == sorted(fracs)  # exact coupling makes this certain


def test_threshold_scan_validates_grid():
    host = complete_graph(6)
    with pytest.raises(InvalidArgumentError):
        ThresholdScan(host, perfect_matching_pattern(6), (0.5, 0.5), 5, 0)
    with pytest.raises(InvalidArgumentError):
        ThresholdScan(host, perfect_matching_pattern(6), (0.0, 0.5), 5, 0)


def test_threshold_scan_flags_timeouts():
    host = complete_graph(12)
    scan = ThresholdScan(host, clique_factor_pattern(12, 3), (0.9,),
                         trials=10, seed=1, budget=2)
    rows = threshold_scan(scan)
    assert rows[0].flag == "scan-unreliable"


def test_scan_thm91_shapes_and_tail():
    result = scan_thm91_grid(2, 12, gamma=0.2, seed=5, trials=40,
                             subset_trials=1500)
    kinds = {r.kind for r in result["rows"]}
    assert kinds == {"m1-grid", "improved-grid"}
    freq = result["bad_vertex_frequency"]
    bound = result["bad_vertex_bound"]
    sigma = math.sqrt(max(freq, 1e-4) / result["bad_vertex_samples"])
    assert freq <= bound + 3 * sigma
    # degenerate split: all-triangle pattern reduces to a factor scan
    all_tris = mixture_pattern(12, 2)
    s = split_cliques(all_tris, 2)
    assert len(s.h1_components) >= 1


def test_named_hosts():
    g = dirac_overlap_host(100)
    assert g.n == 100 and g.min_degree() == 50
    u = unbalanced_multipartite_host(12, 2)
    assert u.n == 12
    assert not contains_spanning(u, clique_factor_pattern(12, 3)).yes
    r = random_min_degree_host(15, 10, seed=3)
    assert r.min_degree() >= 10


def test_pattern_generators():
    assert perfect_matching_pattern(8).num_edges() == 4
    assert clique_factor_pattern(9, 3).num_edges() == 9
    mix = mixture_pattern(14, 2)
    assert mix.n == 14 and mix.max_degree() == 2
