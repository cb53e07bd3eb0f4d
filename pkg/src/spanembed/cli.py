"""Command-line surface.

Subcommands: m1, embed-switch, equitable, clique-factor,
spread-matching, pipeline, scan, scan-thm91.  Global flags --seed,
--trials, --out, --graph, --config apply where meaningful.  Exit
codes: 0 success, 2 invalid input, 3 infeasible parameters, 4
timeout-dominated scan.

Config files are flat key-value text: one `key value` (or `key=value`)
per line, # comments allowed.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .density import max_one_density
from .errors import (
    EstimateUnreliableError,
    GenerationFailedError,
    InfeasibleParametersError,
    InvalidArgumentError,
    PartitionFailedError,
    SpanembedError,
    UnsupportedSizeError,
)
from .graphs import complete_graph, disjoint_union, read_graph
from .partition import clique_factor, equitable_coloring, format_partition
from .pipeline import (
    RGAConfig,
    estimate_vertex_spread,
    generate_regular_host,
    partition_pattern,
    run_pipeline_once,
)
from .robustness import (
    SCAN_COLUMNS,
    ThresholdScan,
    clique_factor_pattern,
    dirac_overlap_host,
    mixture_pattern,
    perfect_matching_pattern,
    random_min_degree_host,
    scan_thm91_grid,
    threshold_scan,
    unbalanced_multipartite_host,
)
from .spread import (
    FBParams,
    SpreadEstimate,
    canonical_matching,
    parse_fb_instance,
    sample_coupled,
)
from .switching import PartialEmbedding, switching_embed

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_TIMEOUT_SCAN = 4


def parse_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" in line:
                key, _, val = line.partition("=")
            else:
                key, _, val = line.partition(" ")
            out[key.strip()] = val.strip()
    return out


def _open_out(path: str | None):
    return open(path, "w", newline="", encoding="utf-8") if path else sys.stdout


def _emit_csv(path: str | None, header, rows) -> None:
    fh = _open_out(path)
    try:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()


# -- subcommand bodies --------------------------------------------------


def cmd_m1(args) -> int:
    g = read_graph(args.graph)
    value, witness = max_one_density(g)
    print(f"m1 {value.numerator}/{value.denominator}")
    print("witness " + " ".join(str(v) for v in witness))
    return EXIT_OK


def cmd_embed_switch(args) -> int:
    g = read_graph(args.host)
    h = read_graph(args.pattern)
    mapping = {}
    if args.phi:
        with open(args.phi, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if line:
                    x, v = line.split()
                    mapping[int(x)] = int(v)
    phi_s = PartialEmbedding.of(h, g, mapping)
    outcome = switching_embed(g, h, phi_s, args.seed)
    if not outcome.ok:
        print("failure: stuck", file=sys.stderr)
        return EXIT_INFEASIBLE
    for x, v in enumerate(outcome.mapping):
        print(f"{x} {v}")
    rows = [[s.time, s.x, s.y, s.repaired[0], s.repaired[1]] for s in outcome.trace.steps]
    _emit_csv(args.out, ["time", "x", "y", "edge_u", "edge_v"], rows)
    return EXIT_OK


def cmd_equitable(args) -> int:
    g = read_graph(args.graph)
    part = equitable_coloring(g, args.k)
    sys.stdout.write(format_partition(part.parts))
    return EXIT_OK


def cmd_clique_factor(args) -> int:
    g = read_graph(args.graph)
    factor = clique_factor(g, args.r)
    sys.stdout.write(format_partition(factor.cliques))
    print("leftover " + " ".join(str(v) for v in factor.leftover))
    return EXIT_OK


def cmd_spread_matching(args) -> int:
    params = FBParams(d=args.d, b=args.b, rho=args.rho, mu=args.mu, delta=args.delta)
    with open(args.instance, "r", encoding="utf-8") as fh:
        inst = parse_fb_instance(fh.read(), params)
    c = args.c if args.c else max(1, min(inst.lam, int(-(-8.0 / (args.d ** args.b) // 1))))
    rows = []
    for spec in args.event:
        est = _run_matching_event(inst, c, spec, args.trials, args.seed)
        rows.append([est.event, est.trials, est.hits,
                     f"{est.estimate:.6f}", f"{est.radius:.6f}"])
    _emit_csv(args.out, ["event", "trials", "hits", "estimate", "radius"], rows)
    return EXIT_OK


def _run_matching_event(inst, c, spec, trials, seed) -> SpreadEstimate:
    if spec == "hall-fail":
        hits = 0
        for i in range(trials):
            sample = sample_coupled(inst, c, seed ^ i)
            size, _ = canonical_matching(inst.lam, sample.z)
            hits += size < inst.lam
        return SpreadEstimate("hall-fail", trials, hits)
    if spec.startswith("contains:"):
        edges = []
        for token in spec.split(":", 1)[1].split(","):
            a, b = token.split("-")
            edges.append((int(a), int(b)))
        from .spread import estimate_matching_spread
        return estimate_matching_spread(inst, c, edges, trials, seed)
    raise InvalidArgumentError(f"unknown event spec {spec!r}; use hall-fail or contains:a-b[,..]")


def cmd_pipeline(args) -> int:
    cfgf = parse_config(args.config)
    delta = int(cfgf.get("delta", 2))
    d = float(cfgf.get("d", 0.5))
    m = int(cfgf.get("m", 40))
    r = int(cfgf.get("r", delta + 1))
    mu = float(cfgf.get("mu", 0.25))
    zeta = float(cfgf.get("zeta", 1.0))
    theta = float(cfgf["theta"]) if "theta" in cfgf else None
    c = int(cfgf.get("C", 8))
    trials = int(cfgf.get("trials", 200))
    seed = int(cfgf.get("seed", args.seed))
    if r % (delta + 1):
        raise InvalidArgumentError(f"r = {r} must be a multiple of delta+1 = {delta + 1}")
    blocks = r // (delta + 1)
    rgraph = disjoint_union(*[complete_graph(delta + 1) for _ in range(blocks)])
    host = generate_regular_host(rgraph, rgraph, m, d, seed)
    pattern = partition_pattern(clique_factor_pattern(r * m, delta + 1), host, None,
                                alpha=mu, seed=seed ^ 1)
    cfg = RGAConfig(mu=mu, zeta=zeta, theta=theta)
    rows = []
    for t in range(trials):
        trial = run_pipeline_once(host, pattern, cfg, c, seed ^ t)
        rows.append([t, int(trial.ok), trial.fail_stage,
                     min(trial.rga_sizes) if trial.rga_sizes else 0])
    _emit_csv(args.out, ["trial", "ok", "fail_stage", "min_candidate"], rows)

    n = host.g.n
    probes = []
    for j in range(min(20, n)):
        part = j % r
        xs = pattern.parts[part]
        vs = host.clusters[part]
        probes.append((xs[j % len(xs)], vs[(j * 7) % len(vs)]))
    probes = sorted(set(probes))
    report = estimate_vertex_spread(host, pattern, cfg, c, probes,
                                    max(1000, trials), seed ^ 0xFEED)
    agg = [[x, v, report.successes, e.hits, f"{e.estimate:.6f}", f"{e.radius:.6f}"]
           for (x, v), e in zip(report.probes, report.estimates)]
    agg.append(["max", "", report.successes, "",
                f"{report.max_estimate:.6f}", f"{report.spread_constant(n):.4f}"])
    path = None
    if args.out:
        path = args.out.rsplit(".", 1)[0] + "-spread.csv" if "." in args.out else args.out + "-spread"
    _emit_csv(path, ["probe_x", "probe_v", "successes", "hits", "estimate", "radius_or_nmax"], agg)
    return EXIT_OK


_HOSTS = {
    "dirac-overlap": lambda n, seed: dirac_overlap_host(n),
    "unbalanced-multipartite": lambda n, seed: unbalanced_multipartite_host(n, 2),
    "complete": lambda n, seed: complete_graph(n),
}

_PATTERNS = {
    "matching": perfect_matching_pattern,
    "triangle-factor": lambda n: clique_factor_pattern(n, 3),
    "mixture": lambda n: mixture_pattern(n, 2),
}


def cmd_scan(args) -> int:
    cfgf = parse_config(args.config)
    n = int(cfgf.get("n", 20))
    seed = int(cfgf.get("seed", args.seed))
    host_name = cfgf.get("host", "complete")
    if host_name in _HOSTS:
        host = _HOSTS[host_name](n, seed)
    elif host_name.startswith("min-degree:"):
        host = random_min_degree_host(n, int(host_name.split(":")[1]), seed)
    else:
        host = read_graph(host_name)
    pattern_name = cfgf.get("pattern", "matching")
    pattern = (_PATTERNS[pattern_name](host.n) if pattern_name in _PATTERNS
               else read_graph(pattern_name))
    grid = tuple(float(tok) for tok in cfgf["pgrid"].split(","))
    scan = ThresholdScan(host, pattern, grid,
                         trials=int(cfgf.get("trials", args.trials)),
                         seed=seed, budget=int(cfgf.get("budget", 10_000_000)))
    rows = threshold_scan(scan)
    _emit_csv(args.out, SCAN_COLUMNS, [r.as_csv_row() for r in rows])
    if any(r.flag for r in rows):
        return EXIT_TIMEOUT_SCAN
    return EXIT_OK


def cmd_scan_thm91(args) -> int:
    result = scan_thm91_grid(args.delta, args.n, args.gamma, args.seed,
                             trials=args.trials)
    rows = [r.as_csv_row() for r in result["rows"]]
    rows.append(["bad-vertex", "", result["bad_vertex_samples"], "", "",
                 f"{result['bad_vertex_frequency']:.6f}",
                 f"{result['bad_vertex_bound']:.6f}", "", ""])
    _emit_csv(args.out, SCAN_COLUMNS, rows)
    if any(r.flag for r in result["rows"]):
        return EXIT_TIMEOUT_SCAN
    return EXIT_OK


# -- wiring --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="spanembed", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument("--out", type=str, default=None, help="CSV output path")

    p = sub.add_parser("m1", help="exact maximum 1-density of a graph")
    common(p)
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_m1)

    p = sub.add_parser("embed-switch", help="switching embedding extending a partial map")
    common(p)
    p.add_argument("host")
    p.add_argument("pattern")
    p.add_argument("--phi", default=None, help="partial embedding file: 'x v' lines")
    p.set_defaults(func=cmd_embed_switch)

    p = sub.add_parser("equitable", help="equitable colouring into k independent sets")
    common(p)
    p.add_argument("--graph", required=True)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_equitable)

    p = sub.add_parser("clique-factor", help="K_r-factor covering all but at most r-1 vertices")
    common(p)
    p.add_argument("--graph", required=True)
    p.add_argument("r", type=int)
    p.set_defaults(func=cmd_clique_factor)

    p = sub.add_parser("spread-matching", help="coupled-sampler matching statistics")
    common(p)
    p.add_argument("--instance", required=True, help="bipartite instance file")
    p.add_argument("--c", type=int, default=0, help="coupling constant; 0 = default policy")
    p.add_argument("--d", type=float, default=0.8)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--rho", type=float, default=0.1)
    p.add_argument("--mu", type=float, default=0.25)
    p.add_argument("--delta", type=int, default=2)
    p.add_argument("--event", action="append", default=None,
                   help="hall-fail or contains:a-b[,a-b...]; repeatable")
    p.set_defaults(func=cmd_spread_matching)

    p = sub.add_parser("pipeline", help="toy-scale end-to-end embedding pipeline")
    common(p)
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("scan", help="threshold scan over a p-grid")
    common(p)
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("scan-thm91", help="two-grid mixture scan with tail check")
    common(p)
    p.add_argument("--delta", type=int, default=2)
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--gamma", type=float, default=0.2)
    p.set_defaults(func=cmd_scan_thm91)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "spread-matching" and not args.event:
            args.event = ["hall-fail"]
        return args.func(args)
    except (InvalidArgumentError, UnsupportedSizeError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InfeasibleParametersError, GenerationFailedError,
            PartitionFailedError, EstimateUnreliableError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SpanembedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
