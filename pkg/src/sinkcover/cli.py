"""Command-line surface: generate, solve, exact, compare, audit, render.

Exit codes: 0 on success, 2 when an instance is infeasible under the
requested configuration, 1 on usage or input errors.  Errors go to stderr
prefixed with a machine-readable code like ``error[usage]``.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .instances_io import (InstanceFormatError, SolutionFile,
                           counterexample_metadata, gen_counterexample,
                           gen_uniform, read_instance, read_solution,
                           uniform_metadata, write_instance, write_report,
                           write_solution)
from .oracle import exact_min_cost_cover, greedy_cover, grid_refine_audit
from .ptas import (CapInfeasibleError, PtasConfig, shift_average_audit, solve,
                   verify_solution)
from .sites import generate_candidate_sites, prune_dominated
from .svg_render import render_svg


def _fail(code: str, message: str) -> None:
    print(f"error[{code}]: {message}", file=sys.stderr)


def _parse_cap(raw: str):
    if raw in ("auto", "verify"):
        return raw
    try:
        return int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"cap must be 'auto', 'verify' or an integer, got {raw!r}")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sinkcover",
        description="Movement-minimizing sensor coverage from k stations.")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("generate", help="write a generated instance file")
    g.add_argument("--family", choices=("uniform", "counterexample"), required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--r", type=float, default=1.0)
    g.add_argument("--extent", type=float)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--alpha", type=float)
    g.add_argument("--beta", type=float)

    s = sub.add_parser("solve", help="run the shifted-grid solver")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--out", required=True)
    quality = s.add_mutually_exclusive_group(required=True)
    quality.add_argument("--epsilon", type=float)
    quality.add_argument("--m", type=int)
    s.add_argument("--cap", type=_parse_cap, default="auto")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    e = sub.add_parser("exact", help="run the exact oracle")
    e.add_argument("--in", dest="infile", required=True)
    e.add_argument("--out", required=True)

    c = sub.add_parser("compare", help="table of solver vs oracle vs greedy")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--m", default="2,4,8",
                   help="comma-separated list of round counts")
    c.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    c.add_argument("--out", help="optional report file")

    a = sub.add_parser("audit", help="discretization gap and shift-average audit")
    a.add_argument("--in", dest="infile", required=True)
    a.add_argument("--step", type=float,
                   help="grid pitch for the refinement audit (default r/200)")
    a.add_argument("--m", type=int, default=4)
    a.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    a.add_argument("--out", help="optional report file")

    r = sub.add_parser("render", help="draw an instance (and solution) as SVG")
    r.add_argument("--in", dest="infile", required=True)
    r.add_argument("--solution")
    r.add_argument("--svg", required=True)
    return p


def _cmd_generate(args) -> int:
    if args.family == "uniform":
        missing = [f for f in ("n", "k", "extent") if getattr(args, f) is None]
        if missing:
            _fail("usage", f"uniform family requires --{' --'.join(missing)}")
            return 1
        inst = gen_uniform(args.n, args.k, args.r, args.extent, args.seed)
        meta = uniform_metadata(args.n, args.k, args.r, args.extent, args.seed)
    else:
        missing = [f for f in ("k", "alpha", "beta") if getattr(args, f) is None]
        if missing:
            _fail("usage", f"counterexample family requires --{' --'.join(missing)}")
            return 1
        inst = gen_counterexample(args.k, args.alpha, args.beta, args.r)
        meta = counterexample_metadata(args.k, args.alpha, args.beta, args.r)
    write_instance(args.out, inst, meta)
    print(f"wrote {args.out}: {inst.n} targets, {inst.k} stations, r={inst.r}")
    return 0


def _config_echo(config: PtasConfig, solution) -> dict:
    return {"epsilon": config.epsilon, "m": solution.m,
            "cap": config.cap, "cap_used": solution.cap_used,
            "seed": config.seed, "counters": solution.counters,
            "cap_check": solution.cap_check}


def _cmd_solve(args) -> int:
    inst = read_instance(args.infile)
    config = PtasConfig(epsilon=args.epsilon, m=args.m, cap=args.cap,
                        seed=args.seed)
    solution = solve(inst, config, jobs=args.jobs)
    if not verify_solution(inst, solution.placements):
        _fail("internal", "solution failed the independent feasibility re-check")
        return 2
    write_solution(args.out, solution, _config_echo(config, solution))
    print(f"cost {solution.total_cost:.9f} using round {solution.shift_round_used} "
          f"of {solution.m}, {len(solution.placements)} sensors -> {args.out}")
    return 0


def _cmd_exact(args) -> int:
    inst = read_instance(args.infile)
    sites = prune_dominated(generate_candidate_sites(inst))
    res = exact_min_cost_cover(inst.n, sites)
    if not res.feasible:
        _fail("infeasible", f"target {res.infeasible_target} cannot be covered")
        return 2
    placements = [{"x": sites[i].position.x, "y": sites[i].position.y,
                   "station": sites[i].origin_station, "weight": sites[i].weight}
                  for i in sorted(res.site_indices)]
    out = SolutionFile(total_cost=res.cost, shift_round=None,
                       per_round_costs=[], placements=placements,
                       config={"algorithm": "exact",
                               "nodes_explored": res.nodes_explored})
    write_solution(args.out, out)
    print(f"cost {res.cost:.9f}, {len(placements)} sensors, "
          f"{res.nodes_explored} nodes -> {args.out}")
    return 0


def _cmd_compare(args) -> int:
    inst = read_instance(args.infile)
    try:
        ms = [int(v) for v in str(args.m).split(",") if v != ""]
    except ValueError:
        _fail("usage", f"--m must be a comma-separated list of integers, got {args.m!r}")
        return 1
    if not ms or any(m < 1 for m in ms):
        _fail("usage", "--m values must be positive")
        return 1
    sites = prune_dominated(generate_candidate_sites(inst))
    t0 = time.perf_counter()
    exact = exact_min_cost_cover(inst.n, sites)
    exact_ms = (time.perf_counter() - t0) * 1000.0
    if not exact.feasible:
        _fail("infeasible", f"target {exact.infeasible_target} cannot be covered")
        return 2
    greedy = greedy_cover(inst.n, sites)

    records = [{"instance": args.infile, "algorithm": "exact",
                "cost": exact.cost, "runtime_ms": exact_ms,
                "counters": {"nodes_explored": exact.nodes_explored}},
               {"instance": args.infile, "algorithm": "greedy",
                "cost": greedy.cost, "runtime_ms": 0.0, "counters": {}}]

    def ratio(cost: float) -> float:
        if exact.cost > 0:
            return cost / exact.cost
        return 1.0 if cost <= 1e-12 else float("inf")

    print(f"{'algorithm':<12} {'cost':>16} {'ratio':>14} {'bound':>10}")
    print(f"{'exact':<12} {exact.cost:>16.9f} {1.0:>14.9f} {'-':>10}")
    print(f"{'greedy':<12} {greedy.cost:>16.9f} {ratio(greedy.cost):>14.9f} {'-':>10}")
    for m in ms:
        config = PtasConfig(m=m)
        t0 = time.perf_counter()
        solution = solve(inst, config, sites=sites, jobs=args.jobs)
        ms_elapsed = (time.perf_counter() - t0) * 1000.0
        bound = 1.0 + 4.0 / m
        print(f"{f'shifted-m{m}':<12} {solution.total_cost:>16.9f} "
              f"{ratio(solution.total_cost):>14.9f} {bound:>10.9f}")
        records.append({"instance": args.infile, "algorithm": f"shifted-m{m}",
                        "cost": solution.total_cost, "runtime_ms": ms_elapsed,
                        "counters": solution.counters})
    if args.out:
        write_report(args.out, records)
    return 0


def _cmd_audit(args) -> int:
    inst = read_instance(args.infile)
    step = args.step if args.step is not None else inst.r / 200.0
    sites = prune_dominated(generate_candidate_sites(inst))
    exact = exact_min_cost_cover(inst.n, sites)
    if not exact.feasible:
        _fail("infeasible", f"target {exact.infeasible_target} cannot be covered")
        return 2
    gap = grid_refine_audit(inst, exact.cost, step)
    ok_gap = gap.ok_lower
    print(f"refine: step {step:.9f} discrete {gap.discrete_opt:.9f} "
          f"grid {gap.grid_opt:.9f} gap {gap.gap:.9f} "
          f"[{'PASS' if ok_gap else 'FAIL'}]")
    config = PtasConfig(m=args.m)
    solution = solve(inst, config, sites=sites, jobs=args.jobs)
    audit = shift_average_audit(solution.per_round_costs, exact.cost)
    print(f"shift:  m {audit.m} average {audit.average:.9f} "
          f"min {audit.minimum:.9f} bound {audit.bound:.9f} "
          f"[{'PASS' if audit.ok else 'FAIL'}]")
    if args.out:
        write_report(args.out, [
            {"instance": args.infile, "algorithm": "refine-audit",
             "cost": gap.grid_opt, "runtime_ms": 0.0,
             "counters": {"step": step, "discrete_opt": gap.discrete_opt,
                          "gap": gap.gap, "grid_points": gap.grid_candidate_points,
                          "ok": ok_gap}},
            {"instance": args.infile, "algorithm": "shift-audit",
             "cost": audit.average, "runtime_ms": 0.0,
             "counters": {"m": audit.m, "bound": audit.bound,
                          "minimum": audit.minimum, "ok": audit.ok}}])
    return 0 if (ok_gap and audit.ok) else 2


def _cmd_render(args) -> int:
    inst = read_instance(args.infile)
    solution = read_solution(args.solution) if args.solution else None
    svg = render_svg(inst, solution)
    with open(args.svg, "w") as f:
        f.write(svg)
    print(f"wrote {args.svg}")
    return 0


def run(argv=None) -> int:
    """Parse arguments and dispatch; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help, 2 for usage errors; map the latter to 1.
        return 0 if e.code == 0 else 1
    handlers = {"generate": _cmd_generate, "solve": _cmd_solve,
                "exact": _cmd_exact, "compare": _cmd_compare,
                "audit": _cmd_audit, "render": _cmd_render}
    try:
        return handlers[args.verb](args)
    except InstanceFormatError as e:
        _fail("parse", str(e))
        return 1
    except CapInfeasibleError as e:
        _fail("infeasible", str(e))
        return 2
    except (ValueError, OSError) as e:
        _fail("input", str(e))
        return 1


def entrypoint() -> None:   # console_scripts hook
    sys.exit(run())


if __name__ == "__main__":
    entrypoint()
