"""Shifted-grid approximation: solve every shift round cell by cell, keep the
cheapest round.

With m shift rounds the returned cost is at most (1 + 4/m) times the optimum
over the candidate-site universe: averaging over rounds, each optimal site is
double-counted by a cell boundary in only a few rounds, so some round must be
close to the optimum.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .geometry import COVER_TOL, Point, dist
from .grid import bounding_box, cells_for_shift, strips_of_cell
from .sites import CandidateSite, Instance, generate_candidate_sites, prune_dominated
from .strip_dp import CellInfeasible, CellSolution, DpCounters, auto_cap, solve_cell


class CapInfeasibleError(Exception):
    """A cell could not be solved within the configured subset cap."""

    def __init__(self, shift_round: int, cell_index: tuple[int, int],
                 strip_index: int, cap: int):
        self.shift_round = shift_round
        self.cell_index = cell_index
        self.strip_index = strip_index
        self.cap = cap
        super().__init__(
            f"infeasible at shift {shift_round}, cell {cell_index}, "
            f"strip {strip_index} with cap {cap}")

    def __reduce__(self):
        # Survives pickling across worker processes.
        return (CapInfeasibleError,
                (self.shift_round, self.cell_index, self.strip_index, self.cap))


@dataclass(frozen=True)
class PtasConfig:
    """Solver knobs.  Exactly one of `epsilon` and `m` must be given;
    epsilon is converted to m = ceil(4 / epsilon)."""

    epsilon: float | None = None
    m: int | None = None
    cap: int | str = "auto"     # "auto" | "verify" | fixed integer
    seed: int = 0

    def __post_init__(self) -> None:
        if (self.epsilon is None) == (self.m is None):
            raise ValueError("exactly one of epsilon and m must be given")
        if self.epsilon is not None and self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.m is not None and self.m < 1:
            raise ValueError("m must be at least 1")
        if isinstance(self.cap, str):
            if self.cap not in ("auto", "verify"):
                raise ValueError(f"unknown cap policy {self.cap!r}")
        elif self.cap < 1:
            raise ValueError("fixed cap must be at least 1")

    @property
    def rounds(self) -> int:
        if self.m is not None:
            return self.m
        return max(1, math.ceil(4.0 / self.epsilon))


@dataclass(frozen=True)
class Placement:
    position: Point
    station: int
    weight: float


@dataclass(frozen=True)
class Solution:
    placements: tuple[Placement, ...]
    total_cost: float
    shift_round_used: int
    per_round_costs: tuple[float, ...]
    m: int
    cap_used: int
    counters: dict[str, int]
    cap_check: dict[str, float | bool] | None = None


def _round_cost(site_ids, sites: list[CandidateSite]) -> float:
    return sum(sites[i].weight for i in sorted(site_ids))


def _solve_round(args):
    grid, f, sites, cap, policy = args
    cells = cells_for_shift(grid, f)
    chosen: set[int] = set()
    counters = DpCounters()
    verify_costs = [0.0, 0.0]
    verify_ok = True
    for cell in cells:
        strips_of_cell(cell, sites)
        cap_eff = cap
        res = solve_cell(cell, sites, cap_eff)
        if policy == "auto":
            pool_max = max((len(st.site_pool) for st in cell.strips), default=1)
            while isinstance(res, CellInfeasible) and cap_eff < pool_max:
                cap_eff = min(2 * cap_eff, pool_max)
                res = solve_cell(cell, sites, cap_eff)
        if isinstance(res, CellInfeasible):
            raise CapInfeasibleError(f, cell.index, res.strip_index, cap_eff)
        if policy == "verify":
            res2 = solve_cell(cell, sites, cap + 1)
            if isinstance(res2, CellSolution):
                counters.merge(res2.counters)
                c2 = res2.cost
            else:
                c2 = math.inf
            verify_costs[0] += res.cost
            verify_costs[1] += c2
            if not math.isclose(res.cost, c2, rel_tol=1e-9, abs_tol=1e-12):
                verify_ok = False
        chosen |= res.site_indices
        counters.merge(res.counters)
    # Sites selected by two cells are instantiated once; dropping the copy
    # only lowers the round's cost.
    cost = _round_cost(chosen, sites)
    return f, cost, frozenset(chosen), counters, verify_costs, verify_ok


def solve(instance: Instance, config: PtasConfig,
          sites: list[CandidateSite] | None = None, jobs: int = 1) -> Solution:
    """Run all shift rounds and return the cheapest feasible schedule.

    `sites` may be supplied to reuse a candidate list (it must come from
    `generate_candidate_sites`, optionally pruned); by default candidates
    are generated and dominated ones pruned.  `jobs` > 1 solves rounds in
    separate processes; the merge is deterministic either way.
    """
    if instance.n == 0:
        raise ValueError("nothing to cover")
    if sites is None:
        sites = prune_dominated(generate_candidate_sites(instance))
    m = config.rounds
    grid = bounding_box(instance, m)
    if isinstance(config.cap, int):
        cap = config.cap
        policy = "fixed"
    else:
        cap = auto_cap(m, instance.k)
        policy = config.cap

    tasks = [(grid, f, sites, cap, policy) for f in range(m)]
    if jobs > 1 and m > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, m)) as pool:
            results = list(pool.map(_solve_round, tasks))
    else:
        results = [_solve_round(t) for t in tasks]
    results.sort(key=lambda r: r[0])

    per_round = tuple(r[1] for r in results)
    best_f, best_cost, best_sites, _, _, _ = min(results, key=lambda r: (r[1], r[0]))

    counters = DpCounters()
    verify_sum = [0.0, 0.0]
    verify_ok = True
    for _, _, _, c, vc, vok in results:
        counters.merge(c)
        verify_sum[0] += vc[0]
        verify_sum[1] += vc[1]
        verify_ok = verify_ok and vok

    placements = tuple(
        Placement(sites[i].position, sites[i].origin_station, sites[i].weight)
        for i in sorted(best_sites))
    cap_check = None
    if policy == "verify":
        cap_check = {"cost_at_cap": verify_sum[0],
                     "cost_at_cap_plus_one": verify_sum[1],
                     "consistent": verify_ok}
    return Solution(placements=placements,
                    total_cost=best_cost,
                    shift_round_used=best_f,
                    per_round_costs=per_round,
                    m=m,
                    cap_used=cap,
                    counters={"subsets_enumerated": counters.subsets_enumerated,
                              "pairs_checked": counters.pairs_checked,
                              "pair_bound": counters.pair_bound},
                    cap_check=cap_check)


def verify_solution(instance: Instance, placements) -> bool:
    """Independent feasibility re-check: every target within r of a placement.

    Accepts Placement objects, Points, or (x, y) pairs.
    """
    reach = instance.r * (1.0 + COVER_TOL)
    pts = []
    for p in placements:
        if isinstance(p, Placement):
            pts.append(p.position)
        elif isinstance(p, Point):
            pts.append(p)
        else:
            pts.append(Point(float(p[0]), float(p[1])))
    return all(any(dist(t, p) <= reach for p in pts) for t in instance.targets)


@dataclass(frozen=True)
class ShiftAuditReport:
    m: int
    average: float
    minimum: float
    optimum: float
    bound: float            # (1 + 4/m) * optimum
    average_within_bound: bool
    minimum_below_average: bool
    margin: float           # bound - average

    @property
    def ok(self) -> bool:
        return self.average_within_bound and self.minimum_below_average


def shift_average_audit(per_round_costs, opt: float) -> ShiftAuditReport:
    """Check the averaging argument behind the shifting guarantee.

    The mean round cost must stay below (1 + 4/m) times the optimum, and the
    selected (minimum) round can only do better than the mean.
    """
    costs = list(per_round_costs)
    if not costs:
        raise ValueError("no round costs")
    m = len(costs)
    avg = sum(costs) / m
    mn = min(costs)
    bound = (1.0 + 4.0 / m) * opt
    tol = 1e-9 * max(1.0, abs(bound))
    return ShiftAuditReport(m=m, average=avg, minimum=mn, optimum=opt,
                            bound=bound,
                            average_within_bound=avg <= bound + tol,
                            minimum_below_average=mn <= avg + tol,
                            margin=bound - avg)
