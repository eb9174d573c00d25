"""Desk-scale ground truth.

Exact minimum-cost cover by branch and bound, a greedy baseline, a
continuous-refinement audit that stress-tests the candidate-site
discretization, and sensor-density censuses over strips and small squares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import COVER_TOL, Point, dist
from .sites import CandidateSite, Instance, site_weight
from .grid import bounding_box

INF = float("inf")


@dataclass(frozen=True)
class OracleResult:
    cost: float
    site_indices: frozenset[int]
    nodes_explored: int
    proven_optimal: bool
    feasible: bool = True
    infeasible_target: int | None = None


def _target_masks(target_count: int, sites: list[CandidateSite]) -> list[int]:
    masks = []
    for s in sites:
        m = 0
        for t in s.covered:
            if t < target_count:
                m |= 1 << t
        masks.append(m)
    return masks


def exact_min_cost_cover(target_count: int, sites: list[CandidateSite],
                         max_sites: int | None = None) -> OracleResult:
    """Exact minimum total weight covering all targets, by branch and bound.

    Branches on the lowest-index uncovered target over the sites covering
    it, cheapest first.  Nodes are pruned against the incumbent using an
    admissible lower bound: the largest, over uncovered targets, of the
    cheapest weight of any site covering that target.  With `max_sites` the
    search is restricted to covers of at most that many sites.

    Intended for small instances; the search is exponential in general.
    """
    if target_count == 0:
        return OracleResult(0.0, frozenset(), 0, True)
    masks = _target_masks(target_count, sites)
    full = (1 << target_count) - 1

    coverers: list[list[int]] = [[] for _ in range(target_count)]
    for si, m in enumerate(masks):
        for t in range(target_count):
            if m >> t & 1:
                coverers[t].append(si)
    cheapest = [INF] * target_count
    for t in range(target_count):
        if not coverers[t]:
            return OracleResult(INF, frozenset(), 0, False,
                                feasible=False, infeasible_target=t)
        coverers[t].sort(key=lambda si: (sites[si].weight, si))
        cheapest[t] = sites[coverers[t][0]].weight

    best_cost = INF
    best_set: tuple[int, ...] = ()
    nodes = 0

    def lower_bound(uncov: int) -> float:
        lb = 0.0
        while uncov:
            t = (uncov & -uncov).bit_length() - 1
            if cheapest[t] > lb:
                lb = cheapest[t]
            uncov &= uncov - 1
        return lb

    def search(uncov: int, chosen: tuple[int, ...], cost: float) -> None:
        nonlocal best_cost, best_set, nodes
        nodes += 1
        if uncov == 0:
            if cost < best_cost or (cost == best_cost and chosen < best_set):
                best_cost, best_set = cost, chosen
            return
        if max_sites is not None and len(chosen) >= max_sites:
            return
        if cost + lower_bound(uncov) >= best_cost:
            return
        t = (uncov & -uncov).bit_length() - 1
        for si in coverers[t]:
            search(uncov & ~masks[si], chosen + (si,), cost + sites[si].weight)

    search(full, (), 0.0)
    if math.isinf(best_cost):
        return OracleResult(INF, frozenset(), nodes, False, feasible=False)
    return OracleResult(best_cost, frozenset(best_set), nodes, True)


def greedy_cover(target_count: int, sites: list[CandidateSite]) -> OracleResult:
    """Baseline: repeatedly pick the site with the best weight-per-new-target
    ratio.  Never better than the exact oracle; useful as a quick sanity bar.
    """
    if target_count == 0:
        return OracleResult(0.0, frozenset(), 0, False)
    masks = _target_masks(target_count, sites)
    full = (1 << target_count) - 1
    uncov = full
    chosen: list[int] = []
    steps = 0
    while uncov:
        best_si = -1
        best_ratio = INF
        for si, m in enumerate(masks):
            new = bin(m & uncov).count("1")
            if new == 0:
                continue
            ratio = sites[si].weight / new
            if ratio < best_ratio:
                best_ratio, best_si = ratio, si
        if best_si < 0:
            t = (uncov & -uncov).bit_length() - 1
            return OracleResult(INF, frozenset(chosen), steps, False,
                                feasible=False, infeasible_target=t)
        chosen.append(best_si)
        uncov &= ~masks[best_si]
        steps += 1
    cost = sum(sites[si].weight for si in sorted(chosen))
    return OracleResult(cost, frozenset(chosen), steps, False)


@dataclass(frozen=True)
class GridRefineReport:
    """Outcome of the continuous-refinement audit."""

    step: float
    discrete_opt: float
    grid_opt: float
    gap: float                 # grid_opt - discrete_opt
    grid_solution_size: int
    grid_candidate_points: int
    distinct_cover_sets: int

    @property
    def ok_lower(self) -> bool:
        """Grid search never beats the discrete optimum (up to float noise)."""
        return self.grid_opt >= self.discrete_opt - 1e-9


def grid_refine_audit(instance: Instance, discrete_opt: float,
                      step: float) -> GridRefineReport:
    """Compare the discrete optimum against a brute-force grid of placements.

    Sensor positions are sampled at pitch `step` over the union of detection
    circles (positions farther than r from every target cover nothing and
    are useless), condensed to one cheapest representative per distinct
    covered set, and solved exactly.  If the candidate-site classes are
    sound, the grid optimum can only be worse, up to O(step) per sensor.
    """
    if instance.n == 0:
        raise ValueError("nothing to cover")
    if step <= 0:
        raise ValueError("step must be positive")
    r = instance.r
    txs = np.array([t.x for t in instance.targets])
    tys = np.array([t.y for t in instance.targets])
    x0, x1 = txs.min() - r, txs.max() + r
    y0, y1 = tys.min() - r, tys.max() + r
    xs = np.arange(x0, x1 + step / 2, step)
    ys = np.arange(y0, y1 + step / 2, step)
    reach = r * (1.0 + COVER_TOL)

    best_weight: dict[int, float] = {}
    best_pos: dict[int, tuple[float, float]] = {}
    total_pts = 0
    # Row-chunked sweep keeps peak memory modest on fine grids.
    chunk = max(1, int(4e6 // max(len(xs), 1)))
    for lo in range(0, len(ys), chunk):
        yy = ys[lo:lo + chunk]
        gx, gy = np.meshgrid(xs, yy, indexing="ij")
        gx = gx.ravel()
        gy = gy.ravel()
        masks = np.zeros(gx.shape, dtype=np.int64)
        for i, t in enumerate(instance.targets):
            d2 = (gx - t.x) ** 2 + (gy - t.y) ** 2
            masks |= (d2 <= reach * reach).astype(np.int64) << i
        sel = masks > 0
        if not sel.any():
            continue
        gx, gy, masks = gx[sel], gy[sel], masks[sel]
        total_pts += int(sel.sum())
        w = np.full(gx.shape, np.inf)
        for p in instance.stations:
            np.minimum(w, np.hypot(gx - p.x, gy - p.y), out=w)
        order = np.lexsort((gy, gx, w, masks))
        masks_o = masks[order]
        first = np.ones(len(order), dtype=bool)
        first[1:] = masks_o[1:] != masks_o[:-1]
        for idx in np.flatnonzero(first):
            gi = order[idx]
            key = int(masks[gi])
            cand = (float(w[gi]), float(gx[gi]), float(gy[gi]))
            cur = best_weight.get(key)
            if cur is None or cand[0] < cur:
                best_weight[key] = cand[0]
                best_pos[key] = (cand[1], cand[2])

    grid_sites = []
    for key in sorted(best_weight):
        covered = frozenset(t for t in range(instance.n) if key >> t & 1)
        px, py = best_pos[key]
        pos = Point(px, py)
        _, origin = site_weight(pos, instance.stations)
        grid_sites.append(CandidateSite(pos, covered, best_weight[key], origin))

    res = exact_min_cost_cover(instance.n, grid_sites)
    return GridRefineReport(step=step,
                            discrete_opt=discrete_opt,
                            grid_opt=res.cost,
                            gap=res.cost - discrete_opt,
                            grid_solution_size=len(res.site_indices),
                            grid_candidate_points=total_pts,
                            distinct_cover_sets=len(grid_sites))


@dataclass(frozen=True)
class CensusReport:
    max_per_strip: int
    max_per_square: int
    strip_counts: dict[tuple[int, int, int], int]
    square_counts: dict[tuple[int, int], int]


def strip_sensor_census(instance: Instance, positions: list[Point] | tuple[Point, ...],
                        m: int, shift: int = 0) -> CensusReport:
    """Count placed sensors per strip and per small square.

    Strips are the 2r-wide slices of the shift-`shift` cell tiling for the
    given m.  Squares have side sqrt(1/2) after normalizing the instance so
    r = 1 (i.e. side sqrt(1/2) * r in original units), anchored at the grid
    origin.  The maxima give an empirical ceiling for the per-strip cap.
    """
    g = bounding_box(instance, m)
    side = g.cell_side
    width = 2.0 * g.r
    off_x = g.origin.x + 2.0 * shift * g.r
    off_y = g.origin.y + 2.0 * shift * g.r
    strip_counts: dict[tuple[int, int, int], int] = {}
    for p in positions:
        ix = math.floor((p.x - off_x) / side)
        iy = math.floor((p.y - off_y) / side)
        s = int((p.x - (off_x + ix * side)) // width)
        s = min(max(s, 0), m - 1)
        key = (ix, iy, s + 1)
        strip_counts[key] = strip_counts.get(key, 0) + 1

    sq = math.sqrt(0.5) * g.r
    square_counts: dict[tuple[int, int], int] = {}
    for p in positions:
        key = (math.floor((p.x - g.origin.x) / sq),
               math.floor((p.y - g.origin.y) / sq))
        square_counts[key] = square_counts.get(key, 0) + 1

    return CensusReport(
        max_per_strip=max(strip_counts.values(), default=0),
        max_per_square=max(square_counts.values(), default=0),
        strip_counts=strip_counts,
        square_counts=square_counts)
