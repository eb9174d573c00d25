"""Candidate placement generation.

Reduces the continuous placement problem to a finite list of sites, each
carrying the set of targets it covers and the cheapest movement distance
from any station.  The candidate classes are chosen so that some optimal
continuous placement is always dominated by one of them:

  (a) every station (zero-cost placements),
  (b) every target position (guarantees feasibility for isolated targets),
  (c) intersection points of pairs of detection circles,
  (d) for every (target, station) pair, the point of the target's detection
      circle nearest to the station.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Point, circle_circle_intersections, covered_targets, dist, \
    nearest_point_on_circle


@dataclass(frozen=True)
class Instance:
    """A coverage problem: point targets, stations and a sensing radius."""

    targets: tuple[Point, ...]
    stations: tuple[Point, ...]
    r: float

    def __post_init__(self) -> None:
        if len(self.stations) < 1:
            raise ValueError("at least one station is required")
        if not (self.r > 0 and math.isfinite(self.r)):
            raise ValueError(f"sensing radius must be positive, got {self.r}")

    @property
    def n(self) -> int:
        return len(self.targets)

    @property
    def k(self) -> int:
        return len(self.stations)

    @classmethod
    def from_coords(cls, targets, stations, r: float) -> "Instance":
        return cls(targets=tuple(Point(float(x), float(y)) for x, y in targets),
                   stations=tuple(Point(float(x), float(y)) for x, y in stations),
                   r=float(r))


@dataclass(frozen=True)
class CandidateSite:
    """A discrete sensor placement.

    `covered` is the set of target indices within the sensing radius,
    `weight` the distance from the nearest station and `origin_station`
    the index of a station attaining it (lowest index on ties).
    """

    position: Point
    covered: frozenset[int]
    weight: float
    origin_station: int


def site_weight(position: Point, stations) -> tuple[float, int]:
    """Minimum distance from `position` to any station, with the station index.

    Ties are broken toward the lowest station index.
    """
    if len(stations) == 0:
        raise ValueError("at least one station is required")
    best_w = math.inf
    best_i = -1
    for i, p in enumerate(stations):
        w = dist(position, p)
        if w < best_w:
            best_w, best_i = w, i
    return best_w, best_i


def generate_candidate_sites(instance: Instance) -> list[CandidateSite]:
    """Enumerate candidate sites for an instance.

    Duplicate positions are merged, sites covering no target are dropped,
    and the result is sorted by (weight, x, y) so downstream enumeration and
    tie-breaking are reproducible.
    """
    r = instance.r
    targets = instance.targets
    positions: dict[tuple[float, float], Point] = {}

    def add(p: Point) -> None:
        positions.setdefault((p.x, p.y), p)

    for p in instance.stations:
        add(p)
    for t in targets:
        add(t)
    for i in range(len(targets)):
        for j in range(i + 1, len(targets)):
            for p in circle_circle_intersections(targets[i], targets[j], r):
                add(p)
    for t in targets:
        for p in instance.stations:
            add(nearest_point_on_circle(t, r, p))

    sites = []
    for pos in positions.values():
        covered = covered_targets(pos, targets, r)
        if not covered:
            continue
        weight, origin = site_weight(pos, instance.stations)
        sites.append(CandidateSite(pos, covered, weight, origin))
    sites.sort(key=lambda s: (s.weight, s.position.x, s.position.y))
    return sites


def prune_dominated(sites: list[CandidateSite]) -> list[CandidateSite]:
    """Drop sites whose coverage is available elsewhere at no extra cost.

    A site is removed when another site covers a superset of its targets at
    a weight that is no larger.  Exact ties (same covered set, same weight)
    keep the lexicographically smaller position.
    """
    n = len(sites)
    masks = []
    for s in sites:
        m = 0
        for t in s.covered:
            m |= 1 << t
        masks.append(m)
    keep = [True] * n
    for i in range(n):
        mi, wi, pi = masks[i], sites[i].weight, sites[i].position
        for j in range(n):
            if i == j or not keep[j]:
                continue
            mj, wj = masks[j], sites[j].weight
            if (mi & mj) == mi and wj <= wi:
                if mj != mi or wj < wi:
                    keep[i] = False
                    break
                pj = sites[j].position
                if pj < pi or (pj == pi and j < i):
                    keep[i] = False
                    break
    return [s for s, k in zip(sites, keep) if k]
