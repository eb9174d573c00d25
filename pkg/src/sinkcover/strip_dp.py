"""Optimal per-cell coverage via dynamic programming over vertical strips.

A cell of side 2mr splits into m strips of width 2r.  A radius-r disk covers
targets spanning less than 2r horizontally, so a site can serve targets in
at most two adjacent strips and the pools of non-adjacent strips are
disjoint.  The solver sweeps strips left to right; the state after strip i
is the chosen subset of strip i's pool, and consecutive states must agree on
every site shared between the two pools.  A site's weight is charged at the
first strip where it appears, so sites shared across a boundary are paid
exactly once.

The per-strip subset cap bounds the state size; with the cap large enough
the sweep is exact over the candidate-site universe restricted to the cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .grid import Cell, strips_of_cell
from .sites import CandidateSite

INF = float("inf")


@dataclass
class DpCounters:
    """Instrumentation for the benchmark harness."""

    subsets_enumerated: int = 0
    pairs_checked: int = 0
    pair_bound: int = 0   # loose envelope: sum over strips of |pool|^(2L)

    def merge(self, other: "DpCounters") -> None:
        self.subsets_enumerated += other.subsets_enumerated
        self.pairs_checked += other.pairs_checked
        self.pair_bound += other.pair_bound


@dataclass
class StripTable:
    """Inspectable DP state: per-strip subset values and back-pointers.

    `entries[i]` maps a chosen subset of strip i's pool (sorted tuple of
    global site indices) to its best cost so far and the predecessor subset
    at strip i-1.  `aggregates[i]` is the cheapest value stored for strip i.
    """

    pools: list[tuple[int, ...]]
    overlaps: list[tuple[int, ...]]
    entries: list[dict[tuple[int, ...], tuple[float, tuple[int, ...] | None]]]
    aggregates: list[float]


@dataclass(frozen=True)
class CellSolution:
    site_indices: frozenset[int]
    cost: float
    counters: DpCounters = field(compare=False, default_factory=DpCounters)
    table: StripTable | None = field(compare=False, default=None)


@dataclass(frozen=True)
class CellInfeasible:
    strip_index: int   # 1-based strip where no feasible subset exists
    reason: str


def compatible(u, u_prev, overlap) -> bool:
    """True iff two consecutive strip subsets agree on every shared site."""
    u = frozenset(u)
    u_prev = frozenset(u_prev)
    return all((s in u) == (s in u_prev) for s in overlap)


def enumerate_strip_subsets(pool, strip_targets, sites: list[CandidateSite],
                            cap: int) -> list[frozenset[int]]:
    """All subsets of `pool` of size at most `cap` covering every strip target.

    Canonically ordered (by size, then sorted members).  Exponential in the
    pool size; intended for small pools and for cross-checking the solver,
    which enumerates a restricted equivalent family internally.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    need = frozenset(strip_targets)
    out = []
    pool = sorted(pool)
    for size in range(0, min(cap, len(pool)) + 1):
        for combo in combinations(pool, size):
            cov: set[int] = set()
            for s in combo:
                cov |= sites[s].covered
            if need <= cov:
                out.append(frozenset(combo))
    return out


def auto_cap(m: int, k: int, cell: Cell | None = None) -> int:
    """Default per-strip subset cap.

    An optimal solution needs only a bounded number of sensors per strip:
    a constant per unit area away from stations plus a constant near each
    station.  The constants here are deliberately generous; "verify" mode
    (solving with the cap and the cap plus one) guards against them ever
    binding.
    """
    return 8 * m + 16 * k


def _bit_indices(mask: int) -> list[int]:
    out = []
    b = 0
    while mask:
        if mask & 1:
            out.append(b)
        mask >>= 1
        b += 1
    return out


def solve_cell(cell: Cell, sites: list[CandidateSite], cap: int,
               keep_table: bool = False) -> CellSolution | CellInfeasible:
    """Minimum-cost cover of all targets in one cell, within the subset cap.

    Returns the exact optimum over the candidate sites appearing in the
    cell's strip pools, or a CellInfeasible naming the first strip where no
    qualifying subset exists (cap too tight or a target nobody covers).

    States kept per strip: subsets that cover the strip's own targets and in
    which every member either contributes coverage inside the strip or is
    shared with an adjacent strip's pool and contributes coverage there.
    Restricting to these "useful" subsets preserves at least one optimal
    trajectory and keeps enumeration tractable; the literal all-subsets
    recurrence gives the same costs (see the reference implementation in the
    test suite).
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    strips = cell.strips if cell.strips is not None else strips_of_cell(cell, sites)
    m = len(strips)
    counters = DpCounters()
    if not cell.target_indices:
        return CellSolution(frozenset(), 0.0, counters,
                            StripTable([], [], [], []) if keep_table else None)

    # Local ids: targets and sites are renumbered inside the cell so subsets
    # and covered-sets become machine ints.
    tid = {g: i for i, g in enumerate(cell.target_indices)}
    gids = sorted({g for st in strips for g in st.site_pool})
    lid = {g: i for i, g in enumerate(gids)}
    weight = [sites[g].weight for g in gids]
    cover = []
    for g in gids:
        msk = 0
        for t in sites[g].covered:
            if t in tid:
                msk |= 1 << tid[t]
        cover.append(msk)

    pool_mask = []
    strip_tmask = []
    for st in strips:
        pm = 0
        for g in st.site_pool:
            pm |= 1 << lid[g]
        pool_mask.append(pm)
        tm = 0
        for t in st.target_indices:
            tm |= 1 << tid[t]
        strip_tmask.append(tm)
        counters.pair_bound += max(len(st.site_pool), 1) ** (2 * cap)

    def mask_cover(mask: int) -> int:
        cov = 0
        for b in _bit_indices(mask):
            cov |= cover[b]
        return cov

    tables: list[dict[int, tuple[float, int | None]]] = []
    prev_states: dict[int, tuple[float, int | None]] = {}

    for i in range(m):
        o_mask = pool_mask[i - 1] & pool_mask[i] if i > 0 else 0
        nxt_mask = pool_mask[i] & pool_mask[i + 1] if i + 1 < m else 0
        if o_mask & nxt_mask:
            # Covered targets of one site are at most 2r apart, so pools two
            # strips apart are disjoint up to the coverage tolerance.  A site
            # spanning three pools can only come from targets within a few
            # ulps of exactly 2r; refuse rather than mischarge its weight.
            raise ValueError(
                "degenerate geometry: a site's covered targets span three "
                "strips (target separation within tolerance of 2r)")
        local_mask = pool_mask[i] & ~o_mask

        # Group previous states by their footprint on the shared pool; the
        # best compatible predecessor of any state U is the bucket minimum
        # for key U & o_mask.
        if i == 0:
            buckets: dict[int, tuple[float, int | None]] = {0: (0.0, None)}
        else:
            buckets = {}
            for smask, (scost, _) in prev_states.items():
                key = smask & o_mask
                cur = buckets.get(key)
                if cur is None or (scost, smask) < (cur[0], cur[1]):
                    buckets[key] = (scost, smask)

        # Per-strip-target coverer lists drawn from the non-shared part of
        # the pool (shared sites enter states through the bucket key).
        local_bits = _bit_indices(local_mask)
        coverers: dict[int, list[int]] = {}
        for t in _bit_indices(strip_tmask[i]):
            coverers[t] = [b for b in local_bits if cover[b] >> t & 1]

        ext_bits = _bit_indices(nxt_mask)
        next_tmask = strip_tmask[i + 1] if i + 1 < m else 0

        states: dict[int, tuple[float, int | None]] = {}

        def register(umask: int, ucost: float, prev: int | None) -> None:
            counters.subsets_enumerated += 1
            counters.pairs_checked += 1
            cur = states.get(umask)
            if cur is None or ucost < cur[0]:
                states[umask] = (ucost, prev)

        def extend(umask: int, ucost: float, prev: int | None,
                   ecov: int, budget: int, start: int) -> None:
            # Optionally add shared sites that pre-pay coverage of the next
            # strip; each addition must cover a next-strip target not yet
            # covered by the state's shared part.
            register(umask, ucost, prev)
            if budget <= 0:
                return
            for j in range(start, len(ext_bits)):
                b = ext_bits[j]
                if umask >> b & 1:
                    continue
                gain = (cover[b] & next_tmask) & ~ecov
                if not gain:
                    continue
                extend(umask | (1 << b), ucost + weight[b], prev,
                       ecov | gain, budget - 1, j + 1)

        def complete(kmask: int, kcost: float, prev: int | None) -> None:
            # Cover the strip's remaining targets from the non-shared pool,
            # each added site justified by a first-uncovered target, then
            # hand off to the extension pass.
            seen: set[int] = set()

            def rec(resid: int, cmask: int, ccost: float, budget: int) -> None:
                if resid == 0:
                    umask = kmask | cmask
                    if umask in seen:
                        return
                    seen.add(umask)
                    base_ecov = mask_cover(umask & nxt_mask) & next_tmask
                    extend(umask, kcost + ccost, prev, base_ecov,
                           cap - bin(umask).count("1"), 0)
                    return
                if budget <= 0:
                    return
                t = (resid & -resid).bit_length() - 1
                for b in coverers[t]:
                    rec(resid & ~cover[b], cmask | (1 << b),
                        ccost + weight[b], budget - 1)

            resid0 = strip_tmask[i] & ~mask_cover(kmask)
            rec(resid0, 0, 0.0, cap - bin(kmask).count("1"))

        for key in sorted(buckets):
            bcost, bprev = buckets[key]
            complete(key, bcost, bprev)

        if not states:
            return CellInfeasible(
                strip_index=i + 1,
                reason=f"no feasible subset of strip {i + 1} within cap {cap}")
        tables.append(states)
        prev_states = states

    best_mask, (best_cost, _) = min(
        tables[-1].items(), key=lambda kv: (kv[1][0], kv[0]))

    chosen = 0
    mask: int | None = best_mask
    for i in range(m - 1, -1, -1):
        assert mask is not None
        chosen |= mask
        mask = tables[i][mask][1]

    table = None
    if keep_table:
        def key_of(msk: int | None):
            if msk is None:
                return None
            return tuple(gids[b] for b in _bit_indices(msk))

        entries = [{key_of(msk): (cost, key_of(prev))
                    for msk, (cost, prev) in sorted(tbl.items())}
                   for tbl in tables]
        table = StripTable(
            pools=[st.site_pool for st in strips],
            overlaps=[tuple(sorted(set(strips[i - 1].site_pool)
                                   & set(strips[i].site_pool))) if i else ()
                      for i in range(m)],
            entries=entries,
            aggregates=[min(c for c, _ in tbl.values()) for tbl in tables])

    return CellSolution(frozenset(gids[b] for b in _bit_indices(chosen)),
                        best_cost, counters, table)
