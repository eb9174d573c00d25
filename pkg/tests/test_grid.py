import math
import random

import pytest

from sinkcover.geometry import Point
from sinkcover.grid import bounding_box, cells_for_shift, strips_of_cell
from sinkcover.sites import Instance, generate_candidate_sites


def _uniform_instance(seed, n=8, k=2, extent=10.0, r=1.0):
    rng = random.Random(seed)
    return Instance.from_coords(
        [(rng.uniform(0, extent), rng.uniform(0, extent)) for _ in range(n)],
        [(rng.uniform(0, extent), rng.uniform(0, extent)) for _ in range(k)], r)


def test_bounding_box_translation():
    inst = Instance.from_coords([(0, 0), (10, 10)], [(5, 5)], 1.0)
    g = bounding_box(inst, 2)
    # Anchor one cell below the minimum coordinate: target min maps to 2mr.
    assert g.origin.x == pytest.approx(-4.0, abs=1e-6)
    assert g.origin.y == pytest.approx(-4.0, abs=1e-6)
    assert g.extent >= 14.0


def test_bounding_box_single_target_single_cell():
    inst = Instance.from_coords([(3, 7)], [(0, 0)], 1.0)
    g = bounding_box(inst, 3)
    assert len(cells_for_shift(g, 0)) == 1


def test_bounding_box_identity_when_already_offset():
    # Targets whose minimum coordinate is already at 2mr: the conceptual
    # translation is the identity, so the anchor sits at the coordinate
    # origin (up to the anti-wobble pad).
    inst = Instance.from_coords([(4.0, 4.0), (6.0, 5.0)], [(0, 0)], 1.0)
    g = bounding_box(inst, 2)
    assert g.origin.x == pytest.approx(0.0, abs=1e-6)
    assert g.origin.y == pytest.approx(0.0, abs=1e-6)


def test_bounding_box_empty_errors():
    inst = Instance.from_coords([], [(0, 0)], 1.0)
    with pytest.raises(ValueError, match="nothing to cover"):
        bounding_box(inst, 2)


def test_shift_moves_boundaries_by_2fr():
    inst = Instance.from_coords([(0, 0), (9, 9)], [(5, 5)], 1.0)
    g = bounding_box(inst, 2)
    side = g.cell_side
    for f in range(2):
        for c in cells_for_shift(g, f):
            # Boundaries of round f sit at origin + 2fr plus cell multiples.
            rel = (c.lower_left.x - g.origin.x - 2.0 * f * g.r) % side
            assert min(rel, side - rel) == pytest.approx(0.0, abs=1e-9)


def test_cells_partition_targets_every_round():
    for seed in range(10):
        inst = _uniform_instance(seed)
        for m in (1, 2, 4):
            g = bounding_box(inst, m)
            for f in range(m):
                cells = cells_for_shift(g, f)
                seen = []
                for c in cells:
                    seen.extend(c.target_indices)
                assert sorted(seen) == list(range(inst.n))


def test_shift_round_bounds_checked():
    inst = _uniform_instance(0)
    g = bounding_box(inst, 2)
    with pytest.raises(ValueError):
        cells_for_shift(g, 2)
    with pytest.raises(ValueError):
        cells_for_shift(g, -1)


def test_shift_boundary_positions_cycle():
    # Over rounds f = 0..m-1 the vertical boundary offsets modulo the cell
    # side hit every multiple of 2r exactly once.
    inst = _uniform_instance(1)
    m, r = 4, 1.0
    g = bounding_box(inst, m)
    side = g.cell_side
    offsets = set()
    for f in range(m):
        cell = cells_for_shift(g, f)[0]
        offsets.add(round((cell.lower_left.x - g.origin.x) % side, 9))
    assert offsets == {round(2 * r * f, 9) for f in range(m)}


def test_strip_count_and_width():
    inst = _uniform_instance(2, n=6)
    sites = generate_candidate_sites(inst)
    g = bounding_box(inst, 2)
    for cell in cells_for_shift(g, 0):
        strips = strips_of_cell(cell, sites)
        assert len(strips) == 2
        for s in strips:
            lo, hi = s.x_range
            assert hi - lo == pytest.approx(2.0 * inst.r)
        assert cell.strips == strips


def test_strips_partition_cell_targets():
    for seed in range(8):
        inst = _uniform_instance(seed, n=10)
        sites = generate_candidate_sites(inst)
        g = bounding_box(inst, 3)
        for f in range(3):
            for cell in cells_for_shift(g, f):
                strips = strips_of_cell(cell, sites)
                got = sorted(t for s in strips for t in s.target_indices)
                assert got == sorted(cell.target_indices)


def test_site_spanning_two_strips_in_both_pools():
    # The second and third targets straddle the strip boundary at
    # min_x + 2r; their shared coverers must appear in both pools.
    inst = Instance.from_coords([(0.0, 0.0), (1.9, 0.0), (2.1, 0.0)], [(0, 0)], 1.0)
    sites = generate_candidate_sites(inst)
    g = bounding_box(inst, 2)
    (cell,) = cells_for_shift(g, 0)
    s1, s2 = strips_of_cell(cell, sites)
    assert 1 in s1.target_indices and 2 in s2.target_indices
    both = [i for i, s in enumerate(sites) if s.covered >= {1, 2}]
    assert both
    for i in both:
        assert i in s1.site_pool and i in s2.site_pool


def test_no_pool_shared_across_nonadjacent_strips():
    for seed in range(6):
        inst = _uniform_instance(seed, n=10, extent=6.0)
        sites = generate_candidate_sites(inst)
        g = bounding_box(inst, 4)
        for cell in cells_for_shift(g, 0):
            strips = strips_of_cell(cell, sites)
            for i in range(len(strips)):
                for j in range(i + 2, len(strips)):
                    assert not set(strips[i].site_pool) & set(strips[j].site_pool)


def test_strip_independence_randomized():
    # No radius-r disk covers targets two or more width-2r strips apart:
    # lighter version of the acceptance sweep.
    rng = random.Random(13)
    r = 1.0
    for _ in range(10_000):
        cx, cy = rng.uniform(-50, 50), rng.uniform(-50, 50)
        ts = []
        for _ in range(2):
            ang = rng.uniform(0, 2 * math.pi)
            rad = r * math.sqrt(rng.uniform(0, 1))
            ts.append((cx + rad * math.cos(ang), cy + rad * math.sin(ang)))
        anchor = rng.uniform(-10, 0)
        strip_of = [math.floor((t[0] - anchor) / (2 * r)) for t in ts]
        assert abs(strip_of[0] - strip_of[1]) <= 1
