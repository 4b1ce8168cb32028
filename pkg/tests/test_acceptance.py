"""Acceptance suite: one printed pass/fail line per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines live.
Every check is bit-exact; there are no tolerances anywhere.
"""

import random

import pytest

from parslit import (
    CellLabel,
    GluedGrid,
    NonGeneric,
    NotStrict,
    ParallelSlitDomain,
    SlitCoordinates,
    cell_dimension,
    cone_points,
    develop,
    ends,
    enumerate_cells,
    genus_via_cones,
    genus_via_euler,
    glue,
    normalize,
    period_of_loop,
    periods,
    read_document,
    render_svg,
    scramble,
    trace_critical_graph,
    uniformize,
    write_document,
)
from parslit.census import random_domain, sample_coordinates
from parslit.uniformize import merge_fake_walls
from parslit.xrat import POS_INF

from pathlib import Path

GOLDEN = Path(__file__).parent / "golden"

TYPES_BY_H = {
    1: [(0, 1)],
    2: [(1, 0), (0, 2)],
    3: [(1, 1), (0, 3)],
    4: [(2, 0), (1, 2), (0, 4)],
}

CENSUS_CASES = [
    (0, 1, "brute"),
    (1, 0, "brute"),
    (0, 2, "brute"),
    (1, 1, "stepped"),
    (0, 3, "stepped"),
    (2, 0, "stepped"),
    (1, 2, "stepped"),
    (0, 4, "stepped"),
]


def _ok(number, text):
    print("PASS criterion %d: %s" % (number, text))


@pytest.fixture(scope="module")
def census_reports():
    return {(g, m): enumerate_cells(g, m, method) for g, m, method in CENSUS_CASES}


@pytest.fixture(scope="module")
def census_grids(census_reports):
    """One glued grid per distinct permutation sequence in the census."""
    grids = []
    for (g, m), report in census_reports.items():
        seen = set()
        for label in report.labels:
            if label.sigmas in seen:
                continue
            seen.add(label.sigmas)
            coords = sample_coordinates(label.h)
            grids.append((g, m, glue(ParallelSlitDomain(label, coords))))
    return grids


def test_criterion_01_dimension():
    for g in range(0, 4):
        for m in range(0, 7):
            h = 2 * g + m
            if not 1 <= h <= 6:
                continue
            assert cell_dimension(g, m) == 3 * h - 2
            assert cell_dimension(g, m) == (6 * g - 6 + 5) + (3 * m - 1)
    _ok(1, "cell dimension is 3h-2 = 6g-6+5+3m-1 for all types with h <= 6")


def test_criterion_02_surface_type(census_grids):
    for g, m, grid in census_grids:
        assert genus_via_cones(grid) == g
        assert genus_via_euler(grid) == g
        assert grid.m + 1 == m + 1
        assert len(ends(grid).entries) == m + 1
    _ok(
        2,
        "all %d enumerated cells glue to genus g with m+1 punctures, "
        "both genus computations agreeing" % len(census_grids),
    )


def test_criterion_03_zero_count(census_grids):
    for g, m, grid in census_grids:
        h = 2 * g + m
        cones = cone_points(grid)
        assert cones.total_zero_order == h
        assert len(cones.zeros) == h
        assert all(z.k == 2 for z in cones.zeros)
        assert len({z.wall for z in cones.zeros}) == h
    _ok(3, "every enumerated cell carries exactly h simple zeros, one per wall")


def test_criterion_04_residues(census_grids):
    rng = random.Random(404)
    grids = [grid for _, _, grid in census_grids]
    grids += [glue(random_domain(g, m, rng)) for h in TYPES_BY_H for g, m in TYPES_BY_H[h]]
    for grid in grids:
        entries = ends(grid).entries
        assert [e.pole_order for e in entries] == [2] + [1] * grid.m
        assert all(e.circumference > 0 for e in entries[1:])
        assert sum(e.circumference for e in entries) == 0
    _ok(4, "on %d grids: P-residues positive, residue sum 0, pole orders (1,...,1,2)" % len(grids))


def test_criterion_05_periods():
    rng = random.Random(505)
    checked_loops = checked_diag = 0
    for h, types in TYPES_BY_H.items():
        for g, m in types:
            grid = glue(random_domain(g, m, rng))
            for cycle in grid.col_perms[0].cycles():
                if grid.top_open in cycle or grid.bottom_open in cycle:
                    continue
                re, im = period_of_loop(grid, [("up", 0, s) for s in cycle])
                assert re == 0 and im != 0
                checked_loops += 1
            matrix = periods(develop(grid, trace_critical_graph(grid)))
            for k in range(1, h + 1):
                re, im = matrix[k, k]
                assert re == 0 and im != 0
                checked_diag += 1
    _ok(
        5,
        "%d cylinder loops and %d diagonal periods all purely imaginary"
        % (checked_loops, checked_diag),
    )


def test_criterion_06_round_trip():
    rng = random.Random(606)
    total = 0
    for h, types in TYPES_BY_H.items():
        for i in range(100):
            g, m = types[i % len(types)]
            dom = random_domain(g, m, rng)
            assert uniformize(glue(dom)) == dom
            total += 1
    _ok(6, "normal form recovered exactly on %d random cells (100 per h in 1..4)" % total)


def test_criterion_07_presentation_invariance():
    rng = random.Random(707)
    total = 0
    for h, types in TYPES_BY_H.items():
        for i in range(100):
            g, m = types[i % len(types)]
            dom = random_domain(g, m, rng)
            assert uniformize(scramble(glue(dom), rng.randrange(10**9))) == dom
            total += 1
    _ok(
        7,
        "normal form invariant under %d random scrambles "
        "(fake walls, splits, relabelings, translations)" % total,
    )


def test_criterion_08_non_genericity():
    # coincident slit levels
    with pytest.raises(NotStrict):
        SlitCoordinates([0, -1], [0, 1, 1, 2])
    with pytest.raises(NotStrict):
        normalize([0, 0], [0, 1, 2, 3])
    # horizontal saddle connection
    label = CellLabel(
        1, 0,
        [[1, 2, 3, 4, 0], [1, 2, 4, 3, 0], [1, 2, 3, 4, 0]],
        {0: (0, 1, 2, 3, 4)},
    )
    saddle = glue(ParallelSlitDomain(label, SlitCoordinates([0, -1], [0, 1, 2, 3])))
    with pytest.raises(NonGeneric) as exc:
        uniformize(saddle)
    assert exc.value.diagnosis == "SaddleConnection"
    # equal adjacent permutations: the wall is fake and disappears
    base = glue(
        ParallelSlitDomain(
            CellLabel(0, 1, [[1, 2, 0], [2, 1, 0]], {0: (0, 2), 1: (1,)}),
            SlitCoordinates([0], [0, 1]),
        )
    )
    flat = GluedGrid(
        [POS_INF, POS_INF],
        [base.col_perms[0], base.col_perms[0]],
        base.strip_heights,
        base.bottom_open,
        base.top_open,
        base.end_labels,
        0,
    )
    with pytest.raises(NonGeneric) as exc:
        uniformize(flat)
    assert exc.value.diagnosis == "NoWall"
    _ok(8, "degenerate inputs raise the designated errors, never wrong output")


def test_criterion_09_census(census_reports):
    for g, m in [(0, 1), (1, 0), (0, 2)]:
        brute = census_reports[(g, m)]
        stepped = enumerate_cells(g, m, "stepped")
        assert set(brute.labels) == set(stepped.labels)
    assert census_reports[(0, 1)].count == 1
    _ok(9, "brute and stepped enumerations coincide for h <= 2; (0,1) has exactly 1 cell")


def test_criterion_10_serialization_rendering():
    for name in ("h1_cell.json", "h1_domain.json", "h1_grid.json", "h1_periods.json"):
        text = (GOLDEN / name).read_text()
        assert write_document(read_document(text)) == text
    dom = read_document((GOLDEN / "h1_domain.json").read_text())
    grid = read_document((GOLDEN / "h1_grid.json").read_text())
    assert write_document(glue(dom)) == write_document(grid)
    assert render_svg(dom) == render_svg(dom)
    assert render_svg(grid) == render_svg(grid)
    rng = random.Random(1010)
    extra = random_domain(1, 1, rng)
    assert write_document(read_document(write_document(extra))) == write_document(extra)
    _ok(10, "documents round-trip byte-exactly and SVG output is byte-deterministic")
