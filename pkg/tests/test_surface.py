import random
from fractions import Fraction

import pytest

from parslit import (
    CellLabel,
    GluedGrid,
    NotClosed,
    ParallelSlitDomain,
    Permutation,
    SlitCoordinates,
    cone_points,
    ends,
    genus_via_cones,
    genus_via_euler,
    glue,
    is_generic,
    period_of_loop,
)
from parslit.census import random_domain
from parslit.xrat import POS_INF, XRat


def h1_domain():
    label = CellLabel(0, 1, [[1, 2, 0], [2, 1, 0]], {0: (0, 2), 1: (1,)})
    return ParallelSlitDomain(label, SlitCoordinates([0], [0, 1]))


class TestGlueWorkedExample:
    def test_grid_shape(self):
        grid = glue(h1_domain())
        assert grid.col_widths == (POS_INF, POS_INF)
        assert grid.strip_heights == (POS_INF, XRat(1), POS_INF)
        # column 0 is the leftmost, carrying sigma_h
        assert [p.word for p in grid.col_perms] == [(2, 1, 0), (1, 2, 0)]
        assert (grid.bottom_open, grid.top_open) == (0, 2)
        assert grid.end_labels == (frozenset({0, 2}), frozenset({1}))
        assert grid.origin_x == 0

    def test_finite_column_widths(self):
        label = CellLabel(1, 0, [[1, 2, 3, 4, 0], [2, 1, 4, 3, 0], [3, 4, 1, 2, 0]],
                          {0: (0, 3, 2, 1, 4)})
        dom = ParallelSlitDomain(label, SlitCoordinates([0, -1], [0, 1, 2, 3]))
        grid = glue(dom)
        assert grid.col_widths[0] is POS_INF and grid.col_widths[-1] is POS_INF
        assert grid.col_widths[1] == XRat(1)
        assert grid.wall_positions == (Fraction(-1), Fraction(0))


class TestConePoints:
    def test_single_simple_zero(self):
        cones = cone_points(glue(h1_domain()))
        assert len(cones.zeros) == 1
        zero = cones.zeros[0]
        assert zero.k == 2 and zero.wall == 0
        assert cones.total_zero_order == 1

    def test_zero_orders_sum_to_h(self):
        rng = random.Random(11)
        for g, m in [(1, 0), (0, 2), (1, 1), (2, 0)]:
            grid = glue(random_domain(g, m, rng))
            assert cone_points(grid).total_zero_order == 2 * g + m


class TestEnds:
    def test_worked_example_residues(self):
        data = ends(glue(h1_domain()))
        dipole, puncture = data[0], data[1]
        assert dipole.pole_order == 2 and dipole.circumference == -1
        assert puncture.pole_order == 1 and puncture.circumference == 1

    def test_residues_balance(self):
        rng = random.Random(23)
        for g, m in [(0, 2), (1, 1), (0, 3), (1, 2)]:
            data = ends(glue(random_domain(g, m, rng)))
            entries = data.entries
            assert [e.pole_order for e in entries] == [2] + [1] * m
            assert all(e.circumference > 0 for e in entries[1:])
            assert sum(e.circumference for e in entries) == 0


class TestGenus:
    def test_worked_example(self):
        grid = glue(h1_domain())
        assert genus_via_cones(grid) == 0
        assert genus_via_euler(grid) == 0

    def test_oracles_agree_on_random_cells(self):
        rng = random.Random(37)
        for g, m in [(0, 1), (1, 0), (0, 2), (1, 1), (0, 3), (2, 0), (1, 2)]:
            for _ in range(5):
                grid = glue(random_domain(g, m, rng))
                assert genus_via_cones(grid) == g
                assert genus_via_euler(grid) == g


class TestPeriods:
    def test_cylinder_loop_is_imaginary(self):
        grid = glue(h1_domain())
        assert period_of_loop(grid, [("up", 0, 1)]) == (0, 1)
        assert period_of_loop(grid, [("down", 0, 1)]) == (0, -1)

    def test_open_loop_rejected(self):
        grid = glue(h1_domain())
        with pytest.raises(NotClosed):
            period_of_loop(grid, [("right", 0, 1)])

    def test_left_cylinder_periods_match_residues(self):
        rng = random.Random(41)
        for g, m in [(1, 1), (0, 3)]:
            grid = glue(random_domain(g, m, rng))
            for cycle in grid.col_perms[0].cycles():
                if grid.top_open in cycle or grid.bottom_open in cycle:
                    continue
                loop = [("up", 0, s) for s in cycle]
                re, im = period_of_loop(grid, loop)
                assert re == 0
                assert im == sum(grid.strip_heights[s].finite for s in cycle)


class TestGenericity:
    def test_worked_example_is_generic(self):
        report = is_generic(glue(h1_domain()))
        assert report and report.diagnosis is None

    def test_equal_adjacent_permutations_are_fake_walls(self):
        # a wall where the gluing does not change carries no zero
        base = glue(h1_domain())
        from parslit import insert_fake_wall

        widened = insert_fake_wall(base, 1, Fraction(1, 3))
        assert widened.num_columns == base.num_columns + 1
        assert is_generic(widened)

    def test_double_zero_is_not_generic(self):
        # sigma_1 moves four strips at once: a single k=3 cone point
        label_sigmas = [
            Permutation([1, 2, 3, 4, 0]),
            Permutation([2, 3, 4, 1, 0]),
        ]
        grid = GluedGrid(
            col_widths=[POS_INF, POS_INF],
            col_perms=[label_sigmas[1], label_sigmas[0]],
            strip_heights=[POS_INF, XRat(1), XRat(1), XRat(1), POS_INF],
            bottom_open=0,
            top_open=4,
            end_labels=[frozenset({0, 2, 4}), frozenset({1, 3})],
            origin_x=0,
        )
        report = is_generic(grid)
        assert not report and report.diagnosis == "NonSimpleOrColocated"
