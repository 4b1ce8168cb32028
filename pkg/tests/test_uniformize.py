import random
from fractions import Fraction

import pytest

from parslit import (
    CellLabel,
    GluedGrid,
    NonGeneric,
    NotStrict,
    ParallelSlitDomain,
    Permutation,
    SlitCoordinates,
    develop,
    glue,
    insert_fake_wall,
    merge_fake_walls,
    normalize,
    periods,
    relabel_strips,
    scramble,
    split_strip,
    trace_critical_graph,
    translate,
    uniformize,
)
from parslit.census import random_domain
from parslit.xrat import POS_INF


def h1_domain():
    label = CellLabel(0, 1, [[1, 2, 0], [2, 1, 0]], {0: (0, 2), 1: (1,)})
    return ParallelSlitDomain(label, SlitCoordinates([0], [0, 1]))


def saddle_domain():
    # sigma_1 and sigma_2 move overlapping strip positions, so the
    # leftward separatrix of the right zero runs into the left zero
    label = CellLabel(
        1,
        0,
        [[1, 2, 3, 4, 0], [1, 2, 4, 3, 0], [1, 2, 3, 4, 0]],
        {0: (0, 1, 2, 3, 4)},
    )
    return ParallelSlitDomain(label, SlitCoordinates([0, -1], [0, 1, 2, 3]))


class TestCriticalGraph:
    def test_two_rays_per_zero(self):
        grid = glue(h1_domain())
        graph = trace_critical_graph(grid)
        assert len(graph.zeros) == 1
        assert len(graph.rays) == 2

    def test_saddle_connection_detected(self):
        grid = glue(saddle_domain())
        with pytest.raises(NonGeneric) as exc:
            uniformize(grid)
        assert exc.value.diagnosis == "SaddleConnection"


class TestPeriodsWorkedExample:
    def test_z11_is_i(self):
        grid = glue(h1_domain())
        dev = develop(grid, trace_critical_graph(grid))
        matrix = periods(dev)
        assert matrix.h == 1
        assert matrix[1, 1] == (0, 1)

    def test_diagonal_imaginary_offdiagonal_antisymmetric(self):
        rng = random.Random(7)
        for g, m in [(1, 0), (1, 1), (2, 0)]:
            grid = glue(random_domain(g, m, rng))
            matrix = periods(develop(grid, trace_critical_graph(grid)))
            h = matrix.h
            for k in range(1, h + 1):
                re, im = matrix[k, k]
                assert re == 0 and im != 0
                for l in range(1, h + 1):
                    if l == k:
                        continue
                    rkl, ikl = matrix[k, l]
                    rlk, ilk = matrix[l, k]
                    assert rkl + rlk == 0 and ikl + ilk == 0


class TestUniformizeRoundTrip:
    def test_worked_example(self):
        dom = h1_domain()
        assert uniformize(glue(dom)) == dom

    def test_random_cells_exact(self):
        rng = random.Random(2026)
        for g, m in [(0, 1), (1, 0), (0, 2), (1, 1), (0, 3), (2, 0), (1, 2), (0, 4)]:
            for _ in range(5):
                dom = random_domain(g, m, rng)
                assert uniformize(glue(dom)) == dom


class TestPresentationMoves:
    def test_fake_wall_merges_back(self):
        grid = glue(h1_domain())
        widened = insert_fake_wall(grid, 0, Fraction(1, 2))
        assert widened.num_columns == 3
        assert merge_fake_walls(widened) == grid

    def test_each_move_preserves_normal_form(self):
        dom = h1_domain()
        grid = glue(dom)
        assert uniformize(insert_fake_wall(grid, 1, Fraction(2, 5))) == dom
        assert uniformize(split_strip(grid, 1, Fraction(1, 3))) == dom
        assert uniformize(split_strip(grid, 0, Fraction(1, 2))) == dom
        assert uniformize(relabel_strips(grid, Permutation([2, 0, 1]))) == dom
        assert uniformize(translate(grid, Fraction(7, 3))) == dom

    def test_scramble_is_deterministic(self):
        grid = glue(h1_domain())
        assert scramble(grid, 99) == scramble(grid, 99)

    def test_scrambled_round_trip(self):
        rng = random.Random(515)
        for g, m in [(0, 1), (1, 0), (1, 1), (2, 0)]:
            dom = random_domain(g, m, rng)
            for seed in range(5):
                assert uniformize(scramble(glue(dom), seed)) == dom


class TestDegenerateInputs:
    def test_coincident_slit_levels_rejected(self):
        with pytest.raises(NotStrict):
            SlitCoordinates([0], [0, 0])
        with pytest.raises(NotStrict):
            normalize([0, -1], [0, 1, 1, 2])

    def test_all_walls_fake(self):
        base = glue(h1_domain())
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

    def test_saddle_connection_never_returns_output(self):
        grid = glue(saddle_domain())
        with pytest.raises(NonGeneric):
            uniformize(grid)
