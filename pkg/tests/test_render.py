import random

import pytest

from parslit import CellLabel, ParallelSlitDomain, SlitCoordinates, glue
from parslit.census import random_domain
from parslit.render import EmptyView, View, parse_view, render_svg


def h1_domain():
    label = CellLabel(0, 1, [[1, 2, 0], [2, 1, 0]], {0: (0, 2), 1: (1,)})
    return ParallelSlitDomain(label, SlitCoordinates([0], [0, 1]))


class TestView:
    def test_parse(self):
        view = parse_view("-2:1:-1:2")
        assert (view.xmin, view.xmax, view.ymin, view.ymax) == (-2, 1, -1, 2)

    def test_rational_entries(self):
        view = parse_view("-1/2:1/2:0:3/4")
        assert view.xmax.denominator == 2

    def test_empty(self):
        with pytest.raises(EmptyView):
            View(0, 0, 0, 1)
        with pytest.raises(EmptyView):
            parse_view("0:1:2:2")


class TestRenderDomain:
    def test_worked_example_picture(self):
        svg = render_svg(h1_domain(), parse_view("-2:1:-1:2"))
        assert svg.startswith("<svg ")
        # two slit segments at y = 0 and y = 1, tips at x = 0
        assert svg.count('stroke-width="2"') == 2
        assert "a_1 = 0" in svg

    def test_byte_determinism(self):
        dom = random_domain(1, 1, random.Random(12))
        assert render_svg(dom) == render_svg(dom)

    def test_slit_and_tip_counts(self):
        dom = random_domain(2, 0, random.Random(9))
        svg = render_svg(dom)
        assert svg.count('stroke-width="2"') == 8  # 2h slits
        assert svg.count("<text") == 4  # h tip annotations


class TestRenderGrid:
    def test_grid_overlay_matches_domain_geometry(self):
        dom = h1_domain()
        view = parse_view("-2:1:-1:2")
        grid_svg = render_svg(glue(dom), view)
        assert grid_svg == render_svg(glue(dom), view)
        assert 'stroke="crimson"' in grid_svg
        assert grid_svg.count('stroke-width="2"') == 2

    def test_unsupported_object(self):
        with pytest.raises(TypeError):
            render_svg(h1_domain().label)
