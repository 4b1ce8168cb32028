import json
from pathlib import Path

import pytest

from parslit import (
    CellLabel,
    ParallelSlitDomain,
    SlitCoordinates,
    glue,
    read_document,
    write_document,
)
from parslit.cli import main

GOLDEN = Path(__file__).parent / "golden"


def saddle_domain():
    label = CellLabel(
        1,
        0,
        [[1, 2, 3, 4, 0], [1, 2, 4, 3, 0], [1, 2, 3, 4, 0]],
        {0: (0, 1, 2, 3, 4)},
    )
    return ParallelSlitDomain(label, SlitCoordinates([0, -1], [0, 1, 2, 3]))


@pytest.fixture
def h1_path():
    return str(GOLDEN / "h1_domain.json")


class TestExitCodes:
    def test_validate_ok(self, h1_path):
        assert main(["validate", h1_path]) == 0

    def test_validate_rejects_bad_document(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{}")
        assert main(["validate", str(bad)]) == 1
        assert "error" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["validate", str(tmp_path / "nope.json")]) == 1

    def test_uniformize_non_generic(self, tmp_path, capsys):
        degenerate = tmp_path / "degenerate.json"
        degenerate.write_text(write_document(glue(saddle_domain())))
        assert main(["uniformize", str(degenerate)]) == 2
        assert "non-generic" in capsys.readouterr().err


class TestPipeline:
    def test_glue_then_uniformize(self, h1_path, tmp_path, capsys):
        assert main(["glue", h1_path]) == 0
        grid_text = capsys.readouterr().out
        grid_file = tmp_path / "grid.json"
        grid_file.write_text(grid_text)
        assert main(["uniformize", str(grid_file)]) == 0
        recovered = read_document(capsys.readouterr().out)
        assert recovered == read_document(Path(h1_path).read_text())

    def test_invariants_report(self, h1_path, capsys):
        assert main(["invariants", h1_path]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["genus_via_cones"] == 0
        assert out["genus_via_euler"] == 0
        assert out["punctures"] == 2
        assert out["generic"] is True
        assert [z["order"] for z in out["zeros"]] == [1]
        assert sorted(r["circumference"] for r in out["residues"]) == ["-1", "1"]

    def test_scramble_deterministic(self, h1_path, capsys):
        assert main(["scramble", h1_path, "--seed", "3"]) == 0
        first = capsys.readouterr().out
        assert main(["scramble", h1_path, "--seed", "3"]) == 0
        assert capsys.readouterr().out == first

    def test_roundtrip(self, h1_path, capsys):
        assert main(["roundtrip", h1_path, "--seed", "7"]) == 0
        assert "roundtrip exact" in capsys.readouterr().out

    def test_census(self, capsys):
        assert main(["census", "--g", "0", "--m", "1", "--method", "brute"]) == 0
        report = read_document(capsys.readouterr().out)
        assert report.count == 1

    def test_render(self, h1_path, tmp_path):
        out = tmp_path / "pic.svg"
        assert main(["render", h1_path, "--out", str(out), "--view=-2:1:-1:2"]) == 0
        text = out.read_text()
        assert text.startswith("<svg ") and text.count('stroke-width="2"') == 2

    def test_render_empty_view(self, h1_path, tmp_path):
        out = tmp_path / "pic.svg"
        assert main(["render", h1_path, "--out", str(out), "--view", "1:1:0:1"]) == 1
