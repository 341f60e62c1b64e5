import subprocess
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pytest

from plotkit.cli import main_contours, main_spirals
from plotkit.tables import TableError, read_table


def run_primary(*argv):
    proc = subprocess.run([sys.executable, "-m", "ncosc", *argv],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def fig1_exports(tmp_path_factory):
    out = tmp_path_factory.mktemp("fig1_exports")
    run_primary("figure1", "--samples", "256", "--out", str(out))
    return out


@pytest.fixture(scope="session")
def fig2_exports(tmp_path_factory):
    out = tmp_path_factory.mktemp("fig2_exports")
    run_primary("figure2", "--grid", "64", "--out", str(out))
    return out


class TestSpirals:
    def test_renders_closed_orbits(self, fig1_exports, tmp_path):
        table = fig1_exports / "fig1_eps0_start1010.csv"
        out = tmp_path / "orbits.png"
        assert main_spirals([str(table), "--out", str(out)]) == 0
        assert out.exists() and out.stat().st_size > 0

    def test_renders_outward_spiral_plane(self, fig1_exports, tmp_path):
        table = fig1_exports / "fig1_eps0.1_start1010.csv"
        # the exported data itself is the source of truth: radius grows
        _, columns, rows = read_table(table)
        radius = np.hypot(rows[:, columns.index("Q1")], rows[:, columns.index("Pi2")])
        assert radius[-1] > radius[0]
        out = tmp_path / "spiral.png"
        assert main_spirals([str(table), "--planes", "Q1-Pi2", "--out", str(out)]) == 0
        assert out.exists()

    def test_multi_table_grid(self, fig1_exports, tmp_path):
        tables = sorted(str(p) for p in fig1_exports.glob("fig1_*_start1010.csv"))
        assert len(tables) == 4
        out = tmp_path / "grid.png"
        assert main_spirals([*tables, "--out", str(out)]) == 0
        assert out.exists()

    def test_rerun_byte_identical(self, fig1_exports, tmp_path):
        table = fig1_exports / "fig1_eps0.01_start1110.csv"
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        assert main_spirals([str(table), "--out", str(a)]) == 0
        assert main_spirals([str(table), "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_empty_table_no_image(self, tmp_path, capsys):
        bad = tmp_path / "empty.csv"
        bad.write_text("# subcommand: figure1\ntau,Q1,Q2,Pi1,Pi2\n", encoding="utf-8")
        out = tmp_path / "never.png"
        assert main_spirals([str(bad), "--out", str(out)]) == 1
        assert "no data rows" in capsys.readouterr().err
        assert not out.exists()

    def test_missing_column_named(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("tau,Q1,Q2,Pi1\n0,1,1,0\n", encoding="utf-8")
        assert main_spirals([str(bad), "--out", str(tmp_path / "x.png")]) == 1
        assert "'Pi2'" in capsys.readouterr().err

    def test_unknown_plane_rejected(self, fig1_exports, tmp_path, capsys):
        table = fig1_exports / "fig1_eps0_start1010.csv"
        assert main_spirals([str(table), "--planes", "Q1-Q2",
                             "--out", str(tmp_path / "x.png")]) == 1


class TestContours:
    def test_combined_and_split_panels(self, fig2_exports, tmp_path):
        out = tmp_path / "sequence.png"
        assert main_contours([str(fig2_exports), "--out", str(out), "--split"]) == 0
        assert out.exists()
        for k in range(7):
            assert (tmp_path / f"sequence_k{k}.png").exists()

    def test_k0_panel_mirror_symmetric(self, fig2_exports, tmp_path):
        assert main_contours([str(fig2_exports), "--out", str(tmp_path / "seq.png"),
                              "--split"]) == 0
        img = plt.imread(tmp_path / "seq_k0.png")
        mirror_diff = float(np.mean(np.abs(img - img[:, ::-1])))
        assert mirror_diff < 0.01  # pixel scale is [0, 1]

    def test_k6_aspect_ratio_from_metrics(self, fig2_exports):
        _, columns, rows = read_table(fig2_exports / "fig2_metrics.csv")
        var_q = rows[6, columns.index("var_Q1")]
        var_p = rows[6, columns.index("var_Pi1")]
        assert np.sqrt(var_q / var_p) == pytest.approx(np.exp(3.0 * np.pi / 8.0), rel=1e-8)

    def test_rerun_byte_identical(self, fig2_exports, tmp_path):
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        assert main_contours([str(fig2_exports), "--out", str(a)]) == 0
        assert main_contours([str(fig2_exports), "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_missing_snapshot_rejected(self, fig2_exports, tmp_path, capsys):
        partial = tmp_path / "partial"
        partial.mkdir()
        for k in range(6):  # drop k=6
            src = fig2_exports / f"fig2_grid_k{k}.csv"
            (partial / src.name).write_bytes(src.read_bytes())
        assert main_contours([str(partial), "--out", str(tmp_path / "x.png")]) == 1
        assert "k=[6]" in capsys.readouterr().err

    def test_empty_dir_rejected(self, tmp_path, capsys):
        empty = tmp_path / "empty"
        empty.mkdir()
        assert main_contours([str(empty), "--out", str(tmp_path / "x.png")]) == 1


def test_json_inputs_supported(tmp_path):
    out = tmp_path / "exports"
    run_primary("figure2", "--grid", "64", "--format", "json", "--out", str(out))
    image = tmp_path / "fig2.png"
    assert main_contours([str(out), "--out", str(image)]) == 0
    assert image.exists()
