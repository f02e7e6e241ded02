"""Renderer unit tests on synthetic schema-conformant CSVs."""

import math

import numpy as np
import pytest

from braidfig.render import (CSV_HEADER, FigureSpec, SchemaError, load_rows,
                             log_log_fit, render, suppression_coefficient)

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def write_csv(path, rows):
    lines = [",".join(CSV_HEADER)]
    for r in rows:
        lines.append(",".join(str(x) for x in r))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def sweep_row(model="su2_3", k=3, hybrid="false", method="mc", length=10,
              samples=5, mean_error=1e-1, stddev_error=1e-2,
              mean_phase_frac=0.0, mean_elapsed_s=0.5, nu=0.0,
              noise_mode="none", seed=1):
    return [model, k, hybrid, method, length, samples,
            f"{mean_error:.17e}", f"{stddev_error:.17e}",
            f"{mean_phase_frac:.17e}", f"{mean_elapsed_s:.17e}",
            f"{nu:.17e}", noise_mode, seed]


class TestLoadRows:
    def test_reads_schema(self, tmp_path):
        path = tmp_path / "ok.csv"
        write_csv(path, [sweep_row()])
        rows = load_rows(str(path))
        assert rows[0].model == "su2_3"
        assert rows[0].mean_error == pytest.approx(0.1)

    def test_rejects_unknown_columns(self, tmp_path):
        path = tmp_path / "extra.csv"
        path.write_text(",".join(CSV_HEADER + ("bonus",)) + "\n",
                        encoding="utf-8")
        with pytest.raises(SchemaError):
            load_rows(str(path))

    def test_rejects_missing_columns(self, tmp_path):
        path = tmp_path / "short.csv"
        path.write_text("model,k\n", encoding="utf-8")
        with pytest.raises(SchemaError):
            load_rows(str(path))


class TestRenderErrors:
    def test_header_only_is_no_data_rows(self, tmp_path):
        path = tmp_path / "empty.csv"
        write_csv(path, [])
        out = tmp_path / "fig.png"
        with pytest.raises(SchemaError, match="no data rows"):
            render(FigureSpec("convergence", [str(path)], str(out)))
        assert not out.exists()

    def test_unknown_figure_id(self, tmp_path):
        with pytest.raises(SchemaError):
            FigureSpec("sparklines", ["x.csv"], "y.png")

    def test_no_inputs(self):
        with pytest.raises(SchemaError):
            FigureSpec("timing", [], "y.png")


class TestRenderFigures:
    def test_single_row_produces_image(self, tmp_path):
        path = tmp_path / "one.csv"
        write_csv(path, [sweep_row()])
        out = tmp_path / "one.png"
        result = render(FigureSpec("convergence", [str(path)], str(out)))
        assert out.stat().st_size > 0
        assert out.read_bytes()[:8] == PNG_SIGNATURE
        assert result.n_rows == 1 and result.n_series == 1
        assert result.fit is None

    def test_axis_labels_name_the_quantities(self, tmp_path):
        path = tmp_path / "rows.csv"
        write_csv(path, [sweep_row(length=l, mean_error=0.1 / l)
                         for l in (5, 10, 20)])
        out = tmp_path / "fig.png"
        result = render(FigureSpec("convergence", [str(path)], str(out)))
        assert "l" in result.xlabel and "d" in result.ylabel

    def test_timing_labels(self, tmp_path):
        path = tmp_path / "t.csv"
        write_csv(path, [sweep_row(method=m, length=l,
                                   mean_elapsed_s=0.01 * 4 ** l)
                         for m in ("exhaustive", "mc") for l in (5, 6, 7)])
        out = tmp_path / "t.png"
        result = render(FigureSpec("timing", [str(path)], str(out)))
        assert "CPU time" in result.ylabel
        assert result.n_series == 2

    def test_compiler_compare_fits_exhaustive_points(self, tmp_path):
        path = tmp_path / "c.csv"
        rows = [sweep_row(method="exhaustive", length=l,
                          mean_error=0.5 * l ** -0.8) for l in (4, 8, 16)]
        rows += [sweep_row(method="mceska", length=l, mean_error=0.9 * l ** -0.5)
                 for l in (30, 150)]
        write_csv(path, rows)
        out = tmp_path / "c.png"
        result = render(FigureSpec("compiler-compare", [str(path)], str(out)))
        assert result.fit is not None
        slope, _ = result.fit
        assert slope == pytest.approx(-0.8, abs=1e-6)

    def test_phase_frac_parses_coefficient(self, tmp_path):
        path = tmp_path / "p.csv"
        write_csv(path, [sweep_row(model="su2_2_hybrid", hybrid="true",
                                   method=f"mc:c={c}", length=50,
                                   mean_phase_frac=0.2 / (1 + c))
                         for c in (0.0, 5.0, 20.0)])
        out = tmp_path / "p.png"
        result = render(FigureSpec("phase-frac", [str(path)], str(out)))
        assert "N_phi/l" in result.ylabel
        assert "c" in result.xlabel
        assert out.stat().st_size > 0

    def test_noise_only_series_grouping(self, tmp_path):
        path = tmp_path / "n.csv"
        rows = [sweep_row(model="su2_2_hybrid", hybrid="true",
                          noise_mode=mode, nu=nu, length=50,
                          mean_error=nu * scale)
                for mode, scale in (("phase_5pct", 1.5), ("all_letters", 8.0))
                for nu in (1e-5, 1e-4, 1e-3)]
        write_csv(path, rows)
        out = tmp_path / "n.png"
        result = render(FigureSpec("noise-only", [str(path)], str(out)))
        assert result.n_series == 2
        assert "nu" in result.xlabel

    def test_total_error_with_inset(self, tmp_path):
        path = tmp_path / "te.csv"
        rows = []
        for nu in (0.0, 1e-4, 1e-3):
            for length in (10, 50, 250):
                err = 0.5 / length + nu * math.sqrt(length)
                rows.append(sweep_row(model="su2_2_hybrid", hybrid="true",
                                      noise_mode="phase_only", nu=nu,
                                      length=length, mean_error=err))
        write_csv(path, rows)
        out = tmp_path / "te.png"
        result = render(FigureSpec("total-error", [str(path)], str(out)))
        assert result.n_series == 3
        assert out.stat().st_size > 0

    def test_multiple_csv_inputs_combine(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(a, [sweep_row(model="su2_3", length=l, mean_error=0.2 / l)
                      for l in (10, 20)])
        write_csv(b, [sweep_row(model="su2_2_hybrid", hybrid="true",
                                length=l, mean_error=0.15 / l)
                      for l in (10, 20)])
        out = tmp_path / "m.png"
        result = render(FigureSpec("model-compare", [str(a), str(b)], str(out)))
        assert result.n_series == 2

    def test_deterministic_output(self, tmp_path):
        path = tmp_path / "d.csv"
        write_csv(path, [sweep_row(length=l, mean_error=0.2 / l)
                         for l in (5, 10)])
        out1, out2 = tmp_path / "d1.png", tmp_path / "d2.png"
        render(FigureSpec("convergence", [str(path)], str(out1)))
        render(FigureSpec("convergence", [str(path)], str(out2)))
        assert out1.read_bytes() == out2.read_bytes()


class TestHelpers:
    def test_log_log_fit_recovers_power_law(self):
        xs = np.array([4.0, 8.0, 16.0, 32.0])
        ys = 2.5 * xs ** -1.7
        slope, intercept = log_log_fit(xs, ys)
        assert slope == pytest.approx(-1.7, abs=1e-9)
        assert 10 ** intercept == pytest.approx(2.5, rel=1e-9)

    def test_suppression_coefficient(self):
        assert suppression_coefficient("mc:c=12.5") == 12.5
        with pytest.raises(SchemaError):
            suppression_coefficient("mc")
