"""Command-line interface: schemas, exit codes, determinism, manifests."""

import json
import math

import numpy as np
import pytest

from braidc.cli import main, parse_phase, parse_target
from braidc.experiments import read_csv
from braidc.gates import RandomSource, haar_random


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParsers:
    def test_phase_literal(self):
        assert parse_phase("sqrt2pi") == pytest.approx(math.sqrt(2) * math.pi)
        assert parse_phase("1.25") == 1.25
        assert parse_phase(None) is None

    def test_target_haar(self):
        t = parse_target("haar:123", 0)
        assert np.array_equal(t, haar_random(RandomSource(123)))

    def test_target_inline_json(self):
        t = parse_target("[[[0,0],[1,0]],[[1,0],[0,0]]]", 0)
        assert np.array_equal(t, np.array([[0, 1], [1, 0]], dtype=complex))

    def test_target_file(self, tmp_path):
        path = tmp_path / "gate.json"
        path.write_text("[[[1,0],[0,0]],[[0,0],[1,0]]]", encoding="utf-8")
        assert np.array_equal(parse_target(str(path), 0), np.eye(2))

    def test_target_word_form(self):
        from braidc.braid import build_generator_set, evaluate, parse_word
        gens = build_generator_set(3)
        t = parse_target("word:s1 s2i s1", 0, gens)
        assert np.array_equal(t, evaluate(parse_word("s1 s2i s1", gens), gens))


class TestGatesCommand:
    def test_pure_model_json(self, capsys):
        code, out, _ = run(capsys, "gates", "--k", "3")
        assert code == 0
        doc = json.loads(out)
        assert doc["k"] == 3
        assert doc["encoding"] == {"anyon": 2, "channels": [0, 2], "total": 2}
        assert len(doc["generators"]) == 4
        names = [g["name"] for g in doc["generators"]]
        assert names == ["s1", "s1i", "s2", "s2i"]
        for g in doc["generators"]:
            assert g["topological"] is True
            m = np.array([[complex(re, im) for re, im in row]
                          for row in g["matrix"]])
            assert np.abs(m @ m.conj().T - np.eye(2)).max() < 1e-12

    def test_hybrid_model_has_six_letters(self, capsys):
        code, out, _ = run(capsys, "gates", "--k", "2", "--phase", "sqrt2pi")
        doc = json.loads(out)
        assert len(doc["generators"]) == 6
        topo = {g["name"]: g["topological"] for g in doc["generators"]}
        assert topo["ph"] is False and topo["phi"] is False

    def test_matrices_have_full_precision(self, capsys):
        _, out, _ = run(capsys, "gates", "--k", "3")
        doc = json.loads(out)
        entry = doc["generators"][0]["matrix"][0][0][0]
        assert abs(entry - math.cos(4 * math.pi / 5)) < 1e-15

    def test_unsupported_level_exit_2(self, capsys):
        code, _, err = run(capsys, "gates", "--k", "7")
        assert code == 2
        assert "unsupported level" in err

    def test_out_file_and_manifest(self, tmp_path, capsys):
        out_path = tmp_path / "gates.json"
        code, _, _ = run(capsys, "gates", "--k", "3", "--out", str(out_path))
        assert code == 0
        assert json.loads(out_path.read_text())["k"] == 3
        manifest = json.loads((tmp_path / "gates.json.manifest.json").read_text())
        assert manifest["tool"] == "braidc"
        assert manifest["config"]["k"] == 3


class TestFusionCommand:
    def test_k3_table_text(self, capsys):
        code, out, _ = run(capsys, "fusion", "--k", "3")
        assert code == 0
        assert "Fusion table for k=3" in out
        assert "0 (+) 1" in out

    def test_k2_has_half_labels(self, capsys):
        _, out, _ = run(capsys, "fusion", "--k", "2")
        assert "1/2" in out


class TestCompileCommand:
    def test_compile_own_generator(self, capsys):
        # direct-convention sigma1: diag(e^{-4i pi/5}, e^{3i pi/5})
        target = [[[-np.cos(np.pi / 5), -np.sin(np.pi / 5)], [0, 0]],
                  [[0, 0], [-np.cos(2 * np.pi / 5), np.sin(2 * np.pi / 5)]]]
        code, out, _ = run(capsys, "compile", "--k", "3",
                           "--target", json.dumps(target),
                           "--method", "exhaustive", "--length", "1",
                           "--seed", "0")
        doc = json.loads(out)
        assert code == 0
        assert doc["error"] < 1e-12
        assert doc["word"] == ["s1"]

    def test_deterministic_except_elapsed(self, capsys):
        args = ("compile", "--k", "3", "--target", "haar:5", "--method", "mc",
                "--length", "6", "--sweeps", "40", "--seed", "21")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        d1, d2 = json.loads(out1), json.loads(out2)
        d1.pop("elapsed_s"), d2.pop("elapsed_s")
        assert d1 == d2

    def test_mceska_length_law(self, capsys, tmp_path):
        out_path = tmp_path / "res.json"
        code, _, _ = run(capsys, "compile", "--k", "3", "--target", "haar:7",
                         "--method", "mceska", "--length", "250", "--depth",
                         "2", "--sweeps", "5", "--seed", "3",
                         "--out", str(out_path))
        assert code == 0
        doc = json.loads(out_path.read_text())
        assert len(doc["word"]) == 250
        assert doc["base_searches"] == 9

    def test_missing_seed_prints_one(self, capsys):
        code, out, err = run(capsys, "compile", "--k", "3", "--target",
                             "haar:5", "--method", "mc", "--length", "4",
                             "--sweeps", "5")
        assert code == 0
        assert "seed:" in err

    def test_budget_error_exit_1(self, capsys):
        code, _, err = run(capsys, "compile", "--k", "3", "--target", "haar:5",
                           "--method", "exhaustive", "--length", "32",
                           "--seed", "0")
        assert code == 1
        assert "budget" in err.lower()

    def test_bad_target_exit_2(self, capsys):
        code, _, _ = run(capsys, "compile", "--k", "3", "--target", "zzz",
                         "--method", "mc", "--length", "4", "--seed", "0")
        assert code == 2


class TestSweepCommands:
    def test_sweep_single_row_matches_compile(self, capsys, tmp_path):
        csv_path = tmp_path / "sweep.csv"
        code, _, _ = run(capsys, "sweep", "--k", "3", "--lengths", "5",
                         "--samples", "1", "--method", "mc", "--sweeps", "25",
                         "--seed", "9", "--csv", str(csv_path))
        assert code == 0
        rows = read_csv(str(csv_path))
        assert len(rows) == 1
        assert rows[0].samples == 1
        assert rows[0].length == 5
        # manifest written alongside
        assert (tmp_path / "sweep.csv.manifest.json").exists()

    def test_invalid_csv_path_exit_2_no_partial_file(self, capsys, tmp_path):
        bad = tmp_path / "missing-dir" / "out.csv"
        code, _, _ = run(capsys, "sweep", "--k", "3", "--lengths", "4",
                         "--samples", "1", "--sweeps", "5", "--seed", "1",
                         "--csv", str(bad))
        assert code == 2
        assert not bad.exists()
        assert not (tmp_path / "missing-dir").exists()

    def test_noise_rows_per_nu(self, capsys, tmp_path):
        csv_path = tmp_path / "noise.csv"
        code, _, _ = run(capsys, "noise", "--k", "2", "--phase", "sqrt2pi",
                         "--kind", "total", "--nu", "0,1e-5,1e-4,1e-3",
                         "--lengths", "4,8", "--samples", "1",
                         "--repetitions", "2", "--sweeps", "10",
                         "--seed", "3", "--csv", str(csv_path))
        assert code == 0
        rows = read_csv(str(csv_path))
        # 4 noise levels x 2 lengths
        assert len(rows) == 8
        for length in (4, 8):
            assert sum(1 for r in rows if r.length == length) == 4

    def test_phase_frac_command(self, capsys, tmp_path):
        csv_path = tmp_path / "frac.csv"
        code, _, _ = run(capsys, "phase-frac", "--k", "2", "--phase",
                         "sqrt2pi", "--c-values", "0,10", "--length", "10",
                         "--samples", "2", "--sweeps", "10", "--seed", "2",
                         "--csv", str(csv_path))
        assert code == 0
        assert len(read_csv(str(csv_path))) == 2

    def test_bench_command(self, capsys, tmp_path):
        csv_path = tmp_path / "bench.csv"
        code, _, _ = run(capsys, "bench", "--k", "3", "--lengths", "3,4",
                         "--samples", "1", "--sweeps", "500", "--seed", "4",
                         "--csv", str(csv_path))
        assert code == 0
        assert len(read_csv(str(csv_path))) == 4


class TestConfigFile:
    def test_yaml_defaults_with_flag_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.yaml"
        cfg.write_text("k: 3\nlengths: '4'\nsamples: 1\nsweeps: 5\n"
                       "seed: 8\n", encoding="utf-8")
        csv_path = tmp_path / "out.csv"
        code, _, _ = run(capsys, "sweep", "--config", str(cfg),
                         "--csv", str(csv_path), "--samples", "2")
        assert code == 0
        rows = read_csv(str(csv_path))
        assert rows[0].samples == 2  # flag overrides config
        assert rows[0].k == 3       # config supplies the rest
