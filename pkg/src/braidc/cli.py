"""Command-line interface.

Subcommands: ``gates``, ``compile``, ``sweep``, ``phase-frac``, ``noise``,
``bench``, ``fusion``.  Exit codes: 0 success, 1 search-budget exhaustion,
2 usage or configuration error.  All randomness flows from ``--seed``;
omitting it selects a random seed and prints it.  A run manifest
(resolved config, root seed, tool version, timestamp) is written alongside
every output file.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np
import yaml

from . import __version__
from .braid import build_generator_set, evaluate, parse_word
from .experiments import (compile_target, error_vs_length, noise_only_error,
                          phase_fraction_sweep, timing_benchmark,
                          total_error_vs_length, write_csv)
from .gates import RandomSource, gate, haar_random
from .qalgebra import SUPPORTED_LEVELS, fusion_table, qubit_encoding
from .search import BudgetExceededError

EXIT_OK = 0
EXIT_BUDGET = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def parse_phase(text: str | None) -> float | None:
    """Phase gate angle: a float in radians or the literal ``sqrt2pi``."""
    if text is None:
        return None
    if text.strip().lower() in ("sqrt2pi", "sqrt2_pi", "sqrt(2)pi"):
        return math.sqrt(2.0) * math.pi
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"cannot parse phase {text!r}; use a float in "
                         "radians or 'sqrt2pi'") from None


def parse_target(text: str, root_seed: int, gens=None) -> np.ndarray:
    """Target gate: ``haar:<seed>``, ``word:<letters>``, a JSON file path,
    or inline JSON.

    The word form evaluates a braid word in the current generator set
    (e.g. ``word:s1 s2i ph``); the JSON form is
    [[[re, im], [re, im]], [[re, im], [re, im]]].
    """
    if text.startswith("haar:"):
        try:
            seed = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad haar target spec {text!r}") from None
        return haar_random(RandomSource(seed))
    if text.startswith("word:"):
        if gens is None:
            raise UsageError("word: targets need a generator set")
        try:
            return evaluate(parse_word(text.split(":", 1)[1], gens), gens)
        except KeyError as exc:
            raise UsageError(str(exc)) from None
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            raise UsageError(
                f"target {text!r} is neither haar:<seed>, a file, nor JSON"
            ) from None
    try:
        m = [[complex(*cell) for cell in row] for row in data]
    except TypeError:
        raise UsageError("target JSON must be [[[re,im],[re,im]],"
                         "[[re,im],[re,im]]]") from None
    return gate(m)


def matrix_json(m: np.ndarray) -> list:
    return [[[float(np.real(x)), float(np.imag(x))] for x in row] for row in m]


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    seed = int.from_bytes(os.urandom(8), "little")
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def _manifest(path: str, config: dict, seed: int) -> None:
    doc = {
        "tool": "braidc",
        "version": __version__,
        "config": config,
        "seed": seed,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    with open(path + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _emit_json(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_csv_atomic(path: str, rows) -> None:
    """Write through a temp file in the target directory; a bad path fails
    before any partial output exists."""
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory):
        raise UsageError(f"output directory does not exist: {directory}")
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".csv.tmp")
    os.close(fd)
    try:
        write_csv(tmp, rows)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _spin_str(a: int) -> str:
    frac = Fraction(a, 2)
    return str(frac.numerator) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"


def cmd_gates(args) -> int:
    phase = parse_phase(args.phase)
    gens = build_generator_set(args.k, phase, conjugate=args.conjugate)
    enc = qubit_encoding(args.k)
    doc = {
        "k": gens.k,
        "convention": "conjugate" if gens.conjugated else "direct",
        "encoding": {"anyon": enc.anyon, "channels": list(enc.channels),
                     "total": enc.total},
        "generators": [
            {"name": name, "matrix": matrix_json(mat), "topological": topo}
            for name, mat, topo in zip(gens.names, gens.gates, gens.topological)
        ],
    }
    if phase is not None:
        doc["phase"] = phase
    _emit_json(doc, args.out)
    if args.out:
        _manifest(args.out, {"command": "gates", "k": args.k,
                             "phase": phase, "conjugate": args.conjugate},
                  seed=0)
    return EXIT_OK


def cmd_fusion(args) -> int:
    table = fusion_table(args.k, integer_sector=args.integer_sector)
    charges = table.charges
    header = ["(x)"] + [_spin_str(a) for a in charges]
    body = []
    for b in charges:
        row = [_spin_str(b)]
        for a in charges:
            row.append(" (+) ".join(_spin_str(c) for c in table.outcomes(a, b)))
        body.append(row)
    widths = [max(len(line[i]) for line in [header] + body)
              for i in range(len(header))]
    print(f"Fusion table for k={args.k} anyon model.")
    for line in [header] + body:
        print("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())
    return EXIT_OK


def cmd_compile(args) -> int:
    seed = _resolve_seed(args)
    phase = parse_phase(args.phase)
    gens = build_generator_set(args.k, phase, conjugate=args.conjugate)
    target = parse_target(args.target, seed, gens)
    result = compile_target(
        target, gens, args.method, args.length, seed, depth=args.depth,
        tolerance=args.tol, temperature=args.temp,
        phase_coeff=args.phase_coeff, max_sweeps=args.sweeps)
    config = {
        "command": "compile", "k": args.k, "phase": phase,
        "conjugate": args.conjugate, "target": args.target,
        "method": args.method, "length": args.length, "depth": args.depth,
        "tol": args.tol, "temp": args.temp, "phase_coeff": args.phase_coeff,
        "sweeps": args.sweeps, "seed": seed,
    }
    doc = result.to_json_dict(gens, config)
    doc["seed"] = seed
    _emit_json(doc, args.out)
    if args.out:
        _manifest(args.out, config, seed)
    return EXIT_OK


def _csv_command(args, rows, config: dict, seed: int) -> int:
    _write_csv_atomic(args.csv, rows)
    _manifest(args.csv, config, seed)
    return EXIT_OK


def cmd_sweep(args) -> int:
    seed = _resolve_seed(args)
    phase = parse_phase(args.phase)
    lengths = [int(x) for x in args.lengths.split(",")]
    rows = error_vs_length(
        args.k, phase, lengths, args.samples, method=args.method, seed=seed,
        depth=args.depth, tolerance=args.tol, temperature=args.temp,
        max_sweeps=args.sweeps, jobs=args.jobs)
    config = {"command": "sweep", "k": args.k, "phase": phase,
              "lengths": lengths, "samples": args.samples,
              "method": args.method, "depth": args.depth, "tol": args.tol,
              "temp": args.temp, "sweeps": args.sweeps, "seed": seed}
    return _csv_command(args, rows, config, seed)


def cmd_phase_frac(args) -> int:
    seed = _resolve_seed(args)
    phase = parse_phase(args.phase)
    c_values = [float(x) for x in args.c_values.split(",")]
    rows = phase_fraction_sweep(
        args.k, phase, c_values, length=args.length, tolerance=args.tol,
        samples=args.samples, seed=seed, temperature=args.temp,
        max_sweeps=args.sweeps, jobs=args.jobs)
    config = {"command": "phase-frac", "k": args.k, "phase": phase,
              "c_values": c_values, "length": args.length, "tol": args.tol,
              "samples": args.samples, "temp": args.temp,
              "sweeps": args.sweeps, "seed": seed}
    return _csv_command(args, rows, config, seed)


def cmd_noise(args) -> int:
    seed = _resolve_seed(args)
    phase = parse_phase(args.phase)
    nu_values = [float(x) for x in args.nu.split(",")]
    lengths = [int(x) for x in args.lengths.split(",")]
    if args.kind == "only":
        rows = noise_only_error(
            args.k, phase, lengths, nu_values, repetitions=args.repetitions,
            samples=args.samples, seed=seed, tolerance=args.tol,
            temperature=args.temp, max_sweeps=args.sweeps)
    else:
        rows, argmin = total_error_vs_length(
            args.k, phase, nu_values, lengths, args.samples, seed=seed,
            temperature=args.temp, max_sweeps=args.sweeps,
            noise_reps=args.repetitions)
        for nu, best in sorted(argmin.items()):
            print(f"argmin length at nu={nu:g}: {best}", file=sys.stderr)
    config = {"command": "noise", "kind": args.kind, "k": args.k,
              "phase": phase, "nu": nu_values, "lengths": lengths,
              "samples": args.samples, "repetitions": args.repetitions,
              "tol": args.tol, "temp": args.temp, "sweeps": args.sweeps,
              "seed": seed}
    return _csv_command(args, rows, config, seed)


def cmd_bench(args) -> int:
    seed = _resolve_seed(args)
    phase = parse_phase(args.phase)
    lengths = [int(x) for x in args.lengths.split(",")]
    methods = tuple(args.methods.split(","))
    rows = timing_benchmark(args.k, lengths, args.samples, methods, seed,
                            phase=phase, margin=args.margin,
                            temperature=args.temp, max_sweeps=args.sweeps)
    config = {"command": "bench", "k": args.k, "phase": phase,
              "lengths": lengths, "samples": args.samples,
              "methods": list(methods), "margin": args.margin,
              "temp": args.temp, "sweeps": args.sweeps, "seed": seed}
    return _csv_command(args, rows, config, seed)


def _apply_config_file(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Fold --config YAML values in as defaults; explicit flags win."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    try:
        path = argv[idx + 1]
    except IndexError:
        raise UsageError("--config requires a path") from None
    with open(path, encoding="utf-8") as fh:
        values = yaml.safe_load(fh) or {}
    if not isinstance(values, dict):
        raise UsageError("config file must be a YAML mapping of flag names")
    rest = argv[:idx] + argv[idx + 2:]
    extra: list[str] = []
    for key, value in values.items():
        flag = "--" + str(key).replace("_", "-")
        if flag in rest:
            continue
        extra.extend([flag, str(value)])
    return rest[:1] + extra + rest[1:]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidc",
        description="Braid-word compiler for SU(2)_k anyon models")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, seed=True):
        p.add_argument("--k", type=int, required=True,
                       help=f"anyon model level, one of {SUPPORTED_LEVELS}")
        p.add_argument("--phase", default=None,
                       help="phase gate angle in radians, or 'sqrt2pi'")
        if seed:
            p.add_argument("--seed", type=int, default=None)
        p.add_argument("--config", default=None,
                       help="YAML file of flag defaults (flags override)")

    p = sub.add_parser("gates", help="dump the generator set as JSON")
    add_common(p, seed=False)
    p.add_argument("--conjugate", action="store_true",
                   help="mirror (complex-conjugate) braid convention")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gates)

    p = sub.add_parser("fusion", help="print the fusion table as text")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--integer-sector", dest="integer_sector", default=None,
                   action="store_true",
                   help="restrict odd k to the integer-spin sector (default)")
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("compile", help="compile one target gate")
    add_common(p)
    p.add_argument("--target", required=True,
                   help="haar:<seed>, JSON file, or inline JSON")
    p.add_argument("--method", choices=("exhaustive", "mc", "sk", "mceska"),
                   default="mc")
    p.add_argument("--length", type=int, required=True,
                   help="word length (final length for sk/mceska)")
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--tol", type=float, default=0.0)
    p.add_argument("--temp", type=float, default=0.05)
    p.add_argument("--phase-coeff", dest="phase_coeff", type=float, default=0.0)
    p.add_argument("--sweeps", type=int, default=1000)
    p.add_argument("--conjugate", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("sweep", help="error vs braid word length sweep")
    add_common(p)
    p.add_argument("--lengths", required=True, help="comma-separated lengths")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--method", choices=("exhaustive", "mc", "sk", "mceska"),
                   default="mc")
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--tol", type=float, default=0.0)
    p.add_argument("--temp", type=float, default=0.05)
    p.add_argument("--sweeps", type=int, default=1000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("phase-frac",
                       help="phase-gate fraction vs suppression coefficient")
    add_common(p)
    p.add_argument("--c-values", dest="c_values", required=True,
                   help="comma-separated suppression coefficients")
    p.add_argument("--length", type=int, default=50)
    p.add_argument("--tol", type=float, default=5e-3)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--temp", type=float, default=0.05)
    p.add_argument("--sweeps", type=int, default=400)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_phase_frac)

    p = sub.add_parser("noise", help="noise-only or total error sweeps")
    add_common(p)
    p.add_argument("--kind", choices=("only", "total"), default="only")
    p.add_argument("--nu", required=True, help="comma-separated noise levels")
    p.add_argument("--lengths", required=True)
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--repetitions", type=int, default=50)
    p.add_argument("--tol", type=float, default=5e-3)
    p.add_argument("--temp", type=float, default=0.05)
    p.add_argument("--sweeps", type=int, default=400)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_noise)

    p = sub.add_parser("bench", help="search wall-time benchmark")
    add_common(p)
    p.add_argument("--lengths", required=True)
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--methods", default="exhaustive,monte_carlo")
    p.add_argument("--margin", type=float, default=0.02)
    p.add_argument("--temp", type=float, default=0.05)
    p.add_argument("--sweeps", type=int, default=20000)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
