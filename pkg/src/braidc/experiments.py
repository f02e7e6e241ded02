"""Seeded statistical sweeps over targets, lengths, noise levels and models.

Every sweep emits :class:`SweepRow` records with a fixed CSV schema.  All
randomness is derived from one root seed through labelled substreams, so a
row is reproducible bit for bit from (config, seed), except for the
elapsed-time column.
"""

from __future__ import annotations

import csv
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .braid import (GeneratorSet, build_generator_set, evaluate,
                    noisy_evaluate, phase_gate_count)
from .gates import NoiseSpec, RandomSource, derive_seed, distance, haar_random
from .search import MCConfig, SearchResult, exhaustive_search, mc_search
from .sk import SKConfig, mceska, solovay_kitaev

CSV_HEADER = ("model", "k", "hybrid", "method", "length", "samples",
              "mean_error", "stddev_error", "mean_phase_frac",
              "mean_elapsed_s", "nu", "noise_mode", "seed")

METHODS = ("exhaustive", "mc", "sk", "mceska")


@dataclass(frozen=True)
class SweepRow:
    """One aggregated configuration point of a sweep."""

    model: str
    k: int
    hybrid: bool
    method: str
    length: int
    samples: int
    mean_error: float
    stddev_error: float
    mean_phase_frac: float
    mean_elapsed_s: float
    nu: float
    noise_mode: str
    seed: int


def model_name(k: int, hybrid: bool) -> str:
    return f"su2_{k}" + ("_hybrid" if hybrid else "")


def _fmt(x: float) -> str:
    return f"{x:.17e}"


def write_csv(path: str, rows: list[SweepRow]) -> None:
    """Write rows under the fixed header; floats in full-precision
    scientific notation, UTF-8, LF line endings."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow([
                r.model, r.k, str(r.hybrid).lower(), r.method, r.length,
                r.samples, _fmt(r.mean_error), _fmt(r.stddev_error),
                _fmt(r.mean_phase_frac), _fmt(r.mean_elapsed_s), _fmt(r.nu),
                r.noise_mode, r.seed,
            ])


def read_csv(path: str) -> list[SweepRow]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise ValueError(f"CSV header {header} does not match the sweep "
                             f"schema {CSV_HEADER}")
        rows = []
        for rec in reader:
            rows.append(SweepRow(
                model=rec[0], k=int(rec[1]), hybrid=rec[2] == "true",
                method=rec[3], length=int(rec[4]), samples=int(rec[5]),
                mean_error=float(rec[6]), stddev_error=float(rec[7]),
                mean_phase_frac=float(rec[8]), mean_elapsed_s=float(rec[9]),
                nu=float(rec[10]), noise_mode=rec[11], seed=int(rec[12]),
            ))
    return rows


def _std(values: list[float]) -> float:
    """Sample standard deviation (n-1 divisor); 0.0 for a single value."""
    if len(values) < 2:
        return 0.0
    return statistics.stdev(values)


def _aggregate(k: int, hybrid: bool, method: str, length: int,
               results: list[tuple[float, float, float]], nu: float,
               noise_mode: str, seed: int) -> SweepRow:
    """Fold per-sample (error, phase_frac, elapsed) triples into one row."""
    errors = [r[0] for r in results]
    return SweepRow(
        model=model_name(k, hybrid), k=k, hybrid=hybrid, method=method,
        length=length, samples=len(results),
        mean_error=float(np.mean(errors)), stddev_error=_std(errors),
        mean_phase_frac=float(np.mean([r[1] for r in results])),
        mean_elapsed_s=float(np.mean([r[2] for r in results])),
        nu=nu, noise_mode=noise_mode, seed=seed,
    )


def compile_target(target: np.ndarray, gens: GeneratorSet, method: str,
                   length: int, seed: int, *, depth: int = 0,
                   tolerance: float = 0.0, temperature: float = 0.05,
                   phase_coeff: float = 0.0, max_sweeps: int = 1000,
                   anneal: float = 1.0,
                   max_evaluations: int | None = None) -> SearchResult:
    """Dispatch one compilation by method name.

    ``sk``/``mceska`` read ``length`` as the final word length; it must be
    base_length * 5^depth for an integer base length.
    """
    if method == "exhaustive":
        return exhaustive_search(target, gens, length)
    if method == "mc":
        return mc_search(target, gens, MCConfig(
            length=length, temperature=temperature, max_sweeps=max_sweeps,
            tolerance=tolerance, phase_coeff=phase_coeff, seed=seed,
            anneal=anneal, max_evaluations=max_evaluations))
    if method in ("sk", "mceska"):
        base = length // 5 ** depth
        if base * 5 ** depth != length:
            raise ValueError(
                f"length {length} is not base*5^{depth} for integer base")
        if method == "sk":
            cfg = SKConfig(depth=depth, base_length=base)
            return solovay_kitaev(target, gens, cfg)
        cfg = SKConfig(
            depth=depth, base_length=base, base_method="monte_carlo",
            base_mc=MCConfig(length=base, temperature=temperature,
                             max_sweeps=max_sweeps, tolerance=tolerance,
                             phase_coeff=phase_coeff, seed=seed,
                             anneal=anneal, max_evaluations=max_evaluations))
        return mceska(target, gens, cfg)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def _sample_task(args) -> tuple[float, float, float]:
    (gens, method, length, depth, tolerance, temperature, phase_coeff,
     max_sweeps, anneal, max_evaluations, target_seed, run_seed) = args
    target = haar_random(RandomSource(target_seed))
    res = compile_target(target, gens, method, length, run_seed, depth=depth,
                         tolerance=tolerance, temperature=temperature,
                         phase_coeff=phase_coeff, max_sweeps=max_sweeps,
                         anneal=anneal, max_evaluations=max_evaluations)
    frac = res.phase_count / len(res.word) if res.word else 0.0
    return res.error, frac, res.elapsed_s


def _run_samples(tasks, jobs: int):
    if jobs <= 1:
        return [_sample_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sample_task, tasks))


def error_vs_length(k: int, phase: float | None, lengths: list[int],
                    samples: int, method: str = "mc", seed: int = 0, *,
                    depth: int = 0, tolerance: float = 0.0,
                    temperature: float = 0.05, max_sweeps: int = 1000,
                    phase_coeff: float = 0.0, anneal: float = 1.0,
                    max_evaluations: int | None = None,
                    jobs: int = 1) -> list[SweepRow]:
    """Mean/stddev compilation error per braid word length.

    Compiles ``samples`` fresh Haar targets at each length and aggregates
    error and phase fraction statistics.
    """
    if not lengths:
        raise ValueError("lengths must be non-empty")
    gens = build_generator_set(k, phase)
    hybrid = phase is not None
    rows = []
    for length in lengths:
        tasks = [
            (gens, method, length, depth, tolerance, temperature, phase_coeff,
             max_sweeps, anneal, max_evaluations,
             derive_seed(seed, f"target/{length}/{i}"),
             derive_seed(seed, f"run/{length}/{i}"))
            for i in range(samples)
        ]
        results = _run_samples(tasks, jobs)
        rows.append(_aggregate(k, hybrid, method, length, results,
                               nu=0.0, noise_mode="none", seed=seed))
    return rows


def phase_fraction_sweep(k: int, phase: float, c_values: list[float],
                         length: int = 50, tolerance: float = 5e-3,
                         samples: int = 50, seed: int = 0, *,
                         temperature: float = 0.05, max_sweeps: int = 400,
                         anneal: float = 1.0,
                         max_evaluations: int | None = None,
                         jobs: int = 1) -> list[SweepRow]:
    """Phase-gate fraction N_phi/l against the suppression coefficient c.

    Runs the Monte Carlo search at fixed length until the target precision
    (or the sweep budget) for each suppression coefficient; the coefficient
    is recorded in the method column as ``mc:c=<value>``.
    """
    if k not in (2, 4):
        raise ValueError("phase-fraction sweep applies to the hybrid "
                         f"k in {{2, 4}} models, got k={k}")
    gens = build_generator_set(k, phase)
    rows = []
    for c in c_values:
        tasks = [
            (gens, "mc", length, 0, tolerance, temperature, c, max_sweeps,
             anneal, max_evaluations,
             derive_seed(seed, f"target/{c}/{i}"),
             derive_seed(seed, f"run/{c}/{i}"))
            for i in range(samples)
        ]
        results = _run_samples(tasks, jobs)
        rows.append(_aggregate(k, True, f"mc:c={c:g}", length, results,
                               nu=0.0, noise_mode="none", seed=seed))
    return rows


def tune_phase_coeff(gens: GeneratorSet, length: int, target_frac: float,
                     seed: int, *, tolerance: float = 5e-3,
                     frac_tol: float = 0.02, temperature: float = 0.05,
                     max_sweeps: int = 200, anneal: float = 1.0,
                     max_evaluations: int | None = None, pilots: int = 6,
                     c_max: float = 200.0) -> float:
    """Find a suppression coefficient whose mean compiled phase fraction
    hits ``target_frac`` within ``frac_tol`` (bisection; the fraction is
    statistically monotone non-increasing in c)."""

    def mean_frac(c: float) -> float:
        fracs = []
        for i in range(pilots):
            target = haar_random(RandomSource(
                derive_seed(seed, f"pilot-target/{c}/{i}")))
            res = mc_search(target, gens, MCConfig(
                length=length, temperature=temperature, max_sweeps=max_sweeps,
                tolerance=tolerance, phase_coeff=c, anneal=anneal,
                max_evaluations=max_evaluations,
                seed=derive_seed(seed, f"pilot-run/{c}/{i}")))
            fracs.append(res.phase_count / len(res.word))
        return float(np.mean(fracs))

    lo, hi = 0.0, c_max
    f_lo = mean_frac(lo)
    if f_lo <= target_frac + frac_tol:
        return lo
    for _ in range(12):
        mid = 0.5 * (lo + hi)
        f_mid = mean_frac(mid)
        if abs(f_mid - target_frac) <= frac_tol:
            return mid
        if f_mid > target_frac:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


NOISE_FRACTION_MODES = (0.05, 0.10, 1.0)


def _mode_label(fraction: float) -> str:
    if fraction >= 1.0:
        return "all_letters"
    return f"phase_{fraction * 100:g}pct"


def noise_only_error(k: int, phase: float, word_lengths: list[int],
                     nu_values: list[float],
                     modes: tuple[float, ...] = NOISE_FRACTION_MODES,
                     repetitions: int = 50, samples: int = 3, seed: int = 0, *,
                     tolerance: float = 5e-3, temperature: float = 0.05,
                     max_sweeps: int = 400, anneal: float = 1.0,
                     max_evaluations: int | None = None) -> list[SweepRow]:
    """Error contributed by gate noise alone, per noise strength and mode.

    For each word length and noisy-gate mode, words are compiled once
    (fractional modes tune the suppression coefficient to hit the target
    phase fraction; the 100% mode perturbs every letter) and the mean
    distance between ideal and noisy evaluation is measured across
    ``repetitions`` noise draws per compiled word.
    """
    gens = build_generator_set(k, phase)
    rows = []
    for length in word_lengths:
        words_by_mode: dict[float, list] = {}
        for fraction in modes:
            if fraction >= 1.0:
                coeff = 0.0
            else:
                coeff = tune_phase_coeff(
                    gens, length, fraction,
                    derive_seed(seed, f"tune/{length}/{fraction}"),
                    tolerance=tolerance, temperature=temperature,
                    max_sweeps=max_sweeps, anneal=anneal,
                    max_evaluations=max_evaluations)
            words = []
            for i in range(samples):
                target = haar_random(RandomSource(
                    derive_seed(seed, f"target/{length}/{fraction}/{i}")))
                res = mc_search(target, gens, MCConfig(
                    length=length, temperature=temperature,
                    max_sweeps=max_sweeps, tolerance=tolerance,
                    phase_coeff=coeff, anneal=anneal,
                    max_evaluations=max_evaluations,
                    seed=derive_seed(seed, f"run/{length}/{fraction}/{i}")))
                words.append(res.word)
            words_by_mode[fraction] = words
        for fraction in modes:
            noise_mode = "all_letters" if fraction >= 1.0 else "phase_only"
            for nu in nu_values:
                spec = NoiseSpec(nu)
                triples = []
                for i, word in enumerate(words_by_mode[fraction]):
                    ideal = evaluate(word, gens)
                    frac_actual = phase_gate_count(word, gens) / len(word)
                    for rep in range(repetitions):
                        rng = RandomSource(derive_seed(
                            seed, f"noise/{length}/{fraction}/{nu}/{i}/{rep}"))
                        noisy = noisy_evaluate(word, gens, spec, noise_mode, rng)
                        triples.append((distance(ideal, noisy), frac_actual, 0.0))
                rows.append(_aggregate(
                    k, True, "mc", length, triples, nu=nu,
                    noise_mode=_mode_label(fraction), seed=seed))
    return rows


def total_error_vs_length(k: int, phase: float,
                          nu_values: list[float], lengths: list[int],
                          samples: int, seed: int = 0, *,
                          base_max: int = 50, temperature: float = 0.05,
                          max_sweeps: int = 400, anneal: float = 1.0,
                          max_evaluations: int | None = None,
                          noise_reps: int = 5,
                          jobs: int = 1) -> tuple[list[SweepRow], dict[float, int]]:
    """Total error (approximation plus phase-gate noise) per length and nu.

    Lengths above ``base_max`` must lie on the 5^n ladder and are compiled
    with the Monte Carlo based recursion at base length ``length / 5^n``.
    Returns the rows and the per-nu error-minimising length.
    """
    gens = build_generator_set(k, phase)
    compiled: dict[int, list[tuple]] = {}
    for length in lengths:
        depth = 0
        base = length
        while base > base_max:
            if base % 5:
                raise ValueError(f"length {length} not reachable from a base "
                                 f"<= {base_max} by factors of 5")
            base //= 5
            depth += 1
        entries = []
        for i in range(samples):
            target = haar_random(RandomSource(
                derive_seed(seed, f"target/{length}/{i}")))
            method = "mc" if depth == 0 else "mceska"
            res = compile_target(
                target, gens, method, length,
                derive_seed(seed, f"run/{length}/{i}"), depth=depth,
                temperature=temperature, max_sweeps=max_sweeps, anneal=anneal,
                max_evaluations=max_evaluations)
            entries.append((target, res))
        compiled[length] = entries
    rows = []
    argmin: dict[float, int] = {}
    for nu in nu_values:
        spec = NoiseSpec(nu)
        means = {}
        for length in lengths:
            triples = []
            for i, (target, res) in enumerate(compiled[length]):
                frac = res.phase_count / len(res.word)
                for rep in range(noise_reps):
                    rng = RandomSource(derive_seed(
                        seed, f"noise/{length}/{nu}/{i}/{rep}"))
                    noisy = noisy_evaluate(res.word, gens, spec,
                                           "phase_only", rng)
                    triples.append((distance(target, noisy), frac,
                                    res.elapsed_s))
            row = _aggregate(k, True, "mc-ladder", length, triples, nu=nu,
                             noise_mode="phase_only", seed=seed)
            rows.append(row)
            means[length] = row.mean_error
        argmin[nu] = min(means, key=means.get)
    return rows, argmin


def timing_benchmark(k: int, lengths: list[int], samples: int,
                     methods: tuple[str, ...] = ("exhaustive", "monte_carlo"),
                     seed: int = 0, *, phase: float | None = None,
                     margin: float = 0.02, temperature: float = 0.06,
                     anneal: float = 1.0007,
                     max_sweeps: int = 20000) -> list[SweepRow]:
    """Wall-time statistics per search method and word length.

    The exhaustive timing covers the full enumeration of lengths up to
    each target length.  The Monte Carlo runs stop when they reach the
    fixed-length enumeration optimum plus ``margin`` for the same target
    (a tolerance the fixed-length chain can always attain), measuring the
    time to comparable quality rather than a fixed sweep count.
    """
    gens = build_generator_set(k, phase)
    hybrid = phase is not None
    rows = []
    for length in lengths:
        if "exhaustive" in methods:
            per_target = []
            for i in range(samples):
                target = haar_random(RandomSource(
                    derive_seed(seed, f"target/{length}/{i}")))
                res = exhaustive_search(target, gens, length)
                per_target.append((res.error,
                                   res.phase_count / max(1, len(res.word)),
                                   res.elapsed_s))
            rows.append(_aggregate(k, hybrid, "exhaustive", length,
                                   per_target, nu=0.0, noise_mode="none",
                                   seed=seed))
        if "monte_carlo" in methods:
            per_target = []
            for i in range(samples):
                target = haar_random(RandomSource(
                    derive_seed(seed, f"target/{length}/{i}")))
                tol = exhaustive_search(target, gens, length,
                                        exact_length=True).error + margin
                res = mc_search(target, gens, MCConfig(
                    length=length, temperature=temperature,
                    max_sweeps=max_sweeps, tolerance=tol, anneal=anneal,
                    seed=derive_seed(seed, f"mc/{length}/{i}")))
                per_target.append((res.error,
                                   res.phase_count / max(1, len(res.word)),
                                   res.elapsed_s))
            rows.append(_aggregate(k, hybrid, "mc", length, per_target,
                                   nu=0.0, noise_mode="none", seed=seed))
    return rows
