"""Base-level compilation: exhaustive tree search and Metropolis Monte Carlo.

The hot paths work on 2x2 matrices unpacked into 4-tuples of Python
complex numbers; numpy call overhead dominates at this size.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .braid import GeneratorSet, Word, evaluate, phase_gate_count
from .gates import RandomSource, distance

EXHAUSTIVE_BUDGET = 10 ** 8

Cells = tuple[complex, complex, complex, complex]


class BudgetExceededError(RuntimeError):
    """Raised before starting a search whose evaluation count would exceed
    the configured budget."""


def _cells(m: np.ndarray) -> Cells:
    return (complex(m[0, 0]), complex(m[0, 1]),
            complex(m[1, 0]), complex(m[1, 1]))


def _mul(x: Cells, y: Cells) -> Cells:
    """Matrix product x @ y of 2x2 cell tuples."""
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _target_cells(target: np.ndarray) -> Cells:
    return (complex(target[0, 0]), complex(target[0, 1]),
            complex(target[1, 0]), complex(target[1, 1]))


def _dist(t: Cells, u: Cells) -> float:
    """distance(target, u) with target cells precomputed.

    Tr(T U^dag) = sum_ij T_ij conj(U_ij).
    """
    tr = (t[0] * u[0].conjugate() + t[1] * u[1].conjugate()
          + t[2] * u[2].conjugate() + t[3] * u[3].conjugate())
    rad = 1.0 - abs(tr) / 2.0
    return math.sqrt(rad) if rad > 0.0 else 0.0


_I_CELLS: Cells = (1 + 0j, 0j, 0j, 1 + 0j)


@dataclass
class MCConfig:
    """Monte Carlo search parameters.

    ``temperature`` is the dimensionless acceptance temperature; ``anneal``
    multiplies it once per sweep (1.0 keeps it constant).  ``phase_coeff``
    activates the phase-gate suppression filter exp(-c * n_phase / length)
    on proposals of non-topological letters.  The sweep budget is
    ``max_sweeps``; the search also stops once the error reaches
    ``tolerance``.
    """

    length: int
    temperature: float = 0.05
    max_sweeps: int = 1000
    tolerance: float = 0.0
    phase_coeff: float = 0.0
    seed: int = 0
    anneal: float = 1.0
    max_evaluations: int | None = None

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")
        if self.temperature <= 0:
            raise ValueError(f"temperature must be > 0, got {self.temperature}")
        if self.max_sweeps < 1:
            raise ValueError(f"max_sweeps must be >= 1, got {self.max_sweeps}")
        if self.tolerance < 0 or self.phase_coeff < 0:
            raise ValueError("tolerance and phase_coeff must be >= 0")
        if self.max_evaluations is not None and self.max_evaluations < 1:
            raise ValueError("max_evaluations must be >= 1 when set")


@dataclass
class SearchResult:
    """Compiled word with its achieved error and search accounting."""

    word: Word
    error: float
    phase_count: int
    evaluations: int
    elapsed_s: float
    seed: int | None = None
    base_searches: int | None = None

    def to_json_dict(self, gens: GeneratorSet, config: dict | None = None) -> dict:
        out = {
            "word": [gens.names[letter] for letter in self.word],
            "error": self.error,
            "phase_count": self.phase_count,
            "evaluations": self.evaluations,
            "elapsed_s": self.elapsed_s,
            "seed": self.seed,
            "config": config or {},
        }
        if self.base_searches is not None:
            out["base_searches"] = self.base_searches
        return out


def exhaustive_search(target: np.ndarray, gens: GeneratorSet, max_length: int,
                      exact_length: bool = False,
                      letter_order: tuple[int, ...] | None = None,
                      budget: int = EXHAUSTIVE_BUDGET) -> SearchResult:
    """Enumerate words over the search alphabet and return the best one.

    Words of every length 1..max_length are evaluated (depth-first, one
    matrix product per tree node); with ``exact_length`` only words of
    length exactly ``max_length`` are scored.  Ties break toward shorter
    words, then lexicographically by letter index.  ``letter_order``
    permutes the branch expansion order without affecting the result; two
    different orders make an exact cross-check of the enumeration.

    Raises :class:`BudgetExceededError` before starting when the number of
    distance evaluations would exceed ``budget``.
    """
    if max_length < 1:
        raise ValueError(f"max_length must be >= 1, got {max_length}")
    order = tuple(letter_order) if letter_order is not None else gens.search_alphabet
    if sorted(order) != sorted(gens.search_alphabet):
        raise ValueError("letter_order must be a permutation of the search alphabet")
    n = len(order)
    if exact_length:
        nodes = n ** max_length
    else:
        nodes = (n ** (max_length + 1) - n) // (n - 1)
    if nodes > budget:
        raise BudgetExceededError(
            f"enumeration needs {nodes} evaluations, budget is {budget}")

    t0 = time.perf_counter()
    tcells = _target_cells(np.asarray(target, dtype=complex))
    letter_cells = [_cells(g) for g in gens.gates]
    evaluations = 0
    best_err = math.inf
    best_word: tuple[int, ...] = ()
    prefix: list[int] = []

    def walk(product: Cells, depth: int) -> None:
        nonlocal evaluations, best_err, best_word
        for letter in order:
            cand = _mul(letter_cells[letter], product)
            prefix.append(letter)
            if not exact_length or depth + 1 == max_length:
                err = _dist(tcells, cand)
                evaluations += 1
                if err < best_err or (
                        err == best_err
                        and (depth + 1, tuple(prefix)) < (len(best_word), best_word)):
                    best_err = err
                    best_word = tuple(prefix)
            if depth + 1 < max_length:
                walk(cand, depth + 1)
            prefix.pop()

    walk(_I_CELLS, 0)
    return SearchResult(
        word=best_word,
        error=best_err,
        phase_count=phase_gate_count(best_word, gens),
        evaluations=evaluations,
        elapsed_s=time.perf_counter() - t0,
    )


def random_walk_word(length: int, gens: GeneratorSet, rng: RandomSource) -> Word:
    """Uniform i.i.d. word over the search alphabet (never backtracking)."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    alphabet = gens.search_alphabet
    picks = rng.generator.integers(0, len(alphabet), size=length)
    return tuple(alphabet[i] for i in picks)


def mc_search(target: np.ndarray, gens: GeneratorSet, cfg: MCConfig,
              trace: list | None = None) -> SearchResult:
    """Metropolis spin-chain search for a fixed-length braid word.

    The word is initialised by a random walk and then swept site by site,
    left to right, wrapping at the end.  At each site, candidate letters
    are drawn uniformly without replacement from the other search letters:
    a flip that lowers the full-word error is accepted outright, otherwise
    it is accepted with probability exp(-(E_flip - E_current)/T); once a
    flip is accepted, or every alternative has been tried, the sweep moves
    on.  When ``phase_coeff`` c > 0, a proposal of a non-topological letter
    must first pass the filter exp(-c * n/length), with n the phase-gate
    count the flip would produce; the same filter shapes the initial walk,
    so for c -> infinity no phase letter ever enters the word.  The best
    configuration ever visited is returned; the search stops when its
    error reaches ``tolerance`` or after ``max_sweeps`` sweeps.

    Energies are evaluated through per-sweep suffix products and a running
    prefix (two matrix products per proposal); the reported error is
    re-measured from the returned word with :func:`braidc.braid.evaluate`.

    ``trace``, when given, receives ``("accept", e_before, e_after)`` for
    every accepted flip and ``("sweep", best_error)`` after every sweep.
    """
    t0 = time.perf_counter()
    rng = RandomSource(cfg.seed)
    g = rng.generator
    tcells = _target_cells(np.asarray(target, dtype=complex))
    letter_cells = [_cells(m) for m in gens.gates]
    alphabet = gens.search_alphabet
    topological = gens.topological
    length = cfg.length

    if cfg.phase_coeff > 0:
        # The suppression filter also shapes the initial walk; in the
        # c -> infinity limit no phase letter survives anywhere in the run.
        word: list[int] = []
        n_phase = 0
        while len(word) < length:
            letter = alphabet[int(g.integers(0, len(alphabet)))]
            if not topological[letter]:
                gate_p = math.exp(-cfg.phase_coeff * (n_phase + 1) / length)
                if g.random() >= gate_p:
                    continue
                n_phase += 1
            word.append(letter)
    else:
        word = list(random_walk_word(length, gens, rng))
        n_phase = sum(1 for letter in word if not topological[letter])
    evaluations = 0

    def energy_full() -> float:
        nonlocal evaluations
        prod = _I_CELLS
        for letter in word:
            prod = _mul(letter_cells[letter], prod)
        evaluations += 1
        return _dist(tcells, prod)

    e_current = energy_full()
    best_err = e_current
    best_word = tuple(word)
    temperature = cfg.temperature

    if e_current <= cfg.tolerance:
        return SearchResult(
            word=best_word, error=best_err,
            phase_count=phase_gate_count(best_word, gens),
            evaluations=evaluations, elapsed_s=time.perf_counter() - t0,
            seed=cfg.seed)

    max_evals = cfg.max_evaluations
    done = False
    for _ in range(cfg.max_sweeps):
        # suffix[i] = G_l ... G_{i+1} for the current word; the running
        # prefix holds G_{i-1} ... G_1 for the site being visited.
        suf = [_I_CELLS] * (length + 1)
        for i in range(length - 1, -1, -1):
            suf[i] = _mul(suf[i + 1], letter_cells[word[i]])
        prefix = _I_CELLS
        for site in range(length):
            current = word[site]
            suffix = suf[site + 1]
            others = [a for a in alphabet if a != current]
            g.shuffle(others)
            for cand in others:
                if cfg.phase_coeff > 0 and not topological[cand]:
                    # Suppression filter on the count the flip would produce:
                    # the first phase letter is already damped, so the c->inf
                    # limit drives the count to zero.
                    n_after = n_phase + (1 if topological[current] else 0)
                    gate_p = math.exp(-cfg.phase_coeff * n_after / length)
                    if g.random() >= gate_p:
                        continue
                trial = _mul(suffix, _mul(letter_cells[cand], prefix))
                e_flip = _dist(tcells, trial)
                evaluations += 1
                if e_flip < e_current:
                    accept = True
                else:
                    accept = g.random() < math.exp(
                        -(e_flip - e_current) / temperature)
                if accept:
                    if trace is not None:
                        trace.append(("accept", e_current, e_flip))
                    if not topological[cand]:
                        n_phase += 1
                    if not topological[current]:
                        n_phase -= 1
                    word[site] = cand
                    e_current = e_flip
                    if e_current < best_err:
                        best_err = e_current
                        best_word = tuple(word)
                        if best_err <= cfg.tolerance:
                            done = True
                    break
                if max_evals is not None and evaluations >= max_evals:
                    done = True
                    break
            prefix = _mul(letter_cells[word[site]], prefix)
            if done:
                break
        if trace is not None:
            trace.append(("sweep", best_err))
        if done:
            break
        temperature *= cfg.anneal

    error = distance(np.asarray(target, dtype=complex), evaluate(best_word, gens))
    return SearchResult(
        word=best_word,
        error=error,
        phase_count=phase_gate_count(best_word, gens),
        evaluations=evaluations,
        elapsed_s=time.perf_counter() - t0,
        seed=cfg.seed)
