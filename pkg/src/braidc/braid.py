"""Braid words and generator alphabets, including hybrid phase-gate models.

A braid word is a tuple of letter indices into a :class:`GeneratorSet`.
Letters act in temporal order: for a word ``g1 g2 ... gl`` the evaluated
gate is the matrix product ``G_l ... G_2 G_1`` (the first letter acts
first on the state).

The text form of a word is whitespace-separated letter names, e.g.
``s1 s2i s1 ph``: ``s1``/``s2`` are the two braid generators, suffix ``i``
marks an inverse, and ``ph``/``phi`` are the phase gate and its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gates import NoiseSpec, RandomSource, noise_unitary
from .qalgebra import SUPPORTED_LEVELS, qubit_generators

NOISE_MODES = ("phase_only", "all_letters")

Word = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    """Ordered compilation alphabet of one anyon model.

    ``search_alphabet`` is the subset of letters proposable by search moves:
    all four braid letters for pure models; for hybrid models additionally
    the phase gate but not its inverse.  The inverse phase letter exists
    only so that word inversion stays total.
    """

    k: int
    names: tuple[str, ...]
    gates: tuple[np.ndarray, ...]
    topological: tuple[bool, ...]
    inverse_of: tuple[int, ...]
    search_alphabet: tuple[int, ...]
    phase: float | None
    conjugated: bool

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown letter name {name!r}; "
                           f"alphabet is {self.names}") from None


def build_generator_set(k: int, phase: float | None = None,
                        conjugate: bool = False) -> GeneratorSet:
    """Alphabet of braid generators and inverses, plus an optional phase gate.

    Models with k in {2, 4} generate only a finite gate group and need an
    irrational ``phase`` (in radians, e.g. sqrt(2)*pi) for universal
    compilation; for other supported k the phase is optional.  The phase
    gate diag(1, e^{i phase}) and its inverse are flagged non-topological.
    """
    if k not in SUPPORTED_LEVELS:
        raise ValueError(f"unsupported level k={k}; supported: {SUPPORTED_LEVELS}")
    s1, s2 = qubit_generators(k, conjugate=conjugate)
    names = ["s1", "s1i", "s2", "s2i"]
    mats = [s1, s1.conj().T, s2, s2.conj().T]
    topo = [True, True, True, True]
    inverse_of = [1, 0, 3, 2]
    search = [0, 1, 2, 3]
    if phase is not None:
        names += ["ph", "phi"]
        mats += [np.diag([1.0, np.exp(1j * phase)]),
                 np.diag([1.0, np.exp(-1j * phase)])]
        topo += [False, False]
        inverse_of += [5, 4]
        search.append(4)
    for m in mats:
        m.setflags(write=False)
    return GeneratorSet(
        k=k,
        names=tuple(names),
        gates=tuple(mats),
        topological=tuple(topo),
        inverse_of=tuple(inverse_of),
        search_alphabet=tuple(search),
        phase=phase,
        conjugated=conjugate,
    )


def evaluate(word, gens: GeneratorSet) -> np.ndarray:
    """Product of letter gates in temporal order (first letter acts first)."""
    out = np.eye(2, dtype=complex)
    for letter in word:
        out = gens.gates[letter] @ out
    return out


def invert(word, gens: GeneratorSet) -> Word:
    """Reversed word with each letter replaced by its inverse."""
    return tuple(gens.inverse_of[letter] for letter in reversed(word))


def phase_gate_count(word, gens: GeneratorSet) -> int:
    """Number of non-topological letters (phase gate or its inverse)."""
    return sum(1 for letter in word if not gens.topological[letter])


def noisy_evaluate(word, gens: GeneratorSet, spec: NoiseSpec, mode: str,
                   rng: RandomSource) -> np.ndarray:
    """Evaluate with a fresh noise rotation after each selected letter.

    ``mode="phase_only"`` perturbs only non-topological letters (the hybrid
    model's exposure); ``mode="all_letters"`` perturbs every letter,
    modelling a fully conventional computation.  With nu = 0 the result
    equals :func:`evaluate` bit for bit.
    """
    if mode not in NOISE_MODES:
        raise ValueError(f"mode must be one of {NOISE_MODES}, got {mode!r}")
    if spec.nu == 0.0:
        return evaluate(word, gens)
    out = np.eye(2, dtype=complex)
    for letter in word:
        g = gens.gates[letter]
        if mode == "all_letters" or not gens.topological[letter]:
            g = g @ noise_unitary(spec, rng)
        out = g @ out
    return out


def to_spins(word) -> tuple[int, ...]:
    """Spin-chain view of a word: one Z_{|alphabet|} site symbol per letter."""
    return tuple(word)


def from_spins(spins) -> Word:
    """Inverse of :func:`to_spins`."""
    return tuple(spins)


def format_word(word, gens: GeneratorSet) -> str:
    return " ".join(gens.names[letter] for letter in word)


def parse_word(text: str, gens: GeneratorSet) -> Word:
    return tuple(gens.index(name) for name in text.split())


def word_names(word, gens: GeneratorSet) -> list[str]:
    """JSON-friendly form of a word: a list of letter names."""
    return [gens.names[letter] for letter in word]
