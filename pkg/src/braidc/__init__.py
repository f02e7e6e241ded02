"""braidc: a braid-word compiler for SU(2)_k anyon models.

Approximates single-qubit unitary gates as braid words over the qubit
encodings of SU(2)_k anyon models (k in {2, 3, 4, 5, 6, 8}), by exhaustive
enumeration, Metropolis Monte Carlo search, the Solovay-Kitaev recursion,
and its Monte Carlo enhanced variant.  Non-universal models (k = 2, 4) are
supported as hybrids with an irrational phase gate and a tunable unitary
rotation noise model.
"""

__version__ = "0.1.0"

from .braid import (GeneratorSet, build_generator_set, evaluate, invert,
                    noisy_evaluate, phase_gate_count)
from .gates import (NoiseSpec, RandomSource, distance, haar_random,
                    noise_unitary)
from .qalgebra import (SUPPORTED_LEVELS, FusionTable, QubitEncoding,
                       bratteli_dimension, f_matrix, fusion_product,
                       fusion_table, q_factorial, q_integer,
                       quantum_6j, qubit_encoding, qubit_generators, r_phase,
                       triangle_coefficient)
from .search import (BudgetExceededError, MCConfig, SearchResult,
                     exhaustive_search, mc_search, random_walk_word)
from .sk import (GcdPair, SKConfig, group_commutator_decompose, mceska,
                 solovay_kitaev)

__all__ = [
    "__version__",
    "SUPPORTED_LEVELS", "FusionTable", "QubitEncoding",
    "bratteli_dimension", "f_matrix", "fusion_product", "fusion_table",
    "q_factorial", "q_integer", "quantum_6j", "qubit_encoding",
    "qubit_generators", "r_phase", "triangle_coefficient",
    "NoiseSpec", "RandomSource", "distance", "haar_random", "noise_unitary",
    "GeneratorSet", "build_generator_set", "evaluate", "invert",
    "noisy_evaluate", "phase_gate_count",
    "BudgetExceededError", "MCConfig", "SearchResult", "exhaustive_search",
    "mc_search", "random_walk_word",
    "GcdPair", "SKConfig", "group_commutator_decompose", "mceska",
    "solovay_kitaev",
]
