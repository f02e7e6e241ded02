"""Solovay-Kitaev recursion with balanced group-commutator decomposition.

Depth 0 delegates to a fixed-length base search (exhaustive enumeration of
exactly length-l0 words, or the Monte Carlo search, which is natively
fixed-length); depth n builds the residual of the depth-(n-1) answer,
splits it into a balanced group commutator V W V^dag W^dag, approximates
V and W recursively, and assembles the improved word.  Every depth-n word
has length exactly l0 * 5^n, and depth n makes exactly 3^n base searches.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from .braid import GeneratorSet, Word, evaluate, invert, phase_gate_count
from .gates import derive_seed, distance
from .search import MCConfig, SearchResult, exhaustive_search, mc_search

BASE_METHODS = ("exhaustive", "monte_carlo")

# sin(theta/2) = 2 sin^2(phi/2) sqrt(1 - sin^4(phi/2)) is monotone in phi
# only up to the angle where the right-hand side reaches 1.
_PHI_MAX = 2.0 * math.asin(2.0 ** -0.25)
_THETA_EPS = 1e-8


@dataclass
class SKConfig:
    """Recursion depth, base-search length and base-search method.

    ``base_mc`` must be supplied (with matching length) when
    ``base_method="monte_carlo"``; its seed is the root of the per-path
    substreams of the recursive base searches.
    """

    depth: int
    base_length: int
    base_method: str = "exhaustive"
    base_mc: MCConfig | None = None
    gcd_tolerance: float = 1e-10

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")
        if self.base_length < 1:
            raise ValueError(f"base_length must be >= 1, got {self.base_length}")
        if self.base_method not in BASE_METHODS:
            raise ValueError(f"base_method must be one of {BASE_METHODS}")
        if self.base_method == "monte_carlo":
            if self.base_mc is None:
                raise ValueError("monte_carlo base requires base_mc config")
            if self.base_mc.length != self.base_length:
                raise ValueError("base_mc.length must equal base_length")


@dataclass(frozen=True)
class GcdPair:
    """Balanced group-commutator factors: v w v^dag w^dag reconstructs the
    unitary they were decomposed from, up to global phase."""

    v: np.ndarray
    w: np.ndarray


def rotation_x(angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def rotation_y(angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _to_su2(u: np.ndarray) -> np.ndarray:
    """SU(2) representative with non-negative real trace, so the
    eigenvalues are e^{+-i theta/2} with theta the Bloch angle in [0, pi]."""
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    m = u / np.sqrt(det)
    if (m[0, 0] + m[1, 1]).real < 0:
        m = -m
    return m


def rotation_angle(u: np.ndarray) -> float:
    """Bloch rotation angle in [0, pi] of a unitary, ignoring global phase."""
    tr = abs(u[0, 0] + u[1, 1])
    det = abs(u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0])
    half_cos = min(1.0, tr / (2.0 * math.sqrt(det)))
    return 2.0 * math.acos(half_cos)


def commutator_angle(theta: float, tol: float = 1e-14) -> float:
    """Solve sin(theta/2) = 2 sin^2(phi/2) sqrt(1 - sin^4(phi/2)) for phi.

    Bisection on [0, phi_max] where the relation is monotone; phi_max maps
    onto sin(theta/2) = 1, so every theta in [0, pi] is covered.
    """
    if not 0.0 <= theta <= math.pi + 1e-12:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    rhs_target = math.sin(theta / 2.0)

    def rhs(phi: float) -> float:
        s2 = math.sin(phi / 2.0) ** 2
        return 2.0 * s2 * math.sqrt(max(0.0, 1.0 - s2 * s2))

    lo, hi = 0.0, _PHI_MAX
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if rhs(mid) < rhs_target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _eigenbasis(u: np.ndarray) -> np.ndarray:
    """Orthonormal eigenvectors of an SU(2) element, columns ordered by
    descending imaginary part of the eigenvalue, phases fixed so the first
    non-zero component of each vector is real positive."""
    vals, vecs = np.linalg.eig(u)
    order = np.argsort(-vals.imag)
    vecs = vecs[:, order]
    v0 = vecs[:, 0] / np.linalg.norm(vecs[:, 0])
    v1 = vecs[:, 1] - (v0.conj() @ vecs[:, 1]) * v0
    v1 = v1 / np.linalg.norm(v1)
    basis = np.column_stack([v0, v1])
    for j in range(2):
        col = basis[:, j]
        pivot = col[0] if abs(col[0]) > 1e-12 else col[1]
        basis[:, j] = col * (abs(pivot) / pivot)
    return basis


def group_commutator_decompose(delta: np.ndarray) -> GcdPair:
    """Balanced group-commutator decomposition of a unitary.

    The rotation angle theta of ``delta`` fixes an angle phi such that the
    commutator of a phi-rotation about x and a phi-rotation about y rotates
    by theta; a similarity transform built from the two eigenbases then
    aligns the commutator's rotation axis with delta's.  Near the identity
    (theta below 1e-8) both factors short-circuit to the identity.
    """
    delta = np.asarray(delta, dtype=complex)
    theta = rotation_angle(delta)
    if theta < _THETA_EPS:
        eye = np.eye(2, dtype=complex)
        return GcdPair(v=eye, w=eye)
    phi = commutator_angle(theta)
    v0 = rotation_x(phi)
    w0 = rotation_y(phi)
    comm = v0 @ w0 @ v0.conj().T @ w0.conj().T
    s = _eigenbasis(_to_su2(delta)) @ _eigenbasis(_to_su2(comm)).conj().T
    return GcdPair(v=s @ v0 @ s.conj().T, w=s @ w0 @ s.conj().T)


def solovay_kitaev(target: np.ndarray, gens: GeneratorSet,
                   cfg: SKConfig) -> SearchResult:
    """Compile ``target`` by recursive residual correction.

    Depth 0 is the configured fixed-length base search.  At depth n the
    word approximating Vt Wt Vt^dag Wt^dag Ut is assembled by concatenation
    and word inversion, where Ut approximates the target at depth n-1 and
    (V, W) is the commutator decomposition of the residual
    target @ Ut^dag.  The reported error is re-measured from the assembled
    word; ``base_searches`` counts base-search invocations (3^depth).
    """
    t0 = time.perf_counter()
    target = np.asarray(target, dtype=complex)
    stats = {"base_searches": 0, "evaluations": 0}

    def base_search(u: np.ndarray, path: str) -> Word:
        stats["base_searches"] += 1
        if cfg.base_method == "exhaustive":
            res = exhaustive_search(u, gens, cfg.base_length, exact_length=True)
        else:
            mc_cfg = replace(cfg.base_mc,
                             seed=derive_seed(cfg.base_mc.seed, path))
            res = mc_search(u, gens, mc_cfg)
        stats["evaluations"] += res.evaluations
        return res.word

    def recurse(u: np.ndarray, depth: int, path: str) -> tuple[Word, np.ndarray]:
        if depth == 0:
            word = base_search(u, path)
            return word, evaluate(word, gens)
        u_word, u_mat = recurse(u, depth - 1, path + "/U")
        delta = u @ u_mat.conj().T
        pair = group_commutator_decompose(delta)
        v_word, v_mat = recurse(pair.v, depth - 1, path + "/V")
        w_word, w_mat = recurse(pair.w, depth - 1, path + "/W")
        # Matrix product Vt Wt Vt^dag Wt^dag Ut; rightmost factor acts
        # first, so its word comes first.
        word = (u_word + invert(w_word, gens) + invert(v_word, gens)
                + w_word + v_word)
        mat = (v_mat @ w_mat @ v_mat.conj().T @ w_mat.conj().T @ u_mat)
        return word, mat

    word, _ = recurse(target, cfg.depth, "root")
    error = distance(target, evaluate(word, gens))
    seed = cfg.base_mc.seed if cfg.base_mc is not None else None
    return SearchResult(
        word=word,
        error=error,
        phase_count=phase_gate_count(word, gens),
        evaluations=stats["evaluations"],
        elapsed_s=time.perf_counter() - t0,
        seed=seed,
        base_searches=stats["base_searches"],
    )


def mceska(target: np.ndarray, gens: GeneratorSet, cfg: SKConfig) -> SearchResult:
    """Monte Carlo enhanced variant: the recursion with the Monte Carlo
    search as its fixed-length base, reaching base lengths far beyond
    exhaustive enumeration."""
    if cfg.base_method != "monte_carlo" or cfg.base_mc is None:
        raise ValueError("mceska requires base_method='monte_carlo' and base_mc")
    return solovay_kitaev(target, gens, cfg)
