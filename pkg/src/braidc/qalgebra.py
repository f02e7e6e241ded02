"""Algebraic data of SU(2)_k anyon models.

Fusion rules, q-deformed integers, quantum 6j symbols, F and R matrices,
and the 2x2 braid generators used for single-qubit compilation.

Conventions
-----------
* Charge labels are doubled spins, ``a = 2j``.  Spins 1/2, 1, 3/2 become
  labels 1, 2, 3.  The vacuum is 0 and labels run from 0 to k.
* The deformation parameter is ``q = exp(2i*pi/(k+2))``; q-integers are
  evaluated through the real closed form ``sin(n*pi/(k+2))/sin(pi/(k+2))``.
* The exchange phase uses the conformal-weight normalisation
  ``R^c_ab = (-1)^((a+b-c)/2) * q^(-[a(a+2)+b(b+2)-c(c+2)]/8)``.
  The divisor 8 (rather than 2) is what reproduces the standard Fibonacci
  R matrix ``diag(exp(-4i*pi/5), -exp(-2i*pi/5))`` exactly.
* F matrices are sign-gauged to the standard unitary literature form by
  making the first row and first column non-negative.  This reproduces
  the Hadamard-form Ising F and the golden-ratio Fibonacci F, and keeps
  every F with a vacuum external label equal to identity.
* Braid generators are returned in the R-convention by default; the
  ``conjugate`` flag selects the mirror convention (complex conjugate),
  which is the orientation used by the standard printed braid matrices.
  Global phases are not normalised; comparisons should use the
  phase-invariant gate metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SUPPORTED_LEVELS = (2, 3, 4, 5, 6, 8)


def _check_level(k: int) -> None:
    if k < 2:
        raise ValueError(f"level must be >= 2, got {k}")


def _check_label(a: int, k: int) -> None:
    if not 0 <= a <= k:
        raise ValueError(f"charge label {a} out of range for level k={k}")


def q_integer(n: int, k: int) -> float:
    """q-deformed integer floor(n) = sin(n*pi/(k+2)) / sin(pi/(k+2))."""
    if n < 0:
        raise ValueError(f"q_integer requires n >= 0, got {n}")
    _check_level(k)
    return math.sin(n * math.pi / (k + 2)) / math.sin(math.pi / (k + 2))


def q_factorial(n: int, k: int) -> float:
    """floor(n)! = prod_{m=1..n} floor(m), with floor(0)! = 1."""
    if n < 0:
        raise ValueError(f"q_factorial requires n >= 0, got {n}")
    _check_level(k)
    out = 1.0
    for m in range(1, n + 1):
        out *= q_integer(m, k)
    return out


def fusion_product(a: int, b: int, k: int) -> tuple[int, ...]:
    """Fusion outcomes of charges a and b at level k, in doubled labels.

    Returns every c with |a-b| <= c <= min(a+b, 2k-a-b) in steps of 2.
    """
    _check_level(k)
    _check_label(a, k)
    _check_label(b, k)
    lo = abs(a - b)
    hi = min(a + b, 2 * k - a - b)
    return tuple(range(lo, hi + 1, 2))


def is_admissible(a: int, b: int, c: int, k: int) -> bool:
    """True when c is a fusion outcome of a and b."""
    return c in fusion_product(a, b, k)


@dataclass(frozen=True)
class FusionTable:
    """Complete fusion table of one level-k model.

    ``entries`` maps ordered charge pairs to the tuple of outcomes; it is
    symmetric under swapping the pair.
    """

    k: int
    charges: tuple[int, ...]
    entries: dict[tuple[int, int], tuple[int, ...]]

    def outcomes(self, a: int, b: int) -> tuple[int, ...]:
        return self.entries[(a, b)]


def fusion_table(k: int, integer_sector: bool | None = None) -> FusionTable:
    """Build the fusion table over all charges of the level-k model.

    For odd k the half-integer charges are dual to the integer ones, so the
    table is restricted to the integer-spin sector by default; pass
    ``integer_sector=False`` to keep all charges.
    """
    _check_level(k)
    if integer_sector is None:
        integer_sector = k % 2 == 1
    if integer_sector:
        charges = tuple(range(0, k + 1, 2))
    else:
        charges = tuple(range(k + 1))
    entries = {
        (a, b): fusion_product(a, b, k) for a in charges for b in charges
    }
    return FusionTable(k=k, charges=charges, entries=entries)


def bratteli_dimension(k: int, n_anyons: int, anyon: int,
                       total: int | None = None) -> int:
    """Number of fusion paths for a chain of identical anyons.

    Counts labelled paths in the fusion diagram of ``n_anyons`` copies of
    ``anyon`` fused sequentially, starting from the charge of the first
    anyon.  Summed over terminal charges when ``total`` is None, otherwise
    restricted to paths ending at ``total``.  For the Fibonacci anyon this
    yields 1, 2, 3, 5, 8, ... as anyons are added.
    """
    if n_anyons < 1:
        raise ValueError(f"need at least one anyon, got {n_anyons}")
    _check_label(anyon, k)
    if total is not None:
        _check_label(total, k)
    paths = {anyon: 1}
    for _ in range(n_anyons - 1):
        nxt: dict[int, int] = {}
        for charge, count in paths.items():
            for out in fusion_product(charge, anyon, k):
                nxt[out] = nxt.get(out, 0) + count
        paths = nxt
    if total is None:
        return sum(paths.values())
    return paths.get(total, 0)


def triangle_coefficient(a: int, b: int, c: int, k: int) -> float:
    """q-deformed triangle coefficient of an admissible charge triple."""
    if not is_admissible(a, b, c, k):
        raise ValueError(f"inadmissible triple ({a},{b},{c}) at k={k}")
    return math.sqrt(
        q_factorial((-a + b + c) // 2, k)
        * q_factorial((a - b + c) // 2, k)
        * q_factorial((a + b - c) // 2, k)
        / q_factorial((a + b + c) // 2 + 1, k)
    )


def quantum_6j(a: int, b: int, e: int, c: int, d: int, f: int, k: int) -> float:
    """q-deformed Wigner 6j symbol (bare alternating sum, no triangle factors).

    The triangles (a,b,e), (c,d,e), (b,c,f) and (a,d,f) must all be
    admissible.  The summation index runs over exactly those integers for
    which every q-factorial argument is a non-negative integer.
    """
    for triple in ((a, b, e), (c, d, e), (b, c, f), (a, d, f)):
        if not is_admissible(*triple, k):
            raise ValueError(f"inadmissible triple {triple} at k={k}")
    lo = max((a + b + e) // 2, (c + d + e) // 2, (b + c + f) // 2,
             (a + d + f) // 2)
    hi = min((a + b + c + d) // 2, (a + c + e + f) // 2, (b + d + e + f) // 2)
    if hi < lo:
        raise ValueError(
            f"empty summation range for 6j({a},{b},{e};{c},{d},{f}) at k={k}")
    total = 0.0
    for n in range(lo, hi + 1):
        den = (
            q_factorial((a + b + c + d) // 2 - n, k)
            * q_factorial((a + c + e + f) // 2 - n, k)
            * q_factorial((b + d + e + f) // 2 - n, k)
            * q_factorial(n - (a + b + e) // 2, k)
            * q_factorial(n - (c + d + e) // 2, k)
            * q_factorial(n - (b + c + f) // 2, k)
            * q_factorial(n - (a + d + f) // 2, k)
        )
        total += (-1) ** n * q_factorial(n + 1, k) / den
    return total


def f_channels(a: int, b: int, c: int, d: int,
               k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Row (e) and column (f) channel labels of the F-move a,b,c -> d."""
    es = tuple(e for e in fusion_product(a, b, k) if is_admissible(e, c, d, k))
    fs = tuple(f for f in fusion_product(b, c, k) if is_admissible(a, f, d, k))
    return es, fs


def f_matrix(a: int, b: int, c: int, d: int, k: int) -> np.ndarray:
    """Unitary F-move matrix for external charges a,b,c fusing to d.

    Rows are indexed by the intermediate channel e of (a,b), columns by the
    channel f of (b,c), both in the order given by :func:`f_channels`.
    Entries combine the triangle coefficients, channel quantum dimensions
    and the quantum 6j symbol; the result is sign-gauged so the first row
    and column are non-negative (standard unitary form).
    """
    es, fs = f_channels(a, b, c, d, k)
    if not es or not fs:
        raise ValueError(
            f"no admissible channels for F({a},{b},{c};{d}) at k={k}")
    m = np.empty((len(es), len(fs)))
    sign = (-1) ** ((a + b + c + d) // 2)
    for i, e in enumerate(es):
        for j, f in enumerate(fs):
            m[i, j] = (
                sign
                * triangle_coefficient(a, b, e, k)
                * triangle_coefficient(c, d, e, k)
                * triangle_coefficient(b, c, f, k)
                * triangle_coefficient(a, d, f, k)
                * math.sqrt(q_integer(e + 1, k) * q_integer(f + 1, k))
                * quantum_6j(a, b, e, c, d, f, k)
            )
    for i in range(m.shape[0]):
        if m[i, 0] < 0:
            m[i, :] *= -1.0
    for j in range(m.shape[1]):
        if m[0, j] < 0:
            m[:, j] *= -1.0
    return m


def r_phase(a: int, b: int, c: int, k: int) -> complex:
    """Exchange phase R^c_ab acquired when charges a and b braid in channel c."""
    if not is_admissible(a, b, c, k):
        raise ValueError(f"inadmissible triple ({a},{b},{c}) at k={k}")
    sign = (-1) ** ((a + b - c) // 2)
    expo = -(a * (a + 2) + b * (b + 2) - c * (c + 2)) / 8.0
    return sign * complex(np.exp(2j * np.pi * expo / (k + 2)))


@dataclass(frozen=True)
class QubitEncoding:
    """Qubit carried by three anyons of spin (k-1)/2 with matching total charge.

    The fusion space of two such anyons is spanned by the spin-0 and spin-1
    channels, giving the two-dimensional computational space.
    """

    k: int
    anyon: int
    channels: tuple[int, int]
    total: int


def qubit_encoding(k: int) -> QubitEncoding:
    if k not in SUPPORTED_LEVELS:
        raise ValueError(f"unsupported level k={k}; supported: {SUPPORTED_LEVELS}")
    anyon = k - 1
    channels = fusion_product(anyon, anyon, k)
    if channels != (0, 2):
        raise ValueError(f"encoding anyon {anyon} has channels {channels}, "
                         "expected a two-dimensional fusion space (0, 2)")
    return QubitEncoding(k=k, anyon=anyon, channels=(0, 2), total=anyon)


def qubit_generators(k: int, conjugate: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """2x2 braid generators (sigma1, sigma2) of the level-k qubit encoding.

    sigma1 is diagonal in the fusion basis with the exchange phases of the
    two channels; sigma2 is the F-conjugate ``F sigma1 F^-1``.  Both are
    unitary and satisfy the braid relation
    ``sigma1 sigma2 sigma1 = sigma2 sigma1 sigma2``.

    ``conjugate=True`` returns the mirror (complex-conjugate) convention.
    """
    enc = qubit_encoding(k)
    a = enc.anyon
    s1 = np.diag([r_phase(a, a, 0, k), r_phase(a, a, 2, k)])
    fm = f_matrix(a, a, a, a, k).astype(complex)
    s2 = fm @ s1 @ fm.conj().T
    if conjugate:
        s1, s2 = s1.conj(), s2.conj()
    return s1, s2
