"""Pair classification, overlap functions, minimal projection gaps, separation certificates.

All gap computations run in exact rational arithmetic.  Internally a rational
parameter b = p/q scales every depth-n projection to an integer over the
common denominator (2q)^n, so sorting and differencing stay exact:

    phi_1:  V' = (q+p)*V - (2q)^n      phi_2:  V' = -2p*V
    phi_3:  V' = (q+p)*V + (2q)^n

The pruned gap sorts the 3^n values and takes the minimal adjacent
difference; the exhaustive mode recomputes every projection independently and
minimizes over all pairs, serving as the oracle for the pruned path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DepthCapError, ParameterError
from .systems import build_system, check_b, project_word
from .words import Word, check_word, enumerate_words

EXHAUSTIVE_CAP = 8
PRUNED_CAP = 12

_INT64_SAFE = 2**62


def classify_pair(i: Sequence[int], j: Sequence[int]) -> frozenset:
    """Every class among A1/A2/A3 the pair belongs to (classes overlap)."""
    i, j = check_word(i), check_word(j)
    if not i or not j:
        raise ValueError("classify_pair needs nonempty words")
    head = (i[0], j[0])
    tags = set()
    if head != (1, 3):
        tags.add("A1")
    if head != (3, 1):
        tags.add("A2")
    if head in ((1, 3), (3, 1)):
        tags.add("A3")
    return frozenset(tags)


def f_value(k: int, pi_i, pi_j, b):
    """F^k evaluated at given projection values (usable with fixed-point limits)."""
    if k == 1:
        return b * pi_i + (1 + b) / 2 * pi_j - 1
    if k == 2:
        return b * pi_i + (1 + b) / 2 * pi_j + 1
    if k == 3:
        return pi_i - pi_j
    raise ValueError(f"k must be 1, 2 or 3, got {k}")


def f_function(k: int, i: Sequence[int], j: Sequence[int], b: Fraction):
    """F^k at b for finite words, via the finite-word projection convention."""
    b = _check_rational_b(b)
    system = build_system("conjugate", b)
    return f_value(k, project_word(system, i), project_word(system, j), b)


def _check_rational_b(b) -> Fraction:
    if not isinstance(b, (Fraction, int)):
        raise ParameterError(f"exact separation arithmetic needs a rational b, got {b!r}")
    return check_b(Fraction(b))


def _scaled_level(b: Fraction, n: int) -> list:
    """Integer-scaled projections of all of Sigma_n in lexicographic word order."""
    p, q = b.numerator, b.denominator
    vals = [0]
    unit = 1
    for _ in range(n):
        unit *= 2 * q
        head = q + p
        vals = (
            [head * v - unit for v in vals]
            + [-2 * p * v for v in vals]
            + [head * v + unit for v in vals]
        )
    return vals


def _index_to_word(idx: int, n: int) -> Word:
    digits = []
    for _ in range(n):
        digits.append(idx % 3 + 1)
        idx //= 3
    return tuple(reversed(digits))


def delta_n(b, n: int, mode: str = "pruned") -> Fraction:
    """Minimal gap between distinct depth-n projections (0 when two coincide)."""
    gap, _ = delta_n_detail(b, n, mode)
    return gap


def delta_n_detail(b, n: int, mode: str = "pruned") -> tuple:
    """(gap, witnessing word pair) for the minimal depth-n projection gap."""
    b = _check_rational_b(b)
    if n < 1:
        raise ParameterError(f"depth n must be >= 1, got {n}")
    if mode == "pruned":
        if n > PRUNED_CAP:
            raise DepthCapError(f"pruned mode capped at n <= {PRUNED_CAP}, got {n}")
        scaled = _scaled_level(b, n)
        order = sorted(range(len(scaled)), key=scaled.__getitem__)
        best = None
        pair = None
        for u, v in zip(order, order[1:]):
            d = scaled[v] - scaled[u]
            if best is None or d < best:
                best, pair = d, (u, v)
                if best == 0:
                    break
        unit = (2 * b.denominator) ** n
        return Fraction(best, unit), (_index_to_word(pair[0], n), _index_to_word(pair[1], n))
    if mode == "exhaustive":
        if n > EXHAUSTIVE_CAP:
            raise DepthCapError(f"exhaustive mode capped at n <= {EXHAUSTIVE_CAP}, got {n}")
        return _delta_exhaustive(b, n)
    raise ParameterError(f"mode must be 'pruned' or 'exhaustive', got {mode!r}")


def _delta_exhaustive(b: Fraction, n: int) -> tuple:
    """All-pairs oracle: every projection recomputed independently per word."""
    system = build_system("conjugate", b)
    words = list(enumerate_words(n, cap=max(n, 16)))
    unit = (2 * b.denominator) ** n
    scaled = []
    for w in words:
        v = project_word(system, w) * unit
        assert v.denominator == 1
        scaled.append(v.numerator)
    bound = max(abs(v) for v in scaled)
    if 2 * bound < _INT64_SAFE and len(scaled) > 64:
        gap, (ia, ib) = _all_pairs_min_numpy(np.asarray(scaled, dtype=np.int64))
    else:
        gap, (ia, ib) = _all_pairs_min_python(scaled)
    return Fraction(int(gap), unit), (words[ia], words[ib])


def _all_pairs_min_numpy(vals: np.ndarray, chunk: int = 512) -> tuple:
    n = len(vals)
    best = None
    pair = (0, 1)
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        diffs = np.abs(vals[lo:hi, None] - vals[None, :])
        rows = np.arange(lo, hi)
        diffs[rows - lo, rows] = np.iinfo(np.int64).max  # mask self-pairs
        flat = np.argmin(diffs)
        r, c = divmod(int(flat), n)
        d = int(diffs[r, c])
        if best is None or d < best:
            best, pair = d, (lo + r, c)
    return best, pair


def _all_pairs_min_python(vals: list) -> tuple:
    best = None
    pair = (0, 1)
    for i in range(len(vals)):
        vi = vals[i]
        for j in range(i + 1, len(vals)):
            d = abs(vi - vals[j])
            if best is None or d < best:
                best, pair = d, (i, j)
    return best, pair


@dataclass(frozen=True)
class SeparationReport:
    b: Fraction
    depths: tuple
    gaps: tuple  # Fractions, one per depth
    epsilon: float  # min_n gap_n^(1/n)
    passed: bool  # all gaps positive
    floors: tuple  # comparison column (b*eps/2)^n
    witness: tuple | None  # word pair achieving a zero gap, if any

    def rows(self) -> list:
        out = []
        for n, g, f in zip(self.depths, self.gaps, self.floors):
            rate = float(g) ** (1.0 / n) if g > 0 else 0.0
            out.append({"n": n, "gap": g, "gap_root": rate, "floor": f})
        return out


def verify_sesc(b, n_max: int = 8, mode: str = "pruned") -> SeparationReport:
    """Empirical separation certificate: exact gaps for n = 1..n_max."""
    b = _check_rational_b(b)
    cap = PRUNED_CAP if mode == "pruned" else EXHAUSTIVE_CAP
    if not (1 <= n_max <= cap):
        raise DepthCapError(f"n_max must lie in [1, {cap}] for mode {mode!r}, got {n_max}")
    depths = tuple(range(1, n_max + 1))
    gaps = []
    witness = None
    for n in depths:
        gap, pair = delta_n_detail(b, n, mode)
        gaps.append(gap)
        if gap == 0 and witness is None:
            witness = pair
    passed = all(g > 0 for g in gaps)
    epsilon = min(float(g) ** (1.0 / n) for n, g in zip(depths, gaps)) if passed else 0.0
    floors = tuple((float(b) * epsilon / 2) ** n for n in depths)
    return SeparationReport(
        b=b,
        depths=depths,
        gaps=tuple(gaps),
        epsilon=epsilon,
        passed=passed,
        floors=floors,
        witness=witness,
    )
