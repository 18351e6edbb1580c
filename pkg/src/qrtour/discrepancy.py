"""Subset discrepancy: exact evaluation, maximization, and the spectral cap.

The discrepancy of (X, Y) is sum over v in X of |d+(v,Y) - d-(v,Y)|.  The
sum is monotone in X, so all maximization routines fix X = V and search over
Y only; per-vertex witness signs are reported so any sub-X value can be
recovered.  Writing x for the sign vector of the differences and y for the
indicator of Y, the value equals x^T A y, which is capped by
|lambda1(A)| * sqrt(|X| |Y|) <= n * |lambda1(A)|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .core import CoinStream, Tournament, sign_array
from .errors import InternalInvariantError, ResourceLimitError, SpectralNonConvergence
from .spectral import lambda1

DEFAULT_EXHAUSTIVE_GUARD = 24
_BOUND_SLACK = 1e-6


@dataclass(frozen=True)
class DiscrepancyReport:
    """Best subset found by one search method, with its certificates."""

    method: str  # "exhaustive", "local_search", "sample", or "given"
    best_Y: tuple[int, ...]
    value: int
    normalized: Fraction  # value / n^2
    spectral_bound: float  # n * |lambda1|
    witness_signs: tuple[int, ...]  # sign of d+(v, best_Y) - d-(v, best_Y) per v


def _validated_subset(n: int, ys: Iterable[int]) -> tuple[int, ...]:
    s = sorted({int(y) for y in ys})
    if s and (s[0] < 0 or s[-1] >= n):
        bad = s[0] if s[0] < 0 else s[-1]
        raise ValueError(f"subset vertex {bad} out of range for n={n}")
    return tuple(s)


def _diff_vector(a: np.ndarray, ys: tuple[int, ...]) -> np.ndarray:
    # d+(v, Y) - d-(v, Y) = sum over y in Y of A[v, y]
    if not ys:
        return np.zeros(a.shape[0], dtype=np.int64)
    return a[:, list(ys)].sum(axis=1, dtype=np.int64)


def disc_given(t: Tournament, xs: Iterable[int], ys: Iterable[int]) -> int:
    """Exact discrepancy of the pair (X, Y)."""
    xset = _validated_subset(t.n, xs)
    yset = _validated_subset(t.n, ys)
    if not xset or not yset:
        return 0
    d = _diff_vector(sign_array(t), yset)
    return int(np.abs(d[list(xset)]).sum())


def witness_vectors(t: Tournament, ys: Iterable[int]) -> tuple[tuple[int, ...], int]:
    """Sign vector x realizing the discrepancy of (V, Y), and its value.

    x_v = sign(d+(v,Y) - d-(v,Y)), with 0 on exact ties (a tie contributes
    nothing, so the realized value is unchanged and the witness is canonical
    and reversal-symmetric).  The value equals x^T A y = disc_given(V, Y).
    """
    yset = _validated_subset(t.n, ys)
    d = _diff_vector(sign_array(t), yset)
    x = tuple(int(v) for v in np.sign(d))
    return x, int(np.abs(d).sum())


def spectral_upper_bound(
    t: Tournament, tol: float = 1e-10, max_iter: int | None = None
) -> float:
    """n * |lambda1(A)|, an upper bound for every disc_given(X, Y)."""
    summary = lambda1(t, tol=tol, max_iter=max_iter)
    if not summary.converged:
        raise SpectralNonConvergence(
            f"power iteration stopped at residual {summary.residual:.3e}"
        )
    return t.n * summary.lambda1_abs


def _build_report(
    t: Tournament, method: str, ys: tuple[int, ...], expected_value: int | None = None
) -> DiscrepancyReport:
    signs, value = witness_vectors(t, ys)
    if expected_value is not None and value != expected_value:
        raise InternalInvariantError(
            f"search value {expected_value} disagrees with witness value {value}"
        )
    if value > t.n * (t.n - 1):
        raise InternalInvariantError(f"discrepancy {value} exceeds n(n-1)")
    bound = spectral_upper_bound(t)
    if value > bound + _BOUND_SLACK:
        raise InternalInvariantError(
            f"discrepancy {value} exceeds the spectral bound {bound}"
        )
    return DiscrepancyReport(
        method=method,
        best_Y=ys,
        value=value,
        normalized=Fraction(value, t.n**2),
        spectral_bound=bound,
        witness_signs=signs,
    )


def disc_given_report(t: Tournament, ys: Iterable[int]) -> DiscrepancyReport:
    """Full report for a caller-chosen Y (method "given")."""
    return _build_report(t, "given", _validated_subset(t.n, ys))


def disc_exhaustive(
    t: Tournament, guard: int = DEFAULT_EXHAUSTIVE_GUARD
) -> DiscrepancyReport:
    """Exact maximum of disc_given(V, Y) over all 2^n subsets Y.

    Visits subsets in Gray-code order, so each step flips one vertex and the
    difference counters update in O(n); ties keep the lowest Gray index.
    Guarded because the sweep is 2^n * n work.
    """
    n = t.n
    if n > guard:
        raise ResourceLimitError(
            f"exhaustive sweep is guarded to n <= {guard}, got {n}; "
            "use the local-search method instead"
        )
    cols = np.ascontiguousarray(sign_array(t).T)
    diff = np.zeros(n, dtype=np.int64)
    best_value = 0
    best_mask = 0
    prev_code = 0
    for i in range(1, 1 << n):
        code = i ^ (i >> 1)
        flipped = (code ^ prev_code).bit_length() - 1
        if code >> flipped & 1:
            diff += cols[flipped]
        else:
            diff -= cols[flipped]
        value = int(np.abs(diff).sum())
        if value > best_value:
            best_value = value
            best_mask = code
        prev_code = code
    ys = tuple(v for v in range(n) if best_mask >> v & 1)
    return _build_report(t, "exhaustive", ys, best_value)


def _hill_climb(cols: np.ndarray, member: np.ndarray) -> tuple[np.ndarray, int]:
    """First-improvement single-flip ascent with fixed scan order 0..n-1."""
    n = member.shape[0]
    diff = cols[member].sum(axis=0, dtype=np.int64) if member.any() else np.zeros(
        n, dtype=np.int64
    )
    value = int(np.abs(diff).sum())
    improved = True
    while improved:
        improved = False
        for u in range(n):
            step = -1 if member[u] else 1
            cand = diff + step * cols[u]
            cand_value = int(np.abs(cand).sum())
            if cand_value > value:
                member[u] = not member[u]
                diff = cand
                value = cand_value
                improved = True
    return member, value


def disc_localsearch(t: Tournament, restarts: int, seed: int) -> DiscrepancyReport:
    """Best single-flip local maximum over seeded random restarts.

    Deterministic in (t, restarts, seed).  The result is a lower bound on
    the true maximum; ties across restarts keep the earliest restart.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be at least 1, got {restarts}")
    n = t.n
    cols = np.ascontiguousarray(sign_array(t).T)
    coins = CoinStream(seed)
    best_value = -1
    best_member = None
    for _ in range(restarts):
        member = coins.take(n).astype(bool)
        member, value = _hill_climb(cols, member)
        if value > best_value:
            best_value = value
            best_member = member.copy()
    ys = tuple(int(v) for v in np.flatnonzero(best_member))
    return _build_report(t, "local_search", ys, best_value)


def disc_sample(t: Tournament, samples: int, seed: int) -> DiscrepancyReport:
    """Best of ``samples`` uniformly drawn subsets; a cheap lower bound."""
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    n = t.n
    a = sign_array(t)
    coins = CoinStream(seed)
    best_value = -1
    best_member = None
    for _ in range(samples):
        member = coins.take(n).astype(bool)
        d = a[:, member].sum(axis=1, dtype=np.int64) if member.any() else np.zeros(
            n, dtype=np.int64
        )
        value = int(np.abs(d).sum())
        if value > best_value:
            best_value = value
            best_member = member
    ys = tuple(int(v) for v in np.flatnonzero(best_member))
    return _build_report(t, "sample", ys, best_value)
