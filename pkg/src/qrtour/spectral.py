"""Floating-point spectral analysis of the tournament sign matrix.

A is skew-symmetric, so its eigenvalues are purely imaginary and come in
conjugate pairs +-i*sigma; all spectral quantities used here depend only on
the moduli sigma.  Those are obtained from the Gram matrix -A^2 = A^T A,
which is real symmetric positive semidefinite with eigenvalues sigma^2, so a
real symmetric solver suffices and no complex arithmetic is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Tournament, sign_array
from .errors import InternalInvariantError, ResourceLimitError

DEFAULT_TOL = 1e-10
DEFAULT_MAX_SWEEPS = 30
DEFAULT_SPECTRUM_GUARD = 512


@dataclass(frozen=True)
class GramMatrix:
    """-A^2 for a tournament sign matrix A, as exact-integer-valued floats."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)


@dataclass(frozen=True)
class SpectralSummary:
    """Result of a spectral computation.

    ``lambda1_abs`` is the largest eigenvalue modulus of A.  When the full
    spectrum was computed, ``singular_values`` lists all n moduli in
    descending order.  ``residual`` is the convergence measure of the method
    that produced the result; ``converged`` is False when the iteration
    budget ran out, in which case the values are best estimates.
    """

    lambda1_abs: float
    singular_values: tuple[float, ...] | None
    iterations: int
    residual: float
    converged: bool


def gram(t: Tournament) -> GramMatrix:
    """Gram matrix -A^2, computed exactly in integers and converted once.

    Entries have magnitude at most n-1, so the float conversion is exact.
    The diagonal is constantly n-1 (each vertex meets every other vertex).
    """
    a = sign_array(t)
    prod = a @ a  # entries bounded by n: int64 is always safe here
    g = (-prod).astype(np.float64)
    n = t.n
    if not np.array_equal(g, g.T):
        raise InternalInvariantError("Gram matrix is not symmetric")
    if not np.all(np.diag(g) == n - 1):
        raise InternalInvariantError("Gram diagonal must equal n-1")
    return GramMatrix(n=n, entries=g)


def _start_vector(n: int) -> np.ndarray:
    # fixed deterministic start: v_i = 1 + (i mod 3), normalized
    v = 1.0 + (np.arange(n) % 3)
    return v / np.linalg.norm(v)


def lambda1(
    t: Tournament,
    tol: float = DEFAULT_TOL,
    max_iter: int | None = None,
    gram_matrix: GramMatrix | None = None,
) -> SpectralSummary:
    """|lambda_1(A)| via power iteration on the Gram matrix.

    Iterates x <- Sx / ||Sx|| from the fixed start vector and stops when the
    Rayleigh-quotient residual ||Sx - theta*x|| / theta drops to ``tol``;
    the result is sqrt(theta).  Convergence is measured on the eigenvalue
    only, so repeated dominant eigenvalues (e.g. regular tournaments) are
    unproblematic.  Exhausting ``max_iter`` yields converged=False with the
    best estimate, not an exception.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    n = t.n
    if max_iter is None:
        max_iter = 10 * n + 1000
    if max_iter < 1:
        raise ValueError(f"iteration budget must be at least 1, got {max_iter}")
    s = (gram_matrix or gram(t)).entries
    x = _start_vector(n)
    theta = 0.0
    residual = math.inf
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        y = s @ x
        theta = float(x @ y)
        norm_y = float(np.linalg.norm(y))
        if theta <= 0.0:
            # PSD: a vanishing quadratic form means x is (numerically) in the
            # kernel, and the dominant value along this orbit is 0
            theta = 0.0
            residual = norm_y
            converged = norm_y <= tol
            break
        residual = float(np.linalg.norm(y - theta * x)) / theta
        if residual <= tol:
            converged = True
            break
        x = y / norm_y
    lam = math.sqrt(theta)
    if lam > n + 1e-9:
        raise InternalInvariantError(f"|lambda1| = {lam} exceeds n = {n}")
    return SpectralSummary(
        lambda1_abs=lam,
        singular_values=None,
        iterations=iterations,
        residual=residual,
        converged=converged,
    )


def _offdiag_norm(s: np.ndarray) -> float:
    off = s - np.diag(np.diag(s))
    return float(np.linalg.norm(off))


def _jacobi_sweep(s: np.ndarray) -> None:
    """One cyclic sweep of two-sided Jacobi rotations, in place."""
    n = s.shape[0]
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = s[p, q]
            if apq == 0.0:
                continue
            theta = (s[q, q] - s[p, p]) / (2.0 * apq)
            tval = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
            c = 1.0 / math.sqrt(tval * tval + 1.0)
            sn = tval * c
            tau = sn / (1.0 + c)
            h = tval * apq
            s[p, p] -= h
            s[q, q] += h
            s[p, q] = s[q, p] = 0.0
            mask = np.ones(n, dtype=bool)
            mask[p] = mask[q] = False
            rp = s[mask, p].copy()
            rq = s[mask, q].copy()
            new_p = rp - sn * (rq + tau * rp)
            new_q = rq + sn * (rp - tau * rq)
            s[mask, p] = new_p
            s[p, mask] = new_p
            s[mask, q] = new_q
            s[q, mask] = new_q


def full_spectrum(
    t: Tournament,
    tol: float = DEFAULT_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    guard: int = DEFAULT_SPECTRUM_GUARD,
) -> SpectralSummary:
    """All n eigenvalue moduli of A via cyclic Jacobi on the Gram matrix.

    Sweeps until the off-diagonal Frobenius norm falls to ``tol`` (at most
    ``max_sweeps`` sweeps); eigenvalues are the converged diagonal, clamped
    at zero before the square root.  Guarded to n <= ``guard`` because the
    sweep cost is cubic per pass.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    n = t.n
    if n > guard:
        raise ResourceLimitError(f"full spectrum is guarded to n <= {guard}, got {n}")
    s = gram(t).entries.copy()
    sweeps = 0
    off = _offdiag_norm(s)
    while off > tol and sweeps < max_sweeps:
        _jacobi_sweep(s)
        sweeps += 1
        off = _offdiag_norm(s)
    eigs = np.clip(np.diag(s), 0.0, None)
    svals = np.sqrt(np.sort(eigs)[::-1])
    lam = float(svals[0])
    if lam > n + 1e-9:
        raise InternalInvariantError(f"|lambda1| = {lam} exceeds n = {n}")
    return SpectralSummary(
        lambda1_abs=lam,
        singular_values=tuple(float(v) for v in svals),
        iterations=sweeps,
        residual=off,
        converged=off <= tol,
    )


def moment_crosscheck(
    t: Tournament, k: int, summary: SpectralSummary | None = None
) -> float:
    """Relative gap between exact tr(A^k) and the spectral moment sum.

    Eigenvalues +-i*sigma contribute (+-i)^k sigma^k, so for even k the trace
    equals (-1)^(k/2) * sum(sigma^k).  Returns
    |exact - float| / max(1, |exact|); a large value means the float
    spectrum and the exact integer route disagree.

    Pass a ``summary`` from ``full_spectrum`` to reuse an already-computed
    spectrum across several k.
    """
    if k < 2 or k % 2 != 0:
        raise ValueError(f"moment comparison needs even k >= 2, got {k}")
    from .exactcount import mat_pow_trace, sign_matrix

    if summary is None or summary.singular_values is None:
        summary = full_spectrum(t)
    exact = mat_pow_trace(sign_matrix(t), k)
    sign = -1.0 if (k // 2) % 2 else 1.0
    approx = sign * float(np.sum(np.asarray(summary.singular_values) ** k))
    return abs(exact - approx) / max(1, abs(exact))


@dataclass(frozen=True)
class CertificateReport:
    """Spectral quasi-randomness verdict for one tournament."""

    status: str  # "certified", "refused", or "indeterminate"
    ratio: float  # |lambda1| / n; small ratios are the quasi-random regime
    threshold: float
    summary: SpectralSummary


def quasirandom_certificate(
    t: Tournament,
    threshold: float,
    tol: float = DEFAULT_TOL,
    max_iter: int | None = None,
) -> CertificateReport:
    """Certify |lambda1|/n <= threshold, or refuse with the measured ratio.

    The threshold is caller policy; the report always carries the ratio so
    other thresholds can be applied after the fact.  A non-converged power
    iteration yields status "indeterminate".
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie strictly between 0 and 1, got {threshold}")
    summary = lambda1(t, tol=tol, max_iter=max_iter)
    ratio = summary.lambda1_abs / t.n
    if not summary.converged:
        status = "indeterminate"
    elif ratio <= threshold:
        status = "certified"
    else:
        status = "refused"
    return CertificateReport(
        status=status, ratio=ratio, threshold=threshold, summary=summary
    )
