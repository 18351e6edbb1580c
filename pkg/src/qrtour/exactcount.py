"""Exact even/odd cycle counting via integer powers of the sign matrix.

A k-cycle is a vertex sequence (v1..vk) with no vertex repeated immediately,
cyclically (so v1 != v2, ..., vk != v1); repeated non-adjacent vertices are
allowed, and each rotation/start counts separately.  A cycle is even when an
even number of its k steps run against the stored edge orientation.

The diagonal of A^k (A the skew-symmetric +-1 sign matrix) counts even minus
odd k-cycles rooted at each vertex, which yields the closed form used by
``even_cycles_trace``; ``brute_force_count`` is the independent enumeration
oracle for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import Tournament, edge_sign, sign_array
from .errors import InternalInvariantError, ResourceLimitError

# int64 matrix products are used only when n * max|a| * max|b| stays below
# this bound, which makes every intermediate sum representable; otherwise the
# multiply falls back to Python integers (numpy object dtype), which never
# overflow.
_INT64_SAFE_BOUND = 2**62

DEFAULT_ENUMERATION_LIMIT = 10**8


class SignMatrix:
    """Dense square matrix of exact integers.

    Multiplication is exact at any magnitude: a provably-safe int64 fast
    path, with arbitrary-precision Python integers beyond it.
    """

    __slots__ = ("n", "_a")

    def __init__(self, array: np.ndarray):
        a = np.asarray(array)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"square matrix required, got shape {a.shape}")
        if a.dtype != object:
            a = a.astype(np.int64)
        self.n = a.shape[0]
        self._a = a

    @classmethod
    def from_rows(cls, rows) -> "SignMatrix":
        return cls(np.array([[int(x) for x in row] for row in rows], dtype=object))

    def entry(self, i: int, j: int) -> int:
        return int(self._a[i, j])

    def rows(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._a]

    def trace(self) -> int:
        return sum(int(self._a[i, i]) for i in range(self.n))

    def max_abs(self) -> int:
        if self.n == 0:
            return 0
        return int(np.max(np.abs(self._a)))

    def __matmul__(self, other: "SignMatrix") -> "SignMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        a, b = self._a, other._a
        if a.dtype != object and b.dtype != object:
            bound = self.n * self.max_abs() * other.max_abs()
            if bound < _INT64_SAFE_BOUND:
                return SignMatrix(a @ b)
        return SignMatrix(a.astype(object) @ b.astype(object))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignMatrix)
            and self.n == other.n
            and bool(np.array_equal(self._a, other._a))
        )

    def __repr__(self) -> str:
        return f"SignMatrix({self.rows()!r})"


def sign_matrix(t: Tournament) -> SignMatrix:
    """Exact sign adjacency matrix of a tournament (skew-symmetric, +-1)."""
    return SignMatrix(sign_array(t))


def mat_pow(m: SignMatrix, k: int) -> SignMatrix:
    """m**k by binary exponentiation; exact at any size."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"exponent must be a positive integer, got {k!r}")
    result = None
    base = m
    while True:
        if k & 1:
            result = base if result is None else result @ base
        k >>= 1
        if not k:
            return result
        base = base @ base


def mat_pow_trace(m: SignMatrix, k: int) -> int:
    """tr(m**k) as an exact integer."""
    p = mat_pow(m, k)
    if m.max_abs() <= 1 and p.max_abs() > m.n ** max(k - 1, 0):
        # entries of the k-th power of a +-1 matrix are bounded by n**(k-1)
        raise InternalInvariantError(
            f"power entries exceed the n**(k-1) growth bound (n={m.n}, k={k})"
        )
    return p.trace()


def total_cycles(n: int, k: int) -> int:
    """Number of k-cycles in any n-vertex tournament: (n-1)**k + (-1)**k (n-1)."""
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    if k < 2:
        raise ValueError(f"cycle length must be at least 2, got {k}")
    return (n - 1) ** k + (-1) ** k * (n - 1)


@dataclass(frozen=True)
class CycleCountReport:
    """Exact cycle-count summary for one (tournament, k)."""

    k: int
    total: int
    even: int
    odd: int
    trace: int
    even_fraction: Fraction | None  # None when there are no k-cycles at all

    def __post_init__(self):
        if self.even < 0 or self.odd < 0 or self.even + self.odd != self.total:
            raise InternalInvariantError("cycle counts are inconsistent")
        if self.k % 2 == 0:
            if self.trace != 2 * self.even - self.total:
                raise InternalInvariantError("trace identity violated for even k")
        else:
            if self.trace != 0 or self.even != self.odd:
                raise InternalInvariantError("odd-k structure violated")


def even_cycles_trace(t: Tournament, k: int) -> CycleCountReport:
    """Exact even/odd k-cycle counts from the trace of the k-th matrix power.

    Even k: tr(A^k) = even - odd, so even = (tr(A^k) + total) / 2.
    Odd k: tr(A^k) vanishes by skew-symmetry and reversal pairs each even
    cycle with an odd one, so even = total / 2 exactly.
    """
    if k < 2:
        raise ValueError(f"cycle length must be at least 2, got {k}")
    n = t.n
    trace = mat_pow_trace(sign_matrix(t), k)
    total = total_cycles(n, k)
    if k % 2 == 0:
        if (trace + total) % 2 != 0:
            raise InternalInvariantError(f"trace/total parity mismatch (n={n}, k={k})")
        even = (trace + total) // 2
    else:
        if trace != 0:
            raise InternalInvariantError(f"nonzero trace {trace} for odd k={k}")
        if total % 2 != 0:
            raise InternalInvariantError(f"odd cycle total {total} for odd k={k}")
        even = total // 2
    frac = Fraction(even, total) if total else None
    return CycleCountReport(
        k=k, total=total, even=even, odd=total - even, trace=trace, even_fraction=frac
    )


def cycle_parity(t: Tournament, seq) -> str:
    """Classify one k-cycle as "even" or "odd".

    ``seq`` lists the k vertices in traversal order; the closing step back to
    seq[0] is implied.  Cyclically adjacent vertices must differ.
    """
    vs = [int(v) for v in seq]
    k = len(vs)
    if k < 2:
        raise ValueError(f"cycle length must be at least 2, got {k}")
    reversals = 0
    for i in range(k):
        u, v = vs[i], vs[(i + 1) % k]
        if u == v:
            raise ValueError(f"vertex {u} repeated immediately at position {i}")
        if edge_sign(t, u, v) < 0:
            reversals += 1
    return "even" if reversals % 2 == 0 else "odd"


def brute_force_count(
    t: Tournament, k: int, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> tuple[int, int]:
    """(even, odd) k-cycle counts by direct enumeration.

    Walks every sequence (v1..vk) with no immediate repeats, cyclically, and
    tallies the parity of reversed steps.  Refuses when n**k exceeds
    ``limit``; this is the reference oracle for ``even_cycles_trace`` and is
    deliberately independent of the matrix-power route.
    """
    if k < 2:
        raise ValueError(f"cycle length must be at least 2, got {k}")
    n = t.n
    if n**k > limit:
        raise ResourceLimitError(
            f"enumeration of {n}**{k} = {n ** k} sequences exceeds the limit {limit}"
        )
    rev = [[1 if x < 0 else 0 for x in row] for row in sign_array(t).tolist()]
    even = 0
    total = 0
    rng = range(n)

    def extend(first: int, prev: int, pos: int, parity: int) -> None:
        nonlocal even, total
        row = rev[prev]
        if pos == k - 1:
            for w in rng:
                if w != prev and w != first:
                    total += 1
                    if (parity + row[w] + rev[w][first]) % 2 == 0:
                        even += 1
        else:
            for w in rng:
                if w != prev:
                    extend(first, w, pos + 1, parity + row[w])

    for first in rng:
        extend(first, first, 1, 0)
    return even, total - even


@dataclass(frozen=True)
class BoundCheckResult:
    """Outcome of the even-count bound test for one even k."""

    satisfied: bool
    k: int
    even: int
    trace: int
    bound: int  # ((n-1)**k + (n-1)) / 2, the even count of a perfectly balanced spectrum
    side: str  # "at_least" for k = 0 mod 4, "at_most" for k = 2 mod 4


def ec_bound_check(t: Tournament, k: int) -> BoundCheckResult:
    """Check the one-sided even-count bound forced by the spectrum of A^k.

    All eigenvalues of A^k share a sign for even k (non-negative when
    k = 0 mod 4, non-positive when k = 2 mod 4), so tr(A^k) and the even
    count sit on a known side of half the cycle total.  A violated result
    indicates an arithmetic bug, never a property of the input.
    """
    if k % 2 != 0 or k < 4:
        raise ValueError(f"bound check needs even k >= 4, got {k}")
    report = even_cycles_trace(t, k)
    bound = report.total // 2
    if k % 4 == 0:
        ok = report.trace >= 0 and report.even >= bound
        side = "at_least"
    else:
        ok = report.trace <= 0 and report.even <= bound
        side = "at_most"
    return BoundCheckResult(
        satisfied=ok, k=k, even=report.even, trace=report.trace, bound=bound, side=side
    )
