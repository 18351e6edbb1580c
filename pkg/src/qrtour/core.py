"""Tournament data model, generators, degree queries, and .trn serialization.

A tournament on n labeled vertices (0..n-1) stores one orientation bit per
unordered pair {u, v} with u < v, in lexicographic pair order: bit 1 means
u -> v, bit 0 means v -> u.  Values are immutable; every function here is
pure.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ParseError

_TRN_MAGIC = b"TRN1"
_SEED_MAX = 2**64


class CoinStream:
    """Deterministic fair-coin source: the top bit of each 64-bit PCG64 output.

    PCG64's raw output stream is fixed by the generator's definition, so the
    coins drawn for a given seed are identical on every platform and library
    version.
    """

    def __init__(self, seed: int):
        if not isinstance(seed, int) or not 0 <= seed < _SEED_MAX:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
        self._bitgen = np.random.PCG64(seed)

    def take(self, count: int) -> np.ndarray:
        """Next ``count`` coins as a uint8 array of 0s and 1s."""
        if count == 0:
            return np.zeros(0, dtype=np.uint8)
        raw = self._bitgen.random_raw(count)
        return (raw >> 63).astype(np.uint8)


def pair_index(n: int, u: int, v: int) -> int:
    """Index of pair (u, v), u < v, in the lexicographic pair order."""
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


@dataclass(frozen=True)
class Tournament:
    """Orientation of the complete graph on ``n`` vertices.

    ``bits[pair_index(n, u, v)]`` is 1 if u -> v and 0 if v -> u, for u < v.
    """

    n: int
    bits: bytes

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"vertex count must be a positive integer, got {self.n!r}")
        expected = self.n * (self.n - 1) // 2
        if len(self.bits) != expected:
            raise ValueError(
                f"need {expected} orientation bits for n={self.n}, got {len(self.bits)}"
            )
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("orientation bits must be 0 or 1")


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for one tournament family.

    kind: one of "random", "transitive", "rotational", "paley".
    n:    vertex count (the prime p for the paley family).
    seed: unsigned 64-bit seed, used by the random family only.
    """

    kind: str
    n: int
    seed: int | None = None


def _check_vertex(n: int, v: int, role: str = "vertex") -> None:
    if not isinstance(v, (int, np.integer)) or not 0 <= v < n:
        raise ValueError(f"{role} {v!r} out of range for n={n}")


def edge_sign(t: Tournament, u: int, v: int) -> int:
    """+1 if u -> v, -1 if v -> u, 0 if u == v."""
    _check_vertex(t.n, u)
    _check_vertex(t.n, v)
    if u == v:
        return 0
    if u < v:
        return 1 if t.bits[pair_index(t.n, u, v)] else -1
    return -1 if t.bits[pair_index(t.n, v, u)] else 1


def _check_subset(n: int, ys: Iterable[int]) -> frozenset:
    s = frozenset(int(y) for y in ys)
    for y in s:
        _check_vertex(n, y, "subset vertex")
    return s


def d_plus(t: Tournament, v: int, ys: Iterable[int]) -> int:
    """Number of edges directed from v into the vertex set ``ys``."""
    _check_vertex(t.n, v)
    s = _check_subset(t.n, ys)
    return sum(1 for y in s if y != v and edge_sign(t, v, y) > 0)


def d_minus(t: Tournament, v: int, ys: Iterable[int]) -> int:
    """Number of edges directed from the vertex set ``ys`` into v."""
    _check_vertex(t.n, v)
    s = _check_subset(t.n, ys)
    return sum(1 for y in s if y != v and edge_sign(t, v, y) < 0)


@functools.lru_cache(maxsize=32)
def sign_array(t: Tournament) -> np.ndarray:
    """The n x n sign adjacency matrix as a read-only int64 array.

    Entry (u, v) is +1 if u -> v, -1 if v -> u, 0 on the diagonal; the
    matrix is skew-symmetric.  Derived on demand from the orientation bits,
    cached because tournaments are immutable.
    """
    n = t.n
    a = np.zeros((n, n), dtype=np.int64)
    if n > 1:
        iu, ju = np.triu_indices(n, 1)
        b = np.frombuffer(t.bits, dtype=np.uint8).astype(np.int64)
        a[iu, ju] = 2 * b - 1
        a[ju, iu] = 1 - 2 * b
    a.setflags(write=False)
    return a


# --- generators ---------------------------------------------------------


def random_tournament(n: int, seed: int) -> Tournament:
    """Uniform random tournament: one fair coin per pair, lexicographic order.

    A pure function of (n, seed); see ``CoinStream`` for the coin source.
    """
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    coins = CoinStream(seed)
    return Tournament(n, bytes(coins.take(n * (n - 1) // 2)))


def transitive_tournament(n: int) -> Tournament:
    """The linear order: i -> j iff i < j."""
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    return Tournament(n, b"\x01" * (n * (n - 1) // 2))


def rotational_tournament(n: int) -> Tournament:
    """Circulant tournament on odd n: i -> j iff (j - i) mod n in 1..(n-1)/2."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"rotational family needs odd n >= 3, got {n}")
    half = (n - 1) // 2
    bits = bytearray()
    for u in range(n):
        for v in range(u + 1, n):
            bits.append(1 if (v - u) % n <= half else 0)
    return Tournament(n, bytes(bits))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def paley_tournament(p: int) -> Tournament:
    """Quadratic-residue tournament on Z_p: i -> j iff (j - i) is a nonzero
    square mod p.

    Requires p prime with p = 3 (mod 4), so that exactly one of (j - i) and
    (i - j) is a residue and the orientation is a tournament.
    """
    if not _is_prime(p) or p % 4 != 3:
        raise ValueError(f"paley family needs a prime p with p % 4 == 3, got {p}")
    residues = {pow(x, 2, p) for x in range(1, p)}
    bits = bytearray()
    for u in range(p):
        for v in range(u + 1, p):
            bits.append(1 if (v - u) % p in residues else 0)
    return Tournament(p, bytes(bits))


def generate(spec: GeneratorSpec) -> Tournament:
    """Build the tournament described by ``spec``."""
    if spec.kind == "random":
        if spec.seed is None:
            raise ValueError("random family requires a seed")
        return random_tournament(spec.n, spec.seed)
    if spec.kind == "transitive":
        return transitive_tournament(spec.n)
    if spec.kind == "rotational":
        return rotational_tournament(spec.n)
    if spec.kind == "paley":
        return paley_tournament(spec.n)
    raise ValueError(f"unknown generator kind {spec.kind!r}")


# --- symmetries ---------------------------------------------------------


def reverse(t: Tournament) -> Tournament:
    """Flip the orientation of every edge."""
    return Tournament(t.n, bytes(1 - b for b in t.bits))


def relabel(t: Tournament, perm: Iterable[int]) -> Tournament:
    """Rename vertex i to perm[i]; the edge set is carried along."""
    n = t.n
    p = [int(x) for x in perm]
    if sorted(p) != list(range(n)):
        raise ValueError(f"perm must be a permutation of 0..{n - 1}")
    inv = [0] * n
    for i, pi in enumerate(p):
        inv[pi] = i
    bits = bytearray(n * (n - 1) // 2)
    idx = 0
    for a in range(n):
        for b in range(a + 1, n):
            bits[idx] = 1 if edge_sign(t, inv[a], inv[b]) > 0 else 0
            idx += 1
    return Tournament(n, bytes(bits))


# --- .trn serialization -------------------------------------------------
#
# Line 1: "TRN1 <n>".  Line 2: n(n-1)/2 characters over '0'/'1' in
# lexicographic pair order ('1' = u -> v for the pair (u, v), u < v).
# Both lines end with '\n'; nothing may follow.


def encode(t: Tournament) -> bytes:
    """Serialize to the .trn text format."""
    bits = bytes(0x30 + b for b in t.bits)
    return b"%s %d\n%s\n" % (_TRN_MAGIC, t.n, bits)


def decode(data: bytes) -> Tournament:
    """Parse .trn bytes; raises ParseError with a byte position on any defect."""
    if not isinstance(data, (bytes, bytearray)):
        raise TypeError(f"decode expects bytes, got {type(data).__name__}")
    data = bytes(data)
    nl = data.find(b"\n")
    if nl < 0:
        raise ParseError("missing newline after header", len(data))
    header = data[:nl]
    if not header.startswith(_TRN_MAGIC + b" "):
        raise ParseError("expected 'TRN1 <n>' header", 0)
    n_text = header[len(_TRN_MAGIC) + 1 :]
    if not n_text.isdigit():
        raise ParseError("vertex count must be a decimal integer", len(_TRN_MAGIC) + 1)
    n = int(n_text)
    if n < 1:
        raise ParseError("vertex count must be positive", len(_TRN_MAGIC) + 1)
    body_start = nl + 1
    expected = n * (n - 1) // 2
    end = data.find(b"\n", body_start)
    if end < 0:
        raise ParseError("missing trailing newline after orientation bits", len(data))
    if end != body_start + expected:
        raise ParseError(
            f"expected {expected} orientation bits, found {end - body_start}",
            body_start,
        )
    for i in range(body_start, end):
        if data[i] not in (0x30, 0x31):
            raise ParseError(f"illegal character {chr(data[i])!r} in bit string", i)
    if end + 1 != len(data):
        raise ParseError("trailing data after final newline", end + 1)
    return Tournament(n, bytes(b - 0x30 for b in data[body_start:end]))
