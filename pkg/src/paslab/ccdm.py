"""Constant-composition distribution matching.

A fixed-to-fixed, invertible map between blocks of ``k`` information bits
and amplitude sequences of length ``n`` that all share one prescribed
composition (symbol histogram).  The codebook is the set of distinct
permutations of the composition multiset in lexicographic order; the input
bits, read MSB-first as an integer, index directly into that ordering.
Encoding is therefore exact unranking and decoding exact ranking, with no
arithmetic-coding approximation and no rate overhead beyond the floor in
``k = floor(log2 M)``.

Counts are exact big integers.  For long blocks the binomial products
exceed machine range by thousands of bits; gmpy2's mpz keeps the per-symbol
update cheap there, while short blocks stay on Python ints.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import gmpy2
import numpy as np

# Above this codebook size (in bits) rank bookkeeping switches to mpz.
_MPZ_CUTOVER_BITS = 256


class CompositionMismatchError(ValueError):
    """Sequence does not have the composition it is being ranked against."""


class CodebookRangeError(ValueError):
    """Input index lies outside [0, 2**k) for the given codebook."""


@dataclass(frozen=True)
class Composition:
    """A fixed symbol histogram over an ordered amplitude alphabet.

    ``symbols`` must be strictly increasing; ``counts`` are the number of
    occurrences of each symbol in every codeword.  Block length is the sum
    of the counts.
    """

    symbols: tuple
    counts: tuple

    def __post_init__(self):
        if len(self.symbols) != len(self.counts):
            raise ValueError("symbols and counts must have equal length")
        if not self.symbols:
            raise ValueError("composition must be non-empty")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative")
        if any(b <= a for a, b in zip(self.symbols, self.symbols[1:])):
            raise ValueError("symbols must be strictly increasing")
        if sum(self.counts) == 0:
            raise ValueError("composition must contain at least one symbol")

    @property
    def n(self) -> int:
        return sum(self.counts)

    def probabilities(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.n

    def mean_energy(self) -> float:
        """Average of symbol**2 under the composition frequencies."""
        sym = np.asarray(self.symbols, dtype=float)
        return float(np.dot(sym**2, self.probabilities()))

    def entropy(self) -> float:
        """Entropy in bits of the empirical distribution counts/n."""
        p = self.probabilities()
        p = p[p > 0]
        return float(-np.sum(p * np.log2(p)))


@lru_cache(maxsize=4096)
def multiset_count(counts: tuple) -> int:
    """Number of distinct arrangements of a multiset with these counts."""
    total = sum(counts)
    m = factorial(total)
    for c in counts:
        m //= factorial(c)
    return m


def max_input_length(comp: Composition) -> int:
    """Largest k with 2**k distinct codewords, i.e. floor(log2 M)."""
    m = multiset_count(comp.counts)
    return m.bit_length() - 1


def bits_to_int(bits) -> int:
    """MSB-first bit vector to integer."""
    value = 0
    for b in np.asarray(bits).ravel():
        value = (value << 1) | int(b)
    return value


def int_to_bits(value: int, width: int) -> np.ndarray:
    """Integer to MSB-first bit vector of fixed width."""
    if value < 0 or (width >= 0 and value >> width):
        raise ValueError(f"value {value} does not fit in {width} bits")
    out = np.empty(width, dtype=np.uint8)
    for i in range(width - 1, -1, -1):
        out[i] = value & 1
        value >>= 1
    return out


def _unrank(rank, comp: Composition, use_mpz: bool) -> np.ndarray:
    symbols = comp.symbols
    counts = list(comp.counts)
    n = comp.n
    m = multiset_count(comp.counts)
    if use_mpz:
        rank = gmpy2.mpz(rank)
        m = gmpy2.mpz(m)
    out = np.empty(n, dtype=np.int64)
    for pos in range(n):
        rem = n - pos
        for a, c in enumerate(counts):
            if c == 0:
                continue
            # sequences remaining if symbol a is placed here
            head = (m * c) // rem
            if rank < head:
                out[pos] = symbols[a]
                counts[a] -= 1
                m = head
                break
            rank -= head
        else:
            raise AssertionError("rank exhausted the codebook")
    return out


def _rank(seq: np.ndarray, comp: Composition, use_mpz: bool) -> int:
    index = {s: i for i, s in enumerate(comp.symbols)}
    counts = list(comp.counts)
    n = comp.n
    m = multiset_count(comp.counts)
    if use_mpz:
        m = gmpy2.mpz(m)
    rank = gmpy2.mpz(0) if use_mpz else 0
    for pos in range(n):
        rem = n - pos
        s = int(seq[pos])
        a = index.get(s)
        if a is None or counts[a] == 0:
            raise CompositionMismatchError(
                f"symbol {s} at position {pos} not available under the composition"
            )
        for b in range(a):
            c = counts[b]
            if c:
                rank += (m * c) // rem
        m = (m * counts[a]) // rem
        counts[a] -= 1
    return int(rank)


def unrank(r: int, comp: Composition) -> np.ndarray:
    """The r-th distinct permutation of the composition, lexicographically.

    ``r`` may lie anywhere in [0, M); the bit-indexed codebook used by the
    encoder is the first 2**k of these.  Strictly monotone: r < r' implies
    unrank(r) precedes unrank(r') in lexicographic order.
    """
    m = multiset_count(comp.counts)
    if not 0 <= r < m:
        raise CodebookRangeError(f"rank {r} outside [0, {m})")
    return _unrank(r, comp, use_mpz=m.bit_length() > _MPZ_CUTOVER_BITS)


def rank(x, comp: Composition) -> int:
    """Lexicographic index of ``x`` among distinct permutations."""
    x = np.asarray(x)
    if x.shape != (comp.n,):
        raise CompositionMismatchError(
            f"sequence length {x.size} != composition length {comp.n}"
        )
    m = multiset_count(comp.counts)
    return _rank(x, comp, use_mpz=m.bit_length() > _MPZ_CUTOVER_BITS)


def ccdm_encode(bits, comp: Composition) -> np.ndarray:
    """Map a k-bit block to one constant-composition sequence.

    k is the length of ``bits`` and may be anything up to
    max_input_length(comp); the map is order-preserving in the MSB-first
    integer value of the input.
    """
    bits = np.asarray(bits)
    k = bits.size
    kmax = max_input_length(comp)
    if k > kmax:
        raise CodebookRangeError(
            f"{k} input bits exceed the codebook capacity of {kmax}"
        )
    return unrank(bits_to_int(bits), comp)


def ccdm_decode(x, comp: Composition, k: int) -> np.ndarray:
    """Recover the k input bits from a constant-composition sequence."""
    r = rank(x, comp)
    if r >> k:
        raise CodebookRangeError(
            f"sequence ranks at {r}, beyond the 2**{k} bit-addressable codebook"
        )
    return int_to_bits(r, k)
