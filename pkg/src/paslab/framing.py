"""PAM/QAM symbol assembly from shaped amplitudes and sign bits.

Each complex symbol carries one amplitude and one sign per quadrature:
symbol = (s_I * a_I + 1j * s_Q * a_Q) * scale, with sign bits mapped
(0, 1) -> (+1, -1).  The bit labeling over the resulting PAM levels is a
binary reflected Gray code with the sign bit as the most significant
label bit and the amplitude index Gray-coded in the remaining bits; this
makes the full 2^m-level labeling itself a Gray code (adjacent levels
differ in exactly one bit, including across the sign boundary).
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .seeding import KIND_SIGNS, random_bits


def _gray(i):
    return i ^ (i >> 1)


@dataclass(frozen=True)
class PamLabeling:
    """Bit labels for a 2^m-level PAM constellation on the odd-integer grid."""

    m: int
    levels: np.ndarray  # all 2^m signed levels, ascending
    labels: np.ndarray  # (2^m, m) uint8, labels[i] labels levels[i]

    @classmethod
    def make(cls, m: int) -> "PamLabeling":
        if m < 2:
            raise ValueError("need at least one sign bit and one amplitude bit")
        half = 1 << (m - 1)
        levels = np.arange(1 << m) * 2 - ((1 << m) - 1)
        labels = np.empty((1 << m, m), dtype=np.uint8)
        for idx, lev in enumerate(levels):
            s = 1 if lev < 0 else 0
            j = (abs(int(lev)) - 1) // 2
            g = _gray(j)
            labels[idx, 0] = s
            for b in range(m - 1):
                labels[idx, 1 + b] = (g >> (m - 2 - b)) & 1
        return cls(m=m, levels=levels, labels=labels)

    @property
    def amplitudes(self) -> np.ndarray:
        """Positive side of the grid: 1, 3, ..., 2^m - 1."""
        return self.levels[self.levels > 0]

    def label_of_level(self, level: np.ndarray) -> np.ndarray:
        idx = (np.asarray(level) + ((1 << self.m) - 1)) // 2
        return self.labels[idx.astype(np.intp)]

    def bits_for(self, amplitudes, signs) -> np.ndarray:
        """(n, m) hard labels for amplitude magnitudes plus sign bits."""
        a = np.asarray(amplitudes, dtype=np.int64)
        s = np.asarray(signs, dtype=np.int64)
        if a.shape != s.shape:
            raise ValueError("amplitude and sign streams differ in length")
        return self.label_of_level((1 - 2 * s) * a)


class QamBlock(NamedTuple):
    symbols: np.ndarray  # complex, already scaled
    scale: float  # multiplicative factor applied to the integer grid


def frame_qam(a_i, a_q, signs_i, signs_q, scale: float = 1.0) -> QamBlock:
    """Combine per-branch amplitudes and sign bits into complex symbols."""
    a_i = np.asarray(a_i, dtype=np.float64)
    a_q = np.asarray(a_q, dtype=np.float64)
    s_i = np.asarray(signs_i, dtype=np.int64)
    s_q = np.asarray(signs_q, dtype=np.int64)
    if not (a_i.size == a_q.size == s_i.size == s_q.size):
        raise ValueError("amplitude and sign blocks must share one length")
    re = (1.0 - 2.0 * s_i) * a_i
    im = (1.0 - 2.0 * s_q) * a_q
    return QamBlock(symbols=(re + 1j * im) * scale, scale=float(scale))


def sign_source(seed: int, count: int, *path) -> np.ndarray:
    """Uniform sign bits from a dedicated, path-split PCG64 substream.

    Extra path components (e.g. branch and block ids) select disjoint
    substreams, so concurrently framed blocks stay bit-reproducible.
    """
    return random_bits(seed, count, KIND_SIGNS, *path)


class DemapResult(NamedTuple):
    amplitudes_i: np.ndarray
    amplitudes_q: np.ndarray
    signs_i: np.ndarray
    signs_q: np.ndarray
    bits: np.ndarray  # (n, 2m): I label then Q label per symbol


def _nearest_level(u: np.ndarray, m: int) -> np.ndarray:
    # decision boundaries sit at the even integers between odd levels
    top = (1 << m) - 1
    idx = np.floor((u + top) / 2.0 + 0.5).astype(np.int64)
    idx = np.clip(idx, 0, top)
    return 2 * idx - top


def hard_demap(y, labeling: PamLabeling, scale: float = 1.0) -> DemapResult:
    """Minimum-distance per-quadrature decisions and their bit labels."""
    y = np.asarray(y, dtype=np.complex128) / scale
    lev_i = _nearest_level(y.real, labeling.m)
    lev_q = _nearest_level(y.imag, labeling.m)
    bits = np.concatenate(
        [labeling.label_of_level(lev_i), labeling.label_of_level(lev_q)], axis=1
    )
    return DemapResult(
        amplitudes_i=np.abs(lev_i),
        amplitudes_q=np.abs(lev_q),
        signs_i=(lev_i < 0).astype(np.uint8),
        signs_q=(lev_q < 0).astype(np.uint8),
        bits=bits,
    )
