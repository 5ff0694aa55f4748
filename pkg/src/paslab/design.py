"""Maxwell-Boltzmann shaping design and rate-loss accounting.

Amplitude distributions follow P(a) proportional to exp(-lambda a^2); the
entropy is strictly decreasing in lambda, so a target entropy pins lambda
by root bracketing.  A distribution is quantized to an n-type composition
by largest-remainder rounding, and a (blocklength, shaping rate, flipping
bits) triple is matched to a composition by raising the design entropy in
small steps until the codebook is large enough for the required input
length.
"""

import math
from dataclasses import dataclass
from itertools import count

import numpy as np
from scipy.optimize import brentq
from scipy.special import logsumexp

from .ccdm import Composition, max_input_length

DEFAULT_ALPHABET = (1, 3, 5, 7, 9, 11, 13, 15)

# design entropies are reported on this grid, matching hundredth-of-a-
# percent rate granularity
ENTROPY_SCAN_STEP = 1e-4


@dataclass(frozen=True)
class AmplitudeDistribution:
    alphabet: tuple
    probabilities: tuple

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if len(self.alphabet) != p.size:
            raise ValueError("alphabet and probabilities must align")
        if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
            raise ValueError("probabilities must be non-negative and sum to 1")

    @property
    def entropy_bits(self) -> float:
        return entropy_bits(self.probabilities)

    def mean_energy(self) -> float:
        a = np.asarray(self.alphabet, dtype=float)
        return float(np.dot(np.asarray(self.probabilities), a**2))


def entropy_bits(probabilities) -> float:
    p = np.asarray(probabilities, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def mb_distribution(lam: float, alphabet=DEFAULT_ALPHABET) -> AmplitudeDistribution:
    """P(a) proportional to exp(-lambda a^2) over the given amplitudes."""
    if not len(alphabet):
        raise ValueError("alphabet must be non-empty")
    a2 = np.asarray(alphabet, dtype=float) ** 2
    logw = -lam * a2
    logp = logw - logsumexp(logw)
    return AmplitudeDistribution(tuple(alphabet), tuple(np.exp(logp)))


def solve_lambda_for_entropy(target_h: float, alphabet=DEFAULT_ALPHABET) -> float:
    """The lambda whose Maxwell-Boltzmann entropy hits the target.

    Entropy is strictly decreasing in lambda from log2(len(alphabet)) at
    lambda=0 toward 0, so the root is bracketed and unique; solved to
    |H(lambda) - target| <= 1e-9.
    """
    hmax = math.log2(len(alphabet))
    if not 0 < target_h <= hmax:
        raise ValueError(f"target entropy {target_h} outside (0, {hmax:.6f}]")
    if abs(target_h - hmax) < 1e-15:
        return 0.0

    def gap(lam):
        return mb_distribution(lam, alphabet).entropy_bits - target_h

    hi = 1.0
    while gap(hi) > 0:
        hi *= 2.0
        if hi > 1e6:
            raise ValueError("failed to bracket the entropy target")
    return float(brentq(gap, 0.0, hi, xtol=1e-13, rtol=8.9e-16))


def composition_from_distribution(
    p: AmplitudeDistribution, n: int
) -> Composition:
    """n-type quantization by largest remainder, ties toward smaller amplitude."""
    if n < 1:
        raise ValueError("blocklength must be positive")
    scaled = n * np.asarray(p.probabilities, dtype=float)
    counts = np.floor(scaled).astype(int)
    frac = scaled - counts
    short = n - int(counts.sum())
    # priority: largest fractional part first, then smaller amplitude
    order = np.lexsort((np.arange(frac.size), -frac))
    counts[order[:short]] += 1
    return Composition(tuple(p.alphabet), tuple(int(c) for c in counts))


def rate_loss(p: AmplitudeDistribution, k: int, n: int) -> float:
    """H(P_A) - k/n, bits per amplitude."""
    return p.entropy_bits - k / n


def lccdm_rate_loss(p: AmplitudeDistribution, k: int, n: int, v: int) -> float:
    """Rate loss plus the v/n flipping term; equals rate_loss at v=0."""
    if not 0 <= v < k:
        raise ValueError(f"flipping bits v={v} must lie in [0, k={k})")
    return rate_loss(p, k, n) + v / n


@dataclass(frozen=True)
class ShapingDesign:
    composition: Composition
    distribution: AmplitudeDistribution
    lam: float
    design_entropy: float
    n: int
    k: int
    v: int

    @property
    def shaping_rate(self) -> float:
        return (self.k - self.v) / self.n

    @property
    def rate_loss(self) -> float:
        return rate_loss(self.distribution, self.k, self.n)

    @property
    def list_rate_loss(self) -> float:
        return self.rate_loss + self.v / self.n if self.v else self.rate_loss

    def qam_scale(self) -> float:
        """Scale putting framed QAM at unit average energy (exact moment)."""
        return 1.0 / math.sqrt(2.0 * self.composition.mean_energy())


def shaping_design(
    n: int, shaping_rate: float, v: int = 0, alphabet=DEFAULT_ALPHABET
) -> ShapingDesign:
    """Match a composition to a (blocklength, shaping rate, flips) triple.

    k = n*shaping_rate + v must be an integer.  The design entropy starts
    at k/n and rises in 1e-4 steps (lambda falls correspondingly) until
    the quantized composition's codebook holds 2^k sequences, i.e. the
    minimal-entropy Maxwell-Boltzmann composition covering the rate.
    """
    k_exact = n * shaping_rate + v
    k = round(k_exact)
    if abs(k_exact - k) > 1e-9:
        raise ValueError(
            f"n*shaping_rate+v = {k_exact} is not an integer; "
            "choose a blocklength that makes the bit budget whole"
        )
    if k < 1 or not 0 <= v < k:
        raise ValueError(f"invalid bit budget k={k}, v={v}")
    hmax = math.log2(len(alphabet))
    h0 = k / n
    if h0 > hmax:
        raise ValueError(
            f"shaping rate needs entropy {h0:.4f} > log2(alphabet) = {hmax:.4f}"
        )
    for i in count():
        h = h0 + i * ENTROPY_SCAN_STEP
        if h >= hmax:
            dist = mb_distribution(0.0, alphabet)
            lam = 0.0
            h = hmax
        else:
            lam = solve_lambda_for_entropy(h, alphabet)
            dist = mb_distribution(lam, alphabet)
        comp = composition_from_distribution(dist, n)
        if max_input_length(comp) >= k:
            return ShapingDesign(
                composition=comp,
                distribution=dist,
                lam=lam,
                design_entropy=h,
                n=n,
                k=k,
                v=v,
            )
        if h >= hmax:
            raise ValueError(
                f"no composition at n={n} covers k={k} bits; rate too high"
            )
