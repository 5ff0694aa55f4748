"""Independent reference implementations used to check the package.

Everything here is deliberately written the slow, obvious way (explicit
recursion, exact fractions, quadrature) and shares no code with the
package under test.
"""

import math
from fractions import Fraction

import numpy as np
from scipy.stats import norm


# ---------------------------------------------------------------- codebooks

def enumerate_codebook(symbols, counts):
    """All sequences using each symbols[i] exactly counts[i] times, in
    lexicographic order, by direct recursion."""
    out = []
    seq = []

    def walk(remaining):
        if sum(remaining) == 0:
            out.append(tuple(seq))
            return
        for i, c in enumerate(remaining):
            if c:
                seq.append(symbols[i])
                walk(remaining[:i] + (c - 1,) + remaining[i + 1 :])
                seq.pop()

    walk(tuple(counts))
    return out


def codebook_size(counts):
    total = math.factorial(sum(counts))
    for c in counts:
        total //= math.factorial(c)
    return total


# ---------------------------------------------------------------- EDI

def edi_exact(block, window):
    """Energy dispersion index over windows of window+1 symbols, as an
    exact fraction when block entries are Gaussian integers."""
    n = len(block)
    w = window
    energies = [Fraction(int(z.real) ** 2 + int(z.imag) ** 2) for z in block]
    g = [sum(energies[i : i + w + 1]) for i in range(n - w)]
    m = len(g)
    mean = Fraction(sum(g), m)
    var = sum((x - mean) ** 2 for x in g) / Fraction(m - 1)
    return var / mean


def edi_float(block, window):
    """Same estimator with floats and fsum, for arbitrary symbols."""
    n = len(block)
    w = window
    e = [abs(z) ** 2 for z in block]
    g = [math.fsum(e[i : i + w + 1]) for i in range(n - w)]
    m = len(g)
    mean = math.fsum(g) / m
    var = math.fsum((x - mean) ** 2 for x in g) / (m - 1)
    return var / mean


def iid_edi_moments(levels, probs):
    e2 = math.fsum(p * abs(x) ** 2 for x, p in zip(levels, probs))
    e4 = math.fsum(p * abs(x) ** 4 for x, p in zip(levels, probs))
    return (e4 - e2 * e2) / e2


# ---------------------------------------------------------------- shaping

def mb_probability(lam, alphabet):
    w = [math.exp(-lam * a * a) for a in alphabet]
    z = math.fsum(w)
    return [x / z for x in w]


def entropy_bits(probs):
    return -math.fsum(p * math.log2(p) for p in probs if p > 0)


# ---------------------------------------------------------------- channels

def attenuation_db(alpha_db_km, length_km):
    return alpha_db_km * length_km


def ase_variance_w(gain_db, nf_db, fs_hz, wavelength_nm=1550.0):
    h = 6.62607015e-34
    nu = 299792458.0 / (wavelength_nm * 1e-9)
    g = 10.0 ** (gain_db / 10.0)
    nsp = 10.0 ** (nf_db / 10.0) / 2.0
    return (g - 1.0) * h * nu * nsp * fs_hz


# ------------------------------------------------- PAM decisions and rates

def pam_levels(m):
    return list(range(-(2**m) + 1, 2**m, 2))


def gray_bits(index, width):
    g = index ^ (index >> 1)
    return [(g >> (width - 1 - b)) & 1 for b in range(width)]


def pam_labels(m):
    """Label per ascending level: sign bit then Gray amplitude bits,
    mirroring a sign-magnitude construction built from scratch."""
    labels = {}
    for level in pam_levels(m):
        sign = 0 if level > 0 else 1
        amp_index = (abs(level) - 1) // 2
        labels[level] = [sign] + gray_bits(amp_index, m - 1)
    return labels


def hard_ber_oracle(m, sigma, priors=None):
    """Exact bit error ratio of nearest-level hard decisions on AWGN.

    Integrates the Gaussian over every decision cell with norm.cdf; the
    only shared assumption with the package is the labeling table, which
    is rebuilt here independently.
    """
    levels = pam_levels(m)
    labels = pam_labels(m)
    if priors is None:
        priors = {x: 1.0 / len(levels) for x in levels}
    # decision cell of level x_j: midpoints with neighbors
    cells = {}
    for j, x in enumerate(levels):
        lo = -np.inf if j == 0 else (levels[j - 1] + x) / 2.0
        hi = np.inf if j == len(levels) - 1 else (levels[j + 1] + x) / 2.0
        cells[x] = (lo, hi)
    total = 0.0
    for x in levels:
        for xd in levels:
            lo, hi = cells[xd]
            p_cell = norm.cdf((hi - x) / sigma) - norm.cdf((lo - x) / sigma)
            nbad = sum(a != b for a, b in zip(labels[x], labels[xd]))
            total += priors[x] * p_cell * nbad / m
    return total


def gmi_bmd_oracle(m, sigma, priors=None, span_sigmas=12.0, points=20001):
    """Numerically integrated BMD rate of one PAM component, bit/1D.

    sum_i [H(B_i) - H(B_i|Y)] with the true posterior (matched Gaussian
    auxiliary channel), by trapezoid quadrature over the received value.
    """
    levels = np.array(pam_levels(m), dtype=float)
    labels = pam_labels(m)
    if priors is None:
        p = np.full(levels.size, 1.0 / levels.size)
    else:
        p = np.array([priors[x] for x in levels])
    y = np.linspace(
        levels.min() - span_sigmas * sigma,
        levels.max() + span_sigmas * sigma,
        points,
    )
    like = np.exp(-((y[:, None] - levels[None, :]) ** 2) / (2 * sigma**2))
    joint = like * p[None, :]  # up to a common factor
    py = joint.sum(axis=1)
    rate = 0.0
    for i in range(m):
        mask1 = np.array([labels[x][i] for x in levels], dtype=bool)
        p1_given_y = joint[:, mask1].sum(axis=1) / py
        p1_given_y = np.clip(p1_given_y, 1e-300, 1.0)
        p0_given_y = np.clip(1.0 - p1_given_y, 1e-300, 1.0)
        cond = -(
            p1_given_y * np.log2(p1_given_y) + p0_given_y * np.log2(p0_given_y)
        )
        # density normalization: weight by p(y) and integrate
        density = py / np.trapezoid(py, y)
        h_cond = np.trapezoid(cond * density, y)
        pb1 = float(p[mask1].sum())
        h_marg = entropy_bits([pb1, 1.0 - pb1])
        rate += h_marg - h_cond
    return rate
