"""Maxwell-Boltzmann design: entropy targeting, quantization, rate ledger."""

import math

import numpy as np
import pytest

from paslab.ccdm import max_input_length
from paslab.design import (
    DEFAULT_ALPHABET,
    AmplitudeDistribution,
    composition_from_distribution,
    entropy_bits,
    lccdm_rate_loss,
    mb_distribution,
    rate_loss,
    shaping_design,
    solve_lambda_for_entropy,
)

from oracles import entropy_bits as oracle_entropy, mb_probability

SEED = 20260822


def test_lambda_zero_is_uniform():
    d = mb_distribution(0.0)
    assert d.probabilities == pytest.approx([0.125] * 8, abs=1e-15)
    assert d.entropy_bits == pytest.approx(3.0, abs=1e-12)


def test_mb_distribution_matches_oracle():
    for lam in (0.003, 0.018, 0.05, 0.4):
        d = mb_distribution(lam)
        want = mb_probability(lam, DEFAULT_ALPHABET)
        assert d.probabilities == pytest.approx(want, rel=1e-12)
        assert d.entropy_bits == pytest.approx(oracle_entropy(want), rel=1e-12)


def test_lambda_solver_hits_entropy_target():
    for target in (2.9, 2.4176, 2.4201, 1.9651, 1.2, 0.4):
        lam = solve_lambda_for_entropy(target)
        got = oracle_entropy(mb_probability(lam, DEFAULT_ALPHABET))
        assert got == pytest.approx(target, abs=1e-9)
    # entropy is strictly decreasing in lambda
    lams = [solve_lambda_for_entropy(h) for h in (2.9, 2.4, 1.9, 1.0)]
    assert lams == sorted(lams)
    assert lams[0] > 0


def test_lambda_solver_rejects_out_of_range():
    with pytest.raises(ValueError):
        solve_lambda_for_entropy(3.2)
    with pytest.raises(ValueError):
        solve_lambda_for_entropy(0.0)
    assert solve_lambda_for_entropy(3.0) == 0.0


def _largest_remainder(probs, n):
    scaled = [n * p for p in probs]
    base = [math.floor(s) for s in scaled]
    frac = [s - b for s, b in zip(scaled, base)]
    short = n - sum(base)
    order = sorted(range(len(probs)), key=lambda i: (-frac[i], i))
    for i in order[:short]:
        base[i] += 1
    return base


def test_quantization_matches_largest_remainder():
    rng = np.random.default_rng(SEED)
    for _ in range(50):
        raw = rng.random(8) + 1e-3
        probs = tuple(raw / raw.sum())
        d = AmplitudeDistribution(DEFAULT_ALPHABET, probs)
        n = int(rng.integers(8, 2000))
        comp = composition_from_distribution(d, n)
        assert sum(comp.counts) == n
        assert list(comp.counts) == _largest_remainder(probs, n)


def test_design_n1800_v0():
    d = shaping_design(1800, 2.4, 0)
    assert d.k == 4320 and d.v == 0
    assert d.composition.counts == (539, 466, 349, 225, 126, 61, 25, 9)
    assert d.design_entropy == pytest.approx(2.4176, abs=1e-9)
    assert d.shaping_rate == pytest.approx(2.4)
    assert d.rate_loss == pytest.approx(d.design_entropy - 2.4, abs=1e-12)
    assert d.list_rate_loss == d.rate_loss


def test_design_n1800_v4():
    d = shaping_design(1800, 2.4, 4)
    assert d.k == 4324 and d.v == 4
    assert d.composition.counts == (538, 466, 348, 226, 126, 61, 26, 9)
    assert d.design_entropy == pytest.approx(4324 / 1800 + 0.0179, abs=1e-9)
    assert d.lam == pytest.approx(0.01813739, rel=1e-5)
    assert d.rate_loss == pytest.approx(0.017900, abs=1e-6)
    assert d.list_rate_loss == pytest.approx(0.020122, abs=1e-6)
    assert d.qam_scale() == pytest.approx(0.13620613, abs=1e-8)


def test_design_n180_v4():
    d = shaping_design(180, 1.85, 4)
    assert d.k == 337
    assert d.composition.counts == (73, 55, 32, 14, 5, 1, 0, 0)
    assert d.design_entropy == pytest.approx(337 / 180 + 0.0929, abs=1e-9)


def test_design_codebook_covers_budget_minimally():
    # the returned composition holds 2^k sequences; one scan step lower
    # in entropy it no longer would (except when k/n itself suffices)
    for n, rs, v in ((1800, 2.4, 0), (1800, 2.4, 4), (180, 1.85, 4), (600, 2.4, 2)):
        d = shaping_design(n, rs, v)
        assert max_input_length(d.composition) >= d.k
        assert d.design_entropy >= d.k / n - 1e-12
        if d.design_entropy > d.k / n + 1e-12:
            lam = solve_lambda_for_entropy(d.design_entropy - 1e-4)
            below = composition_from_distribution(mb_distribution(lam), n)
            assert max_input_length(below) < d.k


def test_design_rejects_fractional_bit_budget():
    with pytest.raises(ValueError):
        shaping_design(1800, 2.4005, 0)
    with pytest.raises(ValueError):
        shaping_design(100, 1.853, 0)


def test_design_rejects_impossible_rate():
    with pytest.raises(ValueError):
        shaping_design(100, 3.1, 0)


def test_rate_loss_identities():
    d = shaping_design(1800, 2.4, 4)
    p = d.distribution
    assert lccdm_rate_loss(p, d.k, d.n, 0) == rate_loss(p, d.k, d.n)
    assert lccdm_rate_loss(p, d.k, d.n, 4) == pytest.approx(
        rate_loss(p, d.k, d.n) + 4 / 1800, abs=1e-15
    )
    with pytest.raises(ValueError):
        lccdm_rate_loss(p, 10, 100, 10)
    with pytest.raises(ValueError):
        lccdm_rate_loss(p, 10, 100, -1)


def test_qam_scale_normalizes_mean_energy():
    # 2 * E[A^2] * scale^2 = 1 with A drawn from the composition
    for n, rs, v in ((1800, 2.4, 4), (180, 1.85, 0)):
        d = shaping_design(n, rs, v)
        counts = np.asarray(d.composition.counts, dtype=float)
        amps = np.asarray(d.composition.symbols, dtype=float)
        e2 = float(np.dot(counts / n, amps**2))
        s = d.qam_scale()
        assert 2.0 * e2 * s * s == pytest.approx(1.0, rel=1e-12)


def test_distribution_validation():
    with pytest.raises(ValueError):
        AmplitudeDistribution((1, 3), (0.7, 0.2))
    with pytest.raises(ValueError):
        AmplitudeDistribution((1, 3), (1.2, -0.2))
    with pytest.raises(ValueError):
        AmplitudeDistribution((1, 3, 5), (0.5, 0.5))


def test_entropy_bits_ignores_zeros():
    assert entropy_bits([0.5, 0.5, 0.0]) == pytest.approx(1.0, abs=1e-15)
