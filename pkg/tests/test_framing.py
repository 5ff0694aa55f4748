"""PAM labeling, QAM framing, sign sourcing, hard demapping."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paslab.framing import PamLabeling, frame_qam, hard_demap, sign_source

from oracles import pam_labels, pam_levels

SEED = 20260822

LAB = PamLabeling.make(4)


def test_levels_are_the_odd_grid():
    assert LAB.levels.tolist() == pam_levels(4)
    assert LAB.levels.tolist() == list(range(-15, 16, 2))
    assert LAB.amplitudes.tolist() == [1, 3, 5, 7, 9, 11, 13, 15]


def test_labels_match_independent_construction():
    want = pam_labels(4)
    for idx, lev in enumerate(LAB.levels):
        assert LAB.labels[idx].tolist() == want[int(lev)]


def test_labeling_is_gray_over_all_16_levels():
    # adjacent levels differ in exactly one bit, sign boundary included
    for a, b in zip(LAB.labels[:-1], LAB.labels[1:]):
        assert int(np.sum(a ^ b)) == 1


def test_labels_are_a_bijection():
    rows = {tuple(r) for r in LAB.labels.tolist()}
    assert len(rows) == 16


def test_sign_bit_is_the_first_label_bit():
    for idx, lev in enumerate(LAB.levels):
        assert LAB.labels[idx, 0] == (1 if lev < 0 else 0)


def test_frame_qam_hand_example():
    # amplitudes (1,3) with signs (0,1): +1 on I, -3 on Q
    blk = frame_qam([1, 3], [1, 3], [0, 1], [0, 1], scale=1.0)
    assert blk.symbols.tolist() == [1 + 1j, -3 - 3j]
    blk2 = frame_qam([1], [3], [1], [0], scale=0.5)
    assert blk2.symbols.tolist() == [(-1 + 3j) * 0.5]
    assert blk2.scale == 0.5


def test_frame_qam_length_mismatch():
    with pytest.raises(ValueError):
        frame_qam([1, 3], [1], [0, 0], [0, 0])


def test_frame_demap_loopback_is_exact():
    rng = np.random.default_rng(SEED)
    n = 500
    a_i = rng.choice([1, 3, 5, 7, 9, 11, 13, 15], size=n)
    a_q = rng.choice([1, 3, 5, 7, 9, 11, 13, 15], size=n)
    s_i = rng.integers(0, 2, n)
    s_q = rng.integers(0, 2, n)
    scale = 0.13620613
    blk = frame_qam(a_i, a_q, s_i, s_q, scale)
    out = hard_demap(blk.symbols, LAB, scale)
    assert out.amplitudes_i.tolist() == a_i.tolist()
    assert out.amplitudes_q.tolist() == a_q.tolist()
    assert out.signs_i.tolist() == s_i.tolist()
    assert out.signs_q.tolist() == s_q.tolist()
    want = np.concatenate([LAB.bits_for(a_i, s_i), LAB.bits_for(a_q, s_q)], axis=1)
    assert np.array_equal(out.bits, want)


def test_decision_boundaries_sit_on_even_integers():
    eps = 1e-9
    out = hard_demap(np.array([2 - eps, 2 + eps, -2 + eps, -2 - eps]) + 0j, LAB)
    assert out.amplitudes_i.tolist() == [1, 3, 1, 3]
    assert out.signs_i.tolist() == [0, 0, 1, 1]


def test_demap_clips_to_outermost_level():
    out = hard_demap(np.array([40.0 + 0j, -250.0 + 0j]), LAB)
    assert out.amplitudes_i.tolist() == [15, 15]
    assert out.signs_i.tolist() == [0, 1]


def test_bits_for_shape_and_mismatch():
    got = LAB.bits_for([1, 15], [1, 0])
    assert got.shape == (2, 4)
    assert got[0].tolist() == [1, 0, 0, 0]  # level -1
    assert got[1].tolist() == [0, 1, 0, 0]  # level +15, amplitude index 7 -> Gray 100
    with pytest.raises(ValueError):
        LAB.bits_for([1, 3], [0])


def test_sign_source_deterministic_and_path_split():
    a = sign_source(SEED, 64, 0, 0, 0)
    b = sign_source(SEED, 64, 0, 0, 0)
    c = sign_source(SEED, 64, 0, 0, 1)
    assert a.tolist() == b.tolist()
    assert a.tolist() != c.tolist()
    assert set(np.unique(a)) <= {0, 1}


def test_sign_source_is_roughly_balanced():
    bits = sign_source(SEED, 20_000, 7)
    assert abs(bits.mean() - 0.5) < 0.02


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.sampled_from([1, 3, 5, 7, 9, 11, 13, 15]), min_size=1, max_size=64),
    st.integers(min_value=0, max_value=2**32 - 1),
)
def test_property_frame_demap_roundtrip(amps, sign_seed):
    rng = np.random.default_rng(sign_seed)
    n = len(amps)
    s_i = rng.integers(0, 2, n)
    s_q = rng.integers(0, 2, n)
    a_q = rng.choice([1, 3, 5, 7, 9, 11, 13, 15], size=n)
    blk = frame_qam(amps, a_q, s_i, s_q, scale=0.07)
    out = hard_demap(blk.symbols, LAB, 0.07)
    assert out.amplitudes_i.tolist() == list(amps)
    assert out.amplitudes_q.tolist() == a_q.tolist()
    assert out.signs_i.tolist() == s_i.tolist()
    assert out.signs_q.tolist() == s_q.tolist()
