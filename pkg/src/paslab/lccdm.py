"""List-encoding constant-composition shaping.

The encoder inserts v flipping bits into each branch's input, producing
2^v candidate amplitude codewords per branch and 2^(2v) pseudo-QAM
pairings x[i,j] = a_I[i] + 1j*a_Q[j] (no sign bits involved).  The pair
with the smallest energy dispersion index is transmitted; ties resolve to
the lexicographically smallest (i, j).  The decoder is a plain CCDM
decode followed by dropping the flipping bits, so it needs no knowledge
of the selection.

Candidate energies live on the odd-integer amplitude grid and separate as
|x|^2 = a_I^2 + a_Q^2, so the 2^(2v) windowed-energy vectors are pairwise
sums of 2*2^v per-branch vectors and the index is evaluated for the whole
grid in exact integer arithmetic in one shot.
"""

from typing import NamedTuple

import numpy as np

from .ccdm import Composition, ccdm_decode, ccdm_encode, max_input_length
from .edi import EdiValue, _sliding_sums, edi_from_windowed, symbol_energies

FLIP_POSITIONS = ("prefix", "suffix")


class LccdmConfig(NamedTuple):
    composition: Composition
    k: int
    v: int
    window: int
    flip_position: str = "prefix"

    def validate(self):
        n = self.composition.n
        if not 0 <= self.v <= self.k:
            raise ValueError(f"flipping bits v={self.v} outside [0, k={self.k}]")
        if self.k > max_input_length(self.composition):
            raise ValueError(
                f"k={self.k} exceeds codebook capacity "
                f"{max_input_length(self.composition)}"
            )
        if self.flip_position not in FLIP_POSITIONS:
            raise ValueError(f"flip_position must be one of {FLIP_POSITIONS}")
        if self.window % 2 or not 0 < self.window < n:
            raise ValueError(f"window {self.window} must be even and < n={n}")


class LccdmResult(NamedTuple):
    amplitudes_i: np.ndarray
    amplitudes_q: np.ndarray
    edi: EdiValue  # on the unnormalized integer grid
    branch_i: int  # flipping-bit value selected for the I branch
    branch_q: int


def candidate_inputs(info, v: int, flip_position: str = "prefix") -> np.ndarray:
    """All 2^v length-k bit blocks reachable by the flipping bits.

    Flip value F is enumerated 0..2^v-1 and written MSB-first; prefix mode
    yields [F | info], suffix mode [info | F].
    """
    if flip_position not in FLIP_POSITIONS:
        raise ValueError(f"flip_position must be one of {FLIP_POSITIONS}")
    info = np.asarray(info, dtype=np.uint8)
    m = 1 << v
    flips = np.zeros((m, v), dtype=np.uint8)
    for bit in range(v):
        flips[:, bit] = (np.arange(m) >> (v - 1 - bit)) & 1
    body = np.broadcast_to(info, (m, info.size))
    if flip_position == "prefix":
        return np.concatenate([flips, body], axis=1)
    return np.concatenate([body, flips], axis=1)


def _branch_windows(seqs, window: int) -> np.ndarray:
    """Stacked windowed-energy vectors, one row per candidate sequence."""
    rows = [_sliding_sums(symbol_energies(s), window + 1) for s in seqs]
    return np.stack(rows)


def _psi_grid(gi: np.ndarray, gq: np.ndarray) -> np.ndarray:
    """Index values for every (i, j) pseudo-QAM pairing, exactly."""
    nw = gi.shape[1]
    peak = int(gi.max()) + int(gq.max())
    # int64 stays exact while nw*sum(G^2) and sum(G)^2 fit
    if peak > 0 and nw * nw * peak * peak < 2**62:
        g = gi[:, None, :].astype(np.int64) + gq[None, :, :].astype(np.int64)
        s1 = g.sum(axis=2)
        s2 = (g * g).sum(axis=2)
        return (nw * s2 - s1 * s1) / ((nw - 1) * s1)
    out = np.empty((gi.shape[0], gq.shape[0]), dtype=np.float64)
    for a in range(gi.shape[0]):
        for b in range(gq.shape[0]):
            win = np.asarray(gi[a], dtype=object) + np.asarray(gq[b], dtype=object)
            out[a, b] = edi_from_windowed(win).linear
    return out


def lccdm_encode(info_i, info_q, cfg: LccdmConfig) -> LccdmResult:
    """Encode both branches and keep the minimum-index pseudo-QAM pairing."""
    cfg.validate()
    comp, k, v = cfg.composition, cfg.k, cfg.v
    info_i = np.asarray(info_i, dtype=np.uint8)
    info_q = np.asarray(info_q, dtype=np.uint8)
    if info_i.size != k - v or info_q.size != k - v:
        raise ValueError(
            f"each branch takes {k - v} information bits, "
            f"got {info_i.size} and {info_q.size}"
        )
    cands_i = candidate_inputs(info_i, v, cfg.flip_position)
    cands_q = candidate_inputs(info_q, v, cfg.flip_position)
    seqs_i = [ccdm_encode(b, comp) for b in cands_i]
    seqs_q = [ccdm_encode(b, comp) for b in cands_q]
    gi = _branch_windows(seqs_i, cfg.window)
    gq = _branch_windows(seqs_q, cfg.window)
    psi = _psi_grid(gi, gq)
    flat = int(np.argmin(psi))  # first minimum in row-major order = lex smallest
    bi, bj = divmod(flat, psi.shape[1])
    val = float(psi[bi, bj])
    db = 10.0 * np.log10(val) if val > 0 else -np.inf
    return LccdmResult(
        amplitudes_i=seqs_i[bi],
        amplitudes_q=seqs_q[bj],
        edi=EdiValue(linear=val, db=float(db)),
        branch_i=bi,
        branch_q=bj,
    )


def lccdm_decode(a_i, a_q, cfg: LccdmConfig):
    """Recover both branches' information bits, dropping the flipping bits."""
    cfg.validate()
    k, v = cfg.k, cfg.v
    bits_i = ccdm_decode(a_i, cfg.composition, k)
    bits_q = ccdm_decode(a_q, cfg.composition, k)
    if cfg.flip_position == "prefix":
        return bits_i[v:], bits_q[v:]
    return bits_i[: k - v], bits_q[: k - v]


def select_branch_codeword(info, cfg: LccdmConfig):
    """Pick the lowest-index amplitude codeword among one branch's candidates.

    This is the single-matcher view: the 2^v candidates come from one
    encoder and the index is computed on the amplitude sequence itself,
    with no pseudo-QAM pairing.  Ties resolve to the smallest flip value.

    Returns (codeword, linear index on the integer grid, flip value).
    """
    cfg.validate()
    cands = candidate_inputs(info, cfg.v, cfg.flip_position)
    seqs = [ccdm_encode(b, cfg.composition) for b in cands]
    g = _branch_windows(seqs, cfg.window)
    nw = g.shape[1]
    peak = int(g.max())
    if peak > 0 and nw * nw * peak * peak < 2**62:
        gi = g.astype(np.int64)
        s1 = gi.sum(axis=1)
        s2 = (gi * gi).sum(axis=1)
        psi = (nw * s2 - s1 * s1) / ((nw - 1) * s1)
    else:
        psi = np.array(
            [edi_from_windowed(np.asarray(row, dtype=object)).linear for row in g]
        )
    best = int(np.argmin(psi))
    return seqs[best], float(psi[best]), best


class FlipSweepRow(NamedTuple):
    v: int
    flip_position: str
    mean_edi_db: float  # unit-average-energy constellation units
    design_entropy: float
    list_rate_loss: float
    blocks: int


def prefix_suffix_sweep(
    n: int,
    shaping_rate: float,
    v_values,
    window: int,
    blocks: int,
    seed: int,
    alphabet=None,
    positions=FLIP_POSITIONS,
) -> list:
    """Mean single-branch index in dB versus flipping-bit count and placement.

    This sweep isolates what the flip placement does to one matcher's
    codeword statistics: per block, each branch independently keeps the
    lowest-index amplitude codeword among its own 2^v candidates and that
    selected index is the sample (two samples per block).  The pseudo-QAM
    pairing stage of lccdm_encode sits on top of this and adds further
    selection gain; it is deliberately not part of the placement study.

    Each v gets its own rate-matched composition (same shaping rate, so
    the information payload per branch is identical across v) and the same
    per-block information bits, making curves directly comparable.
    Selected indices are rescaled to the unit-average-energy constellation
    before averaging in the linear domain, so dB values are constellation-
    normalized.
    """
    from .design import DEFAULT_ALPHABET, shaping_design
    from .seeding import KIND_INFO, random_bits

    if alphabet is None:
        alphabet = DEFAULT_ALPHABET
    rows = []
    for v in v_values:
        des = shaping_design(n, shaping_rate, v, alphabet)
        scale2 = des.qam_scale() ** 2
        info_len = des.k - v
        todo = [p for p in positions if p in FLIP_POSITIONS]
        if v == 0:
            todo = todo[:1]
        means = {}
        for pos in todo:
            cfg = LccdmConfig(des.composition, des.k, v, window, pos)
            acc = 0.0
            for b in range(blocks):
                for branch in (0, 1):
                    info = random_bits(seed, info_len, KIND_INFO, branch, b)
                    acc += select_branch_codeword(info, cfg)[1] * scale2
            means[pos] = acc / (2 * blocks)
        for pos in positions:
            mean = means.get(pos, means[todo[0]])  # v=0: placements coincide
            db = 10.0 * np.log10(mean) if mean > 0 else -np.inf
            rows.append(
                FlipSweepRow(
                    v=v,
                    flip_position=pos,
                    mean_edi_db=float(db),
                    design_entropy=des.design_entropy,
                    list_rate_loss=des.list_rate_loss,
                    blocks=blocks,
                )
            )
    return rows
