"""Experiment orchestration: config loading, validation, the shaped-QAM
transmit chain, sweep runners, and CSV emission.

A sweep point is one propagation run of every shaper variant at one axis
value.  Information bits and amplifier noise are keyed by stream role,
channel, branch, and block (never by variant), so v=0, v=4 and uniform
runs see the same payloads and the same noise and differ only through
the shaper.

Environment overrides: PASLAB_WORKERS (sweep-point worker count) and
PASLAB_OUTDIR (base output directory).  Nothing else is read from the
environment; configs carry their own seed.
"""

import csv
import dataclasses
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
import yaml

from .ccdm import max_input_length
from .design import DEFAULT_ALPHABET, ShapingDesign, shaping_design
from .edi import edi_estimate, mean_linear_to_db
from .fiber import (
    FiberLink,
    SimGrid,
    WdmConfig,
    aggregate_sps,
    dump_waveform,
    effective_snr,
    per_block_snr,
    propagate_link,
    receiver_front_end,
    rrc_shape,
    set_average_power,
    wdm_mux,
)
from .framing import PamLabeling, frame_qam, sign_source
from .lccdm import FLIP_POSITIONS, LccdmConfig, lccdm_encode, prefix_suffix_sweep
from .metrics import (
    BlockRecord,
    MetricReport,
    air_bmd,
    pre_fec_ber,
    scatter_export,
)
from .seeding import KIND_INFO, KIND_SYMBOLS, random_bits, substream

SWEEP_AXES = ("launch_power", "blocklength", "flipping", "distance")
UNIFORM = "uniform"

QAM_BITS_PER_1D = 4  # 256QAM, 16 levels per component


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    seed: int
    outdir: str
    blocklength: int
    shaping_rate: float
    window: int
    flip_position: str
    variants: tuple
    link: FiberLink
    wdm: WdmConfig
    grid: SimGrid
    axis: str
    values: tuple
    blocks: int  # shaping blocks per channel-free EDI point
    simulate_values: tuple = ()  # blocklength axis: subset that also runs the channel
    fec_rate: float = 0.8
    alphabet: tuple = DEFAULT_ALPHABET
    dump_waveforms: bool = False

    @classmethod
    def from_mapping(cls, raw: dict) -> "ExperimentSpec":
        shaper = raw.get("shaper", {})
        sweep = raw.get("sweep", {})
        variants = tuple(
            UNIFORM if str(x).lower() == UNIFORM else int(x)
            for x in raw.get("variants", [0])
        )
        return cls(
            name=str(raw["name"]),
            seed=int(raw["seed"]),
            outdir=str(raw.get("output_dir", "runs")),
            blocklength=int(shaper["blocklength"]),
            shaping_rate=float(shaper["shaping_rate"]),
            window=int(shaper["window"]),
            flip_position=str(shaper.get("flip_position", "prefix")),
            variants=variants,
            link=FiberLink(**raw["link"]),
            wdm=WdmConfig(**raw["wdm"]),
            grid=SimGrid(**raw["grid"]),
            axis=str(sweep.get("axis", "launch_power")),
            values=tuple(sweep.get("values", [])),
            blocks=int(sweep.get("blocks", 100)),
            simulate_values=tuple(sweep.get("simulate_values", [])),
            fec_rate=float(raw.get("fec_rate", 0.8)),
            alphabet=tuple(shaper.get("alphabet", DEFAULT_ALPHABET)),
            dump_waveforms=bool(raw.get("dump_waveforms", False)),
        )

    @classmethod
    def from_yaml(cls, path, overrides=()) -> "ExperimentSpec":
        with open(path) as fh:
            raw = yaml.safe_load(fh)
        if not isinstance(raw, dict):
            raise ValueError(f"{path} does not hold a mapping")
        for item in overrides:
            key, _, value = item.partition("=")
            if not _:
                raise ValueError(f"override {item!r} is not key=value")
            _set_dotted(raw, key.strip(), yaml.safe_load(value))
        return cls.from_mapping(raw)

    def resolved_outdir(self) -> str:
        base = os.environ.get("PASLAB_OUTDIR", self.outdir)
        return os.path.join(base, self.name)


def _set_dotted(raw: dict, dotted: str, value):
    parts = dotted.split(".")
    node = raw
    for p in parts[:-1]:
        node = node.setdefault(p, {})
        if not isinstance(node, dict):
            raise ValueError(f"cannot descend into {p!r} of override {dotted!r}")
    node[parts[-1]] = value


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("PASLAB_WORKERS", "1")))
    except ValueError:
        return 1


# rate bookkeeping: one 4D symbol = two QAM symbols (single polarization)

def pas_total_rate_bit4d(shaping_rate: float, fec_rate: float) -> float:
    """4*(R_s + sign-bit budget); R_c=4/5 leaves 0.2 info bit per sign."""
    sign_info = 1.0 - (1.0 - fec_rate) * QAM_BITS_PER_1D
    return 4.0 * (shaping_rate + sign_info)


def uniform_total_rate_bit4d(fec_rate: float) -> float:
    return 4.0 * QAM_BITS_PER_1D * fec_rate


class ValidationIssue(NamedTuple):
    field: str
    message: str


def validate_config(spec: ExperimentSpec) -> list:
    """Static checks; returns a list of issues instead of raising."""
    issues = []
    n, w = spec.blocklength, spec.window

    def bad(field, message):
        issues.append(ValidationIssue(field, message))

    if not w < n:
        bad("shaper.window", f"window {w} must be smaller than blocklength {n}")
    if w % 2 or w <= 0:
        bad("shaper.window", f"window {w} must be a positive even count")
    if spec.flip_position not in FLIP_POSITIONS:
        bad("shaper.flip_position", f"must be one of {FLIP_POSITIONS}")
    if not spec.variants:
        bad("variants", "at least one shaper variant is required")

    lengths = [n]
    if spec.axis == "blocklength":
        lengths = [int(x) for x in spec.values]
    for v in spec.variants:
        if v == UNIFORM:
            continue
        for nn in lengths:
            k_exact = nn * spec.shaping_rate + v
            k = round(k_exact)
            if abs(k_exact - k) > 1e-9:
                bad(
                    "shaper.shaping_rate",
                    f"n*R_s+v = {k_exact} not an integer at n={nn}, v={v}",
                )
                continue
            if not v < k:
                bad("variants", f"v={v} must be smaller than k={k}")
                continue
            try:
                d = shaping_design(nn, spec.shaping_rate, v, spec.alphabet)
            except ValueError as e:
                bad("shaper", f"no feasible composition at n={nn}, v={v}: {e}")
                continue
            if max_input_length(d.composition) < k:
                bad(
                    "shaper",
                    f"codebook at n={nn}, v={v} holds fewer than 2^{k} sequences",
                )

    try:
        spec.wdm.validate()
    except ValueError as e:
        bad("wdm", str(e))
    else:
        need = aggregate_sps(spec.wdm)
        if spec.grid.samples_per_symbol < need:
            bad(
                "grid.samples_per_symbol",
                f"{spec.grid.samples_per_symbol} undersamples the WDM band; "
                f"need at least {need} per symbol",
            )
        sim_lengths = [n]
        if spec.axis == "blocklength":
            sim_lengths = [int(x) for x in spec.simulate_values]
        elif spec.axis == "flipping":
            sim_lengths = []
        for nn in sim_lengths:
            slots = (
                spec.wdm.channel_spacing_ghz
                * nn
                * spec.grid.blocks_per_run
                / spec.wdm.symbol_rate_gbd
            )
            if spec.wdm.num_channels > 1 and abs(slots - round(slots)) > 1e-6:
                bad(
                    "grid.blocks_per_run",
                    f"a run of {nn}x{spec.grid.blocks_per_run} symbols puts "
                    "the channel spacing between FFT bins; resize the run so "
                    "spacing*symbols/symbol_rate is an integer",
                )
    if spec.grid.samples_per_symbol & (spec.grid.samples_per_symbol - 1):
        bad("grid.samples_per_symbol", "must be a power of two")
    if spec.grid.symbols_per_block != n:
        bad(
            "grid.symbols_per_block",
            f"{spec.grid.symbols_per_block} disagrees with shaper blocklength {n}",
        )
    if spec.grid.blocks_per_run < 1:
        bad("grid.blocks_per_run", "need at least one block per run")
    if spec.grid.step_km <= 0:
        bad("grid.step_km", "step must be positive")
    if spec.link.num_spans < 1:
        bad("link.num_spans", "need at least one span")
    if spec.link.span_length_km <= 0:
        bad("link.span_length_km", "span length must be positive")

    if spec.axis not in SWEEP_AXES:
        bad("sweep.axis", f"axis must be one of {SWEEP_AXES}")
    if not spec.values:
        bad("sweep.values", "sweep needs at least one axis value")
    if spec.axis == "distance":
        for x in spec.values:
            spans = x / spec.link.span_length_km
            if abs(spans - round(spans)) > 1e-9 or round(spans) < 1:
                bad(
                    "sweep.values",
                    f"distance {x} km is not a whole number of "
                    f"{spec.link.span_length_km} km spans",
                )
    if spec.axis == "flipping":
        for v in spec.variants:
            if v == UNIFORM:
                bad("variants", "the flipping sweep covers shaped variants only")
    if spec.blocks < 1:
        bad("sweep.blocks", "need at least one block per point")
    if not 0.0 < spec.fec_rate <= 1.0:
        bad("fec_rate", "code rate must sit in (0, 1]")
    elif 1.0 - (1.0 - spec.fec_rate) * QAM_BITS_PER_1D < 0:
        bad("fec_rate", "parity exceeds the sign-bit budget of one bit per 1D")
    return issues


class _ChannelData(NamedTuple):
    symbols: np.ndarray  # unit-energy framed QAM stream
    edi_linear: np.ndarray  # per-block index, constellation-normalized
    amplitudes_i: np.ndarray
    amplitudes_q: np.ndarray
    signs_i: np.ndarray
    signs_q: np.ndarray


def _uniform_scale(alphabet) -> float:
    a = np.asarray(alphabet, dtype=np.float64)
    return 1.0 / math.sqrt(2.0 * float(np.mean(a * a)))


def _shaped_channel(spec, design: ShapingDesign, ch: int, blocks: int, n: int):
    cfg = LccdmConfig(
        design.composition, design.k, design.v, spec.window, spec.flip_position
    )
    scale = design.qam_scale()
    info_len = design.k - design.v
    syms = np.empty(blocks * n, dtype=np.complex128)
    edi = np.empty(blocks)
    ai = np.empty(blocks * n, dtype=np.int64)
    aq = np.empty(blocks * n, dtype=np.int64)
    si = np.empty(blocks * n, dtype=np.uint8)
    sq = np.empty(blocks * n, dtype=np.uint8)
    for b in range(blocks):
        info_i = random_bits(spec.seed, info_len, KIND_INFO, ch, 0, b)
        info_q = random_bits(spec.seed, info_len, KIND_INFO, ch, 1, b)
        res = lccdm_encode(info_i, info_q, cfg)
        signs_i = sign_source(spec.seed, n, ch, 0, b)
        signs_q = sign_source(spec.seed, n, ch, 1, b)
        block = frame_qam(res.amplitudes_i, res.amplitudes_q, signs_i, signs_q, scale)
        sl = slice(b * n, (b + 1) * n)
        syms[sl] = block.symbols
        edi[b] = res.edi.linear * scale * scale
        ai[sl] = res.amplitudes_i
        aq[sl] = res.amplitudes_q
        si[sl] = signs_i
        sq[sl] = signs_q
    return _ChannelData(syms, edi, ai, aq, si, sq)


def _uniform_channel(spec, ch: int, blocks: int, n: int):
    scale = _uniform_scale(spec.alphabet)
    levels = np.asarray(spec.alphabet, dtype=np.int64)
    syms = np.empty(blocks * n, dtype=np.complex128)
    edi = np.empty(blocks)
    ai = np.empty(blocks * n, dtype=np.int64)
    aq = np.empty(blocks * n, dtype=np.int64)
    si = np.empty(blocks * n, dtype=np.uint8)
    sq = np.empty(blocks * n, dtype=np.uint8)
    for b in range(blocks):
        amp_i = levels[substream(spec.seed, KIND_SYMBOLS, ch, 0, b).integers(0, levels.size, n)]
        amp_q = levels[substream(spec.seed, KIND_SYMBOLS, ch, 1, b).integers(0, levels.size, n)]
        signs_i = sign_source(spec.seed, n, ch, 0, b)
        signs_q = sign_source(spec.seed, n, ch, 1, b)
        block = frame_qam(amp_i, amp_q, signs_i, signs_q, scale)
        sl = slice(b * n, (b + 1) * n)
        syms[sl] = block.symbols
        edi[b] = edi_estimate(block.symbols, spec.window).linear
        ai[sl] = amp_i
        aq[sl] = amp_q
        si[sl] = signs_i
        sq[sl] = signs_q
    return _ChannelData(syms, edi, ai, aq, si, sq)


def variant_label(variant) -> str:
    return UNIFORM if variant == UNIFORM else f"v{variant}"


def simulate_point(
    spec: ExperimentSpec,
    variant,
    launch_dbm: float,
    n: Optional[int] = None,
    num_spans: Optional[int] = None,
    wave_path=None,
) -> MetricReport:
    """One full transmit-propagate-receive run of one shaper variant."""
    n = spec.blocklength if n is None else int(n)
    link = spec.link
    if num_spans is not None:
        link = link._replace(num_spans=int(num_spans))
    wdm = spec.wdm._replace(per_channel_power_dbm=launch_dbm)
    sps = max(spec.grid.samples_per_symbol, aggregate_sps(wdm))
    fs_hz = sps * wdm.symbol_rate_gbd * 1e9
    blocks = spec.grid.blocks_per_run
    center = wdm.num_channels // 2

    if variant == UNIFORM:
        design = None
        scale = _uniform_scale(spec.alphabet)
        rate_loss_list = 0.0
        make = lambda ch: _uniform_channel(spec, ch, blocks, n)
    else:
        design = shaping_design(n, spec.shaping_rate, int(variant), spec.alphabet)
        scale = design.qam_scale()
        rate_loss_list = design.list_rate_loss
        make = lambda ch: _shaped_channel(spec, design, ch, blocks, n)

    channels = [make(ch) for ch in range(wdm.num_channels)]
    waves = [
        set_average_power(rrc_shape(c.symbols, wdm.rrc_rolloff, sps), launch_dbm)
        for c in channels
    ]
    agg = wdm_mux(waves, wdm, sps)
    rx_wave = propagate_link(agg, link, fs_hz, spec.grid.step_km, spec.seed)
    if wave_path is not None:
        dump_waveform(wave_path, rx_wave)
    y = receiver_front_end(rx_wave, link, wdm, sps, 0)

    tx = channels[center]
    x = tx.symbols
    snr_db = effective_snr(x, y)
    block_snr = per_block_snr(x, y, n)

    h_hat = np.vdot(x, y) / np.vdot(x, x)
    y_eq = y / h_hat
    noise_var = float(np.mean(np.abs(y_eq - x) ** 2))

    labeling = PamLabeling.make(QAM_BITS_PER_1D)
    x_comp = np.concatenate([x.real, x.imag])
    y_comp = np.concatenate([y_eq.real, y_eq.imag])
    air4 = air_bmd(
        x_comp, y_comp, labeling, rate_loss_list, noise_var / 2.0, scale=scale
    )

    tx_bits = np.hstack(
        [
            labeling.bits_for(tx.amplitudes_i, tx.signs_i),
            labeling.bits_for(tx.amplitudes_q, tx.signs_q),
        ]
    )
    rx_bits = hard_bits(y_eq, labeling, scale)
    ber = pre_fec_ber(tx_bits, rx_bits)

    records = [
        BlockRecord(b, 10.0 * math.log10(tx.edi_linear[b]), float(block_snr[b]))
        for b in range(blocks)
    ]
    return MetricReport(
        launch_dbm=launch_dbm,
        snr_db=snr_db,
        air_bit4d=air4,
        ber=ber,
        mean_edi_db=mean_linear_to_db(tx.edi_linear),
        blocks=records,
    )


def hard_bits(y: np.ndarray, labeling: PamLabeling, scale: float) -> np.ndarray:
    from .framing import hard_demap

    return hard_demap(y, labeling, scale).bits


SWEEP_HEADER = ["launch_dbm", "snr_db", "air_bit4d", "ber", "mean_edi_db"]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.6f}"
    return str(x)


class SweepRow(NamedTuple):
    launch_dbm: float
    snr_db: Optional[float]
    air_bit4d: Optional[float]
    ber: Optional[float]
    mean_edi_db: float
    variant: str
    axis_value: float


def _write_sweep_csv(path, rows, axis_name: str):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SWEEP_HEADER + ["variant", axis_name])
        for r in rows:
            w.writerow(
                [
                    _fmt(r.launch_dbm),
                    _fmt(r.snr_db),
                    _fmt(r.air_bit4d),
                    _fmt(r.ber),
                    _fmt(r.mean_edi_db),
                    r.variant,
                    _fmt(r.axis_value),
                ]
            )


def _write_meta(spec: ExperimentSpec, outdir: str, extra: dict):
    meta = {
        "name": spec.name,
        "seed": spec.seed,
        "axis": spec.axis,
        "values": list(spec.values),
        "variants": [variant_label(v) for v in spec.variants],
        "rates_bit4d": {
            variant_label(v): (
                uniform_total_rate_bit4d(spec.fec_rate)
                if v == UNIFORM
                else pas_total_rate_bit4d(spec.shaping_rate, spec.fec_rate)
            )
            for v in spec.variants
        },
    }
    meta.update(extra)
    with open(os.path.join(outdir, "meta.json"), "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


class _PointTask(NamedTuple):
    spec: ExperimentSpec
    variant: object
    launch_dbm: float
    n: Optional[int]
    num_spans: Optional[int]
    wave_path: Optional[str]


def _run_point(task: _PointTask) -> MetricReport:
    return simulate_point(
        task.spec,
        task.variant,
        task.launch_dbm,
        n=task.n,
        num_spans=task.num_spans,
        wave_path=task.wave_path,
    )


def _map_points(tasks):
    workers = worker_count()
    if workers == 1 or len(tasks) <= 1:
        return [_run_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_point, tasks))  # order follows sweep index


def _require_valid(spec: ExperimentSpec):
    issues = validate_config(spec)
    if issues:
        lines = "; ".join(f"{i.field}: {i.message}" for i in issues)
        raise ValueError(f"invalid experiment config: {lines}")


def _channel_sweep(spec: ExperimentSpec, points):
    """points: list of (axis_value, launch_dbm, n, num_spans)."""
    outdir = spec.resolved_outdir()
    os.makedirs(outdir, exist_ok=True)
    tasks = []
    keys = []
    for idx, (axis_value, launch, nn, spans) in enumerate(points):
        for variant in spec.variants:
            wave = None
            if spec.dump_waveforms:
                wave = os.path.join(
                    outdir, f"rx_{variant_label(variant)}_{idx:02d}.wave"
                )
            tasks.append(_PointTask(spec, variant, launch, nn, spans, wave))
            keys.append((idx, axis_value, variant))
    reports = _map_points(tasks)
    rows = []
    for (idx, axis_value, variant), rep in zip(keys, reports):
        rows.append(
            SweepRow(
                rep.launch_dbm,
                rep.snr_db,
                rep.air_bit4d,
                rep.ber,
                rep.mean_edi_db,
                variant_label(variant),
                float(axis_value),
            )
        )
        scatter_export(
            rep.blocks,
            os.path.join(
                outdir, f"blocks_{variant_label(variant)}_{idx:02d}.csv"
            ),
        )
    return rows, reports, outdir


def run_power_sweep(spec: ExperimentSpec):
    _require_valid(spec)
    points = [(p, float(p), None, None) for p in spec.values]
    rows, reports, outdir = _channel_sweep(spec, points)
    _write_sweep_csv(os.path.join(outdir, "sweep.csv"), rows, "launch_axis_dbm")
    _write_meta(spec, outdir, {"kind": "power_sweep"})
    return rows, reports


def run_distance_sweep(spec: ExperimentSpec):
    _require_valid(spec)
    launch = spec.wdm.per_channel_power_dbm
    points = [
        (km, launch, None, int(round(km / spec.link.span_length_km)))
        for km in spec.values
    ]
    rows, reports, outdir = _channel_sweep(spec, points)
    _write_sweep_csv(os.path.join(outdir, "sweep.csv"), rows, "distance_km")
    _write_meta(spec, outdir, {"kind": "distance_sweep"})
    return rows, reports


def measure_edi_point(spec: ExperimentSpec, variant, n: int) -> float:
    """Channel-free mean EDI of transmitted blocks at one blocklength."""
    if variant == UNIFORM:
        data = _uniform_channel(spec, 0, spec.blocks, n)
        return mean_linear_to_db(data.edi_linear)
    design = shaping_design(n, spec.shaping_rate, int(variant), spec.alphabet)
    cfg = LccdmConfig(
        design.composition, design.k, design.v, spec.window, spec.flip_position
    )
    scale2 = design.qam_scale() ** 2
    info_len = design.k - design.v
    acc = 0.0
    for b in range(spec.blocks):
        info_i = random_bits(spec.seed, info_len, KIND_INFO, 0, 0, b)
        info_q = random_bits(spec.seed, info_len, KIND_INFO, 0, 1, b)
        res = lccdm_encode(info_i, info_q, cfg)
        acc += res.edi.linear * scale2
    return 10.0 * math.log10(acc / spec.blocks)


def run_blocklength_sweep(spec: ExperimentSpec):
    """EDI at every blocklength; the channel only on the configured subset."""
    _require_valid(spec)
    outdir = spec.resolved_outdir()
    os.makedirs(outdir, exist_ok=True)
    launch = spec.wdm.per_channel_power_dbm
    simulate = {int(x) for x in spec.simulate_values}
    rows = []
    reports = []
    sim_points = [
        (n, launch, int(n), None) for n in spec.values if int(n) in simulate
    ]
    sim_rows, sim_reports, _ = (
        _channel_sweep(spec, sim_points) if sim_points else ([], [], outdir)
    )
    sim_by_key = {
        (r.axis_value, r.variant): r for r in sim_rows
    }
    for n in spec.values:
        for variant in spec.variants:
            edi_db = measure_edi_point(spec, variant, int(n))
            simmed = sim_by_key.get((float(n), variant_label(variant)))
            rows.append(
                SweepRow(
                    launch,
                    simmed.snr_db if simmed else None,
                    simmed.air_bit4d if simmed else None,
                    simmed.ber if simmed else None,
                    edi_db,
                    variant_label(variant),
                    float(n),
                )
            )
    reports.extend(sim_reports)
    _write_sweep_csv(os.path.join(outdir, "sweep.csv"), rows, "blocklength")
    _write_meta(spec, outdir, {"kind": "blocklength_sweep"})
    return rows, reports


def run_flipping_sweep(spec: ExperimentSpec):
    """Channel-free EDI vs. flipping bits for both flip placements."""
    _require_valid(spec)
    outdir = spec.resolved_outdir()
    os.makedirs(outdir, exist_ok=True)
    v_values = sorted({int(v) for v in spec.variants})
    table = prefix_suffix_sweep(
        spec.blocklength,
        spec.shaping_rate,
        v_values,
        spec.window,
        spec.blocks,
        spec.seed,
        alphabet=spec.alphabet,
    )
    path = os.path.join(outdir, "sweep.csv")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            [
                "v",
                "flip_position",
                "mean_edi_db",
                "design_entropy_bits",
                "list_rate_loss",
                "blocks",
            ]
        )
        for r in table:
            w.writerow(
                [
                    r.v,
                    r.flip_position,
                    _fmt(r.mean_edi_db),
                    _fmt(r.design_entropy),
                    _fmt(r.list_rate_loss),
                    r.blocks,
                ]
            )
    _write_meta(spec, outdir, {"kind": "flipping_sweep"})
    return table


def run_sweep(spec: ExperimentSpec):
    if spec.axis == "launch_power":
        return run_power_sweep(spec)
    if spec.axis == "blocklength":
        return run_blocklength_sweep(spec)
    if spec.axis == "flipping":
        return run_flipping_sweep(spec)
    if spec.axis == "distance":
        return run_distance_sweep(spec)
    raise ValueError(f"unknown sweep axis {spec.axis!r}")
