"""One transmit-propagate-receive run per shaper variant.

A short three-channel WDM link at desk scale: 2 spans of standard
single-mode fiber, 180-symbol blocks, plain matching against four
flipping bits.  The shaped v=4 signal shows a lower EDI and a slightly
higher effective SNR on the center channel.
"""

import time

from paslab.experiments import ExperimentSpec, simulate_point, variant_label

RAW = dict(
    name="fiber_point_demo",
    seed=20260822,
    output_dir="runs",
    shaper=dict(blocklength=180, shaping_rate=1.85, window=10, flip_position="prefix"),
    variants=[0, 4],
    link=dict(
        span_length_km=80.0,
        num_spans=2,
        attenuation_db_km=0.2,
        dispersion_ps_nm_km=17.0,
        gamma_w_km=1.37,
        center_wavelength_nm=1550.0,
        edfa_noise_figure_db=6.0,
    ),
    wdm=dict(
        num_channels=3,
        channel_spacing_ghz=50.0,
        symbol_rate_gbd=32.0,
        rrc_rolloff=0.1,
        per_channel_power_dbm=-1.0,
    ),
    grid=dict(samples_per_symbol=8, symbols_per_block=180, blocks_per_run=4, step_km=1.0),
    sweep=dict(axis="launch_power", values=[-1.0], blocks=8),
)

spec = ExperimentSpec.from_mapping(RAW)
for variant in (0, 4, "uniform"):
    t0 = time.perf_counter()
    rep = simulate_point(spec, variant, -1.0)
    dt = time.perf_counter() - t0
    print(
        f"{variant_label(variant):8s} SNR {rep.snr_db:6.3f} dB   "
        f"AIR {rep.air_bit4d:6.3f} bit/4D   BER {rep.ber:.4f}   "
        f"EDI {rep.mean_edi_db:7.3f} dB   ({dt:.1f} s)"
    )
