import copy
import os

import pytest

from paslab.experiments import ExperimentSpec
from paslab.lccdm import prefix_suffix_sweep

SEED = 20260822

PRESET_DIR = os.path.join(
    os.path.dirname(__file__), "..", "src", "paslab", "presets"
)


def preset_path(name: str) -> str:
    return os.path.abspath(os.path.join(PRESET_DIR, name + ".yaml"))


# small end-to-end channel configuration shared by experiment/CLI tests
MICRO_RAW = dict(
    name="micro",
    seed=SEED,
    output_dir="runs",
    shaper=dict(
        blocklength=180, shaping_rate=1.85, window=10, flip_position="prefix"
    ),
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
    grid=dict(
        samples_per_symbol=8, symbols_per_block=180, blocks_per_run=4, step_km=1.0
    ),
    sweep=dict(axis="launch_power", values=[-1.0], blocks=8),
)


def micro_raw(**sections):
    raw = copy.deepcopy(MICRO_RAW)
    for key, val in sections.items():
        if isinstance(val, dict) and isinstance(raw.get(key), dict):
            raw[key].update(val)
        else:
            raw[key] = val
    return raw


def micro_spec(**sections) -> ExperimentSpec:
    return ExperimentSpec.from_mapping(micro_raw(**sections))


@pytest.fixture(scope="session")
def flip_sweep_small():
    """Placement study at the short-block operating point; shared because
    it takes a minute to compute."""
    return prefix_suffix_sweep(180, 1.85, [0, 1, 2, 3, 4], 10, 1000, SEED)
