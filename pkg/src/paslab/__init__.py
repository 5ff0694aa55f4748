"""Probabilistic amplitude shaping laboratory.

Constant-composition distribution matching, energy-dispersion metrics,
list-encoding shapers, Maxwell-Boltzmann shaping design, QAM framing, a
split-step WDM fiber simulator, and achievable-rate metrology.
"""

__version__ = "0.1.0"

from .ccdm import (
    CodebookRangeError,
    Composition,
    CompositionMismatchError,
    ccdm_decode,
    ccdm_encode,
    max_input_length,
    multiset_count,
    rank,
    unrank,
)
from .design import (
    DEFAULT_ALPHABET,
    AmplitudeDistribution,
    ShapingDesign,
    mb_distribution,
    shaping_design,
    solve_lambda_for_entropy,
)
from .edi import EdiValue, edi_estimate, iid_edi, mean_edi_db
from .experiments import (
    ExperimentSpec,
    run_blocklength_sweep,
    run_distance_sweep,
    run_flipping_sweep,
    run_power_sweep,
    run_sweep,
    simulate_point,
    validate_config,
)
from .fiber import (
    FiberLink,
    SimGrid,
    StepInstabilityError,
    WdmConfig,
    effective_snr,
    propagate_link,
    receiver_front_end,
)
from .framing import PamLabeling, frame_qam, hard_demap, sign_source
from .lccdm import (
    LccdmConfig,
    LccdmResult,
    lccdm_decode,
    lccdm_encode,
    prefix_suffix_sweep,
)
from .metrics import MetricReport, air_bmd, pre_fec_ber, scatter_export

__all__ = [
    "AmplitudeDistribution",
    "CodebookRangeError",
    "Composition",
    "CompositionMismatchError",
    "DEFAULT_ALPHABET",
    "EdiValue",
    "ExperimentSpec",
    "FiberLink",
    "LccdmConfig",
    "LccdmResult",
    "MetricReport",
    "PamLabeling",
    "ShapingDesign",
    "SimGrid",
    "StepInstabilityError",
    "WdmConfig",
    "air_bmd",
    "ccdm_decode",
    "ccdm_encode",
    "edi_estimate",
    "effective_snr",
    "frame_qam",
    "hard_demap",
    "iid_edi",
    "lccdm_decode",
    "lccdm_encode",
    "max_input_length",
    "mb_distribution",
    "mean_edi_db",
    "multiset_count",
    "pre_fec_ber",
    "prefix_suffix_sweep",
    "propagate_link",
    "rank",
    "receiver_front_end",
    "run_blocklength_sweep",
    "run_distance_sweep",
    "run_flipping_sweep",
    "run_power_sweep",
    "run_sweep",
    "scatter_export",
    "shaping_design",
    "sign_source",
    "simulate_point",
    "solve_lambda_for_entropy",
    "unrank",
    "validate_config",
    "__version__",
]
