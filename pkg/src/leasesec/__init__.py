"""Beamforming for primary-link secrecy under spectrum leasing.

A secondary multi-antenna transmitter buys spectrum access by interfering
with an eavesdropper more than with the primary receiver.  This package
computes the optimal secondary beamformer under a secondary-rate QoS
constraint for eavesdroppers that either treat the secondary signal as
noise or jointly decode it, and ships a seeded Monte Carlo harness for
comparing both against the silent-secondary and no-eavesdropper baselines.
"""

from .model import (
    ChannelSet,
    DegenerateChannelError,
    SystemParams,
    TrialSeed,
    mrt_beamformer,
    sample_channels,
)
from .rates import (
    JdRateBundle,
    RegimeLabel,
    jd_rate_bundle,
    no_leasing_secrecy,
    peaceful_rate,
    r_s_max,
    required_rate,
    secondary_rate,
    secrecy_rate_jd,
    secrecy_rate_sd,
)
from .pgr import (
    BoundaryPoint,
    admissible_powers,
    boundary_beamformer,
    export_boundary,
    power_gains,
    sample_simplex,
)
from .solver import OptResult, brute_force_jd, brute_force_sd, solve_jd, solve_sd
from .harness import SweepConfig, SweepRow, run_sweep, summarize

__version__ = "0.1.0"

__all__ = [
    "ChannelSet",
    "DegenerateChannelError",
    "SystemParams",
    "TrialSeed",
    "mrt_beamformer",
    "sample_channels",
    "JdRateBundle",
    "RegimeLabel",
    "jd_rate_bundle",
    "no_leasing_secrecy",
    "peaceful_rate",
    "r_s_max",
    "required_rate",
    "secondary_rate",
    "secrecy_rate_jd",
    "secrecy_rate_sd",
    "BoundaryPoint",
    "admissible_powers",
    "boundary_beamformer",
    "export_boundary",
    "power_gains",
    "sample_simplex",
    "OptResult",
    "brute_force_jd",
    "brute_force_sd",
    "solve_jd",
    "solve_sd",
    "SweepConfig",
    "SweepRow",
    "run_sweep",
    "summarize",
]
