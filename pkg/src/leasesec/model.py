"""Scenario parameters, channel realizations, and the seeded channel sampler.

One scenario has a single-antenna primary transmitter, primary receiver,
secondary receiver and eavesdropper, plus a secondary transmitter with n_t
antennas.  Channels are unit-variance circularly-symmetric complex Gaussian,
drawn from a counter-based per-trial stream so any trial can be regenerated
independently of evaluation order or worker count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import inner

__all__ = [
    "SystemParams",
    "ChannelSet",
    "TrialSeed",
    "DegenerateChannelError",
    "sample_channels",
    "mrt_beamformer",
    "beamformer_norm_ok",
]

COLLINEARITY_TOL = 1e-10
# Slack allowed on ||w||^2 <= p_s_max when checking reconstructed vectors.
POWER_SLACK = 1e-9

_MASK64 = (1 << 64) - 1


class DegenerateChannelError(ValueError):
    """A channel draw violates the general-position assumptions."""


@dataclass(frozen=True)
class SystemParams:
    """Scalar scenario configuration (linear power units throughout)."""

    p_p: float  # primary transmit power
    p_s_max: float  # secondary power budget, ||w||^2 <= p_s_max
    sigma2_p: float = 1.0  # noise variance at the primary receiver
    sigma2_s: float = 1.0  # noise variance at the secondary receiver
    sigma2_e: float = 1.0  # noise variance at the eavesdropper
    alpha: float = 0.0  # secondary QoS fraction of its max rate
    n_t: int = 2  # secondary transmit antennas

    def __post_init__(self):
        if not (np.isfinite(self.p_p) and self.p_p >= 0):
            raise ValueError(f"p_p must be finite and >= 0, got {self.p_p}")
        if not (np.isfinite(self.p_s_max) and self.p_s_max >= 0):
            raise ValueError(f"p_s_max must be finite and >= 0, got {self.p_s_max}")
        for name in ("sigma2_p", "sigma2_s", "sigma2_e"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if int(self.n_t) != self.n_t or self.n_t < 2:
            raise ValueError(f"n_t must be an integer >= 2, got {self.n_t}")

    @classmethod
    def from_snr_db(cls, snr_db: float, alpha: float, n_t: int) -> "SystemParams":
        """Unit noise everywhere; P_p = P_s,max = 10^(snr_db/10)."""
        p = 10.0 ** (snr_db / 10.0)
        return cls(p_p=p, p_s_max=p, alpha=alpha, n_t=n_t)


@dataclass(frozen=True)
class TrialSeed:
    """Addressable position in the Monte Carlo stream."""

    master_seed: int
    trial_index: int

    def __post_init__(self):
        if self.trial_index < 0:
            raise ValueError("trial_index must be >= 0")


@dataclass
class ChannelSet:
    """One realization of all six channels.

    Scalars connect the primary transmitter to the three receivers; vectors
    (length n_t) connect the secondary transmitter to them.
    """

    h_pp: complex
    h_pe: complex
    h_ps: complex
    h_sp: np.ndarray
    h_se: np.ndarray
    h_ss: np.ndarray
    resamples: int = field(default=0, compare=False)

    def __post_init__(self):
        for name in ("h_sp", "h_se", "h_ss"):
            v = np.asarray(getattr(self, name), dtype=np.complex128)
            if v.ndim != 1 or not np.all(np.isfinite(v)):
                raise ValueError(f"{name} must be a finite 1-d complex vector")
            setattr(self, name, v)
        if not (len(self.h_sp) == len(self.h_se) == len(self.h_ss)):
            raise ValueError("secondary channel vectors must share one length")

    @property
    def n_t(self) -> int:
        return len(self.h_ss)

    def secondary_vectors(self) -> np.ndarray:
        """Stacked (h_sp, h_se, h_ss), the fixed receiver order used everywhere."""
        return np.stack([self.h_sp, self.h_se, self.h_ss])

    def general_position(self, tol: float = COLLINEARITY_TOL) -> bool:
        """No two secondary channel vectors collinear (residual test)."""
        vecs = [self.h_sp, self.h_se, self.h_ss]
        for i in range(3):
            for j in range(i + 1, 3):
                a, b = vecs[i], vecs[j]
                na, nb = np.linalg.norm(a), np.linalg.norm(b)
                if na == 0.0 or nb == 0.0:
                    return False
                resid = b - (a / na) * (inner(a / na, b))
                if np.linalg.norm(resid) < tol * nb:
                    return False
        return True


def _mix64(master_seed: int, trial_index: int) -> int:
    """64-bit hash of (master_seed, trial_index): splitmix64 finalizer."""
    z = (master_seed + (trial_index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _draw(rng: np.random.Generator, size: int) -> np.ndarray:
    """i.i.d. CN(0, 1): unit-variance circularly symmetric complex Gaussian."""
    re = rng.standard_normal(size)
    im = rng.standard_normal(size)
    return (re + 1j * im) / np.sqrt(2.0)


def sample_channels(params: SystemParams, seed: TrialSeed) -> ChannelSet:
    """Draw one ChannelSet, deterministic in (master_seed, trial_index).

    Draws that fail the general-position check are redrawn from the same
    stream (probability zero under the continuous model; the count is kept
    on the returned set).
    """
    rng = np.random.Generator(
        np.random.PCG64(_mix64(seed.master_seed, seed.trial_index))
    )
    resamples = 0
    while True:
        scalars = _draw(rng, 3)
        ch = ChannelSet(
            h_pp=complex(scalars[0]),
            h_pe=complex(scalars[1]),
            h_ps=complex(scalars[2]),
            h_sp=_draw(rng, params.n_t),
            h_se=_draw(rng, params.n_t),
            h_ss=_draw(rng, params.n_t),
            resamples=resamples,
        )
        if ch.general_position():
            return ch
        resamples += 1


def mrt_beamformer(ch: ChannelSet, params: SystemParams) -> np.ndarray:
    """Full-power maximum ratio transmission matched to h_ss."""
    norm = np.linalg.norm(ch.h_ss)
    if norm == 0.0:
        raise DegenerateChannelError("h_ss is zero; MRT undefined")
    return np.sqrt(params.p_s_max) * ch.h_ss / norm


def beamformer_norm_ok(w: np.ndarray, params: SystemParams) -> bool:
    """Power-budget invariant ||w||^2 <= p_s_max, with rounding slack."""
    return float(np.linalg.norm(w) ** 2) <= params.p_s_max + POWER_SLACK
