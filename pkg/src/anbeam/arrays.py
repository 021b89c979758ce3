"""Far-field ULA channel and steering models with bounded CSI uncertainty.

Angles are measured from array broadside and must lie in (-pi/2, pi/2).
Channel vectors carry the free-space amplitude attenuation; steering vectors
are unit-modulus phase ramps.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299792458.0


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform linear array: element count, spacing in meters, carrier in Hz."""

    num_elements: int
    element_spacing_m: float
    carrier_hz: float

    def __post_init__(self):
        if self.num_elements < 1:
            raise ValueError("num_elements must be >= 1")
        if self.element_spacing_m <= 0 or self.carrier_hz <= 0:
            raise ValueError("spacing and carrier must be positive")
        if self.element_spacing_m > SPEED_OF_LIGHT / (2 * self.carrier_hz) * (1 + 1e-12):
            warnings.warn(
                "element spacing exceeds half a wavelength; grating lobes expected",
                stacklevel=2,
            )

    @classmethod
    def half_wavelength(cls, num_elements: int, carrier_hz: float) -> "ArrayGeometry":
        return cls(num_elements, SPEED_OF_LIGHT / (2 * carrier_hz), carrier_hz)


@dataclass(frozen=True)
class LosChannel:
    """Line-of-sight channel: geometry plus the attenuated vector."""

    range_m: float
    angle_rad: float
    vector: np.ndarray


@dataclass(frozen=True)
class UncertaintyRegion:
    """Norm ball of channel estimation errors around a channel estimate."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be >= 0")
        if np.asarray(self.center).ndim != 1:
            raise ValueError("center must be a vector")


@dataclass(frozen=True)
class JammingSource:
    """One jammer as seen by every user: per-user angle and path loss.

    ``power_w`` is the emitted power; ``path_loss_factor[k]`` the amplitude
    attenuation to user ``k``, so the received jamming power at user ``k`` is
    ``power_w * path_loss_factor[k] ** 2`` (unit-power waveform).
    """

    angles_rad: np.ndarray
    power_w: float
    path_loss_factor: np.ndarray

    def __post_init__(self):
        if self.power_w < 0:
            raise ValueError("power_w must be >= 0")

    def received_power_w(self, lu_index: int) -> float:
        return self.power_w * float(self.path_loss_factor[lu_index]) ** 2


def steering_vector(geom: ArrayGeometry, angle_rad: float) -> np.ndarray:
    """Steering vector of a ULA toward ``angle_rad``.

    Element ``m`` is ``exp(-1j * 2*pi * f_c * m * d * sin(angle) / c)``; the
    first element is the phase reference and all entries have unit modulus.
    """
    if not -np.pi / 2 < angle_rad < np.pi / 2:
        raise ValueError("angle must lie in (-pi/2, pi/2)")
    m = np.arange(geom.num_elements)
    phase = 2 * np.pi * geom.carrier_hz * geom.element_spacing_m * np.sin(angle_rad) / SPEED_OF_LIGHT
    return np.exp(-1j * phase * m)


def path_loss_db(carrier_hz: float, range_m: float) -> float:
    """Free-space path loss in dB: ``32.5 + 20 lg f_MHz + 20 lg r_km``."""
    if carrier_hz <= 0 or range_m <= 0:
        raise ValueError("carrier and range must be positive")
    return 32.5 + 20 * np.log10(carrier_hz / 1e6) + 20 * np.log10(range_m / 1e3)


def attenuation(carrier_hz: float, range_m: float) -> float:
    """Amplitude attenuation factor ``10 ** (-Lfs / 20)``."""
    return 10 ** (-path_loss_db(carrier_hz, range_m) / 20)


def los_channel(geom: ArrayGeometry, range_m: float, angle_rad: float) -> LosChannel:
    """LoS channel toward ``(range_m, angle_rad)``.

    Far field: the attenuation is a single scalar on the whole steering
    vector, so ``||vector||^2 == N * rho^2``.
    """
    rho = attenuation(geom.carrier_hz, range_m)
    return LosChannel(range_m, angle_rad, rho * steering_vector(geom, angle_rad))


def sample_uncertainty(
    region: UncertaintyRegion,
    rng: np.random.Generator,
    mode: str = "surface",
) -> np.ndarray:
    """Draw ``center + delta`` from the uncertainty ball.

    ``mode="surface"`` puts ``||delta||`` exactly at the radius; ``"interior"``
    draws uniformly from the ball (radius scaled by ``u ** (1 / (2n))`` since
    the ball lives in 2n real dimensions).
    """
    center = np.asarray(region.center, dtype=complex)
    n = center.size
    if region.radius == 0:
        return center.copy()
    d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    d /= np.linalg.norm(d)
    if mode == "surface":
        r = region.radius
    elif mode == "interior":
        r = region.radius * rng.uniform() ** (1.0 / (2 * n))
    else:
        raise ValueError(f"unknown sampling mode {mode!r}")
    return center + r * d
