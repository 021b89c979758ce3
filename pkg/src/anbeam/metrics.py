"""SINR, achievable-rate, and secrecy-rate metrics.

The AN contribution to a received power is evaluated in expectation: for
zero-mean AN with covariance ``Z`` the average power through channel ``h`` is
``h^H Z h``.  Jamming likewise enters as its expected power (unit-power
jamming waveforms times emitted power and path loss), which matches the
average-SINR reading of the link model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrays import ArrayGeometry, JammingSource, LosChannel, steering_vector
from .linalg import hermitize, is_psd


@dataclass
class TransmitDesign:
    """Information beams (sqrt-watt entries) plus AN covariance (watts)."""

    beams: list[np.ndarray]
    an_covariance: np.ndarray

    def __post_init__(self):
        self.beams = [np.asarray(w, dtype=complex) for w in self.beams]
        self.an_covariance = hermitize(self.an_covariance)
        n = self.an_covariance.shape[0]
        for w in self.beams:
            if w.shape != (n,):
                raise ValueError("beam dimension does not match AN covariance")
        if not is_psd(self.an_covariance, tol=1e-8):
            raise ValueError("AN covariance must be positive semidefinite")

    @property
    def num_beams(self) -> int:
        return len(self.beams)

    def total_power_w(self) -> float:
        return float(sum(np.vdot(w, w).real for w in self.beams)
                     + np.trace(self.an_covariance).real)


@dataclass(frozen=True)
class LinkNoise:
    """Receiver noise floors in watts for users, active and passive Eves."""

    lu_w: float
    ae_w: float
    pe_w: float

    def __post_init__(self):
        if min(self.lu_w, self.ae_w, self.pe_w) <= 0:
            raise ValueError("noise powers must be positive")


def _channel_vector(channel) -> np.ndarray:
    if isinstance(channel, LosChannel):
        return channel.vector
    return np.asarray(channel, dtype=complex)


def jamming_power(
    jammers: list[JammingSource],
    lu_index: int,
    geom_rx: ArrayGeometry,
    rx_weights: np.ndarray,
) -> float:
    """Expected received jamming power ``sum_r E_r rho_r^2 |a_r^H v|^2``."""
    v = np.asarray(rx_weights, dtype=complex)
    total = 0.0
    for jam in jammers:
        a = steering_vector(geom_rx, float(jam.angles_rad[lu_index]))
        total += jam.received_power_w(lu_index) * abs(np.vdot(a, v)) ** 2
    return total


def lu_sinr(
    design: TransmitDesign,
    lu_channel,
    lu_index: int,
    rx_weights: np.ndarray | None = None,
    rx_steering: np.ndarray | None = None,
    jam_power_w: float = 0.0,
    noise_w: float = 1e-13,
) -> float:
    """Average SINR of one legitimate user.

    Numerator is ``|h^H w_k|^2 |a^H v|^2``; the denominator collects
    inter-user interference through the same receive gain, the expected AN
    power ``h^H Z h |a^H v|^2``, the expected jamming power and the noise
    floor.  When no receive weights are given the receive gain is 1
    (single-antenna reception).
    """
    h = _channel_vector(lu_channel)
    if rx_weights is not None:
        if rx_steering is None:
            raise ValueError("rx_steering required together with rx_weights")
        gain = abs(np.vdot(rx_steering, rx_weights)) ** 2
    else:
        gain = 1.0
    num = abs(np.vdot(h, design.beams[lu_index])) ** 2 * gain
    interference = sum(
        abs(np.vdot(h, w)) ** 2 for i, w in enumerate(design.beams) if i != lu_index
    ) * gain
    an = (h.conj() @ design.an_covariance @ h).real * gain
    return num / (interference + an + jam_power_w + noise_w)


def eve_sinr_upper(design: TransmitDesign, eve_channel, noise_w: float) -> float:
    """Upper bound of an eavesdropper's SINR: all beams count as signal."""
    h = _channel_vector(eve_channel)
    num = sum(abs(np.vdot(h, w)) ** 2 for w in design.beams)
    den = (h.conj() @ design.an_covariance @ h).real + noise_w
    return num / den


def achievable_rate(sinr: float) -> float:
    """Gaussian-channel rate in bit/s/Hz."""
    if sinr < 0:
        raise ValueError("sinr must be >= 0")
    return float(np.log2(1 + sinr))


def secrecy_rate(lu_rates, ae_rates=(), pe_rates=()) -> float:
    """Worst-user rate minus best-eavesdropper rate, clamped at zero."""
    lu_rates = list(lu_rates)
    if not lu_rates:
        raise ValueError("need at least one user rate")
    eve = max(list(ae_rates) + list(pe_rates), default=0.0)
    return max(0.0, min(lu_rates) - eve)
