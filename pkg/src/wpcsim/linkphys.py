"""Free-space power-beam link physics.

Beam efficiency over a free-space power-transfer channel between two
circular apertures facing each other:

    eta_B = 1 - exp(-beta),    beta = A_t * A_r / (lambda * d)^2

The far-field linearization (eta_B ~ beta for small beta) reduces to the
Friis transmission equation.  End-to-end efficiency is the product of the
DC-to-RF conversion, the beam efficiency and the RF-to-DC conversion.

All quantities in SI units; dBm conversion happens only at interface
boundaries (see cli / devices).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SPEED_OF_LIGHT = 2.998e8  # m/s


@dataclass(frozen=True)
class CarrierSpec:
    """Carrier frequency and derived wavelength."""

    frequency_hz: float

    def __post_init__(self):
        if self.frequency_hz <= 0:
            raise ValueError(f"frequency must be positive, got {self.frequency_hz}")

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.frequency_hz

    @classmethod
    def from_wavelength(cls, wavelength_m: float) -> "CarrierSpec":
        if wavelength_m <= 0:
            raise ValueError(f"wavelength must be positive, got {wavelength_m}")
        return cls(frequency_hz=SPEED_OF_LIGHT / wavelength_m)


@dataclass(frozen=True)
class Aperture:
    """Physical antenna aperture; optionally carries the disk radius it came from."""

    area_m2: float
    radius_m: float | None = None

    def __post_init__(self):
        if self.area_m2 <= 0:
            raise ValueError(f"aperture area must be positive, got {self.area_m2}")
        if self.radius_m is not None and self.radius_m <= 0:
            raise ValueError(f"aperture radius must be positive, got {self.radius_m}")

    @classmethod
    def from_radius(cls, radius_m: float) -> "Aperture":
        if radius_m <= 0:
            raise ValueError(f"aperture radius must be positive, got {radius_m}")
        return cls(area_m2=math.pi * radius_m**2, radius_m=radius_m)


@dataclass(frozen=True)
class LinkGeometry:
    """Transmit/receive apertures separated by a boresight distance."""

    transmit_aperture: Aperture
    receive_aperture: Aperture
    distance_m: float

    def __post_init__(self):
        if self.distance_m <= 0:
            raise ValueError(f"distance must be positive, got {self.distance_m}")


@dataclass(frozen=True)
class EfficiencyChain:
    """DC-to-RF and RF-to-DC conversion efficiencies bracketing the beam link.

    State-of-the-art microwave generators and rectennas reach roughly 80%,
    hence the defaults.
    """

    dc_to_rf: float = 0.8
    rf_to_dc: float = 0.8

    def __post_init__(self):
        for name in ("dc_to_rf", "rf_to_dc"):
            v = getattr(self, name)
            if not 0 < v <= 1:
                raise ValueError(f"{name} must be in (0, 1], got {v}")


def beta(geom: LinkGeometry, carrier: CarrierSpec) -> float:
    """Aperture-product parameter A_t*A_r/(lambda*d)^2 governing beam efficiency.

    Strictly decreasing in distance (inverse-square), increasing in each
    aperture, symmetric under swapping transmit and receive apertures.
    """
    lam = carrier.wavelength_m
    return (
        geom.transmit_aperture.area_m2
        * geom.receive_aperture.area_m2
        / (lam * geom.distance_m) ** 2
    )


def beam_efficiency(b: float) -> float:
    """Ratio of received to radiated power: 1 - exp(-beta).

    Valid from the near field (beta large, efficiency -> 1) to the far
    field (beta small, efficiency ~ beta, i.e. Friis).
    """
    if b < 0:
        raise ValueError(f"beta must be non-negative, got {b}")
    return -math.expm1(-b)


def friis_efficiency(b: float) -> float:
    """Far-field (Friis) linearization of the beam efficiency, clamped at 1."""
    if b < 0:
        raise ValueError(f"beta must be non-negative, got {b}")
    return min(b, 1.0)


def end_to_end_efficiency(b: float, chain: EfficiencyChain) -> float:
    """Product of the three efficiencies: DC-to-RF, beam, RF-to-DC."""
    return chain.dc_to_rf * beam_efficiency(b) * chain.rf_to_dc


def distance_scaling_factor(f_old_hz: float, f_new_hz: float) -> float:
    """Factor by which the transfer distance grows when the carrier frequency
    is scaled at fixed apertures and fixed beam efficiency.

    beta depends on lambda*d only, so d scales as f_new/f_old (e.g. 2.4 GHz
    -> 60 GHz gives 25x).
    """
    if f_old_hz <= 0 or f_new_hz <= 0:
        raise ValueError("frequencies must be positive")
    return f_new_hz / f_old_hz
