"""RF-exposure safety: power-density profiles, unsafe beam-interception
distance (UBID) and duty-cycle limits under time-averaged exposure caps.

Regulatory limits (FCC/ICNIRP style) cap the *average* power density over a
long window (10 W/m^2 over half an hour), so a transmitter closer than the
UBID can stay compliant by reducing its on-fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .linkphys import Aperture, CarrierSpec

OMNI = "omnidirectional"
BEAMED = "beamed"


@dataclass(frozen=True)
class ExposureLimit:
    max_avg_density_w_per_m2: float = 10.0
    averaging_window_s: float = 1800.0

    def __post_init__(self):
        if self.max_avg_density_w_per_m2 <= 0:
            raise ValueError("exposure limit must be positive")
        if self.averaging_window_s <= 0:
            raise ValueError("averaging window must be positive")


@dataclass(frozen=True)
class SafetyReport:
    ubid_m: float
    mode: str
    radiated_power_w: float
    limit: ExposureLimit
    aperture: Aperture | None = None

    def __post_init__(self):
        if self.mode not in (OMNI, BEAMED):
            raise ValueError(f"unknown mode {self.mode!r}")
        if (self.aperture is not None) != (self.mode == BEAMED):
            raise ValueError("aperture present iff mode is beamed")


def omni_density(power_w: float, d: float) -> float:
    """Power density of an isotropic radiator: P / (4 pi d^2)."""
    if power_w <= 0 or d <= 0:
        raise ValueError("power and distance must be positive")
    return power_w / (4 * math.pi * d**2)


def beam_peak_density(
    power_w: float, aperture: Aperture, carrier: CarrierSpec, d: float
) -> float:
    """On-axis peak power density of a beamed transmission: P * A_t / (lambda d)^2.

    This is the small-receiver limit of the beam-efficiency model,
    lim_{A_r -> 0} P * (1 - exp(-beta)) / A_r, and upper-bounds the
    received density over any finite receive aperture at the same distance.
    """
    if power_w <= 0 or d <= 0:
        raise ValueError("power and distance must be positive")
    lam = carrier.wavelength_m
    return power_w * aperture.area_m2 / (lam * d) ** 2


def ubid(
    power_w: float,
    mode: str,
    aperture: Aperture | None = None,
    carrier: CarrierSpec | None = None,
    limit: ExposureLimit = ExposureLimit(),
) -> SafetyReport:
    """Unsafe beam-interception distance: the maximum distance at which the
    power density exceeds the exposure limit.

    Omnidirectional: sqrt(P / (4 pi S)).  Beamed: sqrt(P * A_t / S) / lambda.
    """
    if power_w <= 0:
        raise ValueError("power must be positive")
    s = limit.max_avg_density_w_per_m2
    if mode == OMNI:
        d = math.sqrt(power_w / (4 * math.pi * s))
        return SafetyReport(d, OMNI, power_w, limit)
    if mode == BEAMED:
        if aperture is None or carrier is None:
            raise ValueError("beamed mode requires an aperture and a carrier")
        d = math.sqrt(power_w * aperture.area_m2 / s) / carrier.wavelength_m
        return SafetyReport(d, BEAMED, power_w, limit, aperture)
    raise ValueError(f"unknown mode {mode!r}")


def max_duty_cycle(
    power_w: float,
    mode: str,
    d: float,
    aperture: Aperture | None = None,
    carrier: CarrierSpec | None = None,
    limit: ExposureLimit = ExposureLimit(),
) -> float:
    """Largest on-fraction over the averaging window that keeps the average
    density at distance d within the limit: min(1, S / instantaneous density).

    The same factor applies if the transmitter scales power continuously
    instead of on/off keying.
    """
    if d <= 0:
        raise ValueError("distance must be positive")
    if mode == OMNI:
        inst = omni_density(power_w, d)
    elif mode == BEAMED:
        if aperture is None or carrier is None:
            raise ValueError("beamed mode requires an aperture and a carrier")
        inst = beam_peak_density(power_w, aperture, carrier, d)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return min(1.0, limit.max_avg_density_w_per_m2 / inst)
