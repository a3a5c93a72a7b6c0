"""Mobile device catalog, power-transfer range solving, SWIPT budgets and
ambient RF scavenging estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .linkphys import (
    Aperture,
    CarrierSpec,
    LinkGeometry,
    beam_efficiency,
    beta,
)


def dbm_to_watts(dbm: float) -> float:
    return 10 ** (dbm / 10) * 1e-3


def watts_to_dbm(watts: float) -> float:
    if watts <= 0:
        raise ValueError(f"power must be positive for dBm conversion, got {watts}")
    return 10 * math.log10(watts / 1e-3)


@dataclass(frozen=True)
class DeviceProfile:
    """A mobile device class: what it consumes and how it harvests."""

    name: str
    consumption_w: float
    antenna_radius_m: float
    rf_to_dc: float
    sensitivity_w: float = 1e-4  # -10 dBm, typical harvester sensitivity

    def __post_init__(self):
        if self.consumption_w <= 0:
            raise ValueError(f"consumption must be positive, got {self.consumption_w}")
        if self.antenna_radius_m <= 0:
            raise ValueError(f"antenna radius must be positive, got {self.antenna_radius_m}")
        if self.sensitivity_w <= 0:
            raise ValueError(f"sensitivity must be positive, got {self.sensitivity_w}")
        if not 0 < self.rf_to_dc <= 1:
            raise ValueError(f"rf_to_dc must be in (0, 1], got {self.rf_to_dc}")

    @property
    def receive_aperture(self) -> Aperture:
        return Aperture.from_radius(self.antenna_radius_m)


@dataclass(frozen=True)
class TransmitterSpec:
    """A power beacon / base station transmitter."""

    radiated_power_w: float
    aperture: Aperture
    carrier: CarrierSpec
    dc_to_rf: float = 1.0

    def __post_init__(self):
        if self.radiated_power_w <= 0:
            raise ValueError(f"radiated power must be positive, got {self.radiated_power_w}")
        if not 0 < self.dc_to_rf <= 1:
            raise ValueError(f"dc_to_rf must be in (0, 1], got {self.dc_to_rf}")


@dataclass(frozen=True)
class AmbientSource:
    """A measured ambient RF power-density band (W/m^2)."""

    spectrum_label: str
    environment_label: str
    density_low_w_per_m2: float
    density_high_w_per_m2: float

    def __post_init__(self):
        if not 0 < self.density_low_w_per_m2 <= self.density_high_w_per_m2:
            raise ValueError(
                f"need 0 < low <= high, got ({self.density_low_w_per_m2}, "
                f"{self.density_high_w_per_m2})"
            )


@dataclass(frozen=True)
class SwiptBudget:
    """Outcome of a simultaneous information-and-power transfer link."""

    topology: str  # integrated | closed_loop | decoupled
    harvested_power_w: float
    snr_db: float | None
    feasible: bool


def link_efficiency(tx: TransmitterSpec, dev: DeviceProfile, d: float) -> float:
    """Beam efficiency of the tx -> device link at distance d."""
    geom = LinkGeometry(tx.aperture, dev.receive_aperture, d)
    return beam_efficiency(beta(geom, tx.carrier))


def pt_range(tx: TransmitterSpec, dev: DeviceProfile) -> float | None:
    """Maximum distance at which the transmitter can power the device.

    The largest d with rf_to_dc * P * eta_B(d) >= consumption and received
    RF power >= harvester sensitivity.  Both constraints are monotone in d,
    so each inverts in closed form via

        d = sqrt(A_t * A_r / (lambda^2 * ln(1/(1 - eta_req))))

    and the binding one is the smaller distance.  Returns None when the
    device cannot be powered at any distance (required beam efficiency >= 1).
    """
    eta_power = dev.consumption_w / (dev.rf_to_dc * tx.radiated_power_w)
    eta_sens = dev.sensitivity_w / tx.radiated_power_w
    eta_req = max(eta_power, eta_sens)
    if eta_req >= 1:
        return None
    a_t = tx.aperture.area_m2
    a_r = dev.receive_aperture.area_m2
    lam = tx.carrier.wavelength_m
    return math.sqrt(a_t * a_r / (lam**2 * math.log(1 / (1 - eta_req))))


def builtin_catalog() -> list[DeviceProfile]:
    """The four reference device classes: (consumption, antenna radius) pairs
    of (50 mW, 1 cm), (0.5 W, 3 cm), (5 W, 9 cm), (25 W, 11 cm), all with
    70% RF-to-DC conversion and -10 dBm harvester sensitivity."""
    specs = [
        ("zigbee", 0.05, 0.01),
        ("smartphone", 0.5, 0.03),
        ("tablet", 5.0, 0.09),
        ("laptop", 25.0, 0.11),
    ]
    return [
        DeviceProfile(name=n, consumption_w=p, antenna_radius_m=r, rf_to_dc=0.7)
        for n, p, r in specs
    ]


def integrated_swipt(
    tx: TransmitterSpec,
    dev: DeviceProfile,
    d: float,
    noise_power_w: float,
    snr_threshold_db: float | None = None,
) -> SwiptBudget:
    """Power and information extracted from the same modulated microwave:
    PT and IT distances are constrained equal."""
    if d <= 0:
        raise ValueError(f"distance must be positive, got {d}")
    if noise_power_w <= 0:
        raise ValueError(f"noise power must be positive, got {noise_power_w}")
    eta = link_efficiency(tx, dev, d)
    received_rf = tx.radiated_power_w * eta
    harvested = dev.rf_to_dc * received_rf
    snr_db = 10 * math.log10(received_rf / noise_power_w)
    feasible = harvested >= dev.consumption_w and (
        snr_threshold_db is None or snr_db >= snr_threshold_db
    )
    return SwiptBudget("integrated", harvested, snr_db, feasible)


def closed_loop_swipt(
    tx: TransmitterSpec,
    dev: DeviceProfile,
    d: float,
    uplink_fraction: float,
    noise_power_w: float,
    snr_threshold_db: float | None = None,
) -> SwiptBudget:
    """Downlink power transfer plus uplink information transfer.

    The uplink signal originates from the downlink harvest, so the power
    received back at the base station traverses the free-space link twice
    and scales as eta_B(d)^2 (double attenuation).
    """
    if not 0 < uplink_fraction <= 1:
        raise ValueError(f"uplink_fraction must be in (0, 1], got {uplink_fraction}")
    if d <= 0:
        raise ValueError(f"distance must be positive, got {d}")
    if noise_power_w <= 0:
        raise ValueError(f"noise power must be positive, got {noise_power_w}")
    eta = link_efficiency(tx, dev, d)
    harvested = dev.rf_to_dc * tx.radiated_power_w * eta
    uplink_tx = uplink_fraction * harvested
    bs_received = uplink_tx * eta
    snr_db = 10 * math.log10(bs_received / noise_power_w) if bs_received > 0 else None
    feasible = harvested >= dev.consumption_w and (
        snr_threshold_db is None or (snr_db is not None and snr_db >= snr_threshold_db)
    )
    return SwiptBudget("closed_loop", harvested, snr_db, feasible)


def scavenged_power(source: AmbientSource, device_area_m2: float) -> tuple[float, float]:
    """Incident RF power bounds (low, high) captured by a device aperture,
    before RF-to-DC conversion."""
    if device_area_m2 < 0:
        raise ValueError(f"device area must be non-negative, got {device_area_m2}")
    return (
        source.density_low_w_per_m2 * device_area_m2,
        source.density_high_w_per_m2 * device_area_m2,
    )


def _mw(x: float) -> float:
    """mW/m^2 -> W/m^2."""
    return x * 1e-3


def builtin_ambient_table() -> list[AmbientSource]:
    """Measured ambient RF power densities (converted from mW/m^2)."""
    rows = [
        ("GSM 935-960 MHz", "inner city, outdoor, on ground", 1e-3, 1e-1),
        ("GSM 935-960 MHz", "inner city, indoor, close to window", 1e-2, 1e-1),
        ("GSM 1805-1880 MHz", "50 meters from base stations", 5e-3, 5.0),
        ("GSM 1805-1880 MHz", "200 meters from base stations", 1e-3, 0.5),
        ("GSM 1805-1880 MHz", "500 meters from base stations", 5e-4, 5e-2),
        ("WiFi", "within 8 meters from access points", 1e-3, 5e-2),
        ("WiFi", "12 meters from access points", 1e-4, 5e-4),
    ]
    return [
        AmbientSource(spec, env, _mw(lo), _mw(hi)) for spec, env, lo, hi in rows
    ]
