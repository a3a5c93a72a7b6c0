"""Scenario-file ingestion and tabular result emission.

Scenario files are TOML with sections carrier / transmitter / devices[] /
safety / beam / network.  Every key carries its unit as a suffix (_w, _m,
_hz, _dbm, ...); unknown keys are rejected with the file and key path in
the diagnostic.  All sections are optional and fall back to the built-in
reference configuration (50 W beacon, 3 m-radius disk aperture, 2.5 GHz,
the four-device catalog).
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field
from pathlib import Path

from .devices import (
    DeviceProfile,
    TransmitterSpec,
    builtin_catalog,
    dbm_to_watts,
)
from .linkphys import Aperture, CarrierSpec
from .netcov import NetworkScenario
from .safety import ExposureLimit


class ScenarioError(ValueError):
    """Malformed or inconsistent scenario file."""


@dataclass(frozen=True)
class BeamConfig:
    """Coordinated-beacon geometry for the field-map command."""

    beacon_count: int = 4
    beacon_ring_radius_m: float = 10.0
    elements_x: int = 4
    elements_y: int = 4
    per_beacon_power_w: float = 1.0
    mobile_x_m: float = 0.0
    mobile_y_m: float = 0.0
    mobile_z_m: float = 0.0
    # keep the map inside the beacon ring: density right in front of a
    # beacon always dominates the target cell
    map_extent_m: float = 5.0
    map_points: int = 41

    def __post_init__(self):
        if self.beacon_count < 2:
            raise ScenarioError("beam.beacon_count must be at least 2")
        if self.map_points < 2:
            raise ScenarioError("beam.map_points must be at least 2")


@dataclass(frozen=True)
class NetworkConfig:
    pb_density: float = 1e-3
    bs_density: float = 1e-4
    region_side_m: float = 1000.0
    snr_threshold_db: float = 10.0
    pathloss_exponent: float = 4.0
    noise_dbm: float = -120.0
    bs_power_w: float = 1.0
    seed: int = 1
    replications: int = 20
    samples_per_replication: int = 1000
    device: str = "smartphone"
    bs_swipt_range_m: float = 0.0
    extra_uplink_consumption_w: float = 0.0


@dataclass(frozen=True)
class Scenario:
    carrier: CarrierSpec
    transmitter: TransmitterSpec
    devices: list[DeviceProfile]
    safety: ExposureLimit
    beam: BeamConfig
    network: NetworkConfig
    source_hash: str = "builtin"

    def device(self, name: str) -> DeviceProfile:
        for dev in self.devices:
            if dev.name == name:
                return dev
        known = ", ".join(d.name for d in self.devices)
        raise ScenarioError(f"unknown device {name!r} (known: {known})")

    def network_scenario(self, seed: int | None = None) -> NetworkScenario:
        net = self.network
        return NetworkScenario(
            pb_density=net.pb_density,
            bs_density=net.bs_density,
            region_side_m=net.region_side_m,
            device=self.device(net.device),
            transmitter=self.transmitter,
            it_snr_threshold_db=net.snr_threshold_db,
            noise_power_w=dbm_to_watts(net.noise_dbm),
            seed=net.seed if seed is None else seed,
            replications=net.replications,
            samples_per_replication=net.samples_per_replication,
            it_pathloss_exponent=net.pathloss_exponent,
            bs_power_w=net.bs_power_w,
            bs_swipt_range_m=net.bs_swipt_range_m,
            extra_uplink_consumption_w=net.extra_uplink_consumption_w,
        )


_CARRIER_KEYS = {"frequency_hz"}
_TRANSMITTER_KEYS = {"radiated_power_w", "aperture_radius_m", "aperture_m2", "dc_to_rf"}
_DEVICE_KEYS = {"name", "consumption_w", "antenna_radius_m", "rf_to_dc", "sensitivity_dbm"}
_SAFETY_KEYS = {"exposure_limit_w_per_m2", "averaging_window_s"}
_BEAM_KEYS = {f.name for f in BeamConfig.__dataclass_fields__.values()}
_NETWORK_KEYS = {f.name for f in NetworkConfig.__dataclass_fields__.values()}
_SECTIONS = {"carrier", "transmitter", "devices", "safety", "beam", "network"}


def _check_keys(path: str, section: str, table: dict, allowed: set[str]) -> None:
    for key in table:
        if key not in allowed:
            raise ScenarioError(f"{path}: {section}.{key}: unknown key")


def default_scenario() -> Scenario:
    carrier = CarrierSpec(frequency_hz=2.5e9)
    return Scenario(
        carrier=carrier,
        transmitter=TransmitterSpec(
            radiated_power_w=50.0,
            aperture=Aperture.from_radius(3.0),
            carrier=carrier,
        ),
        devices=builtin_catalog(),
        safety=ExposureLimit(),
        beam=BeamConfig(),
        network=NetworkConfig(),
    )


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ScenarioError(f"{path}: cannot read scenario file: {exc}") from exc
    try:
        doc = tomllib.loads(raw.decode("utf-8"))
    except (tomllib.TOMLDecodeError, UnicodeDecodeError) as exc:
        raise ScenarioError(f"{path}: invalid TOML: {exc}") from exc
    name = str(path)
    for section in doc:
        if section not in _SECTIONS:
            raise ScenarioError(f"{name}: {section}: unknown section")

    carrier_tbl = doc.get("carrier", {})
    _check_keys(name, "carrier", carrier_tbl, _CARRIER_KEYS)
    carrier = CarrierSpec(frequency_hz=float(carrier_tbl.get("frequency_hz", 2.5e9)))

    tx_tbl = doc.get("transmitter", {})
    _check_keys(name, "transmitter", tx_tbl, _TRANSMITTER_KEYS)
    if "aperture_m2" in tx_tbl and "aperture_radius_m" in tx_tbl:
        raise ScenarioError(
            f"{name}: transmitter: give aperture_m2 or aperture_radius_m, not both"
        )
    if "aperture_m2" in tx_tbl:
        aperture = Aperture(area_m2=float(tx_tbl["aperture_m2"]))
    else:
        aperture = Aperture.from_radius(float(tx_tbl.get("aperture_radius_m", 3.0)))
    try:
        transmitter = TransmitterSpec(
            radiated_power_w=float(tx_tbl.get("radiated_power_w", 50.0)),
            aperture=aperture,
            carrier=carrier,
            dc_to_rf=float(tx_tbl.get("dc_to_rf", 1.0)),
        )
    except ValueError as exc:
        raise ScenarioError(f"{name}: transmitter: {exc}") from exc

    dev_tables = doc.get("devices", [])
    if dev_tables:
        devices = []
        for i, tbl in enumerate(dev_tables):
            _check_keys(name, f"devices[{i}]", tbl, _DEVICE_KEYS)
            for req in ("name", "consumption_w", "antenna_radius_m", "rf_to_dc"):
                if req not in tbl:
                    raise ScenarioError(f"{name}: devices[{i}].{req}: missing key")
            try:
                devices.append(
                    DeviceProfile(
                        name=str(tbl["name"]),
                        consumption_w=float(tbl["consumption_w"]),
                        antenna_radius_m=float(tbl["antenna_radius_m"]),
                        rf_to_dc=float(tbl["rf_to_dc"]),
                        sensitivity_w=dbm_to_watts(float(tbl.get("sensitivity_dbm", -10.0))),
                    )
                )
            except ValueError as exc:
                raise ScenarioError(f"{name}: devices[{i}]: {exc}") from exc
    else:
        devices = builtin_catalog()

    safety_tbl = doc.get("safety", {})
    _check_keys(name, "safety", safety_tbl, _SAFETY_KEYS)
    try:
        safety = ExposureLimit(
            max_avg_density_w_per_m2=float(safety_tbl.get("exposure_limit_w_per_m2", 10.0)),
            averaging_window_s=float(safety_tbl.get("averaging_window_s", 1800.0)),
        )
    except ValueError as exc:
        raise ScenarioError(f"{name}: safety: {exc}") from exc

    beam_tbl = doc.get("beam", {})
    _check_keys(name, "beam", beam_tbl, _BEAM_KEYS)
    beam = BeamConfig(**beam_tbl)

    net_tbl = doc.get("network", {})
    _check_keys(name, "network", net_tbl, _NETWORK_KEYS)
    network = NetworkConfig(**net_tbl)

    return Scenario(
        carrier=carrier,
        transmitter=transmitter,
        devices=devices,
        safety=safety,
        beam=beam,
        network=network,
        source_hash=hashlib.sha256(raw).hexdigest(),
    )


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)  # shortest round-trip representation, no rounding
    return str(value)


@dataclass
class ResultTable:
    """Column-schema'd rows, serializable to CSV and JSON with full precision."""

    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def append(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(
                f"row has {len(values)} cells, schema has {len(self.columns)}"
            )
        self.rows.append(list(values))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {"schema": self.columns, "rows": self.rows, "meta": self.meta},
            indent=2,
        )

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")
