"""Stochastic-geometry network coverage for wirelessly powered communication.

Power beacons (PBs) and base stations (BSs) are dropped as independent
Poisson point processes in a square window; the typical mobile sits at the
window center (Palm convention).  Power-transfer coverage means the nearest
PB can deliver the device's consumption over a free-space beam link;
information-transfer coverage means the SNR from the nearest BS clears a
threshold under power-law path loss (noise-limited, no interference).

Replications draw independent RNG streams keyed by (seed, replication
index), so results are bit-identical regardless of execution order or
parallelism degree.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .devices import DeviceProfile, TransmitterSpec, pt_range


@dataclass(frozen=True)
class NetworkScenario:
    pb_density: float  # nodes / m^2
    bs_density: float  # nodes / m^2
    region_side_m: float
    device: DeviceProfile
    transmitter: TransmitterSpec  # per-PB transmitter
    it_snr_threshold_db: float
    noise_power_w: float
    seed: int
    replications: int
    samples_per_replication: int = 1000
    it_pathloss_exponent: float = 4.0
    it_reference_distance_m: float = 1.0
    bs_power_w: float = 1.0
    bs_swipt_range_m: float = 0.0  # > 0: BSs also power mobiles this close
    extra_uplink_consumption_w: float = 0.0  # transmitting mobiles draw more

    def __post_init__(self):
        if self.pb_density < 0 or self.bs_density < 0:
            raise ValueError("densities must be non-negative")
        if self.region_side_m <= 0:
            raise ValueError("region side must be positive")
        if self.it_pathloss_exponent <= 2:
            raise ValueError("path-loss exponent must exceed 2")
        if self.replications < 1:
            raise ValueError("need at least one replication")
        if self.samples_per_replication < 1:
            raise ValueError("need at least one sample per replication")
        if self.noise_power_w <= 0:
            raise ValueError("noise power must be positive")


@dataclass(frozen=True)
class CoverageResult:
    pt_coverage: float
    pt_half_width: float
    it_coverage: float
    it_half_width: float
    joint_coverage: float
    joint_half_width: float
    replications_used: int


def sample_ppp(density: float, region_side_m: float, rng: np.random.Generator) -> np.ndarray:
    """Homogeneous PPP in a centered square window; returns (n, 2) points."""
    if density < 0:
        raise ValueError("density must be non-negative")
    n = rng.poisson(density * region_side_m**2)
    return rng.uniform(-region_side_m / 2, region_side_m / 2, size=(n, 2))


def confidence(samples) -> float:
    """95% normal-approximation half-width over replication-level estimates."""
    samples = np.asarray(samples, dtype=float)
    if samples.size < 2:
        raise ValueError("need at least two replications to estimate variance")
    return 1.96 * float(np.std(samples, ddof=1)) / math.sqrt(samples.size)


def it_range(scenario: NetworkScenario) -> float:
    """Largest BS distance whose SNR clears the threshold:
    d_ref * (P_bs / (noise * 10^(thr/10)))^(1/alpha)."""
    required = scenario.noise_power_w * 10 ** (scenario.it_snr_threshold_db / 10)
    ratio = scenario.bs_power_w / required
    if ratio <= 0:
        return 0.0
    return scenario.it_reference_distance_m * ratio ** (1 / scenario.it_pathloss_exponent)


def _pt_radius(scenario: NetworkScenario) -> float | None:
    dev = scenario.device
    if scenario.extra_uplink_consumption_w > 0:
        dev = replace(
            dev, consumption_w=dev.consumption_w + scenario.extra_uplink_consumption_w
        )
    return pt_range(scenario.transmitter, dev)


def _nearest_distances(
    density: float, side: float, n_samples: int, rng: np.random.Generator
) -> np.ndarray:
    """Distance from the window center to the nearest PPP point, per sample
    (inf when the realization is empty)."""
    counts = rng.poisson(density * side**2, n_samples)
    xy = rng.uniform(-side / 2, side / 2, size=(int(counts.sum()), 2))
    d = np.hypot(xy[:, 0], xy[:, 1])
    nearest = np.full(n_samples, np.inf)
    np.minimum.at(nearest, np.repeat(np.arange(n_samples), counts), d)
    return nearest


def _replication(args) -> tuple[float, float, float]:
    scenario, rep, r_pt, r_it = args
    rng = np.random.default_rng([scenario.seed, rep])
    n = scenario.samples_per_replication
    pb_near = _nearest_distances(scenario.pb_density, scenario.region_side_m, n, rng)
    bs_near = _nearest_distances(scenario.bs_density, scenario.region_side_m, n, rng)
    pt_cov = pb_near <= r_pt if r_pt is not None else np.zeros(n, dtype=bool)
    if scenario.bs_swipt_range_m > 0:
        pt_cov = pt_cov | (bs_near <= scenario.bs_swipt_range_m)
    it_cov = bs_near <= r_it
    return (
        float(pt_cov.mean()),
        float(it_cov.mean()),
        float((pt_cov & it_cov).mean()),
    )


def coverage(scenario: NetworkScenario, n_jobs: int = 1) -> CoverageResult:
    """Monte Carlo coverage of power transfer, information transfer and both."""
    r_pt = _pt_radius(scenario)
    if r_pt is None:
        warnings.warn(
            f"device {scenario.device.name!r} cannot be powered by this "
            "transmitter at any distance; power-transfer coverage is 0",
            stacklevel=2,
        )
    elif scenario.region_side_m < 10 * r_pt:
        warnings.warn(
            f"region side {scenario.region_side_m} m is below 10x the "
            f"power-transfer range {r_pt:.3g} m; edge effects may bias estimates",
            stacklevel=2,
        )
    r_it = it_range(scenario)
    tasks = [(scenario, rep, r_pt, r_it) for rep in range(scenario.replications)]
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            per_rep = list(pool.map(_replication, tasks))
    else:
        per_rep = [_replication(t) for t in tasks]
    pt, it, joint = (np.array(col) for col in zip(*per_rep))
    hw = (
        (confidence(pt), confidence(it), confidence(joint))
        if len(per_rep) >= 2
        else (0.0, 0.0, 0.0)
    )
    return CoverageResult(
        pt_coverage=float(pt.mean()),
        pt_half_width=hw[0],
        it_coverage=float(it.mean()),
        it_half_width=hw[1],
        joint_coverage=float(joint.mean()),
        joint_half_width=hw[2],
        replications_used=len(per_rep),
    )


def pt_coverage(scenario: NetworkScenario, n_jobs: int = 1) -> float:
    return coverage(scenario, n_jobs=n_jobs).pt_coverage


def it_coverage(scenario: NetworkScenario, n_jobs: int = 1) -> float:
    return coverage(scenario, n_jobs=n_jobs).it_coverage


def density_tradeoff(
    scenario: NetworkScenario,
    target_joint_coverage: float,
    bs_densities,
    pb_densities,
    n_jobs: int = 1,
) -> list[dict]:
    """For each BS density, the smallest PB density on the grid whose joint
    coverage reaches the target.

    Rows with no feasible PB density are marked unreachable
    (min_pb_density None) rather than raising.
    """
    bs_densities = sorted(bs_densities)
    pb_densities = sorted(pb_densities)
    if not bs_densities or not pb_densities:
        raise ValueError("density grids must be non-empty")
    rows = []
    for lam_bs in bs_densities:
        found = None
        for lam_pb in pb_densities:
            sc = replace(scenario, bs_density=lam_bs, pb_density=lam_pb)
            res = coverage(sc, n_jobs=n_jobs)
            if res.joint_coverage >= target_joint_coverage:
                found = (lam_pb, res.joint_coverage)
                break
        rows.append(
            {
                "bs_density": lam_bs,
                "min_pb_density": found[0] if found else None,
                "joint_coverage": found[1] if found else None,
            }
        )
    return rows
