"""Phasor-domain retrodirective beam control.

A mobile sends a pilot; the array conjugates each element's measured phase
and transmits through the same free-space channel, which is the matched
filter for that channel.  This module simulates that loop exactly: exact
per-element distances (no plane-wave approximation, since transfer
distances are comparable to array size), isotropic elements with 1/d
amplitude decay.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .linkphys import CarrierSpec


@dataclass(frozen=True)
class ArrayLayout:
    """Element positions (N, 3) in meters plus the carrier they radiate on."""

    positions: np.ndarray
    carrier: CarrierSpec

    def __post_init__(self):
        pos = np.atleast_2d(np.asarray(self.positions, dtype=float))
        if pos.ndim != 2 or pos.shape[1] != 3 or pos.shape[0] < 1:
            raise ValueError(f"positions must be (N, 3) with N >= 1, got {pos.shape}")
        object.__setattr__(self, "positions", pos)

    @property
    def n_elements(self) -> int:
        return self.positions.shape[0]

    @classmethod
    def uniform_grid(
        cls,
        nx: int,
        ny: int,
        spacing_m: float,
        carrier: CarrierSpec,
        center: Sequence[float] = (0.0, 0.0, 0.0),
    ) -> "ArrayLayout":
        """Planar nx-by-ny grid in the xy plane, centered on `center`.

        Spacing above half a wavelength produces grating lobes; warn but
        allow it.
        """
        if nx < 1 or ny < 1 or spacing_m <= 0:
            raise ValueError("grid dimensions and spacing must be positive")
        if spacing_m > carrier.wavelength_m / 2:
            warnings.warn(
                f"element spacing {spacing_m} m exceeds half wavelength "
                f"{carrier.wavelength_m / 2:.4g} m; expect grating lobes",
                stacklevel=2,
            )
        xs = (np.arange(nx) - (nx - 1) / 2) * spacing_m
        ys = (np.arange(ny) - (ny - 1) / 2) * spacing_m
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        pos = np.column_stack(
            [gx.ravel(), gy.ravel(), np.zeros(nx * ny)]
        ) + np.asarray(center, dtype=float)
        return cls(positions=pos, carrier=carrier)


@dataclass(frozen=True)
class PhasorChannel:
    """Per-element complex gains between an array and a point."""

    gains: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.gains, dtype=complex)
        if g.ndim != 1 or g.size < 1:
            raise ValueError("gains must be a non-empty 1-D complex vector")
        if not np.all(np.isfinite(g)):
            raise ValueError("channel gains must be finite")
        object.__setattr__(self, "gains", g)

    @classmethod
    def free_space(cls, layout: ArrayLayout, point: Sequence[float]) -> "PhasorChannel":
        """Spherical-wave channel: phase -2*pi*d_n/lambda, amplitude 1/d_n."""
        d = _distances(layout, np.asarray(point, dtype=float))
        lam = layout.carrier.wavelength_m
        return cls(gains=np.exp(-2j * np.pi * d / lam) / d)

    def with_blocked(self, indices: Sequence[int]) -> "PhasorChannel":
        """Zero the channels of elements whose beam path is obstructed."""
        g = self.gains.copy()
        g[np.asarray(indices, dtype=int)] = 0
        return PhasorChannel(gains=g)


@dataclass(frozen=True)
class BeamWeights:
    """Per-element complex transmit weights; total power is sum |w_n|^2."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=complex)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("weights must be a non-empty 1-D complex vector")
        object.__setattr__(self, "weights", w)

    @property
    def total_power(self) -> float:
        return float(np.sum(np.abs(self.weights) ** 2))


def _distances(layout: ArrayLayout, points: np.ndarray) -> np.ndarray:
    """Distances from each element to each point; (N,) or (M, N)."""
    diff = np.atleast_2d(points)[:, None, :] - layout.positions[None, :, :]
    d = np.linalg.norm(diff, axis=-1)
    if np.any(d == 0):
        raise ValueError("evaluation point coincides with an array element")
    return d if points.ndim > 1 else d[0]


def retrodirective_weights(channel: PhasorChannel, total_power: float) -> BeamWeights:
    """Conjugate the pilot channel and normalize to the power budget.

    w_n = sqrt(P) * conj(h_n) / ||h||, the matched filter: received power
    at the pilot source equals P * sum |h_n|^2, the maximum over all
    weight vectors of the same total power.
    """
    if total_power <= 0:
        raise ValueError(f"total power must be positive, got {total_power}")
    norm = np.linalg.norm(channel.gains)
    if norm == 0:
        raise ValueError("degenerate all-zero channel")
    return BeamWeights(weights=np.sqrt(total_power) * np.conj(channel.gains) / norm)


def field_at(
    layout: ArrayLayout, weights: BeamWeights, point: Sequence[float]
) -> complex | np.ndarray:
    """Coherent field sum(w_n * g_n) at a point (or (M, 3) batch of points);
    |field|^2 is the relative received power."""
    pts = np.asarray(point, dtype=float)
    d = _distances(layout, pts)
    lam = layout.carrier.wavelength_m
    g = np.exp(-2j * np.pi * d / lam) / d
    out = g @ weights.weights
    return out if pts.ndim > 1 else complex(out)


def received_power(
    layout: ArrayLayout, weights: BeamWeights, point: Sequence[float]
) -> float | np.ndarray:
    f = field_at(layout, weights, point)
    return np.abs(f) ** 2 if isinstance(f, np.ndarray) else abs(f) ** 2


def split_from_channels(
    channels: Sequence[PhasorChannel],
    shared_pilot: bool,
    total_power: float,
) -> np.ndarray:
    """Received power at each mobile given its channel, when all mobiles
    pilot at once.

    Shared (non-orthogonal) pilots: the array conjugates the superposed
    channel sum_k h_k and the beam splits across mobiles.  Orthogonal
    pilots: the first mobile is the intended one and gets a clean
    matched-filter beam.
    """
    if len(channels) < 2:
        raise ValueError("need at least two mobiles")
    h = np.stack([c.gains for c in channels])
    pilot = PhasorChannel(h.sum(axis=0)) if shared_pilot else channels[0]
    w = retrodirective_weights(pilot, total_power).weights
    return np.abs(h @ w) ** 2


def contamination_split(
    layout: ArrayLayout,
    mobiles: Sequence[Sequence[float]],
    shared_pilot: bool,
    total_power: float,
) -> np.ndarray:
    """Geometry-level pilot-contamination split: free-space channels to each
    mobile position, then `split_from_channels`."""
    channels = [PhasorChannel.free_space(layout, m) for m in mobiles]
    return split_from_channels(channels, shared_pilot, total_power)


def coordinated_beacons(
    beacons: Sequence[ArrayLayout],
    mobile: Sequence[float],
    phase_synchronized: bool,
    per_beacon_power: float,
) -> tuple[float, Callable[[np.ndarray], np.ndarray]]:
    """Multiple retrodirective beacons powering one mobile.

    Phase-synchronized beacons combine coherently at the mobile, giving
    (sum_k a_k)^2 for per-beacon amplitudes a_k; unsynchronized beacons add
    in expectation, sum_k a_k^2.  Also returns a sampler evaluating the
    relative power density at arbitrary (M, 3) points, for checking that
    off-target density stays low.
    """
    if len(beacons) < 2:
        raise ValueError("need at least two beacons")
    mobile = np.asarray(mobile, dtype=float)
    weights = [
        retrodirective_weights(PhasorChannel.free_space(b, mobile), per_beacon_power)
        for b in beacons
    ]
    # Conjugate weights make each beacon's on-target field real positive,
    # so a synchronized sum is automatically phase-aligned.
    amps = np.array(
        [abs(field_at(b, w, mobile)) for b, w in zip(beacons, weights)]
    )
    if phase_synchronized:
        power = float(amps.sum() ** 2)
    else:
        power = float((amps**2).sum())

    def sampler(points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        fields = np.stack(
            [field_at(b, w, pts) for b, w in zip(beacons, weights)]
        )
        if phase_synchronized:
            return np.abs(fields.sum(axis=0)) ** 2
        return (np.abs(fields) ** 2).sum(axis=0)

    return power, sampler
