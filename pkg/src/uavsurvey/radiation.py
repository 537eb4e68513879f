"""Point-source ionizing radiation with inverse-square falloff.

Propagation is lossless and unoccluded; the field from several sources
superposes linearly. Readings can optionally carry multiplicative gaussian
noise driven by a caller-owned random generator.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .geodesy import GeoPoint, distance_m

# Distances clamp here to keep readings finite near the emitter; a drone
# never physically reaches the point source.
MIN_DISTANCE_M = 0.1


@dataclass(frozen=True)
class RadiationSource:
    """A point emitter; sigma is the level measured 1 m away, in uSv/s."""

    position: GeoPoint
    sigma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma) and self.sigma >= 0.0):
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma}")


@dataclass(frozen=True)
class NoiseSpec:
    """Measurement noise: kind 'none', or 'gaussian' with a relative std dev."""

    kind: str = "none"
    relative_sd: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("none", "gaussian"):
            raise ValueError(f"noise kind must be 'none' or 'gaussian', got {self.kind!r}")
        if not (math.isfinite(self.relative_sd) and self.relative_sd >= 0.0):
            raise ValueError(f"relative_sd must be finite and >= 0, got {self.relative_sd}")


@dataclass(frozen=True)
class RadiationReading:
    """One sampled field level at a position."""

    intensity: float
    position: GeoPoint

    def __post_init__(self) -> None:
        if self.intensity < 0.0:
            raise ValueError(f"intensity must be >= 0, got {self.intensity}")


def strength_at(source: RadiationSource, p: GeoPoint) -> float:
    """Field level at p: sigma / d^2, with d clamped at MIN_DISTANCE_M."""
    d = distance_m(source.position, p)
    if d < MIN_DISTANCE_M:
        d = MIN_DISTANCE_M
    return source.sigma / (d * d)


def total_intensity(sources, p: GeoPoint) -> float:
    """Superposed level at p from all sources; zero for an empty list."""
    return sum((strength_at(s, p) for s in sources), 0.0)


def sample_reading(intensity: float, noise: NoiseSpec, rng: random.Random | None = None) -> float:
    """One simulated detector sample, deterministic given the rng state.

    Gaussian noise multiplies by (1 + eps), eps ~ N(0, sd^2), clamped at zero.
    """
    if noise.kind == "none":
        return intensity
    if rng is None:
        raise ValueError("gaussian noise requires a seeded random generator")
    value = intensity * (1.0 + rng.gauss(0.0, noise.relative_sd))
    return value if value > 0.0 else 0.0
