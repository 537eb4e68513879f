"""Waypoint lattice generation over a polygonal survey region.

Pipeline: axis-aligned bounding rectangle, camera-driven spacing, lattice
with one spacing of overhang past the north/east edges, then a ray-casting
point-in-polygon filter.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .geodesy import GeoPoint, meters_per_degree


class DegenerateGridWarning(UserWarning):
    """Grid spacing dwarfs the survey rectangle; a single point is returned."""


class EmptyGridWarning(UserWarning):
    """No lattice point fell inside the polygon."""


def _xy(p: GeoPoint) -> tuple[float, float]:
    return (p.lon_deg, p.lat_deg)


def _orient(o: tuple[float, float], a: tuple[float, float], b: tuple[float, float]) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _between(a, b, c) -> bool:
    """True if collinear point c lies within the bounding box of segment ab."""
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def _segments_intersect(p1, p2, p3, p4) -> bool:
    """True if segment p1p2 touches or crosses segment p3p4."""
    d1 = _orient(p3, p4, p1)
    d2 = _orient(p3, p4, p2)
    d3 = _orient(p1, p2, p3)
    d4 = _orient(p1, p2, p4)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and 0.0 not in (d1, d2, d3, d4):
        return True
    if d1 == 0.0 and _between(p3, p4, p1):
        return True
    if d2 == 0.0 and _between(p3, p4, p2):
        return True
    if d3 == 0.0 and _between(p1, p2, p3):
        return True
    if d4 == 0.0 and _between(p1, p2, p4):
        return True
    return False


@dataclass(frozen=True)
class PolygonRegion:
    """A simple polygon of WGS-84 vertices; implicitly closed, altitude ignored."""

    vertices: tuple[GeoPoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 3:
            raise ValueError(f"polygon needs at least 3 vertices, got {len(self.vertices)}")
        pts = [_xy(v) for v in self.vertices]
        n = len(pts)
        for k in range(n):
            if pts[k] == pts[(k + 1) % n]:
                raise ValueError(f"repeated consecutive vertex at position {k}")
        # Non-adjacent edges must not touch or cross.
        for i in range(n):
            a1, a2 = pts[i], pts[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                if _segments_intersect(a1, a2, pts[j], pts[(j + 1) % n]):
                    raise ValueError(f"polygon edges {i} and {j} intersect; region must be simple")


@dataclass(frozen=True)
class CircumRectangle:
    """Axis-aligned latitude/longitude bounds enclosing the survey polygon."""

    min_lat: float
    max_lat: float
    min_lon: float
    max_lon: float

    def __post_init__(self) -> None:
        if self.min_lat > self.max_lat or self.min_lon > self.max_lon:
            raise ValueError("rectangle bounds must satisfy min <= max on both axes")


@dataclass(frozen=True)
class CameraModel:
    """Downward survey camera: half field of view, image overlap, flight altitude."""

    half_fov_deg: float = 45.0
    overlap_fraction: float = 0.2
    altitude_m: float = 32.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.half_fov_deg) and 0.0 < self.half_fov_deg < 90.0):
            raise ValueError(f"half_fov_deg must be within (0, 90), got {self.half_fov_deg}")
        if not (math.isfinite(self.overlap_fraction) and 0.0 <= self.overlap_fraction < 1.0):
            raise ValueError(
                f"overlap_fraction must satisfy 0 <= overlap_fraction < 1, got {self.overlap_fraction}"
            )
        if not (math.isfinite(self.altitude_m) and self.altitude_m > 0.0):
            raise ValueError(f"altitude_m must be > 0, got {self.altitude_m}")


@dataclass(frozen=True)
class Waypoint:
    """A survey point carrying its (row, column) lattice index."""

    point: GeoPoint
    index: tuple[int, int]


@dataclass(frozen=True)
class WaypointGrid:
    """The filtered survey lattice plus its spacing and rectangle provenance."""

    spacing_m: float
    rect: CircumRectangle
    points: tuple[Waypoint, ...]


def bounding_rectangle(region: PolygonRegion) -> CircumRectangle:
    """Component-wise min/max over the region's vertices."""
    lats = [v.lat_deg for v in region.vertices]
    lons = [v.lon_deg for v in region.vertices]
    return CircumRectangle(min(lats), max(lats), min(lons), max(lons))


def footprint_width(camera: CameraModel) -> float:
    """Ground width imaged from the flight altitude: 2 * h * tan(half FOV)."""
    return 2.0 * camera.altitude_m * math.tan(math.radians(camera.half_fov_deg))


def grid_spacing(camera: CameraModel) -> float:
    """Waypoint spacing in meters giving the requested overlap between images."""
    y = camera.overlap_fraction
    return footprint_width(camera) * (1.0 - y) / (1.0 + y)


def generate_lattice(rect: CircumRectangle, spacing_m: float, origin_alt_m: float) -> list[Waypoint]:
    """Lattice from the rectangle's SW corner, in row-major (i, j) order.

    Rows and columns extend one spacing past the north/east edges so tiles may
    overhang the rectangle. Degree increments are fixed, converted once at the
    rectangle's southern latitude.
    """
    if not spacing_m > 0.0:
        raise ValueError(f"spacing_m must be > 0, got {spacing_m}")
    m_lat, m_lon = meters_per_degree(rect.min_lat)
    span_lat_m = (rect.max_lat - rect.min_lat) * m_lat
    span_lon_m = (rect.max_lon - rect.min_lon) * m_lon
    if spacing_m > 10.0 * span_lat_m and spacing_m > 10.0 * span_lon_m:
        warnings.warn(
            f"spacing {spacing_m:.1f} m exceeds 10x the rectangle span; returning a single point",
            DegenerateGridWarning,
            stacklevel=2,
        )
        return [Waypoint(GeoPoint(rect.min_lat, rect.min_lon, origin_alt_m), (0, 0))]
    dlat = spacing_m / m_lat
    dlon = spacing_m / m_lon
    points: list[Waypoint] = []
    i = 0
    while rect.min_lat + i * dlat < rect.max_lat + dlat:
        lat = rect.min_lat + i * dlat
        j = 0
        while rect.min_lon + j * dlon < rect.max_lon + dlon:
            points.append(Waypoint(GeoPoint(lat, rect.min_lon + j * dlon, origin_alt_m), (i, j)))
            j += 1
        i += 1
    return points


def point_in_polygon(p: GeoPoint, region: PolygonRegion) -> bool:
    """Ray-cast containment test: an eastward ray crossing the boundary an odd
    number of times means the point is inside.

    Boundary points count as inside. Vertex hits are resolved by the half-open
    rule: an edge is crossed iff exactly one endpoint is strictly north of the
    ray latitude.
    """
    lat, lon = p.lat_deg, p.lon_deg
    inside = False
    prev = region.vertices[-1]
    for cur in region.vertices:
        alat, alon = prev.lat_deg, prev.lon_deg
        blat, blon = cur.lat_deg, cur.lon_deg
        if _on_edge(lat, lon, alat, alon, blat, blon):
            return True
        if (alat > lat) != (blat > lat):
            lon_cross = alon + (lat - alat) * (blon - alon) / (blat - alat)
            if lon_cross > lon:
                inside = not inside
        prev = cur
    return inside


def _on_edge(lat: float, lon: float, alat: float, alon: float, blat: float, blon: float) -> bool:
    cross = (blat - alat) * (lon - alon) - (blon - alon) * (lat - alat)
    if cross != 0.0:
        return False
    return (
        min(alat, blat) <= lat <= max(alat, blat)
        and min(alon, blon) <= lon <= max(alon, blon)
    )


def generate_waypoints(region: PolygonRegion, camera: CameraModel) -> WaypointGrid:
    """Survey grid for the region: lattice over its bounding rectangle, kept
    down to the points inside or on the polygon."""
    rect = bounding_rectangle(region)
    spacing = grid_spacing(camera)
    lattice = generate_lattice(rect, spacing, camera.altitude_m)
    kept = tuple(wp for wp in lattice if point_in_polygon(wp.point, region))
    if not kept:
        warnings.warn(
            "no lattice point falls inside the region; grid is empty",
            EmptyGridWarning,
            stacklevel=2,
        )
    return WaypointGrid(spacing_m=spacing, rect=rect, points=kept)
