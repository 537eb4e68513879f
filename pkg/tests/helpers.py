"""Shared test utilities: independent geometry oracles and random instance builders."""

from __future__ import annotations

import itertools
import math
import random
from pathlib import Path

from uavsurvey import EnuOffset, GeoPoint, PolygonRegion, gps_offset

REPO_CONFIG = Path(__file__).resolve().parent.parent / "configs" / "campus_mission.json"


# ---------------------------------------------------------------------------
# point-in-polygon oracles (independent of the library's ray caster)

def _is_left(a: GeoPoint, b: GeoPoint, lat: float, lon: float) -> float:
    return (b.lon_deg - a.lon_deg) * (lat - a.lat_deg) - (lon - a.lon_deg) * (b.lat_deg - a.lat_deg)


def winding_number_inside(lat: float, lon: float, vertices) -> bool:
    """Sunday's crossing-winding rule on (lon, lat): nonzero winding = inside."""
    wn = 0
    n = len(vertices)
    for k in range(n):
        a = vertices[k]
        b = vertices[(k + 1) % n]
        if a.lat_deg <= lat:
            if b.lat_deg > lat and _is_left(a, b, lat, lon) > 0:
                wn += 1
        elif b.lat_deg <= lat and _is_left(a, b, lat, lon) < 0:
            wn -= 1
    return wn != 0


def convex_contains(lat: float, lon: float, vertices) -> bool:
    """All-edges-same-side test; valid for convex polygons, boundary inclusive."""
    pos = neg = False
    n = len(vertices)
    for k in range(n):
        cross = _is_left(vertices[k], vertices[(k + 1) % n], lat, lon)
        if cross > 0:
            pos = True
        elif cross < 0:
            neg = True
    return not (pos and neg)


# ---------------------------------------------------------------------------
# exhaustive TSP references

def permutation_tour_cost(points, cost) -> float:
    """Minimum Hamiltonian cycle cost by enumerating permutations."""
    pts = list(points)
    if len(pts) <= 1:
        return 0.0
    first, rest = pts[0], pts[1:]
    best = math.inf
    for perm in itertools.permutations(rest):
        order = (first, *perm, first)
        total = sum(cost(order[k], order[k + 1]) for k in range(len(order) - 1))
        if total < best:
            best = total
    return best


def permutation_path_cost(points, cost, start=None) -> float:
    """Minimum open Hamiltonian path cost by enumerating permutations."""
    pts = list(points)
    if len(pts) <= 1:
        return 0.0
    if start is not None:
        rest = list(pts)
        rest.remove(start)
        orders = ((start, *perm) for perm in itertools.permutations(rest))
    else:
        orders = itertools.permutations(pts)
    best = math.inf
    for order in orders:
        total = sum(cost(order[k], order[k + 1]) for k in range(len(order) - 1))
        if total < best:
            best = total
    return best


# ---------------------------------------------------------------------------
# random instance builders

def random_points(rng: random.Random, origin: GeoPoint, n: int, span_m: float, alt_m: float = 0.0):
    """n distinct points offset up to span_m east/north of origin."""
    points = []
    seen = set()
    while len(points) < n:
        p = gps_offset(
            origin,
            EnuOffset(rng.uniform(-span_m, span_m), rng.uniform(-span_m, span_m), alt_m),
        )
        key = (p.lat_deg, p.lon_deg)
        if key in seen:
            continue
        seen.add(key)
        points.append(p)
    return points


def _sorted_angles(rng: random.Random, n: int) -> list[float]:
    # Balanced gaps keep every angular wedge under pi, so each edge chord
    # stays inside its own wedge and the polygon is simple by construction.
    gaps = [rng.uniform(0.8, 1.2) for _ in range(n)]
    scale = 2.0 * math.pi / sum(gaps)
    start = rng.uniform(0.0, 2.0 * math.pi)
    angles = []
    acc = start
    for g in gaps[:-1]:
        angles.append(acc)
        acc += g * scale
    angles.append(acc)
    return angles


def random_star_polygon(
    rng: random.Random,
    center: GeoPoint,
    n_vertices: int,
    r_min_m: float,
    r_max_m: float,
) -> PolygonRegion:
    """A simple (star-shaped) polygon: balanced angles, random radii."""
    vertices = tuple(
        gps_offset(center, EnuOffset(r * math.cos(a), r * math.sin(a), 0.0))
        for a, r in ((a, rng.uniform(r_min_m, r_max_m)) for a in _sorted_angles(rng, n_vertices))
    )
    return PolygonRegion(vertices)


def random_convex_polygon(
    rng: random.Random,
    center: GeoPoint,
    n_vertices: int,
    r_max_m: float,
) -> PolygonRegion:
    """A convex polygon: sorted angles on an axis-aligned ellipse."""
    a_axis = rng.uniform(0.3 * r_max_m, r_max_m)
    b_axis = rng.uniform(0.3 * r_max_m, r_max_m)
    vertices = tuple(
        gps_offset(center, EnuOffset(a_axis * math.cos(a), b_axis * math.sin(a), 0.0))
        for a in _sorted_angles(rng, n_vertices)
    )
    return PolygonRegion(vertices)


# ---------------------------------------------------------------------------
# GeoJSON structural validation

def assert_valid_geojson(doc: dict) -> None:
    """RFC 7946 structural checks: types, coordinate arity, closed rings."""
    assert doc["type"] == "FeatureCollection"
    assert isinstance(doc["features"], list)
    for feature in doc["features"]:
        assert feature["type"] == "Feature"
        assert isinstance(feature["properties"], dict)
        geom = feature["geometry"]
        kind = geom["type"]
        coords = geom["coordinates"]
        if kind == "Point":
            _assert_position(coords)
        elif kind == "LineString":
            assert len(coords) >= 2
            for c in coords:
                _assert_position(c)
        elif kind == "Polygon":
            for ring in coords:
                assert len(ring) >= 4 and ring[0] == ring[-1]
                for c in ring:
                    _assert_position(c)
        else:
            raise AssertionError(f"unexpected geometry type {kind!r}")


def _assert_position(c) -> None:
    assert isinstance(c, list) and len(c) in (2, 3)
    assert all(isinstance(v, (int, float)) for v in c)
    lon, lat = c[0], c[1]
    assert -180.0 <= lon <= 180.0, f"longitude out of range: {lon}"
    assert -90.0 <= lat <= 90.0, f"latitude out of range: {lat}"
