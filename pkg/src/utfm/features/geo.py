"""Geographic transforms: spherical direction vectors and route distance."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import InputError

# IAU mean Earth radius, kilometers.
EARTH_RADIUS_KM = 6371.0088


@dataclass(frozen=True)
class GeoPoint:
    latitude_deg: float
    longitude_deg: float

    def __post_init__(self):
        if not (-90.0 <= self.latitude_deg <= 90.0):
            raise InputError(f"latitude {self.latitude_deg} outside [-90, 90]")
        if not (-180.0 < self.longitude_deg <= 180.0):
            raise InputError(f"longitude {self.longitude_deg} outside (-180, 180]")


def spherical_coords(p: GeoPoint) -> tuple[float, float, float]:
    """Unit direction vector (x, y, z) of a point on the sphere."""
    lat = math.radians(p.latitude_deg)
    lon = math.radians(p.longitude_deg)
    return (math.cos(lat) * math.cos(lon),
            math.cos(lat) * math.sin(lon),
            math.sin(lat))


def route_distance(orig: GeoPoint, dest: GeoPoint) -> float:
    """Great-circle distance in kilometers (haversine on the mean sphere)."""
    lat1 = math.radians(orig.latitude_deg)
    lat2 = math.radians(dest.latitude_deg)
    dlat = lat2 - lat1
    dlon = math.radians(dest.longitude_deg - orig.longitude_deg)
    h = math.sin(dlat / 2.0) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))
