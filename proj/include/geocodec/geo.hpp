#pragma once

#include <geocodec/errors.hpp>

namespace geocodec {

// Mean Earth radius in meters. Every module measures with this constant so
// distances stay bit-comparable across the toolkit.
inline constexpr double kEarthRadiusM = 6371008.8;

// Meters per degree of great-circle arc (2*pi*R / 360).
inline constexpr double kMetersPerDegree = 111195.0802335329;

/// A WGS84 position. Latitude is validated to [-90, +90]; longitude is
/// normalized to [-180, +180) at construction (+180 wraps to -180).
struct GeoPoint {
    double lat = 0.0;
    double lng = 0.0;

    GeoPoint() = default;
    GeoPoint(double lat_deg, double lng_deg);

    bool operator==(const GeoPoint& o) const { return lat == o.lat && lng == o.lng; }
    bool operator!=(const GeoPoint& o) const { return !(*this == o); }
};

/// Axis-aligned lat/lng rectangle. south < north, west < east.
struct CellBounds {
    double south = 0.0;
    double west = 0.0;
    double north = 0.0;
    double east = 0.0;

    GeoPoint center() const { return {(south + north) / 2.0, (west + east) / 2.0}; }
    bool contains(const GeoPoint& p) const {
        return p.lat >= south && p.lat < north && p.lng >= west && p.lng < east;
    }
    double width_deg() const { return east - west; }
    double height_deg() const { return north - south; }
};

/// Great-circle distance in meters on the spherical Earth model.
/// Symmetric, non-negative, zero iff a == b.
double haversine_distance(const GeoPoint& a, const GeoPoint& b);

/// Forward azimuth from a to b in degrees, 0 = north, 90 = east, in [0, 360).
/// Throws DomainError when a == b (the bearing is undefined).
double initial_bearing(const GeoPoint& a, const GeoPoint& b);

/// Point reached by traveling distance_m along bearing_deg from p.
GeoPoint destination(const GeoPoint& p, double bearing_deg, double distance_m);

/// Spherical midpoint of the segment a-b (chord midpoint projected back to
/// the sphere).
GeoPoint midpoint(const GeoPoint& a, const GeoPoint& b);

}  // namespace geocodec
