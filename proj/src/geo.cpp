#include <geocodec/geo.hpp>

#include <cmath>
#include <string>

namespace geocodec {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * (kPi / 180.0); }
double rad2deg(double r) { return r * (180.0 / kPi); }

double wrap_longitude(double lng) {
    // Map to [-180, 180); +180 becomes -180.
    double w = std::fmod(lng + 180.0, 360.0);
    if (w < 0) w += 360.0;
    return w - 180.0;
}

}  // namespace

GeoPoint::GeoPoint(double lat_deg, double lng_deg) {
    if (!std::isfinite(lat_deg) || !std::isfinite(lng_deg))
        throw DomainError("GeoPoint: coordinates must be finite");
    if (lat_deg < -90.0 || lat_deg > 90.0)
        throw DomainError("GeoPoint: latitude " + std::to_string(lat_deg) +
                          " outside [-90, 90]");
    lat = lat_deg;
    lng = (lng_deg >= -180.0 && lng_deg < 180.0) ? lng_deg : wrap_longitude(lng_deg);
}

double haversine_distance(const GeoPoint& a, const GeoPoint& b) {
    if (a == b) return 0.0;
    const double la1 = deg2rad(a.lat), la2 = deg2rad(b.lat);
    const double dla = deg2rad(b.lat - a.lat), dlo = deg2rad(b.lng - a.lng);
    const double s1 = std::sin(dla / 2.0), s2 = std::sin(dlo / 2.0);
    const double h = s1 * s1 + std::cos(la1) * std::cos(la2) * s2 * s2;
    return 2.0 * kEarthRadiusM * std::asin(std::sqrt(std::min(1.0, h)));
}

double initial_bearing(const GeoPoint& a, const GeoPoint& b) {
    if (a == b) throw DomainError("initial_bearing: undefined for identical points");
    const double la1 = deg2rad(a.lat), la2 = deg2rad(b.lat);
    const double dlo = deg2rad(b.lng - a.lng);
    const double y = std::sin(dlo) * std::cos(la2);
    const double x = std::cos(la1) * std::sin(la2) - std::sin(la1) * std::cos(la2) * std::cos(dlo);
    double brg = rad2deg(std::atan2(y, x));
    if (brg < 0) brg += 360.0;
    if (brg >= 360.0) brg -= 360.0;
    return brg;
}

GeoPoint destination(const GeoPoint& p, double bearing_deg, double distance_m) {
    if (distance_m == 0.0) return p;  // keep bit-exact identity for zero travel
    const double la1 = deg2rad(p.lat), lo1 = deg2rad(p.lng);
    const double brg = deg2rad(bearing_deg);
    const double ang = distance_m / kEarthRadiusM;
    const double sin_la2 =
        std::sin(la1) * std::cos(ang) + std::cos(la1) * std::sin(ang) * std::cos(brg);
    const double la2 = std::asin(std::max(-1.0, std::min(1.0, sin_la2)));
    const double lo2 = lo1 + std::atan2(std::sin(brg) * std::sin(ang) * std::cos(la1),
                                        std::cos(ang) - std::sin(la1) * sin_la2);
    return {std::max(-90.0, std::min(90.0, rad2deg(la2))), wrap_longitude(rad2deg(lo2))};
}

GeoPoint midpoint(const GeoPoint& a, const GeoPoint& b) {
    const double la1 = deg2rad(a.lat), lo1 = deg2rad(a.lng);
    const double la2 = deg2rad(b.lat), lo2 = deg2rad(b.lng);
    const double x = std::cos(la1) * std::cos(lo1) + std::cos(la2) * std::cos(lo2);
    const double y = std::cos(la1) * std::sin(lo1) + std::cos(la2) * std::sin(lo2);
    const double z = std::sin(la1) + std::sin(la2);
    const double hyp = std::sqrt(x * x + y * y);
    if (hyp == 0.0 && z == 0.0)
        throw DomainError("midpoint: undefined for antipodal points");
    return {rad2deg(std::atan2(z, hyp)), wrap_longitude(rad2deg(std::atan2(y, x)))};
}

}  // namespace geocodec
