#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include <geocodec/geo.hpp>
#include <geocodec/grid_code.hpp>
#include <geocodec/rng.hpp>

using namespace geocodec;
using grid::GridCode;

namespace {

// Frozen vectors re-derived by exact-rational base-20 subdivision of the
// decimal coordinates (cell sizes 20, 1, 0.05, 0.0025, 0.000125 degrees,
// 11th character = row * 4 + col on the 4 x 5 sub-grid).
struct Vector {
    double lat;
    double lng;
    int length;
    const char* chars;
};
const Vector kVectors[] = {
    {28.6139, 77.2090, 10, "7JWVJ675HJ"},
    {28.6139, 77.2090, 11, "7JWVJ675HJ6"},
    {28.6139, 77.2090, 8, "7JWVJ675"},
    {28.6139, 77.2090, 6, "7JWVJ6"},
    {28.6139, 77.2090, 4, "7JWV"},
    {28.6139, 77.2090, 2, "7J"},
    {-90.0, -180.0, 2, "22"},
    {0.0, 0.0, 11, "6FG22222222"},
    {47.365590, 8.524997, 11, "8FVC9G8F6XQ"},
    {-41.2924, 174.7787, 11, "4VCPPQ5H2FW"},
    {20.9042, 74.7749, 11, "7JGPWQ3FMXJ"},
    {89.9999999, 179.9999999, 11, "CVXXXXXXXXX"},
    {63.4305, 10.3951, 10, "9FMGC9JW62"},
    {-33.8688, 151.2093, 11, "4RRH46J5FPM"},
    {48.8584, 2.2945, 8, "8FW4V75V"},
};

}  // namespace

TEST_CASE("encode matches the rational-arithmetic vectors") {
    for (const Vector& v : kVectors) {
        CAPTURE(v.chars);
        CHECK(grid::encode(GeoPoint(v.lat, v.lng), v.length).chars() == v.chars);
    }
}

TEST_CASE("display form inserts the separator after eight characters") {
    CHECK(grid::encode(GeoPoint(28.6139, 77.2090), 10).display() == "7JWVJ675+HJ");
    CHECK(grid::encode(GeoPoint(28.6139, 77.2090), 11).display() == "7JWVJ675+HJ6");
    CHECK(grid::encode(GeoPoint(28.6139, 77.2090), 8).display() == "7JWVJ675");
    CHECK(grid::encode(GeoPoint(-90, -180), 2).display() == "22");
}

TEST_CASE("every Delhi point starts with 7JW") {
    detail::Rng rng(101);
    for (int i = 0; i < 100; ++i) {
        const double lat = 28.40 + rng.uniform() * 0.50;
        const double lng = 76.85 + rng.uniform() * 0.50;
        CHECK(grid::encode(GeoPoint(lat, lng), 10).chars().substr(0, 3) == "7JW");
    }
}

TEST_CASE("decode of the first block") {
    const CellBounds b = grid::decode(GridCode::parse("22"));
    CHECK(b.south == -90.0);
    CHECK(b.west == -180.0);
    CHECK(b.north == -70.0);
    CHECK(b.east == -160.0);
}

TEST_CASE("11-character cells at the equator are under 3.5 m") {
    const CellBounds b = grid::decode(grid::encode(GeoPoint(0.00001, 0.00001), 11));
    const double height_m = b.height_deg() * kMetersPerDegree;
    const double width_m = b.width_deg() * kMetersPerDegree;  // cos(0) = 1
    CHECK(height_m == doctest::Approx(2.7799).epsilon(0.01));
    CHECK(width_m == doctest::Approx(3.4748).epsilon(0.01));
    CHECK(height_m <= 3.5);
    CHECK(width_m <= 3.5);
}

TEST_CASE("roundtrip: decoded cell contains the point, center re-encodes") {
    detail::Rng rng(102);
    const int lengths[] = {2, 4, 6, 8, 10, 11};
    for (int i = 0; i < 4000; ++i) {
        const GeoPoint p = rng.point_on_sphere();
        for (const int length : lengths) {
            const GridCode code = grid::encode(p, length);
            const CellBounds bounds = grid::decode(code);
            CAPTURE(code.chars());
            CHECK(bounds.contains(p));
            CHECK(grid::encode(bounds.center(), length) == code);
        }
    }
}

TEST_CASE("poles and the antimeridian encode into edge cells") {
    const GridCode north = grid::encode(GeoPoint(90, 0), 11);
    CHECK(north.chars()[0] == 'C');  // latitude block 8
    CHECK(grid::decode(north).north == doctest::Approx(90.0));
    const GridCode south = grid::encode(GeoPoint(-90, -180), 11);
    CHECK(grid::decode(south).south == doctest::Approx(-90.0));
    // 180 normalizes to -180 at construction, so both sides meet in cell 0.
    CHECK(grid::encode(GeoPoint(10, 180), 11) == grid::encode(GeoPoint(10, -180), 11));
}

TEST_CASE("prefixes denote nested cells") {
    detail::Rng rng(103);
    for (int i = 0; i < 200; ++i) {
        const GridCode code = grid::encode(rng.point_on_sphere(), 10);
        for (std::size_t len = 4; len <= 10; len += 2) {
            const CellBounds inner = grid::decode(code.prefix(len));
            const CellBounds outer = grid::decode(code.prefix(len - 2));
            CHECK(outer.south <= inner.south);
            CHECK(outer.west <= inner.west);
            CHECK(outer.north >= inner.north);
            CHECK(outer.east >= inner.east);
            CHECK(outer.height_deg() == doctest::Approx(inner.height_deg() * 20));
        }
    }
}

TEST_CASE("points in one cell share the prefix that names it") {
    detail::Rng rng(104);
    for (int i = 0; i < 100; ++i) {
        const GridCode cell = grid::encode(rng.point_on_sphere(), 8);  // level-4 cell
        const CellBounds bounds = grid::decode(cell);
        for (int j = 0; j < 20; ++j) {
            const GeoPoint inside{bounds.south + rng.uniform() * bounds.height_deg(),
                                  bounds.west + rng.uniform() * bounds.width_deg()};
            const GridCode full = grid::encode(inside, 11);
            CHECK(grid::shared_prefix_length(cell, full) >= 8);
        }
    }
}

namespace {

// Largest distance between two points of a lat/lng rectangle; for cells of
// 20 degrees or less this is attained on a corner pair.
double cell_diameter(const CellBounds& b) {
    const GeoPoint corners[4] = {{b.south, b.west},
                                 {b.south, b.east},
                                 {b.north, b.west},
                                 {b.north, b.east}};
    double best = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            best = std::max(best, haversine_distance(corners[i], corners[j]));
    return best;
}

}  // namespace

TEST_CASE("single-character edits stay inside the parent cell") {
    detail::Rng rng(105);
    for (int i = 0; i < 100; ++i) {
        const GridCode code = grid::encode(rng.point_on_sphere(), 11);
        const GeoPoint center = grid::decode(code).center();
        const std::vector<int> digits = code.digits();
        for (std::size_t pos = 0; pos < 11; ++pos) {
            // Parent cell: everything before this character's pair.
            const std::size_t pair_start = pos >= 10 ? 10 : pos - (pos % 2);
            double parent_diam = 2.0 * 3.14159265358979 / 2.0 * kEarthRadiusM;
            if (pair_start >= 2) parent_diam = cell_diameter(grid::decode(code.prefix(pair_start)));
            for (int sub = 0; sub < 20; ++sub) {
                if (sub == digits[pos]) continue;
                const int limit = pos == 0 ? 9 : (pos == 1 ? 18 : 20);
                if (sub >= limit) continue;
                std::vector<int> mutated = digits;
                mutated[pos] = sub;
                const GeoPoint moved =
                    grid::decode(GridCode::from_digits(mutated)).center();
                CHECK(haversine_distance(center, moved) <= parent_diam * (1 + 1e-9));
            }
        }
    }
}

TEST_CASE("far-apart points share at most one character") {
    detail::Rng rng(106);
    int checked = 0;
    while (checked < 300) {
        const GeoPoint a = rng.point_on_sphere();
        const GeoPoint b = rng.point_on_sphere();
        if (haversine_distance(a, b) <= 4.0e6) continue;
        ++checked;
        CHECK(grid::shared_prefix_length(grid::encode(a, 10), grid::encode(b, 10)) <= 1);
    }
}

TEST_CASE("shared prefix length") {
    const GridCode a = GridCode::parse("7JWVF23W+GQQ");
    const GridCode b = GridCode::parse("7JWVF36Q+P4");
    CHECK(grid::shared_prefix_length(a, b) == 5);
    CHECK(grid::shared_prefix_length(a, a) == 11);
}

TEST_CASE("parse accepts case and separator placement, rejects junk") {
    CHECK(GridCode::parse("7jwvj675hj") == GridCode::parse("7JWVJ675+HJ"));
    CHECK(GridCode::parse("+7JWVJ675HJ") == GridCode::parse("7JWVJ675+HJ"));

    CHECK_THROWS_WITH_AS(GridCode::parse("7JWVJ675+HA"), doctest::Contains("position 10"),
                         ParseError);
    CHECK_THROWS_WITH_AS(GridCode::parse("X2"), doctest::Contains("latitude block"), ParseError);
    CHECK_THROWS_WITH_AS(GridCode::parse("2X"), doctest::Contains("longitude block"), ParseError);
    CHECK_THROWS_AS(GridCode::parse(""), ParseError);
    CHECK_THROWS_AS(GridCode::parse("2"), ParseError);
    CHECK_THROWS_AS(GridCode::parse("234"), ParseError);
    CHECK_THROWS_AS(GridCode::parse("7JWVJ67"), ParseError);
    CHECK_THROWS_AS(GridCode::parse("7JWVJ675HJ66"), ParseError);
}

TEST_CASE("encode rejects unsupported lengths") {
    const GeoPoint p(1, 1);
    for (const int length : {0, 1, 3, 5, 7, 9, 12, 13}) {
        CAPTURE(length);
        CHECK_THROWS_AS(grid::encode(p, length), DomainError);
    }
}
