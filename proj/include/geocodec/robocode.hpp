#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <geocodec/geo.hpp>

namespace geocodec::robo {

// Street-relative codes of the form OFFSET[UNIT].STREET.CITY.REGION: the
// offset is whole meters along the street centerline measured from its
// southwest anchor (the southernmost polyline endpoint, ties broken west).
// Streets that carry no name get a derived one, compass sector + ordinal
// ("NE88"): the sector is the 8-way bearing of the street centroid from the
// city center, the ordinal ranks unnamed streets in that sector by centroid
// distance from the center (ties by centroid longitude, then latitude).

/// Street polyline plus naming state.
struct Street {
    int id = 0;
    std::vector<GeoPoint> polyline;
    std::optional<std::string> given_name;
    std::optional<std::string> derived_name;
    GeoPoint sw_anchor;
    GeoPoint centroid;  // vertex mean
    double length_m = 0.0;

    const std::string& display_name() const {
        return given_name ? *given_name : *derived_name;
    }
};

/// Network-level configuration.
struct CityConfig {
    std::string city_name;
    std::string region_code;
    GeoPoint city_center;

    static CityConfig from_json_text(std::string_view text);
    static CityConfig from_json_file(const std::filesystem::path& file);
};

/// Raw ingested street before naming.
struct RawStreet {
    std::vector<GeoPoint> polyline;
    std::optional<std::string> name;
};

/// Parsed code. Display form "90C.NE88.Dhule.MhIn"; the unit suffix is
/// accepted on parse and ignored on decode.
struct Robocode {
    std::int64_t offset_m = 0;
    std::optional<char> unit_suffix;
    std::string street_name;
    std::string city;
    std::string region;

    std::string display() const;
    static Robocode parse(std::string_view text);
};

/// Result of a nearest-street query.
struct Projection {
    int street_id = 0;
    GeoPoint point;          // closest point on the centerline
    double distance_m = 0.0; // from the query to that point
    double along_m = 0.0;    // arc position measured from the sw anchor
};

// Immutable after construction; encode/decode/nearest are read-only and safe
// to call concurrently. Rebuilding from the same input is bit-identical.
class RoadNetwork {
  public:
    /// Builds from raw streets: validates geometry, computes anchors and
    /// derives names for unnamed streets. Throws DomainError on empty input
    /// and ParseError (with the feature index) on a sub-2-point polyline.
    static RoadNetwork build(std::vector<RawStreet> streets, CityConfig config);

    /// Ingests a GeoJSON FeatureCollection of LineStrings; the "name"
    /// property (string or null) is the given name. Coordinates [lng, lat].
    static RoadNetwork from_geojson_text(std::string_view text, CityConfig config);
    static RoadNetwork from_geojson_file(const std::filesystem::path& file, CityConfig config);

    /// Self-contained JSON snapshot of the built network.
    void save(const std::filesystem::path& file) const;
    static RoadNetwork load(const std::filesystem::path& file);

    const std::vector<Street>& streets() const { return streets_; }
    const CityConfig& config() const { return config_; }

    /// Street with the given display name. Throws NotFoundError for unknown
    /// or ambiguous names.
    const Street& find_street(std::string_view name) const;

    /// Nearest street to p (perpendicular distance to the centerline, ties
    /// by lower street id).
    Projection nearest_street(const GeoPoint& p) const;

    /// Code of the nearest street: offset = floor(meters along the
    /// centerline from the sw anchor to the projection of p).
    Robocode encode(const GeoPoint& p) const;

    /// Point on the centerline at the code's offset. Offsets up to 1 m past
    /// the street end are clamped; beyond that throws RangeError (reporting
    /// the street length).
    GeoPoint decode(const Robocode& rc) const;

    /// Point at a given arc position along a street's centerline.
    GeoPoint point_at_offset(const Street& street, double along_m) const;

  private:
    CityConfig config_;
    std::vector<Street> streets_;

    // Uniform cell grid over the bounding box; each cell lists the segments
    // whose bounding boxes overlap it.
    struct IndexCell {
        std::vector<std::pair<int, int>> segments;  // (street id, segment index)
    };
    double cell_deg_ = 0.0;
    double min_lat_ = 0.0, min_lng_ = 0.0;
    int cells_x_ = 0, cells_y_ = 0;
    std::vector<IndexCell> cells_;

    void build_index();
    Projection project_on_street(const Street& s, const GeoPoint& p) const;
};

}  // namespace geocodec::robo
