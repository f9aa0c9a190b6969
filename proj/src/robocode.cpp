#include <geocodec/robocode.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include <geocodec/errors.hpp>

namespace geocodec::robo {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr const char* kSectorNames[8] = {"N", "NE", "E", "SE", "S", "SW", "W", "NW"};

int sector_of(double bearing_deg) {
    const double shifted = std::fmod(bearing_deg + 22.5, 360.0);
    return static_cast<int>(shifted / 45.0) % 8;
}

GeoPoint southwest_endpoint(const std::vector<GeoPoint>& polyline) {
    const GeoPoint& a = polyline.front();
    const GeoPoint& b = polyline.back();
    if (a.lat != b.lat) return a.lat < b.lat ? a : b;
    return a.lng <= b.lng ? a : b;
}

GeoPoint vertex_mean(const std::vector<GeoPoint>& polyline) {
    double lat = 0, lng = 0;
    for (const GeoPoint& p : polyline) {
        lat += p.lat;
        lng += p.lng;
    }
    const double n = static_cast<double>(polyline.size());
    return {lat / n, lng / n};
}

double polyline_length_m(const std::vector<GeoPoint>& polyline) {
    double total = 0;
    for (std::size_t i = 1; i < polyline.size(); ++i)
        total += haversine_distance(polyline[i - 1], polyline[i]);
    return total;
}

// Local equirectangular frame centered on the query point; adequate at the
// city scales road networks cover.
struct LocalFrame {
    GeoPoint origin;
    double cos_lat;

    explicit LocalFrame(const GeoPoint& p)
        : origin(p), cos_lat(std::max(0.01, std::cos(p.lat * kPi / 180.0))) {}

    std::pair<double, double> to_xy(const GeoPoint& q) const {
        double dlng = q.lng - origin.lng;
        if (dlng >= 180.0) dlng -= 360.0;
        if (dlng < -180.0) dlng += 360.0;
        return {dlng * cos_lat * kMetersPerDegree, (q.lat - origin.lat) * kMetersPerDegree};
    }
};

std::string offset_field(std::int64_t offset, std::optional<char> suffix) {
    std::string s = std::to_string(offset);
    if (suffix) s.push_back(*suffix);
    return s;
}

}  // namespace

std::string Robocode::display() const {
    return offset_field(offset_m, unit_suffix) + "." + street_name + "." + city + "." + region;
}

Robocode Robocode::parse(std::string_view text) {
    std::vector<std::string> fields{""};
    for (const char c : text) {
        if (c == '.')
            fields.emplace_back();
        else
            fields.back().push_back(c);
    }
    if (fields.size() != 4)
        throw ParseError("robocode: expected 4 fields, got " + std::to_string(fields.size()) +
                         " in \"" + std::string(text) + "\"");
    for (std::size_t i = 0; i < 4; ++i)
        if (fields[i].empty())
            throw ParseError("robocode: field " + std::to_string(i + 1) + " is empty");

    const std::string& head = fields[0];
    std::size_t digits = 0;
    while (digits < head.size() && std::isdigit(static_cast<unsigned char>(head[digits])))
        ++digits;
    if (digits == 0)
        throw ParseError("robocode: field 1 must start with an integer offset, got \"" + head +
                         "\"");
    if (digits > 12) throw ParseError("robocode: field 1 offset too large");

    Robocode rc;
    rc.offset_m = std::stoll(head.substr(0, digits));
    if (digits + 1 < head.size())
        throw ParseError("robocode: field 1 allows at most one unit letter, got \"" + head + "\"");
    if (digits + 1 == head.size()) {
        const char u = head.back();
        if (!std::isalpha(static_cast<unsigned char>(u)))
            throw ParseError("robocode: field 1 unit suffix must be a letter, got \"" + head +
                             "\"");
        rc.unit_suffix = u;
    }
    rc.street_name = fields[1];
    rc.city = fields[2];
    rc.region = fields[3];
    return rc;
}

CityConfig CityConfig::from_json_text(std::string_view text) {
    try {
        const json j = json::parse(text);
        CityConfig cfg;
        cfg.city_name = j.at("city_name").get<std::string>();
        cfg.region_code = j.at("region_code").get<std::string>();
        cfg.city_center = GeoPoint(j.at("city_center").at("lat").get<double>(),
                                   j.at("city_center").at("lng").get<double>());
        if (cfg.city_name.empty() || cfg.region_code.empty())
            throw ParseError("city config: city_name and region_code must be non-empty");
        return cfg;
    } catch (const json::exception& e) {
        throw ParseError(std::string("city config: ") + e.what());
    }
}

CityConfig CityConfig::from_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("city config: cannot open " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

RoadNetwork RoadNetwork::build(std::vector<RawStreet> raw, CityConfig config) {
    if (raw.empty()) throw DomainError("network: no streets in input");

    RoadNetwork net;
    net.config_ = std::move(config);
    net.streets_.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].polyline.size() < 2)
            throw ParseError("network: feature " + std::to_string(i) +
                             " has fewer than 2 points");
        Street s;
        s.id = static_cast<int>(i);
        s.polyline = std::move(raw[i].polyline);
        s.given_name = std::move(raw[i].name);
        s.sw_anchor = southwest_endpoint(s.polyline);
        s.centroid = vertex_mean(s.polyline);
        s.length_m = polyline_length_m(s.polyline);
        net.streets_.push_back(std::move(s));
    }

    // Derived names: per-sector ordinals by centroid distance from the city
    // center, ties by centroid longitude then latitude.
    struct Candidate {
        double dist;
        double lng;
        double lat;
        int id;
    };
    std::vector<Candidate> unnamed[8];
    for (const Street& s : net.streets_) {
        if (s.given_name) continue;
        const GeoPoint& c = net.config_.city_center;
        const double dist = haversine_distance(c, s.centroid);
        const int sector = dist == 0.0 ? 0 : sector_of(initial_bearing(c, s.centroid));
        unnamed[sector].push_back({dist, s.centroid.lng, s.centroid.lat, s.id});
    }
    for (int sec = 0; sec < 8; ++sec) {
        auto& group = unnamed[sec];
        std::sort(group.begin(), group.end(), [](const Candidate& a, const Candidate& b) {
            if (a.dist != b.dist) return a.dist < b.dist;
            if (a.lng != b.lng) return a.lng < b.lng;
            if (a.lat != b.lat) return a.lat < b.lat;
            return a.id < b.id;
        });
        for (std::size_t rank = 0; rank < group.size(); ++rank)
            net.streets_[static_cast<std::size_t>(group[rank].id)].derived_name =
                std::string(kSectorNames[sec]) + std::to_string(rank + 1);
    }

    net.build_index();
    return net;
}

RoadNetwork RoadNetwork::from_geojson_text(std::string_view text, CityConfig config) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("geojson: ") + e.what());
    }
    if (!j.is_object() || j.value("type", "") != "FeatureCollection" || !j.contains("features"))
        throw ParseError("geojson: expected a FeatureCollection");

    std::vector<RawStreet> raw;
    const json& features = j.at("features");
    for (std::size_t i = 0; i < features.size(); ++i) {
        const json& f = features[i];
        try {
            const json& geom = f.at("geometry");
            if (geom.at("type").get<std::string>() != "LineString")
                throw ParseError("geojson: feature " + std::to_string(i) +
                                 " is not a LineString");
            RawStreet s;
            for (const json& coord : geom.at("coordinates")) {
                const double lng = coord.at(0).get<double>();
                const double lat = coord.at(1).get<double>();
                s.polyline.emplace_back(lat, lng);
            }
            if (s.polyline.size() < 2)
                throw ParseError("network: feature " + std::to_string(i) +
                                 " has fewer than 2 points");
            if (f.contains("properties") && f.at("properties").is_object()) {
                const json& props = f.at("properties");
                if (props.contains("name") && !props.at("name").is_null())
                    s.name = props.at("name").get<std::string>();
            }
            raw.push_back(std::move(s));
        } catch (const json::exception& e) {
            throw ParseError("geojson: feature " + std::to_string(i) + ": " + e.what());
        }
    }
    return build(std::move(raw), std::move(config));
}

RoadNetwork RoadNetwork::from_geojson_file(const std::filesystem::path& file, CityConfig config) {
    std::ifstream in(file);
    if (!in) throw IoError("geojson: cannot open " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return from_geojson_text(buf.str(), std::move(config));
}

void RoadNetwork::save(const std::filesystem::path& file) const {
    json streets = json::array();
    for (const Street& s : streets_) {
        json points = json::array();
        for (const GeoPoint& p : s.polyline) points.push_back({p.lng, p.lat});
        streets.push_back({{"id", s.id},
                           {"given_name", s.given_name ? json(*s.given_name) : json(nullptr)},
                           {"derived_name", s.derived_name ? json(*s.derived_name) : json(nullptr)},
                           {"points", std::move(points)}});
    }
    const json doc{{"city_name", config_.city_name},
                   {"region_code", config_.region_code},
                   {"city_center", {{"lat", config_.city_center.lat},
                                    {"lng", config_.city_center.lng}}},
                   {"streets", std::move(streets)}};
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("network: cannot open " + file.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("network: write to " + file.string() + " failed");
}

RoadNetwork RoadNetwork::load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("network: cannot open " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        const json doc = json::parse(buf.str());
        RoadNetwork net;
        net.config_.city_name = doc.at("city_name").get<std::string>();
        net.config_.region_code = doc.at("region_code").get<std::string>();
        net.config_.city_center = GeoPoint(doc.at("city_center").at("lat").get<double>(),
                                           doc.at("city_center").at("lng").get<double>());
        for (const json& js : doc.at("streets")) {
            Street s;
            s.id = js.at("id").get<int>();
            if (!js.at("given_name").is_null()) s.given_name = js.at("given_name").get<std::string>();
            if (!js.at("derived_name").is_null())
                s.derived_name = js.at("derived_name").get<std::string>();
            for (const json& coord : js.at("points"))
                s.polyline.emplace_back(coord.at(1).get<double>(), coord.at(0).get<double>());
            if (s.polyline.size() < 2)
                throw ParseError("network: street " + std::to_string(s.id) +
                                 " has fewer than 2 points");
            if (!s.given_name && !s.derived_name)
                throw ParseError("network: street " + std::to_string(s.id) + " has no name");
            s.sw_anchor = southwest_endpoint(s.polyline);
            s.centroid = vertex_mean(s.polyline);
            s.length_m = polyline_length_m(s.polyline);
            net.streets_.push_back(std::move(s));
        }
        if (net.streets_.empty()) throw DomainError("network: no streets in file");
        net.build_index();
        return net;
    } catch (const json::exception& e) {
        throw ParseError(std::string("network: corrupt file: ") + e.what());
    }
}

const Street& RoadNetwork::find_street(std::string_view name) const {
    const Street* found = nullptr;
    for (const Street& s : streets_) {
        const bool match = (s.given_name && *s.given_name == name) ||
                           (s.derived_name && *s.derived_name == name);
        if (!match) continue;
        if (found)
            throw NotFoundError("network: street name \"" + std::string(name) +
                                "\" is ambiguous");
        found = &s;
    }
    if (!found)
        throw NotFoundError("network: unknown street \"" + std::string(name) + "\"");
    return *found;
}

void RoadNetwork::build_index() {
    double min_lat = 90, max_lat = -90, min_lng = 180, max_lng = -180;
    std::vector<double> lengths;
    lengths.reserve(streets_.size());
    for (const Street& s : streets_) {
        lengths.push_back(s.length_m);
        for (const GeoPoint& p : s.polyline) {
            min_lat = std::min(min_lat, p.lat);
            max_lat = std::max(max_lat, p.lat);
            min_lng = std::min(min_lng, p.lng);
            max_lng = std::max(max_lng, p.lng);
        }
    }
    std::nth_element(lengths.begin(), lengths.begin() + lengths.size() / 2, lengths.end());
    const double median_len = lengths[lengths.size() / 2];
    const double cell_m = std::max(200.0, median_len / 4.0);
    cell_deg_ = cell_m / kMetersPerDegree;

    min_lat_ = min_lat - cell_deg_ / 2;
    min_lng_ = min_lng - cell_deg_ / 2;
    cells_y_ = std::max(1, static_cast<int>((max_lat - min_lat_) / cell_deg_) + 1);
    cells_x_ = std::max(1, static_cast<int>((max_lng - min_lng_) / cell_deg_) + 1);
    // Cap the grid so degenerate geometry cannot blow up memory.
    while (static_cast<long long>(cells_x_) * cells_y_ > 4'000'000) {
        cell_deg_ *= 2;
        cells_y_ = std::max(1, static_cast<int>((max_lat - min_lat_) / cell_deg_) + 1);
        cells_x_ = std::max(1, static_cast<int>((max_lng - min_lng_) / cell_deg_) + 1);
    }
    cells_.assign(static_cast<std::size_t>(cells_x_) * static_cast<std::size_t>(cells_y_), {});

    const auto cell_x = [&](double lng) {
        return std::clamp(static_cast<int>((lng - min_lng_) / cell_deg_), 0, cells_x_ - 1);
    };
    const auto cell_y = [&](double lat) {
        return std::clamp(static_cast<int>((lat - min_lat_) / cell_deg_), 0, cells_y_ - 1);
    };
    for (const Street& s : streets_) {
        for (std::size_t i = 0; i + 1 < s.polyline.size(); ++i) {
            const GeoPoint& a = s.polyline[i];
            const GeoPoint& b = s.polyline[i + 1];
            const int x0 = cell_x(std::min(a.lng, b.lng)), x1 = cell_x(std::max(a.lng, b.lng));
            const int y0 = cell_y(std::min(a.lat, b.lat)), y1 = cell_y(std::max(a.lat, b.lat));
            for (int y = y0; y <= y1; ++y)
                for (int x = x0; x <= x1; ++x)
                    cells_[static_cast<std::size_t>(y) * cells_x_ + x].segments.emplace_back(
                        s.id, static_cast<int>(i));
        }
    }
}

Projection RoadNetwork::project_on_street(const Street& s, const GeoPoint& p) const {
    const LocalFrame frame(p);
    Projection best;
    best.street_id = s.id;
    best.distance_m = std::numeric_limits<double>::infinity();

    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < s.polyline.size(); ++i) {
        const GeoPoint& a = s.polyline[i];
        const GeoPoint& b = s.polyline[i + 1];
        const double seg_len = haversine_distance(a, b);
        const auto [ax, ay] = frame.to_xy(a);
        const auto [bx, by] = frame.to_xy(b);
        const double dx = bx - ax, dy = by - ay;
        const double norm2 = dx * dx + dy * dy;
        const double t =
            norm2 == 0.0 ? 0.0 : std::clamp(-(ax * dx + ay * dy) / norm2, 0.0, 1.0);
        const double cx = ax + t * dx, cy = ay + t * dy;
        const double dist = std::hypot(cx, cy);
        if (dist < best.distance_m) {
            best.distance_m = dist;
            best.point = {a.lat + t * (b.lat - a.lat), a.lng + t * (b.lng - a.lng)};
            best.along_m = cum + t * seg_len;
        }
        cum += seg_len;
    }
    // Arc positions are measured from the sw anchor.
    if (!(s.sw_anchor == s.polyline.front())) best.along_m = s.length_m - best.along_m;
    return best;
}

Projection RoadNetwork::nearest_street(const GeoPoint& p) const {
    const int px = std::clamp(static_cast<int>((p.lng - min_lng_) / cell_deg_), 0, cells_x_ - 1);
    const int py = std::clamp(static_cast<int>((p.lat - min_lat_) / cell_deg_), 0, cells_y_ - 1);

    // Conservative meters-per-cell for ring lower bounds: longitude cells
    // shrink by cos(lat) toward the poles.
    const double max_abs_lat =
        std::max(std::abs(min_lat_), std::abs(min_lat_ + cells_y_ * cell_deg_));
    const double cos_floor = std::max(0.01, std::cos(std::min(89.9, max_abs_lat) * kPi / 180.0));
    const double cell_min_m = cell_deg_ * kMetersPerDegree * cos_floor;

    Projection best;
    best.distance_m = std::numeric_limits<double>::infinity();
    std::set<int> seen;
    const int max_ring = std::max(cells_x_, cells_y_);

    for (int ring = 0; ring <= max_ring; ++ring) {
        if (best.distance_m < (ring - 1) * cell_min_m) break;
        std::set<int> candidates;
        const auto visit = [&](int x, int y) {
            if (x < 0 || x >= cells_x_ || y < 0 || y >= cells_y_) return;
            const IndexCell& cell = cells_[static_cast<std::size_t>(y) * cells_x_ + x];
            for (const auto& [street_id, seg] : cell.segments)
                if (seen.find(street_id) == seen.end()) candidates.insert(street_id);
        };
        if (ring == 0) {
            visit(px, py);
        } else {
            for (int x = px - ring; x <= px + ring; ++x) {
                visit(x, py - ring);
                visit(x, py + ring);
            }
            for (int y = py - ring + 1; y <= py + ring - 1; ++y) {
                visit(px - ring, y);
                visit(px + ring, y);
            }
        }
        for (const int id : candidates) {
            seen.insert(id);
            const Projection proj = project_on_street(streets_[static_cast<std::size_t>(id)], p);
            // Ties resolve to the lower street id no matter which ring found it.
            if (proj.distance_m < best.distance_m ||
                (proj.distance_m == best.distance_m && proj.street_id < best.street_id))
                best = proj;
        }
    }
    if (!std::isfinite(best.distance_m))
        throw NotFoundError("network: nearest-street query found no streets");
    return best;
}

Robocode RoadNetwork::encode(const GeoPoint& p) const {
    const Projection proj = nearest_street(p);
    const Street& s = streets_[static_cast<std::size_t>(proj.street_id)];
    Robocode rc;
    // The micrometer snap keeps points at whole-meter marks from flooring
    // into the previous meter.
    rc.offset_m = static_cast<std::int64_t>(std::floor(std::max(0.0, proj.along_m) + 1e-6));
    rc.street_name = s.display_name();
    rc.city = config_.city_name;
    rc.region = config_.region_code;
    return rc;
}

GeoPoint RoadNetwork::point_at_offset(const Street& s, double along_m) const {
    const double clamped = std::clamp(along_m, 0.0, s.length_m);
    // Walk from the polyline start; arc positions are anchored at sw_anchor.
    const double from_start =
        s.sw_anchor == s.polyline.front() ? clamped : s.length_m - clamped;
    double remaining = from_start;
    for (std::size_t i = 0; i + 1 < s.polyline.size(); ++i) {
        const GeoPoint& a = s.polyline[i];
        const GeoPoint& b = s.polyline[i + 1];
        const double seg_len = haversine_distance(a, b);
        if (remaining <= seg_len || i + 2 == s.polyline.size()) {
            const double t = seg_len == 0.0 ? 0.0 : std::min(1.0, remaining / seg_len);
            return {a.lat + t * (b.lat - a.lat), a.lng + t * (b.lng - a.lng)};
        }
        remaining -= seg_len;
    }
    return s.polyline.back();
}

GeoPoint RoadNetwork::decode(const Robocode& rc) const {
    const Street& s = find_street(rc.street_name);
    const double offset = static_cast<double>(rc.offset_m);
    if (offset > s.length_m + 1.0)
        throw RangeError("robocode: offset " + std::to_string(rc.offset_m) +
                         " m exceeds street \"" + s.display_name() + "\" length " +
                         std::to_string(s.length_m) + " m");
    return point_at_offset(s, offset);
}

}  // namespace geocodec::robo
