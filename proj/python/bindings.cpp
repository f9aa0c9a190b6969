#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <geocodec/capacity.hpp>
#include <geocodec/errors.hpp>
#include <geocodec/eval.hpp>
#include <geocodec/geo.hpp>
#include <geocodec/grid_code.hpp>
#include <geocodec/robocode.hpp>
#include <geocodec/short_code.hpp>
#include <geocodec/word_code.hpp>

namespace py = pybind11;
using namespace geocodec;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Offline location codes: hierarchical grid codes, word triples, "
              "registry short codes and street-relative robocodes, plus the "
              "evaluation harness.";

    // Exceptions mirror the C++ hierarchy under a common base.
    auto base = py::register_exception<Error>(m, "GeocodecError");
    py::register_exception<DomainError>(m, "DomainError", base);
    py::register_exception<ParseError>(m, "CodeParseError", base);
    py::register_exception<NotFoundError>(m, "NotFoundError", base);
    py::register_exception<UnknownWordError>(m, "UnknownWordError", base);
    py::register_exception<RangeError>(m, "RangeError", base);
    py::register_exception<ConflictError>(m, "ConflictError", base);
    py::register_exception<ExhaustedError>(m, "ExhaustedError", base);
    py::register_exception<IoError>(m, "IoError", base);

    py::class_<GeoPoint>(m, "GeoPoint")
        .def(py::init<double, double>(), py::arg("lat"), py::arg("lng"))
        .def_readonly("lat", &GeoPoint::lat)
        .def_readonly("lng", &GeoPoint::lng)
        .def("__eq__", [](const GeoPoint& a, const GeoPoint& b) { return a == b; })
        .def("__repr__", [](const GeoPoint& p) {
            return "GeoPoint(lat=" + std::to_string(p.lat) + ", lng=" + std::to_string(p.lng) + ")";
        });

    py::class_<CellBounds>(m, "CellBounds")
        .def_readonly("south", &CellBounds::south)
        .def_readonly("west", &CellBounds::west)
        .def_readonly("north", &CellBounds::north)
        .def_readonly("east", &CellBounds::east)
        .def("center", &CellBounds::center)
        .def("contains", &CellBounds::contains)
        .def("__repr__", [](const CellBounds& b) {
            return "CellBounds(south=" + std::to_string(b.south) + ", west=" +
                   std::to_string(b.west) + ", north=" + std::to_string(b.north) + ", east=" +
                   std::to_string(b.east) + ")";
        });

    m.def("haversine_distance", &haversine_distance, py::arg("a"), py::arg("b"),
          "Great-circle distance in meters on the spherical Earth model.");
    m.def("initial_bearing", &initial_bearing, py::arg("a"), py::arg("b"));
    m.def("destination", &destination, py::arg("p"), py::arg("bearing_deg"),
          py::arg("distance_m"));
    m.def("midpoint", &midpoint, py::arg("a"), py::arg("b"));

    // Grid codes: strings in display form at the boundary.
    m.def(
        "encode_grid",
        [](double lat, double lng, int length) {
            return grid::encode(GeoPoint(lat, lng), length).display();
        },
        py::arg("lat"), py::arg("lng"), py::arg("length") = 11);
    m.def(
        "decode_grid", [](const std::string& code) { return grid::decode(grid::GridCode::parse(code)); },
        py::arg("code"));
    m.def(
        "shared_prefix_length",
        [](const std::string& a, const std::string& b) {
            return grid::shared_prefix_length(grid::GridCode::parse(a), grid::GridCode::parse(b));
        },
        py::arg("a"), py::arg("b"));

    py::class_<words::WordList>(m, "WordList")
        .def_static("load", &words::WordList::load, py::arg("file"))
        .def_static("synthetic", &words::WordList::synthetic, py::arg("n") = 45000)
        .def("__len__", &words::WordList::size)
        .def("index_of", [](const words::WordList& w, const std::string& s) { return w.index_of(s); })
        .def("word_at", [](const words::WordList& w, std::size_t i) { return w.at(i); });

    m.def(
        "encode_words",
        [](double lat, double lng, const words::WordList& list) {
            return words::encode(GeoPoint(lat, lng), list).display();
        },
        py::arg("lat"), py::arg("lng"), py::arg("wordlist"));
    m.def(
        "decode_words",
        [](const std::string& triple, const words::WordList& list) {
            return words::decode(words::WordTriple::parse(triple), list);
        },
        py::arg("words"), py::arg("wordlist"));
    m.def("cell_index", [](double lat, double lng) { return words::cell_index(GeoPoint(lat, lng)); },
          py::arg("lat"), py::arg("lng"));

    py::class_<shortcode::ShortCodeRecord>(m, "ShortCodeRecord")
        .def_readonly("code", &shortcode::ShortCodeRecord::code)
        .def_readonly("point", &shortcode::ShortCodeRecord::point)
        .def_readonly("created", &shortcode::ShortCodeRecord::created);

    py::class_<shortcode::Registry>(m, "Registry")
        .def(py::init<int, std::uint64_t, std::string_view>(), py::arg("code_length") = 6,
             py::arg("seed") = 0, py::arg("alphabet") = shortcode::kDefaultAlphabet)
        .def("allocate",
             [](shortcode::Registry& r, double lat, double lng) {
                 return r.allocate(GeoPoint(lat, lng));
             },
             py::arg("lat"), py::arg("lng"))
        .def("allocate_vanity",
             [](shortcode::Registry& r, double lat, double lng, const std::string& code) {
                 return r.allocate_vanity(GeoPoint(lat, lng), code);
             },
             py::arg("lat"), py::arg("lng"), py::arg("code"))
        .def("resolve", [](const shortcode::Registry& r, const std::string& code) {
            return r.resolve(code);
        })
        .def("save", &shortcode::Registry::save, py::arg("file"))
        .def_static("load", &shortcode::Registry::load, py::arg("file"))
        .def("__len__", &shortcode::Registry::size)
        .def_property_readonly("code_length", &shortcode::Registry::code_length)
        .def_property_readonly("seed", &shortcode::Registry::seed)
        .def_property_readonly("namespace_size", &shortcode::Registry::namespace_size);

    py::class_<robo::CityConfig>(m, "CityConfig")
        .def(py::init([](const std::string& city, const std::string& region, double lat,
                         double lng) {
                 return robo::CityConfig{city, region, GeoPoint(lat, lng)};
             }),
             py::arg("city_name"), py::arg("region_code"), py::arg("lat"), py::arg("lng"))
        .def_static("from_json_file", &robo::CityConfig::from_json_file)
        .def_readonly("city_name", &robo::CityConfig::city_name)
        .def_readonly("region_code", &robo::CityConfig::region_code);

    py::class_<robo::Robocode>(m, "Robocode")
        .def_static("parse", &robo::Robocode::parse, py::arg("text"))
        .def_readonly("offset_m", &robo::Robocode::offset_m)
        .def_readonly("street_name", &robo::Robocode::street_name)
        .def_readonly("city", &robo::Robocode::city)
        .def_readonly("region", &robo::Robocode::region)
        .def_property_readonly("unit_suffix",
                               [](const robo::Robocode& rc) -> std::optional<std::string> {
                                   if (!rc.unit_suffix) return std::nullopt;
                                   return std::string(1, *rc.unit_suffix);
                               })
        .def("display", &robo::Robocode::display);

    py::class_<robo::RoadNetwork>(m, "RoadNetwork")
        .def_static("from_geojson_text",
                    [](const std::string& text, const robo::CityConfig& cfg) {
                        return robo::RoadNetwork::from_geojson_text(text, cfg);
                    })
        .def_static("from_geojson_file",
                    [](const std::filesystem::path& file, const robo::CityConfig& cfg) {
                        return robo::RoadNetwork::from_geojson_file(file, cfg);
                    })
        .def("save", &robo::RoadNetwork::save)
        .def_static("load", &robo::RoadNetwork::load)
        .def("encode",
             [](const robo::RoadNetwork& n, double lat, double lng) {
                 return n.encode(GeoPoint(lat, lng)).display();
             },
             py::arg("lat"), py::arg("lng"))
        .def("decode",
             [](const robo::RoadNetwork& n, const std::string& code) {
                 return n.decode(robo::Robocode::parse(code));
             },
             py::arg("code"))
        .def("street_names",
             [](const robo::RoadNetwork& n) {
                 std::vector<std::string> names;
                 for (const auto& s : n.streets()) names.push_back(s.display_name());
                 return names;
             })
        .def("__len__", [](const robo::RoadNetwork& n) { return n.streets().size(); });

    m.def("min_code_length",
          [](std::uint64_t alphabet, std::uint64_t population) {
              return capacity::min_code_length(alphabet, population);
          },
          py::arg("alphabet_size"), py::arg("population"));
    m.def("distinct_word_arrangements", &capacity::distinct_word_arrangements,
          py::arg("list_size"), py::arg("k"));
    m.def("earth_cell_count", &capacity::earth_cell_count, py::arg("cell_side_m"));

    py::class_<eval::ErrorModel>(m, "ErrorModel")
        .def_static("gps", &eval::ErrorModel::gps)
        .def_static("map_marking", &eval::ErrorModel::map_marking)
        .def_static("zero_error", &eval::ErrorModel::zero_error)
        .def_static("lognormal", &eval::ErrorModel::lognormal, py::arg("mu"), py::arg("sigma"))
        .def_readonly("name", &eval::ErrorModel::name)
        .def_readonly("mu", &eval::ErrorModel::mu)
        .def_readonly("sigma", &eval::ErrorModel::sigma);

    m.def("sample_error",
          [](const eval::ErrorModel& model, const GeoPoint& p, std::uint64_t seed) {
              return eval::sample_error(model, p, seed);
          },
          py::arg("model"), py::arg("p"), py::arg("seed"));

    py::class_<eval::PerturbationReport>(m, "PerturbationReport")
        .def_readonly("scheme", &eval::PerturbationReport::scheme)
        .def_readonly("trials", &eval::PerturbationReport::trials)
        .def_readonly("invalid", &eval::PerturbationReport::invalid)
        .def_readonly("p50_m", &eval::PerturbationReport::p50_m)
        .def_readonly("p90_m", &eval::PerturbationReport::p90_m)
        .def_readonly("max_m", &eval::PerturbationReport::max_m)
        .def_readonly("invalid_fraction", &eval::PerturbationReport::invalid_fraction);

    py::class_<eval::LocalityProfile::Bucket>(m, "LocalityBucket")
        .def_readonly("min_m", &eval::LocalityProfile::Bucket::min_m)
        .def_readonly("max_m", &eval::LocalityProfile::Bucket::max_m)
        .def_readonly("pairs", &eval::LocalityProfile::Bucket::pairs)
        .def_readonly("mean_shared", &eval::LocalityProfile::Bucket::mean_shared);

    py::class_<eval::LocalityProfile>(m, "LocalityProfile")
        .def_readonly("scheme", &eval::LocalityProfile::scheme)
        .def_readonly("buckets", &eval::LocalityProfile::buckets);

    py::class_<eval::InterpolationReport>(m, "InterpolationReport")
        .def_readonly("trials", &eval::InterpolationReport::trials)
        .def_readonly("p50_m", &eval::InterpolationReport::p50_m)
        .def_readonly("p90_m", &eval::InterpolationReport::p90_m)
        .def_readonly("max_m", &eval::InterpolationReport::max_m);

    py::class_<eval::StabilityReport>(m, "StabilityReport")
        .def_readonly("scheme", &eval::StabilityReport::scheme)
        .def_readonly("model", &eval::StabilityReport::model)
        .def_readonly("trials", &eval::StabilityReport::trials)
        .def_readonly("stable_fraction", &eval::StabilityReport::stable_fraction);

    py::class_<eval::IndependenceReport>(m, "IndependenceReport")
        .def_readonly("pairs", &eval::IndependenceReport::pairs)
        .def_readonly("chi2", &eval::IndependenceReport::chi2)
        .def_readonly("df", &eval::IndependenceReport::df)
        .def_readonly("p_value", &eval::IndependenceReport::p_value);

    m.def("perturb_grid", &eval::perturb_grid, py::arg("n_trials"), py::arg("seed"),
          py::arg("edit_position") = -1);
    m.def("perturb_word", &eval::perturb_word, py::arg("wordlist"), py::arg("n_trials"),
          py::arg("seed"));
    m.def("locality_grid", &eval::locality_grid, py::arg("n_pairs"), py::arg("seed"));
    m.def("locality_word", &eval::locality_word, py::arg("wordlist"), py::arg("n_pairs"),
          py::arg("seed"));
    m.def("locality_short", &eval::locality_short, py::arg("registry"), py::arg("n_pairs"),
          py::arg("seed"));
    m.def("interpolation_error", &eval::interpolation_error, py::arg("net"),
          py::arg("n_samples"), py::arg("seed"));
    m.def("interpolation_error_single", &eval::interpolation_error_single, py::arg("net"),
          py::arg("street_name"), py::arg("offset_a"), py::arg("offset_b"));
    m.def("stability_grid", &eval::stability_grid, py::arg("code_length"), py::arg("model"),
          py::arg("n_trials"), py::arg("seed"));
    m.def("stability_word", &eval::stability_word, py::arg("model"), py::arg("n_trials"),
          py::arg("seed"));
    m.def("stability_robocode", &eval::stability_robocode, py::arg("net"), py::arg("model"),
          py::arg("n_trials"), py::arg("seed"));
    m.def("short_code_independence", &eval::short_code_independence, py::arg("n_pairs"),
          py::arg("seed"));
    m.def("chi2_sf", &eval::chi2_sf, py::arg("x"), py::arg("df"));

    m.def("perturbation_csv", [](const eval::PerturbationReport& r) { return eval::to_csv(r); });
    m.def("locality_csv", [](const eval::LocalityProfile& r) { return eval::to_csv(r); });
    m.def("interpolation_csv",
          [](const eval::InterpolationReport& r) { return eval::to_csv(r); });
    m.def("stability_csv", [](const eval::StabilityReport& r) { return eval::to_csv(r); });

#ifdef GEOCODEC_VERSION
    m.attr("__version__") = GEOCODEC_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
