#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <geocodec/geo.hpp>
#include <geocodec/robocode.hpp>
#include <geocodec/rng.hpp>
#include <geocodec/short_code.hpp>
#include <geocodec/word_code.hpp>

namespace geocodec::eval {

// Quantifies how the code families behave under realistic noise: coordinate
// capture error, single-symbol code corruption, locality of nearby codes and
// neighbor interpolation on streets. Every run is seed-deterministic: trial
// t draws from an rng seeded by (master seed, t), so results do not depend
// on evaluation order. Reports serialize to CSV with a
// "# seed=<n> scheme=<s> trials=<n>" comment header.

/// Radial error model: distance log-normal in meters, direction uniform.
struct ErrorModel {
    std::string name;
    double mu = 0.0;
    double sigma = 0.0;
    bool zero = false;  // degenerate: no displacement at all

    /// Device GPS error: median 50 m, 10% within 5 m.
    static ErrorModel gps();
    /// Map-marking error: 25% within 100 m, sigma fixed at 1.
    static ErrorModel map_marking();
    /// No displacement; code stability is 1 by construction.
    static ErrorModel zero_error();
    static ErrorModel lognormal(double mu, double sigma);
};

/// p displaced by r ~ LogNormal(mu, sigma) meters in a uniform direction.
GeoPoint sample_error(const ErrorModel& model, const GeoPoint& p, detail::Rng& rng);
GeoPoint sample_error(const ErrorModel& model, const GeoPoint& p, std::uint64_t seed);

/// Displacement quantiles caused by one minimal code edit.
struct PerturbationReport {
    std::string scheme;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t invalid = 0;  // edits that produced no decodable code
    std::optional<double> p50_m;
    std::optional<double> p90_m;
    std::optional<double> max_m;
    std::optional<double> invalid_fraction;
};

/// Substitutes one character of an 11-character grid code
/// (edit_position < 0: uniformly random position).
PerturbationReport perturb_grid(std::uint64_t n_trials, std::uint64_t seed,
                                int edit_position = -1);

/// Substitutes one word of a word triple.
PerturbationReport perturb_word(const words::WordList& list, std::uint64_t n_trials,
                                std::uint64_t seed);

/// Mean code similarity of point pairs per log-spaced distance bucket
/// (10 m ... 10,000 km). Similarity is shared-prefix length for grid codes
/// and the count of positions holding the same word or character otherwise.
struct LocalityProfile {
    std::string scheme;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    struct Bucket {
        double min_m;
        double max_m;
        std::uint64_t pairs;
        double mean_shared;  // meaningful when pairs > 0
    };
    std::vector<Bucket> buckets;
};

LocalityProfile locality_grid(std::uint64_t n_pairs, std::uint64_t seed);
LocalityProfile locality_word(const words::WordList& list, std::uint64_t n_pairs,
                              std::uint64_t seed);
/// Buckets random pairs of registered records by their distance. Throws
/// DomainError when the registry holds fewer than two records.
LocalityProfile locality_short(const shortcode::Registry& reg, std::uint64_t n_pairs,
                               std::uint64_t seed);

/// Neighbor-interpolation error: the gap between the street point at the
/// mean of two offsets and the spherical midpoint of the two decoded points.
struct InterpolationReport {
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::optional<double> p50_m;
    std::optional<double> p90_m;
    std::optional<double> max_m;
};

/// Samples offset pairs (even gaps up to 200 m) on streets of at least
/// 100 m. Throws NotFoundError when no street qualifies.
InterpolationReport interpolation_error(const robo::RoadNetwork& net, std::uint64_t n_samples,
                                        std::uint64_t seed);

/// Error for one explicit offset pair on a named street.
double interpolation_error_single(const robo::RoadNetwork& net, const std::string& street_name,
                                  std::int64_t offset_a, std::int64_t offset_b);

/// Fraction of trials whose code survives a coordinate-capture error.
struct StabilityReport {
    std::string scheme;
    std::string model;
    int code_length = 0;  // grid only; 0 otherwise
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    double stable_fraction = 0.0;
};

StabilityReport stability_grid(int code_length, const ErrorModel& model, std::uint64_t n_trials,
                               std::uint64_t seed);
StabilityReport stability_word(const ErrorModel& model, std::uint64_t n_trials,
                               std::uint64_t seed);
/// Same street and offsets within 25 m counts as stable.
StabilityReport stability_robocode(const robo::RoadNetwork& net, const ErrorModel& model,
                                   std::uint64_t n_trials, std::uint64_t seed);

/// Builds a disposable registry holding pairs of nearby points (within
/// 100 m) and pairs of far points (beyond 100 km), then chi-squared-tests
/// whether the code Hamming-distance distributions differ.
struct IndependenceReport {
    std::uint64_t seed = 0;
    std::uint64_t pairs = 0;
    double chi2 = 0.0;
    int df = 0;
    double p_value = 1.0;
};
IndependenceReport short_code_independence(std::uint64_t n_pairs, std::uint64_t seed);

/// Fraction of geometrically identical streets whose display name changed
/// between two builds (rebuild sensitivity).
double rename_fraction(const robo::RoadNetwork& before, const robo::RoadNetwork& after);

/// Upper tail of the chi-squared distribution (regularized incomplete gamma).
double chi2_sf(double x, int df);

/// Empirical quantile of a sample (sorts a copy; index ceil(q*n)-1).
double quantile(std::vector<double> values, double q);

// CSV serialization. First line "# seed=<n> scheme=<s> trials=<n>", then a
// column header and data rows. '\n' endings, no trailing whitespace.
std::string to_csv(const PerturbationReport& r);
std::string to_csv(const LocalityProfile& r);
std::string to_csv(const InterpolationReport& r);
std::string to_csv(const StabilityReport& r);
void write_text_file(const std::filesystem::path& file, const std::string& content);

}  // namespace geocodec::eval
