#include <geocodec/eval.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include <geocodec/errors.hpp>
#include <geocodec/grid_code.hpp>

namespace geocodec::eval {

namespace {

constexpr double kLogNormalGpsZ = 1.2816;   // z at the 90th percentile
constexpr double kLogNormalMapZ = 0.6745;   // z at the 75th percentile

// Log-spaced bucket edges for locality profiles: 10 m .. 10,000 km.
constexpr double kBucketEdges[] = {10.0, 100.0, 1e3, 1e4, 1e5, 1e6, 1e7};
constexpr std::size_t kBucketCount = std::size(kBucketEdges) - 1;

std::string format_double(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string csv_header(std::uint64_t seed, const std::string& scheme, std::uint64_t trials) {
    return "# seed=" + std::to_string(seed) + " scheme=" + scheme +
           " trials=" + std::to_string(trials) + "\n";
}

void fill_quantiles(std::vector<double>& values, std::optional<double>& p50,
                    std::optional<double>& p90, std::optional<double>& max) {
    if (values.empty()) return;
    std::sort(values.begin(), values.end());
    p50 = quantile(values, 0.5);
    p90 = quantile(values, 0.9);
    max = values.back();
}

}  // namespace

ErrorModel ErrorModel::gps() {
    // Two-quantile fit: median 50 m and 10% within 5 m.
    return {"gps", std::log(50.0), (std::log(50.0) - std::log(5.0)) / kLogNormalGpsZ, false};
}

ErrorModel ErrorModel::map_marking() {
    // Single constraint (25% within 100 m) with sigma pinned at 1.
    return {"map_marking", std::log(100.0) + kLogNormalMapZ, 1.0, false};
}

ErrorModel ErrorModel::zero_error() { return {"zero", 0.0, 0.0, true}; }

ErrorModel ErrorModel::lognormal(double mu, double sigma) {
    if (sigma < 0.0) throw DomainError("error model: sigma must be non-negative");
    return {"lognormal", mu, sigma, false};
}

GeoPoint sample_error(const ErrorModel& model, const GeoPoint& p, detail::Rng& rng) {
    if (model.zero) return p;
    const double r = std::exp(model.mu + model.sigma * rng.normal());
    const double bearing = rng.uniform() * 360.0;
    return destination(p, bearing, r);
}

GeoPoint sample_error(const ErrorModel& model, const GeoPoint& p, std::uint64_t seed) {
    detail::Rng rng(seed);
    return sample_error(model, p, rng);
}

PerturbationReport perturb_grid(std::uint64_t n_trials, std::uint64_t seed, int edit_position) {
    if (edit_position >= 11) throw DomainError("perturb: edit position must be < 11");
    PerturbationReport report{"grid", seed, n_trials, 0, {}, {}, {}, {}};
    std::vector<double> displacements;
    displacements.reserve(n_trials);
    for (std::uint64_t t = 0; t < n_trials; ++t) {
        detail::Rng rng(detail::mix_seed(seed, t));
        const GeoPoint p = rng.point_on_sphere();
        const grid::GridCode code = grid::encode(p, 11);
        std::vector<int> digits = code.digits();
        const std::size_t pos = edit_position < 0
                                    ? static_cast<std::size_t>(rng.below(11))
                                    : static_cast<std::size_t>(edit_position);
        // Uniform substitution by a different symbol; out-of-range first-pair
        // digits make the code invalid and are tallied, not decoded.
        int replacement = static_cast<int>(rng.below(19));
        if (replacement >= digits[pos]) ++replacement;
        digits[pos] = replacement;
        const int limit = pos == 0 ? 9 : (pos == 1 ? 18 : 20);
        if (replacement >= limit) {
            ++report.invalid;
            continue;
        }
        const GeoPoint original = grid::decode(code).center();
        const GeoPoint mutated = grid::decode(grid::GridCode::from_digits(digits)).center();
        displacements.push_back(haversine_distance(original, mutated));
    }
    fill_quantiles(displacements, report.p50_m, report.p90_m, report.max_m);
    if (n_trials > 0)
        report.invalid_fraction = static_cast<double>(report.invalid) / static_cast<double>(n_trials);
    return report;
}

PerturbationReport perturb_word(const words::WordList& list, std::uint64_t n_trials,
                                std::uint64_t seed) {
    PerturbationReport report{"word", seed, n_trials, 0, {}, {}, {}, {}};
    std::vector<double> displacements;
    displacements.reserve(n_trials);
    for (std::uint64_t t = 0; t < n_trials; ++t) {
        detail::Rng rng(detail::mix_seed(seed, t));
        const GeoPoint p = rng.point_on_sphere();
        words::WordTriple triple = words::encode(p, list);
        std::string* slots[3] = {&triple.w1, &triple.w2, &triple.w3};
        std::string* slot = slots[rng.below(3)];
        std::uint64_t replacement = rng.below(list.size() - 1);
        const std::int64_t current = list.index_of(*slot);
        if (replacement >= static_cast<std::uint64_t>(current)) ++replacement;
        *slot = list.at(replacement);
        try {
            const GeoPoint original = words::cell_bounds(words::cell_index(p)).center();
            const GeoPoint mutated = words::decode(triple, list).center();
            displacements.push_back(haversine_distance(original, mutated));
        } catch (const RangeError&) {
            ++report.invalid;  // triple beyond the cell space
        }
    }
    fill_quantiles(displacements, report.p50_m, report.p90_m, report.max_m);
    if (n_trials > 0)
        report.invalid_fraction = static_cast<double>(report.invalid) / static_cast<double>(n_trials);
    return report;
}

namespace {

LocalityProfile profile_skeleton(const std::string& scheme, std::uint64_t seed,
                                 std::uint64_t trials) {
    LocalityProfile profile{scheme, seed, trials, {}};
    for (std::size_t b = 0; b < kBucketCount; ++b)
        profile.buckets.push_back({kBucketEdges[b], kBucketEdges[b + 1], 0, 0.0});
    return profile;
}

// Accumulates similarity of synthetic pairs at log-uniform distances.
template <typename SimilarityFn>
LocalityProfile synthetic_profile(const std::string& scheme, std::uint64_t n_pairs,
                                  std::uint64_t seed, SimilarityFn&& similarity) {
    LocalityProfile profile = profile_skeleton(scheme, seed, n_pairs);
    std::vector<double> sums(kBucketCount, 0.0);
    for (std::uint64_t t = 0; t < n_pairs; ++t) {
        detail::Rng rng(detail::mix_seed(seed, t));
        const std::size_t b = static_cast<std::size_t>(rng.below(kBucketCount));
        const double lo = std::log(kBucketEdges[b]), hi = std::log(kBucketEdges[b + 1]);
        const double dist = std::exp(lo + rng.uniform() * (hi - lo));
        const GeoPoint p = rng.point_on_sphere();
        const GeoPoint q = destination(p, rng.uniform() * 360.0, dist);
        sums[b] += similarity(p, q);
        ++profile.buckets[b].pairs;
    }
    for (std::size_t b = 0; b < kBucketCount; ++b)
        if (profile.buckets[b].pairs > 0)
            profile.buckets[b].mean_shared =
                sums[b] / static_cast<double>(profile.buckets[b].pairs);
    return profile;
}

}  // namespace

LocalityProfile locality_grid(std::uint64_t n_pairs, std::uint64_t seed) {
    return synthetic_profile("grid", n_pairs, seed, [](const GeoPoint& a, const GeoPoint& b) {
        return static_cast<double>(
            grid::shared_prefix_length(grid::encode(a, 11), grid::encode(b, 11)));
    });
}

LocalityProfile locality_word(const words::WordList& list, std::uint64_t n_pairs,
                              std::uint64_t seed) {
    return synthetic_profile("word", n_pairs, seed, [&](const GeoPoint& a, const GeoPoint& b) {
        const words::WordTriple ta = words::encode(a, list);
        const words::WordTriple tb = words::encode(b, list);
        return static_cast<double>((ta.w1 == tb.w1) + (ta.w2 == tb.w2) + (ta.w3 == tb.w3));
    });
}

LocalityProfile locality_short(const shortcode::Registry& reg, std::uint64_t n_pairs,
                               std::uint64_t seed) {
    if (reg.size() < 2)
        throw DomainError("locality: registry must hold at least two records");
    std::vector<const shortcode::ShortCodeRecord*> records;
    records.reserve(reg.size());
    for (const auto& [code, rec] : reg.records()) records.push_back(&rec);

    LocalityProfile profile = profile_skeleton("short", seed, n_pairs);
    std::vector<double> sums(kBucketCount, 0.0);
    for (std::uint64_t t = 0; t < n_pairs; ++t) {
        detail::Rng rng(detail::mix_seed(seed, t));
        const auto* a = records[rng.below(records.size())];
        const auto* b = records[rng.below(records.size())];
        if (a == b || a->code.size() != b->code.size()) continue;
        const double dist = haversine_distance(a->point, b->point);
        const auto edge = std::upper_bound(std::begin(kBucketEdges), std::end(kBucketEdges), dist);
        if (edge == std::begin(kBucketEdges) || edge == std::end(kBucketEdges)) continue;
        const auto bucket = static_cast<std::size_t>(edge - std::begin(kBucketEdges)) - 1;
        double shared = 0;
        for (std::size_t i = 0; i < a->code.size(); ++i) shared += a->code[i] == b->code[i];
        sums[bucket] += shared;
        ++profile.buckets[bucket].pairs;
    }
    for (std::size_t b = 0; b < kBucketCount; ++b)
        if (profile.buckets[b].pairs > 0)
            profile.buckets[b].mean_shared =
                sums[b] / static_cast<double>(profile.buckets[b].pairs);
    return profile;
}

double interpolation_error_single(const robo::RoadNetwork& net, const std::string& street_name,
                                  std::int64_t offset_a, std::int64_t offset_b) {
    robo::Robocode rc;
    rc.street_name = street_name;
    rc.city = net.config().city_name;
    rc.region = net.config().region_code;

    rc.offset_m = offset_a;
    const GeoPoint pa = net.decode(rc);
    rc.offset_m = offset_b;
    const GeoPoint pb = net.decode(rc);
    rc.offset_m = (offset_a + offset_b) / 2;
    const GeoPoint along_street = net.decode(rc);

    return haversine_distance(along_street, midpoint(pa, pb));
}

InterpolationReport interpolation_error(const robo::RoadNetwork& net, std::uint64_t n_samples,
                                        std::uint64_t seed) {
    std::vector<const robo::Street*> eligible;
    for (const robo::Street& s : net.streets())
        if (s.length_m >= 100.0) eligible.push_back(&s);
    if (eligible.empty())
        throw NotFoundError("interpolation: no street of at least 100 m in the network");

    InterpolationReport report{seed, n_samples, {}, {}, {}};
    std::vector<double> errors;
    errors.reserve(n_samples);
    for (std::uint64_t t = 0; t < n_samples; ++t) {
        detail::Rng rng(detail::mix_seed(seed, t));
        const robo::Street& s = *eligible[rng.below(eligible.size())];
        const auto limit = static_cast<std::int64_t>(std::floor(s.length_m));
        const std::int64_t a = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(limit - 1)));
        const std::int64_t max_gap = std::min<std::int64_t>(200, limit - a);
        // Even gaps keep the mean offset an exact integer.
        const std::int64_t gap =
            2 * (1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_gap / 2))));
        errors.push_back(interpolation_error_single(net, s.display_name(), a, a + gap));
    }
    fill_quantiles(errors, report.p50_m, report.p90_m, report.max_m);
    return report;
}

StabilityReport stability_grid(int code_length, const ErrorModel& model, std::uint64_t n_trials,
                               std::uint64_t seed) {
    StabilityReport report{"grid", model.name, code_length, seed, n_trials, 0.0};
    std::uint64_t stable = 0;
    for (std::uint64_t t = 0; t < n_trials; ++t) {
        detail::Rng rng(detail::mix_seed(seed, t));
        const GeoPoint p = rng.point_on_sphere();
        const GeoPoint q = sample_error(model, p, rng);
        stable += grid::encode(p, code_length) == grid::encode(q, code_length);
    }
    if (n_trials > 0) report.stable_fraction = static_cast<double>(stable) / static_cast<double>(n_trials);
    return report;
}

StabilityReport stability_word(const ErrorModel& model, std::uint64_t n_trials,
                               std::uint64_t seed) {
    StabilityReport report{"word", model.name, 0, seed, n_trials, 0.0};
    std::uint64_t stable = 0;
    for (std::uint64_t t = 0; t < n_trials; ++t) {
        detail::Rng rng(detail::mix_seed(seed, t));
        const GeoPoint p = rng.point_on_sphere();
        const GeoPoint q = sample_error(model, p, rng);
        stable += words::cell_index(p) == words::cell_index(q);  // same cell, same triple
    }
    if (n_trials > 0) report.stable_fraction = static_cast<double>(stable) / static_cast<double>(n_trials);
    return report;
}

StabilityReport stability_robocode(const robo::RoadNetwork& net, const ErrorModel& model,
                                   std::uint64_t n_trials, std::uint64_t seed) {
    StabilityReport report{"robocode", model.name, 0, seed, n_trials, 0.0};
    // Sample true positions on the streets themselves.
    std::vector<const robo::Street*> streets;
    for (const robo::Street& s : net.streets()) streets.push_back(&s);
    std::uint64_t stable = 0;
    for (std::uint64_t t = 0; t < n_trials; ++t) {
        detail::Rng rng(detail::mix_seed(seed, t));
        const robo::Street& s = *streets[rng.below(streets.size())];
        const GeoPoint p = net.point_at_offset(s, rng.uniform() * s.length_m);
        const GeoPoint q = sample_error(model, p, rng);
        const robo::Robocode ca = net.encode(p);
        const robo::Robocode cb = net.encode(q);
        stable += ca.street_name == cb.street_name &&
                  std::llabs(ca.offset_m - cb.offset_m) <= 25;
    }
    if (n_trials > 0) report.stable_fraction = static_cast<double>(stable) / static_cast<double>(n_trials);
    return report;
}

IndependenceReport short_code_independence(std::uint64_t n_pairs, std::uint64_t seed) {
    shortcode::Registry reg(6, detail::mix_seed(seed, 0xC0DE));
    // Hamming distance histograms over 6-character codes, near vs far pairs.
    std::vector<std::uint64_t> near_hist(7, 0), far_hist(7, 0);
    const auto hamming = [](const std::string& a, const std::string& b) {
        std::size_t d = 0;
        for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
        return d;
    };
    for (std::uint64_t t = 0; t < n_pairs; ++t) {
        detail::Rng rng(detail::mix_seed(seed, t));
        const GeoPoint base = rng.point_on_sphere();
        const GeoPoint near = destination(base, rng.uniform() * 360.0, rng.uniform() * 100.0);
        const GeoPoint far =
            destination(base, rng.uniform() * 360.0, 1e5 + rng.uniform() * 1e7);
        const std::string c0 = reg.allocate(base).code;
        const std::string c1 = reg.allocate(near).code;
        const std::string c2 = reg.allocate(far).code;
        ++near_hist[hamming(c0, c1)];
        ++far_hist[hamming(c0, c2)];
    }

    // Merge sparse low-distance bins so every pooled expected count is sound,
    // then run a two-sample homogeneity test.
    std::vector<double> near_bins, far_bins;
    double carry_near = 0, carry_far = 0;
    for (std::size_t d = 0; d < near_hist.size(); ++d) {
        carry_near += static_cast<double>(near_hist[d]);
        carry_far += static_cast<double>(far_hist[d]);
        if (carry_near + carry_far >= 10.0) {
            near_bins.push_back(carry_near);
            far_bins.push_back(carry_far);
            carry_near = carry_far = 0;
        }
    }
    if (carry_near + carry_far > 0 && !near_bins.empty()) {
        near_bins.back() += carry_near;
        far_bins.back() += carry_far;
    }

    IndependenceReport report{seed, n_pairs, 0.0, 0, 1.0};
    if (near_bins.size() < 2) return report;
    double total_near = 0, total_far = 0;
    for (std::size_t i = 0; i < near_bins.size(); ++i) {
        total_near += near_bins[i];
        total_far += far_bins[i];
    }
    const double total = total_near + total_far;
    for (std::size_t i = 0; i < near_bins.size(); ++i) {
        const double pooled = near_bins[i] + far_bins[i];
        const double e_near = pooled * total_near / total;
        const double e_far = pooled * total_far / total;
        report.chi2 += (near_bins[i] - e_near) * (near_bins[i] - e_near) / e_near;
        report.chi2 += (far_bins[i] - e_far) * (far_bins[i] - e_far) / e_far;
    }
    report.df = static_cast<int>(near_bins.size()) - 1;
    report.p_value = chi2_sf(report.chi2, report.df);
    return report;
}

double rename_fraction(const robo::RoadNetwork& before, const robo::RoadNetwork& after) {
    std::uint64_t matched = 0, renamed = 0;
    for (const robo::Street& b : after.streets()) {
        for (const robo::Street& a : before.streets()) {
            if (a.polyline != b.polyline) continue;
            ++matched;
            renamed += a.display_name() != b.display_name();
            break;
        }
    }
    return matched == 0 ? 0.0 : static_cast<double>(renamed) / static_cast<double>(matched);
}

// Regularized incomplete gamma via series / continued fraction.
namespace {

double gammln(double x) {
    static const double cof[6] = {76.18009172947146,  -86.50532032941677, 24.01409824083091,
                                  -1.231739572450155, 0.1208650973866179e-2,
                                  -0.5395239384953e-5};
    double y = x;
    double tmp = x + 5.5;
    tmp -= (x + 0.5) * std::log(tmp);
    double ser = 1.000000000190015;
    for (const double c : cof) ser += c / ++y;
    return -tmp + std::log(2.5066282746310005 * ser / x);
}

double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ++ap;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gammln(a));
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - gammln(a)) * h;
}

}  // namespace

double chi2_sf(double x, int df) {
    if (df < 1) throw DomainError("chi2_sf: df must be positive");
    if (x <= 0.0) return 1.0;
    const double a = df / 2.0, half = x / 2.0;
    if (half < a + 1.0) return 1.0 - gamma_p_series(a, half);
    return gamma_q_contfrac(a, half);
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw DomainError("quantile: empty sample");
    if (q < 0.0 || q > 1.0) throw DomainError("quantile: q must be in [0, 1]");
    std::sort(values.begin(), values.end());
    const double rank = std::ceil(q * static_cast<double>(values.size())) - 1.0;
    const auto idx = static_cast<std::size_t>(std::max(0.0, rank));
    return values[std::min(idx, values.size() - 1)];
}

std::string to_csv(const PerturbationReport& r) {
    std::string out = csv_header(r.seed, r.scheme, r.trials);
    out += "p50_m,p90_m,max_m,invalid_fraction\n";
    if (r.p50_m)
        out += format_double(*r.p50_m, 3) + "," + format_double(*r.p90_m, 3) + "," +
               format_double(*r.max_m, 3) + "," + format_double(*r.invalid_fraction, 6) + "\n";
    return out;
}

std::string to_csv(const LocalityProfile& r) {
    std::string out = csv_header(r.seed, r.scheme, r.trials);
    out += "bucket_min_m,bucket_max_m,pairs,mean_shared\n";
    for (const auto& b : r.buckets)
        out += format_double(b.min_m, 1) + "," + format_double(b.max_m, 1) + "," +
               std::to_string(b.pairs) + "," + format_double(b.mean_shared, 6) + "\n";
    return out;
}

std::string to_csv(const InterpolationReport& r) {
    std::string out = csv_header(r.seed, "robocode", r.trials);
    out += "quantile,meters\n";
    if (r.p50_m) {
        out += "p50," + format_double(*r.p50_m, 3) + "\n";
        out += "p90," + format_double(*r.p90_m, 3) + "\n";
        out += "max," + format_double(*r.max_m, 3) + "\n";
    }
    return out;
}

std::string to_csv(const StabilityReport& r) {
    std::string out = csv_header(r.seed, r.scheme, r.trials);
    out += "model,code_length,stable_fraction\n";
    out += r.model + "," + std::to_string(r.code_length) + "," +
           format_double(r.stable_fraction, 6) + "\n";
    return out;
}

void write_text_file(const std::filesystem::path& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("report: cannot open " + file.string() + " for writing");
    out << content;
    if (!out) throw IoError("report: write to " + file.string() + " failed");
}

}  // namespace geocodec::eval
