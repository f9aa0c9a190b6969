#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <geocodec/geo.hpp>
#include <geocodec/rng.hpp>

namespace geocodec::shortcode {

inline constexpr std::string_view kDefaultAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

/// One registry entry: a code bound to a point.
struct ShortCodeRecord {
    std::string code;
    GeoPoint point;
    std::int64_t created = 0;  // unix seconds

    bool operator==(const ShortCodeRecord& o) const {
        return code == o.code && point == o.point && created == o.created;
    }
};

// Registry of short codes. Codes carry no spatial information at all: a code
// resolves only through the lookup table, and neighbors get unrelated codes.
// Allocation draws uniformly from the namespace and re-draws on collision;
// with a fixed seed the allocation sequence is reproducible.
//
// Reads may run concurrently; allocations must be serialized by the caller.
class Registry {
  public:
    /// The alphabet parameter is a test hook for shrinking the namespace; it
    /// is not persisted, and files always reload with the default alphabet.
    explicit Registry(int code_length = 6, std::uint64_t seed = 0,
                      std::string_view alphabet = kDefaultAlphabet);

    /// Allocates a fresh uniformly-random unused code for the point.
    /// Throws ExhaustedError when every code of the configured length is taken.
    ShortCodeRecord allocate(const GeoPoint& p);

    /// Registers a caller-chosen code (canonicalized to uppercase). Throws
    /// DomainError for malformed or too-short codes, ConflictError when taken.
    ShortCodeRecord allocate_vanity(const GeoPoint& p, std::string_view code);

    /// Exact registered point. Throws NotFoundError for unknown codes;
    /// the message never hints at nearby codes.
    GeoPoint resolve(std::string_view code) const;

    /// JSON Lines: a header object with code_length, seed and the engine draw
    /// count, then one record per line. UTF-8, '\n' separators, no trailing
    /// whitespace. load(save(r)) reproduces the registry record for record
    /// and resumes the allocation stream where it left off.
    void save(const std::filesystem::path& file) const;
    static Registry load(const std::filesystem::path& file);

    std::size_t size() const { return records_.size(); }
    int code_length() const { return code_length_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t namespace_size() const { return capacity_; }
    const std::map<std::string, ShortCodeRecord>& records() const { return records_; }

  private:
    int code_length_;
    std::uint64_t seed_;
    std::string alphabet_;
    std::uint64_t capacity_;
    std::uint64_t exact_length_count_ = 0;  // codes of exactly code_length_
    detail::Rng rng_;
    std::map<std::string, ShortCodeRecord> records_;

    std::string draw_code();
    ShortCodeRecord insert(std::string code, const GeoPoint& p);
};

}  // namespace geocodec::shortcode
