#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <geocodec/geo.hpp>

namespace geocodec::grid {

// Hierarchical grid codes over a 20-symbol alphabet. The globe is cut into
// 9 x 18 blocks of 20 x 20 degrees; each further character pair subdivides
// the current cell 20 x 20, giving per-pair cell heights of 20, 1, 0.05,
// 0.0025 and 0.000125 degrees. An optional 11th character splits the final
// cell into a 4 (lng) x 5 (lat) sub-grid, index = row * 4 + col with row 0
// southernmost, which is roughly 2.8 m x 3.5 m at the equator.
//
// Codes nest: sharing a prefix means sharing an enclosing cell. Encoding and
// decoding are pure arithmetic on the coordinates; no lookup tables, no I/O.

inline constexpr std::string_view kAlphabet = "23456789CFGHJMPQRVWX";
inline constexpr int kSeparatorPosition = 8;  // display form: '+' after 8 chars

/// Validated grid code. Stores significant characters only; the display form
/// inserts '+' after the 8th character when more follow.
class GridCode {
  public:
    /// Parses text into a code. Case-insensitive; '+' is ignored wherever it
    /// appears. Throws ParseError (with character position) on a bad symbol,
    /// an out-of-range first pair, or an unsupported length.
    static GridCode parse(std::string_view text);

    /// Builds a code from alphabet indices (d[0] < 9, d[1] < 18, rest < 20).
    static GridCode from_digits(const std::vector<int>& digits);

    const std::string& chars() const { return chars_; }
    std::size_t size() const { return chars_.size(); }

    /// Display form, e.g. "7JWVJ675+HJ". Codes of 8 or fewer characters have
    /// no separator.
    std::string display() const;

    /// Alphabet index of each character.
    std::vector<int> digits() const;

    /// Leading prefix of the first `length` significant characters.
    GridCode prefix(std::size_t length) const;

    bool operator==(const GridCode& o) const { return chars_ == o.chars_; }
    bool operator!=(const GridCode& o) const { return chars_ != o.chars_; }

  private:
    GridCode() = default;
    std::string chars_;
};

/// Encodes a point at the given length (2, 4, 6, 8, 10 or 11 characters).
/// Throws DomainError for unsupported lengths. Latitude +90 is clipped into
/// the northernmost cell; the subdivision itself is half-open.
GridCode encode(const GeoPoint& p, int length = 11);

/// Cell denoted by a code. encode(decode(c).center(), c.size()) == c.
CellBounds decode(const GridCode& code);

/// Number of leading significant characters the two codes share.
int shared_prefix_length(const GridCode& a, const GridCode& b);

/// Total number of 11-character cells (9 * 18 * 20^9).
inline constexpr std::uint64_t kCellCount11 = 82944000000000ull;

namespace detail {
// Integer cell coordinates at 11-character resolution: latitude in units of
// 1/40000 deg in [0, 7.2e6), longitude in units of 1/32000 deg in [0, 1.152e7).
struct CellCoords {
    std::int64_t lat_units;
    std::int64_t lng_units;
};
CellCoords cell_coords(const GeoPoint& p);
int alphabet_index(char c);  // -1 when not in the alphabet
}  // namespace detail

}  // namespace geocodec::grid
