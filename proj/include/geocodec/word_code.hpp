#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <geocodec/geo.hpp>

namespace geocodec::words {

// Word-triple codes: every 11-character grid cell gets an ordered triple of
// dictionary words. The cell index is scrambled through a fixed 4-round
// Feistel permutation (cycle-walked into [0, cell count)), so adjacent cells
// land on unrelated triples by construction; the mapping stays deterministic,
// invertible and computable offline.

inline constexpr std::uint64_t kCellCount = 82944000000000ull;  // 9 * 18 * 20^9

/// Immutable ordered wordlist; a word's index is its 0-based line number.
class WordList {
  public:
    /// Loads a plain-text list, one word per line (UTF-8, '\n'). Tokens are
    /// lowercased; duplicates, embedded whitespace and '.' are rejected.
    static WordList load(const std::filesystem::path& file);

    /// The shipped test vocabulary: tokens "w00000" ... "w<n-1>", zero-padded
    /// to five digits.
    static WordList synthetic(std::size_t n = 45000);

    std::size_t size() const { return words_.size(); }
    const std::string& at(std::size_t i) const { return words_[i]; }

    /// Index of a word, or -1 when absent.
    std::int64_t index_of(std::string_view w) const;

  private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::uint64_t> index_;
    void build_index();
};

/// Ordered word triple; display form "w1.w2.w3".
struct WordTriple {
    std::string w1, w2, w3;

    std::string display() const { return w1 + "." + w2 + "." + w3; }
    static WordTriple parse(std::string_view text);

    bool operator==(const WordTriple& o) const {
        return w1 == o.w1 && w2 == o.w2 && w3 == o.w3;
    }
};

/// Mixed-radix index of the point's 11-character grid cell, in [0, kCellCount).
/// Strictly monotone in the (lat block, lng block, ...) digit order.
std::uint64_t cell_index(const GeoPoint& p);

/// Bounds of the cell with the given index.
CellBounds cell_bounds(std::uint64_t index);

/// Encodes a point as a word triple. Throws DomainError when the wordlist is
/// too small (size^3 must reach kCellCount).
WordTriple encode(const GeoPoint& p, const WordList& list);

/// Decodes a triple back to its cell. Throws UnknownWordError (naming the
/// word) for out-of-vocabulary words and RangeError for triples beyond the
/// cell space.
CellBounds decode(const WordTriple& t, const WordList& list);

namespace detail {
// The Feistel permutation over 48-bit values, cycle-walked into [0, n).
// Exposed for the bijectivity property tests.
std::uint64_t permute(std::uint64_t value, std::uint64_t n);
std::uint64_t unpermute(std::uint64_t value, std::uint64_t n);
}  // namespace detail

}  // namespace geocodec::words
