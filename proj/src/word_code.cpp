#include <geocodec/word_code.hpp>

#include <array>
#include <cctype>
#include <fstream>

#include <geocodec/errors.hpp>
#include <geocodec/grid_code.hpp>

namespace geocodec::words {

namespace {

// Digit radices of an 11-character grid code.
constexpr std::array<std::uint64_t, 11> kRadices = {9, 18, 20, 20, 20, 20, 20, 20, 20, 20, 20};

std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

bool covers_cell_space(std::uint64_t n) {
    return static_cast<unsigned __int128>(n) * n * n >= kCellCount;
}

}  // namespace

namespace detail {

// 4-round balanced Feistel over 24-bit halves. The round function is a
// multiply-xor-shift mix (splitmix64 finalizer constants) keyed per round.
constexpr std::array<std::uint32_t, 4> kRoundKeys = {0x2545F491u, 0x9E3779B9u, 0x85EBCA6Bu,
                                                     0xC2B2AE35u};
constexpr std::uint32_t kHalfMask = 0xFFFFFF;

std::uint32_t round_mix(std::uint32_t half, std::uint32_t key) {
    std::uint64_t x = (static_cast<std::uint64_t>(key) << 24) | half;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    x ^= x >> 31;
    return static_cast<std::uint32_t>(x) & kHalfMask;
}

std::uint64_t feistel_encrypt(std::uint64_t v) {
    auto left = static_cast<std::uint32_t>(v >> 24) & kHalfMask;
    auto right = static_cast<std::uint32_t>(v) & kHalfMask;
    for (const std::uint32_t key : kRoundKeys) {
        const std::uint32_t next = left ^ round_mix(right, key);
        left = right;
        right = next;
    }
    return (static_cast<std::uint64_t>(left) << 24) | right;
}

std::uint64_t feistel_decrypt(std::uint64_t v) {
    auto left = static_cast<std::uint32_t>(v >> 24) & kHalfMask;
    auto right = static_cast<std::uint32_t>(v) & kHalfMask;
    for (auto it = kRoundKeys.rbegin(); it != kRoundKeys.rend(); ++it) {
        const std::uint32_t prev = right ^ round_mix(left, *it);
        right = left;
        left = prev;
    }
    return (static_cast<std::uint64_t>(left) << 24) | right;
}

std::uint64_t permute(std::uint64_t value, std::uint64_t n) {
    if (value >= n) throw DomainError("words: permutation input out of range");
    std::uint64_t v = value;
    do {
        v = feistel_encrypt(v);
    } while (v >= n);  // cycle-walk back into [0, n)
    return v;
}

std::uint64_t unpermute(std::uint64_t value, std::uint64_t n) {
    if (value >= n) throw DomainError("words: permutation input out of range");
    std::uint64_t v = value;
    do {
        v = feistel_decrypt(v);
    } while (v >= n);
    return v;
}

}  // namespace detail

WordList WordList::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("words: cannot open wordlist " + file.string());
    WordList list;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty())
            throw ParseError("words: empty line " + std::to_string(lineno) + " in wordlist");
        for (const char c : line) {
            if (std::isspace(static_cast<unsigned char>(c)) || c == '.')
                throw ParseError("words: invalid token at line " + std::to_string(lineno));
        }
        list.words_.push_back(lowercase(line));
    }
    list.build_index();
    return list;
}

WordList WordList::synthetic(std::size_t n) {
    WordList list;
    list.words_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "w%05zu", i);
        list.words_.emplace_back(buf);
    }
    list.build_index();
    return list;
}

void WordList::build_index() {
    index_.reserve(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
        const auto [it, inserted] = index_.emplace(words_[i], i);
        if (!inserted)
            throw ParseError("words: duplicate word \"" + words_[i] + "\" at line " +
                             std::to_string(i + 1));
    }
}

std::int64_t WordList::index_of(std::string_view w) const {
    const auto it = index_.find(std::string(w));
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

WordTriple WordTriple::parse(std::string_view text) {
    std::array<std::string, 3> parts;
    std::size_t field = 0;
    for (const char c : text) {
        if (c == '.') {
            if (++field >= 3) throw ParseError("words: expected exactly 3 words in \"" +
                                               std::string(text) + "\"");
        } else {
            parts[field].push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (field != 2 || parts[0].empty() || parts[1].empty() || parts[2].empty())
        throw ParseError("words: expected exactly 3 words in \"" + std::string(text) + "\"");
    return {parts[0], parts[1], parts[2]};
}

std::uint64_t cell_index(const GeoPoint& p) {
    const std::vector<int> digits = grid::encode(p, 11).digits();
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < digits.size(); ++i)
        v = v * kRadices[i] + static_cast<std::uint64_t>(digits[i]);
    return v;
}

CellBounds cell_bounds(std::uint64_t index) {
    if (index >= kCellCount) throw RangeError("words: cell index out of range");
    std::vector<int> digits(11);
    for (int i = 10; i >= 0; --i) {
        const std::uint64_t r = kRadices[static_cast<std::size_t>(i)];
        digits[static_cast<std::size_t>(i)] = static_cast<int>(index % r);
        index /= r;
    }
    return grid::decode(grid::GridCode::from_digits(digits));
}

WordTriple encode(const GeoPoint& p, const WordList& list) {
    const std::uint64_t n = list.size();
    if (!covers_cell_space(n))
        throw DomainError("words: wordlist of " + std::to_string(n) +
                          " words cannot address every cell");
    const std::uint64_t scrambled = detail::permute(cell_index(p), kCellCount);
    const std::uint64_t i3 = scrambled % n;
    const std::uint64_t i2 = (scrambled / n) % n;
    const std::uint64_t i1 = scrambled / (n * n);
    return {list.at(i1), list.at(i2), list.at(i3)};
}

CellBounds decode(const WordTriple& t, const WordList& list) {
    const std::uint64_t n = list.size();
    if (!covers_cell_space(n))
        throw DomainError("words: wordlist of " + std::to_string(n) +
                          " words cannot address every cell");
    std::uint64_t idx[3];
    const std::string* ws[3] = {&t.w1, &t.w2, &t.w3};
    for (int i = 0; i < 3; ++i) {
        const std::int64_t found = list.index_of(*ws[i]);
        if (found < 0) throw UnknownWordError("words: unknown word \"" + *ws[i] + "\"");
        idx[i] = static_cast<std::uint64_t>(found);
    }
    const unsigned __int128 composed =
        (static_cast<unsigned __int128>(idx[0]) * n + idx[1]) * n + idx[2];
    if (composed >= kCellCount)
        throw RangeError("words: triple \"" + t.display() + "\" maps outside the cell space");
    return cell_bounds(detail::unpermute(static_cast<std::uint64_t>(composed), kCellCount));
}

}  // namespace geocodec::words
