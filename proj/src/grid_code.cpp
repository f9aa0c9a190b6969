#include <geocodec/grid_code.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>

#include <geocodec/errors.hpp>

namespace geocodec::grid {

namespace {

// 11-character resolution: 1/40000 deg in latitude, 1/32000 deg in longitude.
constexpr std::int64_t kLatScale = 40000;
constexpr std::int64_t kLngScale = 32000;
constexpr std::int64_t kLatUnits = 180ll * kLatScale;  // 7,200,000
constexpr std::int64_t kLngUnits = 360ll * kLngScale;  // 11,520,000

// Products like (28.6139 + 90) * 40000 land a hair below the integer the
// decimal inputs denote. Snapping by a sliver of a cell (2.5e-12 deg, well
// above the FP error bound and far below any physical resolution) keeps the
// subdivision faithful to the decimal coordinates.
constexpr double kBoundarySnap = 1e-7;

bool valid_length(int length) {
    return length == 2 || length == 4 || length == 6 || length == 8 ||
           length == 10 || length == 11;
}

std::int64_t pow20(int n) {
    std::int64_t v = 1;
    while (n-- > 0) v *= 20;
    return v;
}

// Degree span of one cell edge for a code of `length` characters, expressed
// as a divisor (cells per degree) or multiplier (degrees per cell) pair.
// Lengths 2 and 4 have cells of 20 and 1 degrees; longer codes divide.
double cell_units_per_degree(int length, bool is_lat) {
    switch (length) {
        case 2: return 1.0 / 20.0;
        case 4: return 1.0;
        case 6: return 20.0;
        case 8: return 400.0;
        case 10: return 8000.0;
        case 11: return is_lat ? 40000.0 : 32000.0;
    }
    throw DomainError("grid: unsupported code length " + std::to_string(length));
}

}  // namespace

namespace detail {

int alphabet_index(char c) {
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    const auto pos = kAlphabet.find(u);
    return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

CellCoords cell_coords(const GeoPoint& p) {
    std::int64_t lat_u =
        static_cast<std::int64_t>(std::floor((p.lat + 90.0) * kLatScale + kBoundarySnap));
    lat_u = std::clamp<std::int64_t>(lat_u, 0, kLatUnits - 1);  // +90 joins the top cell
    std::int64_t lng_u =
        static_cast<std::int64_t>(std::floor((p.lng + 180.0) * kLngScale + kBoundarySnap));
    lng_u = ((lng_u % kLngUnits) + kLngUnits) % kLngUnits;
    return {lat_u, lng_u};
}

}  // namespace detail

GridCode GridCode::parse(std::string_view text) {
    std::vector<int> digits;
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '+') continue;  // display separator, never significant
        const int d = detail::alphabet_index(c);
        if (d < 0)
            throw ParseError("grid: invalid character '" + std::string(1, c) +
                             "' at position " + std::to_string(i));
        digits.push_back(d);
        positions.push_back(i);
    }
    if (!valid_length(static_cast<int>(digits.size())))
        throw ParseError("grid: invalid code length " + std::to_string(digits.size()) +
                         " (expected 2, 4, 6, 8, 10 or 11 significant characters)");
    if (digits[0] > 8)
        throw ParseError("grid: latitude block out of range at position " +
                         std::to_string(positions[0]));
    if (digits[1] > 17)
        throw ParseError("grid: longitude block out of range at position " +
                         std::to_string(positions[1]));
    return from_digits(digits);
}

GridCode GridCode::from_digits(const std::vector<int>& digits) {
    if (!valid_length(static_cast<int>(digits.size())))
        throw DomainError("grid: unsupported digit count " + std::to_string(digits.size()));
    GridCode code;
    code.chars_.reserve(digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const int d = digits[i];
        const int limit = i == 0 ? 9 : (i == 1 ? 18 : 20);
        if (d < 0 || d >= limit)
            throw DomainError("grid: digit " + std::to_string(d) + " out of range at index " +
                              std::to_string(i));
        code.chars_.push_back(kAlphabet[static_cast<std::size_t>(d)]);
    }
    return code;
}

std::string GridCode::display() const {
    if (chars_.size() <= kSeparatorPosition) return chars_;
    return chars_.substr(0, kSeparatorPosition) + "+" + chars_.substr(kSeparatorPosition);
}

std::vector<int> GridCode::digits() const {
    std::vector<int> d(chars_.size());
    std::transform(chars_.begin(), chars_.end(), d.begin(),
                   [](char c) { return detail::alphabet_index(c); });
    return d;
}

GridCode GridCode::prefix(std::size_t length) const {
    GridCode p;
    p.chars_ = chars_.substr(0, length);
    if (!valid_length(static_cast<int>(p.chars_.size())))
        throw DomainError("grid: prefix length " + std::to_string(length) +
                          " is not a valid code length");
    return p;
}

GridCode encode(const GeoPoint& p, int length) {
    if (!valid_length(length))
        throw DomainError("grid: unsupported code length " + std::to_string(length));

    auto [lat_u, lng_u] = detail::cell_coords(p);

    std::vector<int> digits(static_cast<std::size_t>(length));
    if (length == 11) {
        const int row = static_cast<int>(lat_u % 5);
        const int col = static_cast<int>(lng_u % 4);
        digits[10] = row * 4 + col;
    }
    std::int64_t lat_p = lat_u / 5;  // 10-character resolution (1/8000 deg)
    std::int64_t lng_p = lng_u / 4;

    const int pairs = std::min(length, 10) / 2;
    const std::int64_t drop = pow20(5 - pairs);
    lat_p /= drop;
    lng_p /= drop;
    for (int k = pairs - 1; k >= 0; --k) {
        digits[static_cast<std::size_t>(2 * k)] = static_cast<int>(lat_p % 20);
        digits[static_cast<std::size_t>(2 * k + 1)] = static_cast<int>(lng_p % 20);
        lat_p /= 20;
        lng_p /= 20;
    }
    return GridCode::from_digits(digits);
}

CellBounds decode(const GridCode& code) {
    const std::vector<int> d = code.digits();
    const int length = static_cast<int>(d.size());

    std::int64_t lat_v = 0, lng_v = 0;
    const int pairs = std::min(length, 10) / 2;
    for (int k = 0; k < pairs; ++k) {
        lat_v = lat_v * 20 + d[static_cast<std::size_t>(2 * k)];
        lng_v = lng_v * 20 + d[static_cast<std::size_t>(2 * k + 1)];
    }
    if (length == 11) {
        lat_v = lat_v * 5 + d[10] / 4;
        lng_v = lng_v * 4 + d[10] % 4;
    }

    const double lat_div = cell_units_per_degree(length, true);
    const double lng_div = cell_units_per_degree(length, false);
    CellBounds b;
    b.south = static_cast<double>(lat_v) / lat_div - 90.0;
    b.north = static_cast<double>(lat_v + 1) / lat_div - 90.0;
    b.west = static_cast<double>(lng_v) / lng_div - 180.0;
    b.east = static_cast<double>(lng_v + 1) / lng_div - 180.0;
    return b;
}

int shared_prefix_length(const GridCode& a, const GridCode& b) {
    const std::string& x = a.chars();
    const std::string& y = b.chars();
    const std::size_t n = std::min(x.size(), y.size());
    std::size_t i = 0;
    while (i < n && x[i] == y[i]) ++i;
    return static_cast<int>(i);
}

}  // namespace geocodec::grid
