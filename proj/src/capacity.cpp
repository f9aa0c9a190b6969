#include <geocodec/capacity.hpp>

#include <cmath>
#include <limits>
#include <string>

#include <geocodec/errors.hpp>
#include <geocodec/geo.hpp>

namespace geocodec::capacity {

int min_code_length(const NamespaceSpec& spec) {
    if (spec.alphabet_size < 2)
        throw DomainError("capacity: alphabet size must be at least 2");
    if (spec.population < 1)
        throw DomainError("capacity: population must be at least 1");

    int n = 0;
    std::uint64_t reach = 1;
    while (reach < spec.population) {
        // reach * alphabet_size would overflow only if reach already exceeds
        // any uint64 population, so the loop is safe to cut there.
        if (reach > std::numeric_limits<std::uint64_t>::max() / spec.alphabet_size)
            return n + 1;
        reach *= spec.alphabet_size;
        ++n;
    }
    return n == 0 ? 1 : n;
}

int min_code_length(std::uint64_t alphabet_size, std::uint64_t population) {
    return min_code_length(NamespaceSpec{alphabet_size, population});
}

std::uint64_t distinct_word_arrangements(std::uint64_t list_size, std::uint64_t k) {
    if (k == 0) throw DomainError("capacity: k must be positive");
    if (k > list_size)
        throw DomainError("capacity: k = " + std::to_string(k) + " exceeds list size " +
                          std::to_string(list_size));
    unsigned __int128 product = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        product *= list_size - i;
        if (product > std::numeric_limits<std::uint64_t>::max())
            throw RangeError("capacity: arrangement count exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(product);
}

std::uint64_t earth_cell_count(double cell_side_m) {
    if (!(cell_side_m > 0.0))
        throw DomainError("capacity: cell side must be positive");
    const double surface = 4.0 * 3.14159265358979323846 * kEarthRadiusM * kEarthRadiusM;
    const double cells = std::floor(surface / (cell_side_m * cell_side_m));
    if (cells > static_cast<double>(std::numeric_limits<std::uint64_t>::max()))
        throw RangeError("capacity: cell count exceeds 64 bits");
    return static_cast<std::uint64_t>(cells);
}

}  // namespace geocodec::capacity
