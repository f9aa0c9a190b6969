#pragma once

#include <cstdint>

namespace geocodec::capacity {

/// Code namespace: an alphabet of `alphabet_size` symbols addressing
/// `population` distinct records.
struct NamespaceSpec {
    std::uint64_t alphabet_size;
    std::uint64_t population;
};

/// Smallest n with alphabet_size^n >= population, exact integer arithmetic.
/// A population of 1 still needs one character. Throws DomainError when
/// alphabet_size < 2 or population < 1.
int min_code_length(const NamespaceSpec& spec);
int min_code_length(std::uint64_t alphabet_size, std::uint64_t population);

/// Ordered arrangements of k distinct words from a list: the falling
/// factorial list_size * (list_size-1) * ... * (list_size-k+1), exact.
/// Throws DomainError when k > list_size or k == 0, RangeError when the
/// product exceeds 64 bits.
std::uint64_t distinct_word_arrangements(std::uint64_t list_size, std::uint64_t k);

/// floor(4 * pi * R^2 / side^2): square cells of the given side tiling the
/// spherical Earth. Throws DomainError for non-positive sides, RangeError
/// when the count exceeds 64 bits.
std::uint64_t earth_cell_count(double cell_side_m);

}  // namespace geocodec::capacity
