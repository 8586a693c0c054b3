#pragma once

#include <cstdint>

namespace sdc {

/// g(s) = sum_{i=0}^{s-1} ceil(d / 2^i), the Griesmer sum for an [*, s, d] code.
constexpr std::uint64_t griesmer_sum(std::uint64_t d, std::uint64_t s) {
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < s; ++i) {
        if (i >= 63) {
            total += (d > 0) ? 1 : 0;
            continue;
        }
        const std::uint64_t den = std::uint64_t{1} << i;
        total += (d + den - 1) / den;
    }
    return total;
}

/// Mallows-Sloane / Rains upper bound on d for a self-dual [n, n/2] code.
constexpr unsigned extremal_distance(unsigned n) { return 4 * (n / 24) + (n % 24 == 22 ? 6 : 4); }

/// d for a near-extremal self-dual code of length n.
constexpr unsigned near_extremal_distance(unsigned n) { return extremal_distance(n) - 2; }

}  // namespace sdc
