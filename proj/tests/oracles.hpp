#pragma once

// Slow, obviously-correct reference computations used to check the library.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sdc/gf2.hpp"

namespace oracle {

using sdc::BitMatrix;
using sdc::BitVector;
using Big = boost::multiprecision::cpp_int;
using Frac = boost::multiprecision::cpp_rational;

// Every message m in [0, 2^k), codeword = sum of rows selected by m.
inline std::vector<std::uint64_t> naive_distribution(const BitMatrix& g,
                                                     const std::optional<BitVector>& offset = std::nullopt) {
    const std::size_t n = g.cols();
    const std::size_t k = g.rows();
    std::vector<std::uint64_t> dist(n + 1, 0);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
        BitVector c = offset ? *offset : BitVector(n);
        for (std::size_t i = 0; i < k; ++i)
            if ((m >> i) & 1U) c ^= g.row(i);
        std::size_t w = 0;
        for (std::size_t j = 0; j < n; ++j) w += c.test(j);
        ++dist[w];
    }
    return dist;
}

inline std::vector<BitVector> naive_words(const BitMatrix& g, std::size_t weight) {
    std::vector<BitVector> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.rows()); ++m) {
        BitVector c(g.cols());
        for (std::size_t i = 0; i < g.rows(); ++i)
            if ((m >> i) & 1U) c ^= g.row(i);
        if (c.weight() == weight) out.push_back(c);
    }
    return out;
}

inline Big choose(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    Big r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Dual weight distribution: B_j = |C|^-1 sum_i A_i K_j(i).
inline std::vector<Frac> macwilliams(const std::vector<std::uint64_t>& a) {
    const long long n = static_cast<long long>(a.size()) - 1;
    Big size = 0;
    for (auto x : a) size += x;
    std::vector<Frac> b(a.size());
    for (long long j = 0; j <= n; ++j) {
        Big sum = 0;
        for (long long i = 0; i <= n; ++i) {
            Big kr = 0;
            for (long long s = 0; s <= j; ++s) {
                const Big t = choose(i, s) * choose(n - i, j - s);
                kr += (s % 2 ? -t : t);
            }
            sum += kr * a[i];
        }
        b[j] = Frac(sum) / Frac(size);
    }
    return b;
}

// Shadow of a singly even self-dual code as {v : v.c = wt(c)/2 mod 2 on the
// generators}; brute force over all 2^n vectors.
inline std::vector<std::uint64_t> brute_shadow_distribution(const BitMatrix& g) {
    const std::size_t n = g.cols();
    std::vector<std::uint64_t> dist(n + 1, 0);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        BitVector v(n);
        for (std::size_t j = 0; j < n; ++j)
            if ((x >> j) & 1U) v.set(j);
        bool in = true;
        for (const auto& r : g.row_data())
            if (v.dot(r) != (((r.weight() / 2) % 2) == 1)) {
                in = false;
                break;
            }
        if (in) ++dist[v.weight()];
    }
    return dist;
}

// Building-up step: from a self-dual generator of length n and a vector x of
// odd weight, (1,0,x) together with (y_i, y_i, r_i), y_i = x.r_i, generate a
// self-dual code of length n + 2.
inline BitMatrix build_up(const BitMatrix& g, const BitVector& x) {
    const std::size_t n = g.cols();
    std::vector<BitVector> rows;
    BitVector first(n + 2);
    first.set(0);
    for (std::size_t j = 0; j < n; ++j)
        if (x.test(j)) first.set(j + 2);
    rows.push_back(first);
    for (const auto& r : g.row_data()) {
        BitVector row(n + 2);
        if (x.dot(r)) {
            row.set(0);
            row.set(1);
        }
        for (std::size_t j = 0; j < n; ++j)
            if (r.test(j)) row.set(j + 2);
        rows.push_back(row);
    }
    return BitMatrix(n + 2, rows);
}

// Random self-dual code in systematic form [I | A] with A A^T = I: grow by
// building-up steps, scramble the columns, and retry until the first half
// of the coordinates is an information set.
inline BitMatrix random_self_dual(std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        BitMatrix g(2, std::vector<BitVector>{BitVector::from_bits("11")});
        while (g.cols() < n) {
            BitVector x(g.cols());
            do {
                for (std::size_t j = 0; j < g.cols(); ++j) x.set(j, rng() & 1U);
            } while (x.weight() % 2 == 0);
            g = build_up(g, x);
        }
        std::vector<std::size_t> images(n);
        for (std::size_t i = 0; i < n; ++i) images[i] = i;
        std::shuffle(images.begin(), images.end(), rng);
        const auto r = sdc::rref(g.permute_columns(sdc::Permutation(images)));
        bool systematic = r.pivots.size() == n / 2;
        for (std::size_t i = 0; systematic && i < n / 2; ++i) systematic = r.pivots[i] == i;
        if (systematic) return r.matrix;
    }
}

}  // namespace oracle
