#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sdc/analysis.hpp"
#include "sdc/error.hpp"
#include "sdc/shadow_theory.hpp"

using namespace sdc;

namespace {

BitMatrix hamming8() { return BitMatrix::from_rows({"11110000", "11001100", "10101010", "11111111"}); }

const BitMatrix& table_code(std::array<std::uint64_t, 3> u, std::pair<std::uint64_t, std::uint64_t> v,
                            const char* s) {
    static std::map<std::string, BitMatrix> cache;
    const std::string key = std::to_string(u[0]) + "," + std::to_string(u[1]) + "," + std::to_string(u[2]) + s;
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, build_code(make_params(tabulated_context(19), 2, u, v, Permutation::from_cycles(s, 4))))
                 .first;
    return it->second;
}

const BitMatrix& c1() { return table_code({6, 15, 21}, {1, 93}, "(1,2,3,4)"); }
const BitMatrix& c13() { return table_code({26, 6, 5}, {9, 59}, "(1,2,3,4)"); }
const BitMatrix& c16() { return table_code({15, 5, 17}, {29, 178}, "I"); }

Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> images(n);
    std::iota(images.begin(), images.end(), std::size_t{0});
    std::shuffle(images.begin(), images.end(), rng);
    return Permutation(images);
}

}  // namespace

TEST_CASE("min_distance on classical codes") {
    const auto h = min_distance(hamming8());
    CHECK(h.d == 4);
    CHECK(h.proven);
    const auto rep = min_distance(BitMatrix::from_rows({"11"}));
    CHECK(rep.d == 2);
    CHECK(rep.proven);
}

TEST_CASE("count_weight agrees with full enumeration") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 15; ++t) {
        const std::size_t n = 2 * (2 + rng() % 9);
        const BitMatrix g = oracle::random_self_dual(n, rng);
        const auto naive = oracle::naive_distribution(g);
        for (unsigned w = 0; w <= n; ++w) CHECK(count_weight(g, w, {1}) == naive[w]);
        std::size_t d = 1;
        while (naive[d] == 0) ++d;
        CHECK(min_distance(g).d == d);
    }
}

TEST_CASE("weight enumerators are MacWilliams-invariant") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 8; ++t) {
        const BitMatrix g = oracle::random_self_dual(2 * (3 + rng() % 8), rng);
        const auto profile = weight_profile(g, static_cast<unsigned>(g.cols()));
        std::vector<std::uint64_t> a(g.cols() + 1);
        for (unsigned w = 0; w <= g.cols(); ++w) a[w] = profile.at(w);
        const auto b = oracle::macwilliams(a);
        for (std::size_t w = 0; w < a.size(); ++w) CHECK(b[w] == oracle::Frac(a[w]));
    }
}

TEST_CASE("shadow cosets") {
    SUBCASE("repetition code") {
        const auto s = shadow_profile(BitMatrix::from_rows({"11"}), 2);
        CHECK(s.at(0) == 0);
        CHECK(s.at(1) == 2);
        CHECK(s.at(2) == 0);
    }
    SUBCASE("doubly-even codes have none") {
        try {
            shadow(hamming8());
            FAIL("doubly-even code accepted");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::no_shadow);
        }
    }
    SUBCASE("agrees with brute force") {
        std::mt19937_64 rng(8);
        int checked = 0;
        while (checked < 8) {
            const BitMatrix g = oracle::random_self_dual(2 * (2 + rng() % 8), rng);
            if (is_doubly_even(g)) continue;
            ++checked;
            const auto brute = oracle::brute_shadow_distribution(g);
            const auto profile = shadow_profile(g, static_cast<unsigned>(g.cols()));
            for (unsigned w = 0; w <= g.cols(); ++w) CHECK(profile.at(w) == brute[w]);

            const auto dec = shadow(g);
            CHECK(rank(dec.c0_gen) + 1 == g.rows());
            CHECK(is_doubly_even(dec.c0_gen));
            for (unsigned i : {0u, 2u})
                CHECK(dec.t[i].weight() % 4 == (g.cols() / 2) % 4);
        }
    }
}

TEST_CASE("griesmer_check") {
    CHECK_FALSE(griesmer_check(38, 18, 14));
    CHECK(griesmer_check(8, 4, 4));
    CHECK(griesmer_check(9, 1, 9));
}

TEST_CASE("intersection numbers") {
    const auto words = oracle::naive_words(hamming8(), 4);
    CHECK(words.size() == 14);
    const auto dist = intersection_distribution(words);
    CHECK(dist.at(4) == 84);
    CHECK(dist.at(8) == 7);
    for (const auto& [j, count] : dist) CHECK(j % 2 == 0);
    CHECK(intersection_number(hamming8(), 4, 8) == 7);
}

TEST_CASE("constructed length-78 codes") {
    AnalysisOptions opts;
    opts.weight_ceiling = 16;
    opts.shadow_ceiling = 11;
    SUBCASE("C1") {
        const auto rec = analyze_code(c1(), std::nullopt, opts);
        CHECK(rec.self_dual);
        CHECK_FALSE(rec.doubly_even);
        CHECK(rec.d == 14);
        CHECK(rec.d_proven);
        CHECK(rec.a_d() == 3705);
        CHECK(rec.weights.at(16) == 62244);
        CHECK(rec.intersection_2d == 646285);
        CHECK(rec.derived.at("beta") == 0);
        CHECK(rec.derived.at("alpha") == 0);
        CHECK(rec.weights.at(14) % 19 == 0);
        CHECK(rec.weights.at(16) % 19 == 0);
        for (unsigned w = 1; w < 14; ++w) CHECK(rec.weights.at(w) == 0);
    }
    SUBCASE("C13") {
        CHECK(count_weight(c13(), 14) == 3401);
        const auto s = shadow_profile(c13(), 11);
        CHECK(s.at(3) == 0);
        CHECK(s.at(7) == 0);
        CHECK(s.at(11) == 38);
        for (unsigned r = 0; r <= 11; ++r)
            if (r % 4 != 3) CHECK(s.at(r) == 0);
        std::map<unsigned, Integer> counts;
        for (const auto& [w, c] : s.counts) counts[w] = c;
        CHECK(theorem1_check(counts, 11, 78, 14).empty());
    }
    SUBCASE("C16") {
        CHECK(intersection_number(c16(), 14, 28) == 544882);
    }
}

TEST_CASE("results do not depend on the thread count") {
    const BitMatrix& g = c1();
    const InformationSetFamily family(g);
    const auto one = low_weight_distribution(family, 14, std::nullopt, {1});
    const auto four = low_weight_distribution(family, 14, std::nullopt, {4});
    CHECK(one == four);
    CHECK(collect_words(family, 14, std::nullopt, {1}) == collect_words(family, 14, std::nullopt, {3}));
}

TEST_CASE("invariants survive coordinate permutations") {
    std::mt19937_64 rng(31);
    const BitMatrix g = oracle::random_self_dual(20, rng);
    const BitMatrix h = g.permute_columns(random_permutation(20, rng));
    const auto a = weight_profile(g, 20);
    const auto b = weight_profile(h, 20);
    CHECK(a.counts == b.counts);
    const unsigned d = min_distance(g).d;
    CHECK(intersection_distribution(collect_words(InformationSetFamily(g), d)) ==
          intersection_distribution(collect_words(InformationSetFamily(h), d)));
}

TEST_CASE("incomplete profiles refuse to answer") {
    const auto p = weight_profile(hamming8(), 4);
    CHECK(p.at(4) == 14);
    try {
        (void)p.at(6);
        FAIL("uncounted weight answered");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::incomplete_coverage);
    }
}
