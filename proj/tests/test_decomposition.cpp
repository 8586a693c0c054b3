#include <random>

#include "doctest.h"
#include "sdc/bounds.hpp"
#include "sdc/decomposition.hpp"
#include "sdc/error.hpp"

using namespace sdc;

namespace {

ConstructionParams row_params(std::array<std::uint64_t, 3> u, std::pair<std::uint64_t, std::uint64_t> v,
                              const char* s) {
    return make_params(tabulated_context(19), 2, u, v, Permutation::from_cycles(s, 4));
}

bool is_sigma_invariant(const BitVector& v, const AutomorphismType& type) {
    return apply_permutation(v, sigma_permutation(type)) == v;
}

}  // namespace

TEST_CASE("feasible_types") {
    const auto t78 = feasible_types(78, 14, 19);
    REQUIRE(t78.size() == 1);
    CHECK(t78[0] == AutomorphismType{19, 4, 2});
    CHECK(t78[0].to_string() == "19-(4;2)");

    const auto t116 = feasible_types(116, 18, 29);
    CHECK(std::find(t116.begin(), t116.end(), AutomorphismType{29, 4, 0}) != t116.end());

    CHECK(griesmer_sum(14, 3) == 25);
    CHECK(griesmer_sum(14, 1) == 14);
    for (const auto& t : feasible_types(96, 16, 23)) CHECK(t.length() == 96);
}

TEST_CASE("lift_fixed") {
    const AutomorphismType type{19, 4, 2};
    SUBCASE("a cycle bit becomes a run of p ones") {
        const BitMatrix row = BitMatrix::from_rows({"1000|10"});
        const BitMatrix lifted = lift_fixed(row, type, Permutation::identity(4));
        REQUIRE(lifted.cols() == 78);
        CHECK(lifted.row(0).weight() == 20);
        for (std::size_t j = 0; j < 19; ++j) CHECK(lifted.row(0).test(j));
        CHECK(lifted.row(0).test(76));
        CHECK_FALSE(lifted.row(0).test(77));
    }
    SUBCASE("s moves the runs") {
        const BitMatrix row = BitMatrix::from_rows({"1000|00"});
        const auto lifted = lift_fixed(row, type, Permutation::from_cycles("(1,2,3,4)", 4));
        CHECK(lifted.row(0).test(19));
        CHECK_FALSE(lifted.row(0).test(0));
    }
    SUBCASE("zero row") {
        const auto lifted = lift_fixed(BitMatrix(1, 6), type, Permutation::identity(4));
        CHECK(lifted.row(0).none());
    }
    SUBCASE("lifted rows are sigma-invariant and project back") {
        const BitMatrix g = fixed_generator("i2x3");
        const auto lifted = lift_fixed(g, type, Permutation::identity(4));
        for (std::size_t i = 0; i < g.rows(); ++i) {
            CHECK(is_sigma_invariant(lifted.row(i), type));
            CHECK(project_fixed(lifted.row(i), type) == g.row(i));
        }
    }
    SUBCASE("shape errors") {
        try {
            lift_fixed(BitMatrix(1, 5), type, Permutation::identity(4));
            FAIL("wrong width accepted");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::shape_error);
        }
    }
}

TEST_CASE("lift_skew") {
    const auto params = row_params({6, 15, 21}, {1, 93}, "(1,2,3,4)");
    const BitMatrix skew = lift_skew(params);
    CHECK(skew.rows() == 36);
    CHECK(skew.cols() == 78);
    CHECK(rank(skew) == 36);
    const BitMatrix fixed = lift_fixed(params.fixed_gen, params.type(), params.s);
    for (const auto& r : skew.row_data()) {
        for (unsigned cyc = 0; cyc < 4; ++cyc) {
            std::size_t w = 0;
            for (std::size_t j = cyc * 19; j < (cyc + 1) * 19; ++j) w += r.test(j);
            CHECK(w % 2 == 0);
        }
        CHECK_FALSE(r.test(76));
        CHECK_FALSE(r.test(77));
        for (const auto& other : skew.row_data()) CHECK_FALSE(r.dot(other));
        for (const auto& f : fixed.row_data()) CHECK_FALSE(r.dot(f));
    }
}

TEST_CASE("make_params validation") {
    const auto ctx = tabulated_context(19);
    const auto s = Permutation::identity(4);
    auto expect_invalid = [&](std::array<std::uint64_t, 3> u, std::pair<std::uint64_t, std::uint64_t> v) {
        try {
            make_params(ctx, 2, u, v, s);
            FAIL("invalid params accepted");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::invalid_params);
        }
    };
    expect_invalid({1, 2, 5}, {1, 93});  // no congruence
    expect_invalid({6, 15, 21}, {1, 94});  // not a v-pair
    expect_invalid({6, 15, 21}, {93, 1});
    CHECK(make_params(ctx, 2, {33, 15, 21}, {1, 93}, s).u[0] == 6);
}

TEST_CASE("build_code") {
    const auto c1 = build_code(row_params({6, 15, 21}, {1, 93}, "(1,2,3,4)"));
    CHECK(c1.rows() == 39);
    CHECK(is_self_dual(c1));
    CHECK(rref(c1).matrix == c1);
    CHECK(preserves_code(c1, sigma_permutation({19, 4, 2})));

    const auto c13 = build_code(row_params({26, 6, 5}, {9, 59}, "(1,2,3,4)"));
    CHECK(is_self_dual(c13));

    SUBCASE("random admissible tuples") {
        const auto ctx = tabulated_context(19);
        const auto pairs = find_v_pairs(ctx);
        const auto reps = coset_reps(fixed_generator("i2x3"), {4, 5});
        std::mt19937_64 rng(19);
        for (int t = 0; t < 12; ++t) {
            const std::uint64_t u1 = rng() % 27, u2 = rng() % 27;
            std::array<std::uint64_t, 3> u{};
            switch (t % 4) {
                case 0: u = {u1, u2, (u1 + u2) % 27}; break;
                case 1: u = {(u1 + u2) % 27, u1, u2}; break;
                case 2: u = {u1, (u1 + u2) % 27, u2}; break;
                default: u = {0, 0, 0};
            }
            const auto params = make_params(ctx, 2, u, pairs[rng() % pairs.size()], reps[rng() % reps.size()]);
            const BitMatrix g = build_code(params);
            CHECK(rank(g) == 39);
            CHECK(is_self_dual(g));
            CHECK(preserves_code(g, sigma_permutation(params.type())));
        }
    }
}

TEST_CASE("dihedral_filter") {
    CHECK(dihedral_filter({6, 15, 21}, 27) == std::vector<int>{1});
    CHECK(dihedral_filter({0, 0, 0}, 27) == std::vector<int>{1, 2, 3, 4});
    CHECK(dihedral_filter({1, 2, 5}, 27).empty());
    CHECK(dihedral_filter({20, 25, 18}, 27) == std::vector<int>{1});  // 45 = 18 mod 27
}

TEST_CASE("coset_reps") {
    const BitMatrix g = fixed_generator("i2x3");
    const auto reps = coset_reps(g, {4, 5});
    CHECK(reps.size() == 6);

    std::vector<Permutation> stab;
    for (const auto& a : brute_force_automorphisms(g)) {
        if (!(a(4) == 4 && a(5) == 5) && !(a(4) == 5 && a(5) == 4)) continue;
        std::vector<std::size_t> head(4);
        for (std::size_t i = 0; i < 4; ++i) head[i] = a(i);
        stab.emplace_back(head);
    }
    for (const char* name : {"I", "(1,2,3,4)", "(1,2)", "(1,3)(2,4)", "(1,3,4)", "(1,4,3,2)"}) {
        const auto s = Permutation::from_cycles(name, 4);
        int hits = 0;
        for (const auto& r : reps) hits += same_coset(r, s, stab);
        CHECK_MESSAGE(hits == 1, name);
    }

    CHECK(coset_reps(BitMatrix::from_rows({"11"}), {}).size() == 1);
    // [1100;0011]: stabiliser has order 8 in S4
    CHECK(coset_reps(fixed_generator("i2x2"), {}).size() == 3);
    try {
        coset_reps(BitMatrix(5, 10), {});
        FAIL("length 10 accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::too_large);
    }
}

TEST_CASE("pair_conditions") {
    const auto table = pair_conditions({19, 4, 2});
    REQUIRE(table.at(1).size() == 1);
    CHECK(table.at(1)[0] == Permutation::from_cycles("(1,2,3,4)", 4));
    CHECK(table.at(2).size() == 2);
    CHECK(table.at(3).size() == 3);
    CHECK(table.at(4).size() == 6);

    const auto t29 = pair_conditions({29, 4, 0});
    CHECK(t29.at(2).size() == coset_reps(fixed_generator("i2x2"), {}).size());

    try {
        pair_conditions({23, 4, 4});
        FAIL("unanalysed case accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::unsupported_case);
    }
}

TEST_CASE("involution catalogue") {
    for (unsigned p : {19u, 29u}) {
        const auto cat = involution_catalog(p);
        CHECK(cat.size() == 10);
        const Permutation sigma = sigma_permutation({p, 4, 0});
        for (const auto& inv : cat) {
            CHECK((inv.on_cycles * inv.on_cycles).is_identity());
            CHECK(inv.on_cycles * sigma * inv.on_cycles == sigma.inverse());
        }
    }
    CHECK(fixed_point_involutions(2).size() == 2);
    CHECK(fixed_point_involutions(4).size() == 10);
}

TEST_CASE("constructed codes carry a dihedral witness") {
    const auto params = row_params({6, 15, 21}, {1, 93}, "(1,2,3,4)");
    const BitMatrix g = build_code(params);
    const auto w = dihedral_witness(g, params.type());
    REQUIRE(w.has_value());
    CHECK(preserves_code(g, w->perm));
    CHECK((w->perm * w->perm).is_identity());
}

TEST_CASE("params record round trip") {
    const auto params = row_params({10, 10, 0}, {215, 335}, "(1,3,4)");
    CHECK(params.to_record() == "19 2 10 10 0 215 335 (1,3,4) i2x3");
    const auto back = parse_params_record(params.to_record());
    CHECK(build_code(back) == build_code(params));
}
