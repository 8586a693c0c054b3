#include <cstdio>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "sdc/error.hpp"
#include "sdc/search.hpp"

using namespace sdc;

namespace {

SearchPlan plan_from(const std::string& text) { return resolve_plan(parse_plan(text)); }

std::vector<Fingerprint> keys(const ResultStore& store) {
    std::vector<Fingerprint> out;
    for (const auto& r : store.records) out.push_back(r.key);
    return out;
}

}  // namespace

TEST_CASE("parse_plan") {
    const auto plan = parse_plan(
        "# comment\n"
        "p = 19\n"
        "f = 2\n"
        "v_pairs = 1,93;9,59   # two pairs\n"
        "classes = 1,3\n"
        "target_d = 14\n"
        "threads = 2\n"
        "shadow_ceiling = none\n"
        "require_dihedral = false\n");
    CHECK(plan.p == 19);
    CHECK(plan.classes == std::vector<int>{1, 3});
    CHECK(plan.threads == 2);
    CHECK(plan.shadow_ceiling == -1);
    CHECK_FALSE(plan.require_dihedral);
    const auto resolved = resolve_plan(plan);
    CHECK(resolved.v_pairs == std::vector<VPair>{{1, 93}, {9, 59}});

    CHECK(resolve_plan(parse_plan("v_pairs = reference")).v_pairs.size() == 29);
    for (const char* bad : {"colour = red", "p = nineteen", "classes = 5", "p"}) {
        try {
            parse_plan(bad);
            FAIL(bad);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::parse_error);
        }
    }
}

TEST_CASE("grid sizes") {
    const Grid full(plan_from("v_pairs = reference"));
    CHECK(full.per_v() == 4374);
    CHECK(full.size() == 4374 * 29);

    std::uint64_t seen = 0, last = 0;
    full.for_each(100, 200, [&](const GridPoint& g) {
        if (seen) CHECK(g.index == last + 1);
        last = g.index;
        ++seen;
    });
    CHECK(seen == 100);
}

TEST_CASE("single grid point search") {
    const auto plan = plan_from("v_pairs = 1,93\nu = 6,15,21\nclasses = 1\nthreads = 1");
    CHECK(Grid(plan).size() == 1);
    const auto store = run_search(plan);
    REQUIRE(store.records.size() == 1);
    CHECK(store.complete);
    CHECK(store.records[0].record.intersection_2d == 646285);
    CHECK(store.records[0].key.a_d == 3705);
    CHECK(store.records[0].key.d == 14);
}

TEST_CASE("empty v-pair list gives an empty store") {
    const auto store = run_search(plan_from("v_pairs = 1,93\nv_limit = 0"));
    CHECK(store.records.empty());
    CHECK(store.stats.grid_size == 0);
    CHECK(store.complete);
}

TEST_CASE("one v-pair slice finds codes") {
    const auto store = run_search(plan_from("v_pairs = 1,93"));
    CHECK(store.complete);
    CHECK(store.stats.processed == 4374);
    REQUIRE(store.distinct() >= 1);
    std::vector<std::uint64_t> i28;
    for (const auto& r : store.records) {
        CHECK(r.record.self_dual);
        CHECK(r.record.d == 14);
        CHECK(r.record.d_proven);
        CHECK(r.record.dihedral_witness.has_value());
        i28.push_back(*r.record.intersection_2d);
    }
    CHECK(std::find(i28.begin(), i28.end(), 646285) != i28.end());
    CHECK(std::find(i28.begin(), i28.end(), 643910) != i28.end());
    CHECK(to_csv(store).rfind("u1,u2,u3,v1,v2,s,beta,I_2d", 0) == 0);
}

TEST_CASE("thread count and checkpoints do not change the result") {
    const std::string base = "v_pairs = 83,138\ngrid_limit = 900\ncheckpoint_every = 250\n";
    const auto one = run_search(plan_from(base + "threads = 1"));
    const auto two = run_search(plan_from(base + "threads = 2"));
    CHECK(keys(one) == keys(two));
    CHECK(to_json_lines(one) == to_json_lines(two));

    const auto path = (std::filesystem::temp_directory_path() / "sdc_test_checkpoint.json").string();
    std::filesystem::remove(path);
    auto staged = plan_from(base + "threads = 1\ncheckpoint = " + path + "\nbudget = 400");
    const auto first = run_search(staged);
    CHECK_FALSE(first.complete);
    CHECK(first.next_index == 400);
    staged.budget.reset();
    const auto resumed = run_search(staged);
    CHECK(resumed.complete);
    CHECK(keys(resumed) == keys(one));
    CHECK(resumed.stats.processed == one.stats.processed);

    auto other = plan_from("v_pairs = 1,93\ncheckpoint = " + path);
    try {
        run_search(other);
        FAIL("foreign checkpoint accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_params);
    }
    std::filesystem::remove(path);
}

TEST_CASE("fingerprints") {
    const auto ctx = tabulated_context(19);
    auto rec_for = [&](std::array<std::uint64_t, 3> u, VPair v, const char* s) {
        AnalysisOptions o;
        o.weight_ceiling = 14;
        o.shadow_ceiling = 11;
        return construct_and_analyze(make_params(ctx, 2, u, v, Permutation::from_cycles(s, 4)), o);
    };
    const auto c1 = rec_for({6, 15, 21}, {1, 93}, "(1,2,3,4)");
    const auto c2 = rec_for({6, 12, 18}, {1, 93}, "(1,2,3,4)");
    CHECK(fingerprint(c1) != fingerprint(c2));
    CHECK(fingerprint(c2).i_2d == 643910);

    const auto c13 = rec_for({26, 6, 5}, {9, 59}, "(1,2,3,4)");
    const auto k13 = fingerprint(c13);
    CHECK(k13.d == 14);
    CHECK(k13.a_d == 3401);
    CHECK(k13.i_2d == 547523);
    REQUIRE(k13.shadow_prefix.size() == 12);
    CHECK(k13.shadow_prefix[11] == 38);

    std::mt19937_64 rng(3);
    std::vector<std::size_t> images(78);
    std::iota(images.begin(), images.end(), std::size_t{0});
    std::shuffle(images.begin(), images.end(), rng);
    AnalysisOptions o;
    o.weight_ceiling = 14;
    o.shadow_ceiling = 11;
    const auto moved = analyze_code(c1.gen.permute_columns(Permutation(images)), std::nullopt, o);
    CHECK(fingerprint(moved) == fingerprint(c1));
}

TEST_CASE("store flags fingerprint collisions") {
    const auto ctx = tabulated_context(19);
    AnalysisOptions o;
    o.weight_ceiling = 14;
    o.shadow_ceiling = -1;
    const auto a = construct_and_analyze(make_params(ctx, 2, {6, 15, 21}, {1, 93}, Permutation::from_cycles("(1,2,3,4)", 4)), o);
    ResultStore store;
    store.insert(a);
    store.insert(a);
    CHECK(store.distinct() == 1);
    CHECK(store.records.size() == 1);
    CHECK(store.records[0].hits == 2);
    CHECK_FALSE(store.records[0].needs_review);  // same generator
}
