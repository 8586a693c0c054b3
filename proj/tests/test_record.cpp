#include "doctest.h"
#include "sdc/error.hpp"
#include "sdc/record.hpp"

using namespace sdc;

TEST_CASE("code records round trip through JSON") {
    const auto params =
        make_params(tabulated_context(19), 2, {26, 6, 5}, {9, 59}, Permutation::from_cycles("(1,2,3,4)", 4));
    AnalysisOptions o;
    o.weight_ceiling = 16;
    o.shadow_ceiling = 11;
    const auto rec = construct_and_analyze(params, o);
    const auto j = to_json(rec);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["A_d"] == 3401);
    CHECK(j["I_2d"] == 547523);
    CHECK(j["derived"]["beta"] == -38);

    const auto back = record_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.gen == rec.gen);
    CHECK(back.d == rec.d);
    CHECK(back.d_proven == rec.d_proven);
    CHECK(back.weights.counts == rec.weights.counts);
    CHECK(back.weights.complete_up_to == rec.weights.complete_up_to);
    CHECK(back.shadow_counts->counts == rec.shadow_counts->counts);
    CHECK(back.intersection_2d == rec.intersection_2d);
    CHECK(back.derived == rec.derived);
    CHECK(back.dihedral_witness == rec.dihedral_witness);
    CHECK(back.params->to_record() == params.to_record());
    CHECK(to_json(back) == j);

    const std::string row = csv_row(rec);
    CHECK(row.rfind("26,6,5,9,59,", 0) == 0);
    CHECK(row.find(",-38,547523,14,3401") != std::string::npos);
    CHECK(csv_header() == "u1,u2,u3,v1,v2,s,beta,I_2d,d,A_d");
}

TEST_CASE("malformed records are rejected") {
    try {
        record_from_json(nlohmann::json::parse(R"({"schema_version": 1, "n": 4})"));
        FAIL("record without generator accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse_error);
    }
}

TEST_CASE("certificates carry both computations") {
    const auto cert = nonexistence_verdict(ShadowClass::parse(76, "near-extremal-minimal"));
    const auto j = to_json(cert);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["b_value_closed_form"] == "1050");
    CHECK(j["A_d_gleason"] == "2590");
    CHECK(j["verdict"] == "eliminated");
    CHECK(j["n"] == 76);
    CHECK(j["m"] == 3);
    CHECK(j["r"] == 2);
    CHECK(to_text(cert).find("1050") != std::string::npos);
}
