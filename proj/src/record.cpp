#include "sdc/record.hpp"

#include <sstream>

#include "sdc/error.hpp"

namespace sdc {

namespace {

nlohmann::json profile_json(const WeightProfile& p) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [w, c] : p.counts) counts[std::to_string(w)] = c;
    return {{"complete_up_to", p.complete_up_to}, {"counts", counts}};
}

WeightProfile profile_from_json(const nlohmann::json& j, std::size_t n) {
    WeightProfile p;
    p.n = n;
    p.complete_up_to = j.at("complete_up_to").get<unsigned>();
    for (const auto& [w, c] : j.at("counts").items()) p.counts[static_cast<unsigned>(std::stoul(w))] = c.get<std::uint64_t>();
    return p;
}

std::string optional_count(const std::optional<std::uint64_t>& x) { return x ? std::to_string(*x) : ""; }

std::string derived_or_empty(const CodeRecord& rec, const std::string& key) {
    const auto it = rec.derived.find(key);
    return it == rec.derived.end() ? "" : std::to_string(it->second);
}

}  // namespace

nlohmann::json to_json(const CodeRecord& rec) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = rec.n;
    j["k"] = rec.gen.rows();
    if (rec.params) {
        const auto& p = *rec.params;
        j["params"] = {{"record", p.to_record()},
                       {"p", p.ctx.p},
                       {"f", p.f},
                       {"u", {p.u[0], p.u[1], p.u[2]}},
                       {"v", {p.v.first, p.v.second}},
                       {"s", p.s.to_cycles()},
                       {"fixed_gen", p.fixed_gen_id}};
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rec.gen.row_data()) rows.push_back(r.to_hex());
    j["gen"] = rows;
    j["self_dual"] = rec.self_dual;
    j["doubly_even"] = rec.doubly_even;
    j["d"] = rec.d;
    j["d_proven"] = rec.d_proven;
    if (rec.weights.complete_up_to >= rec.d) j["A_d"] = rec.a_d();
    j["weights"] = profile_json(rec.weights);
    if (rec.intersection_2d) j["I_2d"] = *rec.intersection_2d;
    if (rec.shadow_counts) j["shadow_counts"] = profile_json(*rec.shadow_counts);
    if (!rec.derived.empty()) j["derived"] = rec.derived;
    if (rec.params) j["sigma_invariant"] = rec.sigma_invariant;
    if (rec.dihedral_witness) j["dihedral_witness"] = *rec.dihedral_witness;
    return j;
}

CodeRecord record_from_json(const nlohmann::json& j) {
    try {
        CodeRecord rec;
        rec.n = j.at("n").get<std::size_t>();
        std::vector<BitVector> rows;
        for (const auto& h : j.at("gen")) rows.push_back(BitVector::from_hex(h.get<std::string>(), rec.n));
        rec.gen = BitMatrix(rec.n, std::move(rows));
        if (j.contains("params")) rec.params = parse_params_record(j["params"].at("record").get<std::string>());
        rec.self_dual = j.at("self_dual").get<bool>();
        rec.doubly_even = j.at("doubly_even").get<bool>();
        rec.d = j.at("d").get<unsigned>();
        rec.d_proven = j.at("d_proven").get<bool>();
        rec.weights = profile_from_json(j.at("weights"), rec.n);
        if (j.contains("I_2d")) rec.intersection_2d = j["I_2d"].get<std::uint64_t>();
        if (j.contains("shadow_counts")) rec.shadow_counts = profile_from_json(j["shadow_counts"], rec.n);
        if (j.contains("derived")) rec.derived = j["derived"].get<std::map<std::string, std::int64_t>>();
        rec.sigma_invariant = j.value("sigma_invariant", false);
        if (j.contains("dihedral_witness")) rec.dihedral_witness = j["dihedral_witness"].get<std::string>();
        return rec;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse_error, std::string("bad code record: ") + e.what());
    }
}

std::string csv_header() { return "u1,u2,u3,v1,v2,s,beta,I_2d,d,A_d"; }

std::string csv_row(const CodeRecord& rec) {
    std::ostringstream os;
    if (rec.params) {
        const auto& p = *rec.params;
        os << p.u[0] << ',' << p.u[1] << ',' << p.u[2] << ',' << p.v.first << ',' << p.v.second << ",\""
           << p.s.to_cycles() << '"';
    } else {
        os << ",,,,,";
    }
    // the second family has no beta
    os << ',' << (derived_or_empty(rec, "family") == "1" ? derived_or_empty(rec, "beta") : "") << ','
       << optional_count(rec.intersection_2d) << ',' << rec.d << ',';
    if (rec.weights.complete_up_to >= rec.d) os << rec.a_d();
    return os.str();
}

std::string to_text(const CodeRecord& rec) {
    std::ostringstream os;
    os << "[" << rec.n << "," << rec.gen.rows() << "," << rec.d << "] code";
    if (!rec.d_proven) os << " (d is an upper bound)";
    os << '\n';
    if (rec.params) os << "  params: " << rec.params->to_record() << '\n';
    os << "  self-dual: " << (rec.self_dual ? "yes" : "no") << ", doubly even: " << (rec.doubly_even ? "yes" : "no")
       << '\n';
    os << "  weights:";
    for (const auto& [w, c] : rec.weights.counts) os << " A" << w << "=" << c;
    os << "  (complete to " << rec.weights.complete_up_to << ")\n";
    if (rec.intersection_2d) os << "  I_" << 2 * rec.d << " = " << *rec.intersection_2d << '\n';
    if (rec.shadow_counts) {
        os << "  shadow:";
        for (const auto& [w, c] : rec.shadow_counts->counts) os << " B" << w << "=" << c;
        os << "  (complete to " << rec.shadow_counts->complete_up_to << ")\n";
    }
    for (const auto& [k, v] : rec.derived) os << "  " << k << " = " << v << '\n';
    if (rec.params) {
        os << "  sigma preserves code: " << (rec.sigma_invariant ? "yes" : "no") << '\n';
        os << "  involution: " << rec.dihedral_witness.value_or("none found") << '\n';
    }
    return os.str();
}

nlohmann::json to_json(const Certificate& cert) {
    const auto& s = cert.cls.shape;
    const auto& v = cert.values;
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = s.n;
    j["m"] = s.m;
    j["l"] = s.l;
    j["r"] = s.r;
    j["class"] = cert.cls.name();
    j["d"] = cert.cls.distance();
    j["shadow_weight"] = cert.cls.shadow_weight();
    j["target"] = v.target.to_string();
    j["target_weight"] = v.target.weight(s);
    j["b_value_closed_form"] = v.closed_form ? nlohmann::json(to_string(*v.closed_form)) : nlohmann::json();
    j["b_value_gleason"] = v.gleason ? nlohmann::json(to_string(*v.gleason)) : nlohmann::json();
    j["gleason_status"] = v.gleason_status;
    j["A_d_gleason"] = v.gleason_a_d ? nlohmann::json(to_string(*v.gleason_a_d)) : nlohmann::json();
    j["verdict"] = to_string(cert.verdict);
    j["clause"] = cert.clause;
    j["gleason_verdict"] = to_string(cert.gleason_verdict);
    j["gleason_clause"] = cert.gleason_clause;
    return j;
}

std::string to_text(const Certificate& cert) {
    const auto& s = cert.cls.shape;
    const auto& v = cert.values;
    std::ostringstream os;
    os << "Length " << s.n << " = 24*" << s.m << " + 8*" << s.l << " + 2*" << s.r << ", class " << cert.cls.name()
       << " (d = " << cert.cls.distance() << ", wt(S) = " << cert.cls.shadow_weight() << ")\n";
    os << "  target coefficient: " << v.target.to_string() << " = B_" << v.target.weight(s) << '\n';
    if (v.closed_form) os << "  closed form:  " << to_string(*v.closed_form) << '\n';
    os << "  Gleason solve: " << (v.gleason ? to_string(*v.gleason) : v.gleason_status) << '\n';
    if (v.gleason_a_d) os << "  A_" << cert.cls.distance() << " from the same solve: " << to_string(*v.gleason_a_d) << '\n';
    os << "  verdict: " << to_string(cert.verdict) << " (" << cert.clause << ")\n";
    os << "  Gleason-only verdict: " << to_string(cert.gleason_verdict) << " (" << cert.gleason_clause << ")\n";
    return os.str();
}

nlohmann::json to_json(const RangeRestriction& rr) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["bounded"] = rr.bounded.to_string();
    nlohmann::json bounds = nlohmann::json::array();
    for (const auto& b : rr.bounds) bounds.push_back({{"expr", b.expr.to_string() + " >= 0"}, {"source", b.source}});
    j["bounds"] = bounds;
    if (rr.interval)
        j["interval"] = {{"parameter", rr.parameter},
                         {"lo", to_string(rr.interval->first)},
                         {"hi", to_string(rr.interval->second)}};
    return j;
}

}  // namespace sdc
