#include "sdc/analysis.hpp"

#include <algorithm>

#include "sdc/bounds.hpp"
#include "sdc/error.hpp"

namespace sdc {

DistanceResult min_distance(const BitMatrix& gen, unsigned budget, const EnumerationOptions& options) {
    const InformationSetFamily family(gen);
    const auto r = min_weight_search(family, budget, std::nullopt, options);
    return {r.weight, r.proven};
}

std::uint64_t count_weight(const BitMatrix& gen, unsigned w, const EnumerationOptions& options) {
    const InformationSetFamily family(gen);
    return low_weight_distribution(family, w, std::nullopt, options)[w];
}

std::uint64_t WeightProfile::at(unsigned w) const {
    if (w > complete_up_to) throw Error(ErrorKind::incomplete_coverage, "weight " + std::to_string(w) + " not counted");
    const auto it = counts.find(w);
    return it == counts.end() ? 0 : it->second;
}

WeightProfile weight_profile(const BitMatrix& gen, unsigned w_max, const std::optional<BitVector>& offset,
                             const EnumerationOptions& options) {
    WeightProfile profile;
    profile.n = gen.cols();
    profile.complete_up_to = w_max;
    const InformationSetFamily family(gen);
    const auto dist = low_weight_distribution(family, w_max, offset, options);
    for (unsigned w = 0; w < dist.size(); ++w)
        if (dist[w] != 0) profile.counts[w] = dist[w];
    return profile;
}

std::uint64_t intersection_number(const std::vector<BitVector>& words, unsigned j) {
    std::uint64_t total = 0;
    for (std::size_t a = 0; a < words.size(); ++a)
        for (std::size_t b = a + 1; b < words.size(); ++b)
            if ((words[a] ^ words[b]).weight() == j) ++total;
    return total;
}

std::uint64_t intersection_number(const BitMatrix& gen, unsigned d, unsigned j, const EnumerationOptions& options) {
    const InformationSetFamily family(gen);
    return intersection_number(collect_words(family, d, std::nullopt, options), j);
}

std::map<unsigned, std::uint64_t> intersection_distribution(const std::vector<BitVector>& words) {
    std::map<unsigned, std::uint64_t> out;
    for (std::size_t a = 0; a < words.size(); ++a)
        for (std::size_t b = a + 1; b < words.size(); ++b) ++out[static_cast<unsigned>((words[a] ^ words[b]).weight())];
    return out;
}

bool is_doubly_even(const BitMatrix& gen) {
    // for a self-orthogonal code, doubly-even generators suffice
    return std::all_of(gen.row_data().begin(), gen.row_data().end(),
                       [](const BitVector& r) { return r.weight() % 4 == 0; });
}

ShadowDecomposition shadow(const BitMatrix& gen) {
    if (!is_self_dual(gen)) throw Error(ErrorKind::invalid_params, "shadow requires a self-dual code");
    const BitMatrix canon = canonical_generator(gen);
    const std::size_t n = canon.cols();
    std::optional<std::size_t> odd;
    for (std::size_t i = 0; i < canon.rows(); ++i)
        if (canon.row(i).weight() % 4 == 2) {
            odd = i;
            break;
        }
    if (!odd) throw Error(ErrorKind::no_shadow, "code is doubly even");
    ShadowDecomposition out;
    out.c0_gen = BitMatrix(n, std::vector<BitVector>{});
    for (std::size_t i = 0; i < canon.rows(); ++i) {
        if (i == *odd) continue;
        BitVector r = canon.row(i);
        if (r.weight() % 4 == 2) r ^= canon.row(*odd);
        out.c0_gen.append_row(std::move(r));
    }
    out.c0_gen = canonical_generator(out.c0_gen);
    out.t[1] = canon.row(*odd);
    const BitMatrix c0_dual = dual(out.c0_gen);
    for (const auto& v : c0_dual.row_data()) {
        BitMatrix probe(n, std::vector<BitVector>{v});
        if (!row_space_contains(canon, probe)) {
            out.t[0] = v;
            break;
        }
    }
    if (out.t[0].size() != n) throw Error(ErrorKind::construction_bug, "no shadow coset representative found");
    out.t[2] = out.t[0] ^ out.t[1];
    return out;
}

WeightProfile shadow_profile(const BitMatrix& gen, unsigned w_max, const EnumerationOptions& options) {
    const auto dec = shadow(gen);
    return weight_profile(gen, w_max, dec.t[0], options);
}

bool griesmer_check(std::uint64_t n, std::uint64_t k, std::uint64_t d) { return n >= griesmer_sum(d, k); }

namespace {

void derive_family_params(CodeRecord& rec) {
    if (rec.n != 78 || rec.d != 14 || !rec.shadow_counts || rec.shadow_counts->complete_up_to < 3) return;
    const auto& s = *rec.shadow_counts;
    const std::int64_t a14 = static_cast<std::int64_t>(rec.weights.at(14));
    if (s.at(3) == 1) {
        if ((a14 - 3705) % 8 != 0) return;
        rec.derived["family"] = 2;
        rec.derived["alpha"] = (a14 - 3705) / 8;
        return;
    }
    if ((a14 - 3705) % 8 != 0) return;
    const std::int64_t beta = (a14 - 3705) / 8;
    rec.derived["family"] = 1;
    rec.derived["beta"] = beta;
    // alpha needs A_16
    if (rec.weights.complete_up_to < 16) return;
    const std::int64_t num = static_cast<std::int64_t>(rec.weights.at(16)) - 62244 + 24 * beta;
    if (num % 512 == 0) rec.derived["alpha"] = num / 512;
}

}  // namespace

CodeRecord analyze_code(const BitMatrix& gen, const std::optional<ConstructionParams>& params,
                        const AnalysisOptions& options) {
    CodeRecord rec;
    rec.params = params;
    rec.gen = canonical_generator(gen);
    rec.n = rec.gen.cols();
    rec.self_dual = rec.n % 2 == 0 && is_self_dual(rec.gen);
    rec.doubly_even = rec.self_dual && is_doubly_even(rec.gen);

    const InformationSetFamily family(rec.gen);
    if (options.known_distance) {
        rec.d = options.known_distance->d;
        rec.d_proven = options.known_distance->proven;
    } else {
        const auto md = min_weight_search(family, options.distance_budget, std::nullopt, options.enumeration);
        rec.d = md.weight;
        rec.d_proven = md.proven;
    }

    const unsigned ceiling = options.weight_ceiling ? options.weight_ceiling : rec.d + 2;
    rec.weights.n = rec.n;
    rec.weights.complete_up_to = ceiling;
    const auto dist = low_weight_distribution(family, ceiling, std::nullopt, options.enumeration);
    for (unsigned w = 0; w < dist.size(); ++w)
        if (dist[w] != 0) rec.weights.counts[w] = dist[w];

    if (options.intersections && rec.d > 0)
        rec.intersection_2d = intersection_number(collect_words(family, rec.d, std::nullopt, options.enumeration), 2 * rec.d);

    if (options.shadow_ceiling >= 0 && rec.self_dual && !rec.doubly_even) {
        const unsigned sc = options.shadow_ceiling > 0 ? static_cast<unsigned>(options.shadow_ceiling)
                                                       : (rec.d >= 3 ? rec.d - 3 : 0);
        const auto dec = shadow(rec.gen);
        WeightProfile sp;
        sp.n = rec.n;
        sp.complete_up_to = sc;
        const auto sdist = low_weight_distribution(family, sc, dec.t[0], options.enumeration);
        for (unsigned w = 0; w < sdist.size(); ++w)
            if (sdist[w] != 0) sp.counts[w] = sdist[w];
        rec.shadow_counts = std::move(sp);
    }
    derive_family_params(rec);

    if (params) {
        const AutomorphismType type = params->type();
        rec.sigma_invariant = preserves_code(rec.gen, sigma_permutation(type));
        if (const auto tau = dihedral_witness(rec.gen, type)) rec.dihedral_witness = tau->name;
    }
    return rec;
}

CodeRecord construct_and_analyze(const ConstructionParams& params, const AnalysisOptions& options) {
    return analyze_code(build_code(params), params, options);
}

}  // namespace sdc
