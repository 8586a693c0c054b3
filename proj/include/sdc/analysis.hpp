#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdc/decomposition.hpp"
#include "sdc/enumeration.hpp"
#include "sdc/gf2.hpp"

namespace sdc {

struct DistanceResult {
    unsigned d = 0;
    bool proven = false;
};

/// Minimum distance by information-set enumeration; `budget` is the largest
/// information weight enumerated per set.
DistanceResult min_distance(const BitMatrix& gen, unsigned budget = 64, const EnumerationOptions& options = {});

/// Exact number of codewords of weight w.
std::uint64_t count_weight(const BitMatrix& gen, unsigned w, const EnumerationOptions& options = {});

struct WeightProfile {
    std::size_t n = 0;
    unsigned complete_up_to = 0;  // counts are exact for every weight <= this
    std::map<unsigned, std::uint64_t> counts;

    std::uint64_t at(unsigned w) const;
};

/// A_0..A_{w_max} (code) or B_0..B_{w_max} (coset when `offset` is given).
WeightProfile weight_profile(const BitMatrix& gen, unsigned w_max, const std::optional<BitVector>& offset = std::nullopt,
                             const EnumerationOptions& options = {});

/// Number of unordered pairs of words at Hamming distance j.
std::uint64_t intersection_number(const std::vector<BitVector>& words, unsigned j);
/// Same, computed directly from the code: collects the weight-d words first.
std::uint64_t intersection_number(const BitMatrix& gen, unsigned d, unsigned j, const EnumerationOptions& options = {});
/// Distance -> number of pairs, over all pairs.
std::map<unsigned, std::uint64_t> intersection_distribution(const std::vector<BitVector>& words);

struct ShadowDecomposition {
    BitMatrix c0_gen;           // doubly-even subcode, dimension k-1
    std::array<BitVector, 3> t;  // t[0] = t1, t[1] = t2, t[2] = t3
};

/// C0 is the kernel of c -> wt(c)/2 mod 2 on C; t2 completes C and t1, t3
/// span the two shadow cosets. Throws no_shadow for doubly-even codes and
/// invalid_params if gen is not self-dual.
ShadowDecomposition shadow(const BitMatrix& gen);

/// B_0..B_{w_max} of the shadow t1 + C.
WeightProfile shadow_profile(const BitMatrix& gen, unsigned w_max, const EnumerationOptions& options = {});

/// n >= sum_{i<k} ceil(d / 2^i).
bool griesmer_check(std::uint64_t n, std::uint64_t k, std::uint64_t d);

bool is_doubly_even(const BitMatrix& gen);

struct AnalysisOptions {
    unsigned distance_budget = 64;
    /// Highest weight counted in the code; 0 means d + 2.
    unsigned weight_ceiling = 0;
    /// Highest shadow weight counted; -1 disables, 0 means d - 3.
    int shadow_ceiling = 0;
    bool intersections = true;
    /// Skips the distance computation when the caller already has it.
    std::optional<DistanceResult> known_distance;
    EnumerationOptions enumeration;
};

struct CodeRecord {
    std::optional<ConstructionParams> params;
    BitMatrix gen;
    std::size_t n = 0;
    bool self_dual = false;
    bool doubly_even = false;
    unsigned d = 0;
    bool d_proven = false;
    WeightProfile weights;
    std::optional<std::uint64_t> intersection_2d;
    std::optional<WeightProfile> shadow_counts;
    /// Parameters of the known enumerator family for this length, e.g.
    /// beta and alpha at length 78.
    std::map<std::string, std::int64_t> derived;
    bool sigma_invariant = false;
    std::optional<std::string> dihedral_witness;

    std::uint64_t a_d() const { return weights.at(d); }
};

/// Computes every invariant of a code; when `params` is supplied the sigma
/// and involution checks use its automorphism type.
CodeRecord analyze_code(const BitMatrix& gen, const std::optional<ConstructionParams>& params,
                        const AnalysisOptions& options = {});

/// build_code followed by analyze_code.
CodeRecord construct_and_analyze(const ConstructionParams& params, const AnalysisOptions& options = {});

}  // namespace sdc
