#pragma once

// Self-dual codes with an automorphism sigma of odd prime order p that has
// c p-cycles and f fixed points, and with an involution tau normalising it.
//
// Coordinate layout used throughout: cycle i (0-based) occupies coordinates
// [i*p, (i+1)*p) with offset j holding the coefficient of x^j; sigma shifts
// every cycle by one (j -> j+1 mod p). Fixed points follow at c*p, ..., c*p+f-1.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdc/cyclic_field.hpp"
#include "sdc/gf2.hpp"

namespace sdc {

struct AutomorphismType {
    unsigned p = 0;
    unsigned c = 0;
    unsigned f = 0;

    unsigned length() const noexcept { return p * c + f; }
    /// "19-(4;2)"
    std::string to_string() const;
    friend bool operator==(const AutomorphismType&, const AutomorphismType&) = default;
};

/// Types p-(c;f) with c >= 1 and pc + f = n that survive the Griesmer-style
/// bounds pc >= g((p-1)c/2) and, for f > c, f >= g((f-c)/2), plus the parity
/// rule that c is even whenever the order of 2 mod p is even.
std::vector<AutomorphismType> feasible_types(unsigned n, unsigned d, unsigned p);

/// sigma as a coordinate permutation of length pc + f.
Permutation sigma_permutation(const AutomorphismType& type);

/// Self-dual generators for the sigma-fixed part, by name:
///   "i2x3"  [6,3]: cycles (1,4), cycle 2 + fixed 1, cycle 3 + fixed 2
///   "i2x2"  [4,2]: (1,2), (3,4)
///   "i2x4"  [8,4]: cycle i paired with fixed point i
/// Throws invalid_params for unknown ids.
BitMatrix fixed_generator(const std::string& id);
/// The default fixed generator id for c = 4 and the given f.
std::string default_fixed_generator_id(unsigned f);

struct ConstructionParams {
    FieldContext ctx;
    unsigned f = 0;
    std::array<std::uint64_t, 3> u{};  // reduced mod (q+1)/p on validation
    std::pair<std::uint64_t, std::uint64_t> v{};
    Permutation s;  // on the 4 cycle labels
    BitMatrix fixed_gen;
    std::string fixed_gen_id;

    AutomorphismType type() const { return {ctx.p, 4, f}; }
    /// "p f u1 u2 u3 v1 v2 s fixed_gen_id", s in 1-based cycle notation.
    std::string to_record() const;
};

/// Parses the flat record form. The field context comes from
/// tabulated_context(p) unless `ctx` is supplied.
ConstructionParams parse_params_record(const std::string& line, const std::optional<FieldContext>& ctx = std::nullopt);

/// Assembles and validates params; reduces u modulo (q+1)/p.
/// Throws invalid_params if a^v1 + a^v2 != e, if v is out of range, if u
/// satisfies none of the congruence conditions, or if fixed_gen is not a
/// self-dual code of length 4 + f.
ConstructionParams make_params(const FieldContext& ctx, unsigned f, std::array<std::uint64_t, 3> u,
                               std::pair<std::uint64_t, std::uint64_t> v, const Permutation& s,
                               const std::string& fixed_gen_id = "");

/// Congruence classes 1..4 satisfied by (u1, u2, u3) modulo `modulus`:
///   1: u1 + u2 = u3   2: u2 + u3 = u1   3: u1 + u3 = u2   4: u1 = u2 = u3 = 0
/// Every satisfied class is reported, in increasing order.
std::vector<int> dihedral_filter(const std::array<std::uint64_t, 3>& u, std::uint64_t modulus);

/// pi^{-1}(s(fixed_gen)): permute the first c coordinates by s, then blow
/// each cycle coordinate up into a constant run of length p.
BitMatrix lift_fixed(const BitMatrix& fixed_gen, const AutomorphismType& type, const Permutation& s);

/// Projection pi of a sigma-invariant vector: one bit per cycle, then the
/// fixed points. Throws invalid_params if the vector is not sigma-invariant.
BitVector project_fixed(const BitVector& v, const AutomorphismType& type);

/// The 2 x 4 matrix over P with rows (b^u1, 0, a^v1, a^v2 b^u3) and
/// (0, b^u2, a^v2, a^v1 b^u3).
std::array<std::array<RingElement, 4>, 2> skew_generator(const ConstructionParams& params);

/// Binary basis of E_sigma(C): every P-row r contributes x^j r for
/// j = 0..p-2, giving 2(p-1) rows of length 4p + f.
BitMatrix lift_skew(const ConstructionParams& params);

/// Canonical (RREF) generator of F_sigma(C) + E_sigma(C). Throws
/// construction_bug if the result is not self-dual.
BitMatrix build_code(const ConstructionParams& params);

/// Right-coset representatives s of Stab in S_c, where Stab is the setwise
/// stabiliser of `fixed_points` inside Aut(fixed code). Representatives are
/// the lexicographically least permutation of each coset s*Stab, listed in
/// lexicographic order. Throws too_large if the code is longer than 8.
std::vector<Permutation> coset_reps(const BitMatrix& fixed_gen, const std::vector<std::size_t>& fixed_points);

/// The automorphism group of a short code by brute force over all
/// coordinate permutations. Throws too_large above length 8.
std::vector<Permutation> brute_force_automorphisms(const BitMatrix& gen);

/// True iff s and t lie in the same coset of `stab` (s*Stab == t*Stab).
bool same_coset(const Permutation& s, const Permutation& t, const std::vector<Permutation>& stab);

using PairingTable = std::map<int, std::vector<Permutation>>;

/// Condition class -> admissible s. For 19-(4;2) this is the tabulated
/// pairing; for 29-(4;0) every class admits every coset representative of
/// the "i2x2" fixed code. Throws unsupported_case otherwise.
PairingTable pair_conditions(const AutomorphismType& type);

/// The pairing recomputed from the involution catalogue: s is admitted for
/// class k when s(fixed code) is invariant under the cycle permutation
/// induced by the k-th involution, extended by some involution of the
/// fixed points.
PairingTable derive_pair_conditions(const AutomorphismType& type, const BitMatrix& fixed_gen);

struct Involution {
    std::string name;              // 1-based cycle notation summary
    Permutation cycle_action;      // induced permutation of the 4 cycle labels
    Permutation on_cycles;         // length 4p
};

/// The ten involutions tau on 4p points with tau sigma tau = sigma^{-1}
/// used to normalise the dihedral group.
std::vector<Involution> involution_catalog(unsigned p);

/// All involutions (including the identity) of f points.
std::vector<Permutation> fixed_point_involutions(unsigned f);

struct DihedralWitness {
    std::string name;  // catalogue entry, plus its action on the fixed points
    Permutation perm;
};

/// Searches the catalogue, each extended by every involution of the fixed
/// points, for a tau preserving the row space of `gen`.
std::optional<DihedralWitness> dihedral_witness(const BitMatrix& gen, const AutomorphismType& type);

/// True iff `perm` maps the row space of `gen` onto itself.
bool preserves_code(const BitMatrix& gen, const Permutation& perm);

}  // namespace sdc
