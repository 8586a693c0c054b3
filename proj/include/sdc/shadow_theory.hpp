#pragma once

// Weight enumerators of singly-even self-dual codes and of their shadows,
// expanded in the invariant basis
//   W(y) = sum_i c_i (1+y^2)^(N-4i) (y^2 (1-y^2)^2)^i,          N = n/2
//   S(y) = sum_i (-1)^i c_i 2^(N-6i) y^(N-4i) (1-y^4)^(2i),
// with a_j = A_{2j} and b_j = B_{r+4j}. Everything is exact.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sdc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

bool is_integer(const Rational& x);
std::string to_string(const Rational& x);
Integer binomial(long long n, long long k);  // 0 outside 0 <= k <= n

struct LengthShape {
    unsigned n = 0;
    unsigned m = 0;
    unsigned l = 0;
    unsigned r = 0;

    /// n = 24m + 8l + 2r with l < 3, r < 4. Throws invalid_length for odd n.
    static LengthShape from_length(unsigned n);
    unsigned half() const noexcept { return n / 2; }
    unsigned top() const noexcept { return 3 * m + l; }  // highest c index
};

/// Which coefficient of W or S: a_j or b_j.
struct Coefficient {
    char series = 'a';  // 'a' or 'b'
    unsigned index = 0;

    /// Weight in the code (2j) or in the shadow (r + 4j).
    unsigned weight(const LengthShape& shape) const;
    std::string to_string() const;
    friend auto operator<=>(const Coefficient&, const Coefficient&) = default;
};

class GleasonSystem {
public:
    explicit GleasonSystem(const LengthShape& shape);

    const LengthShape& shape() const noexcept { return shape_; }
    std::size_t size() const noexcept { return shape_.top() + 1; }

    /// Contribution of c_i to a_j and b_j.
    const Rational& w_coeff(std::size_t i, std::size_t j) const { return w_[i][j]; }
    const Rational& s_coeff(std::size_t i, std::size_t j) const { return s_[i][j]; }
    std::size_t a_terms() const noexcept { return w_.empty() ? 0 : w_[0].size(); }
    std::size_t b_terms() const noexcept { return s_.empty() ? 0 : s_[0].size(); }
    Rational coefficient(const Coefficient& which, std::size_t i) const;

    /// c_i = sum_{j<=i} alpha(i,j) a_j = sum_{j<=top-i} beta(i,j) b_j.
    const Rational& alpha(std::size_t i, std::size_t j) const { return alpha_[i][j]; }
    const Rational& beta(std::size_t i, std::size_t j) const { return beta_[i][j]; }

    std::vector<Rational> a_from_c(const std::vector<Rational>& c) const;
    std::vector<Rational> b_from_c(const std::vector<Rational>& c) const;
    /// Uses a_0..a_top (resp. b_0..b_top).
    std::vector<Rational> c_from_a(const std::vector<Rational>& a) const;
    std::vector<Rational> c_from_b(const std::vector<Rational>& b) const;

private:
    LengthShape shape_;
    std::vector<std::vector<Rational>> w_;  // [i][j], j = 0..N
    std::vector<std::vector<Rational>> s_;  // [i][j], j = 0..2*top
    std::vector<std::vector<Rational>> alpha_;
    std::vector<std::vector<Rational>> beta_;
};

/// An affine expression in named parameters.
struct AffineExpr {
    Rational constant;
    std::map<std::string, Rational> terms;

    std::string to_string() const;
    Rational evaluate(const std::map<std::string, Rational>& values) const;
};

/// Solutions c = offset + sum_k t_k direction_k of a set of pinned
/// coefficients.
class EnumeratorFamily {
public:
    EnumeratorFamily(const GleasonSystem& system, const std::map<Coefficient, Rational>& pinned);

    const GleasonSystem& system() const noexcept { return *system_; }
    std::size_t dimension() const noexcept { return directions_.size(); }
    const std::map<Coefficient, Rational>& pinned() const noexcept { return pinned_; }

    /// Value of a coefficient in terms of the free parameters t0, t1, ...
    AffineExpr expression(const Coefficient& which) const;
    /// Throws needs_more_constraints unless the coefficient is constant on
    /// the family.
    Rational value(const Coefficient& which) const;
    bool determines(const Coefficient& which) const;
    /// True iff some member of the family has all of the given values.
    bool contains(const std::map<Coefficient, Rational>& values) const;
    /// Re-expresses the family in parameters defined by `hints` (name ->
    /// affine expression in coefficients, e.g. beta = (a_7 - 3705)/8).
    /// Throws invalid_params unless the hints form a coordinate system.
    std::map<Coefficient, AffineExpr> reparametrize(
        const std::map<std::string, std::map<Coefficient, Rational>>& hints,
        const std::map<std::string, Rational>& hint_constants, const std::vector<Coefficient>& wanted) const;

private:
    std::vector<Rational> functional(const Coefficient& which) const;
    const GleasonSystem* system_;
    std::map<Coefficient, Rational> pinned_;
    std::vector<Rational> offset_;
    std::vector<std::vector<Rational>> directions_;
};

/// Pins a_0 = 1, a_1 = ... = a_{d/2-1} = 0 and, when `shadow_min` is given,
/// b_j = 0 for every shadow weight below it. Also pins b_0 = 0 when r = 0.
/// Throws infeasible if the constraints are inconsistent.
EnumeratorFamily enumerator_family(const GleasonSystem& system, unsigned d,
                                   std::optional<unsigned> shadow_min = std::nullopt);

/// Solves for `target` given pinned coefficients. Throws
/// needs_more_constraints when they do not determine it and infeasible when
/// they are inconsistent.
Rational conway_sloane_value(const GleasonSystem& system, const std::map<Coefficient, Rational>& pinned,
                             const Coefficient& target);

enum class ShadowKind { minimal, near_minimal, near_near_minimal };
enum class Extremality { extremal, near_extremal };

std::string to_string(ShadowKind kind);
std::string to_string(Extremality e);

struct ShadowClass {
    ShadowKind kind = ShadowKind::minimal;
    Extremality extremality = Extremality::extremal;
    LengthShape shape;

    /// wt(S) = r, r+4, r+8 (or 4, 8, 12 when r = 0).
    unsigned shadow_weight() const;
    /// Minimum distance implied by the extremality.
    unsigned distance() const;
    /// "extremal-near-minimal" and so on.
    std::string name() const;
    /// Parses the CLI class name. Throws parse_error.
    static ShadowClass parse(unsigned n, const std::string& name);
};

/// Constraint set used by the Gleason cross-check for a covered class.
struct CoveredCase {
    std::string clause;  // e.g. "near-extremal minimal shadow, r=2"
    std::string formula;  // closed-form label
    std::map<Coefficient, Rational> pinned;
    Coefficient target;
    bool identity_only = false;  // the case is decided by an identity in m
};

/// Throws unsupported_case for classes outside the covered theorems.
CoveredCase covered_case(const ShadowClass& cls);

/// Closed-form value for the covered class (not defined for identity-only
/// cases). Throws unsupported_case.
Rational closed_form_value(const ShadowClass& cls);

/// The identity that must hold for an extremal near-minimal code with
/// r = 1, l = 0; it reduces to 576 m^2 + 232 m - 28 = 0.
bool theorem41_identity_holds(unsigned m);
/// First m in [lo, hi] where the reduced identity holds, if any.
std::optional<unsigned> theorem41_identity_root(unsigned lo, unsigned hi);

struct BValue {
    std::optional<Rational> closed_form;
    std::optional<Rational> gleason;  // nullopt if the solve failed
    std::string gleason_status;       // "determined", "infeasible", "needs-more-constraints"
    Coefficient target;
    /// A_d from the same Gleason solve, if determined.
    std::optional<Rational> gleason_a_d;
};

BValue b_value(const ShadowClass& cls);

enum class Verdict { eliminated, not_eliminated };
std::string to_string(Verdict v);

struct Certificate {
    ShadowClass cls;
    BValue values;
    /// Decision using the closed forms: non-integrality, the identity, or
    /// disagreement with the Gleason value.
    Verdict verdict = Verdict::not_eliminated;
    std::string clause;
    /// Decision using only the exact Gleason solve: non-integral, negative
    /// or infeasible.
    Verdict gleason_verdict = Verdict::not_eliminated;
    std::string gleason_clause;
};

Certificate nonexistence_verdict(const ShadowClass& cls);

struct LinearBound {
    AffineExpr expr;  // constraint: expr >= 0
    std::string source;
};

struct RangeRestriction {
    Coefficient bounded;  // B_s
    std::vector<LinearBound> bounds;
    /// For one-parameter families: the resulting closed interval.
    std::optional<std::pair<Rational, Rational>> interval;
    std::string parameter;
};

/// Applies B_s <= n together with B_s >= 0 and nonnegativity of the next
/// shadow coefficients to the family of (d, s) expressed in the hint
/// parameters. Throws not_applicable unless 2s - d <= 2.
RangeRestriction rw_range_restriction(const GleasonSystem& system, unsigned d, unsigned s,
                                      const std::map<std::string, std::map<Coefficient, Rational>>& hints,
                                      const std::map<std::string, Rational>& hint_constants);

/// Shadow-count clauses: 1 symmetry, 2 congruence, 3 B_0 = 0,
/// 4 B_r <= 1 for r < d/2, 5 at most one nonzero B_r for r < (d+4)/2.
/// `counts` must be complete up to `complete_up_to`.
std::vector<int> theorem1_check(const std::map<unsigned, Integer>& counts, unsigned complete_up_to, unsigned n,
                                unsigned d);

}  // namespace sdc
