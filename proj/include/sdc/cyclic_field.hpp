#pragma once

// Arithmetic in R = F2[x]/(x^p - 1) and in its even-weight ideal P.
//
// When 2 is a primitive root mod p, 1 + x + ... + x^(p-1) is irreducible and
// P is a field of 2^(p-1) elements whose identity is e(x) = x + ... + x^(p-1).
// Elements are packed into one machine word, so p is limited to 63.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdc/gf2.hpp"

namespace sdc {

constexpr unsigned kMaxCyclicPrime = 63;

class RingElement {
public:
    RingElement() = default;
    /// Bit i of `mask` is the coefficient of x^i. Throws shape_error if p is
    /// out of range or bits at or above p are set.
    RingElement(unsigned p, std::uint64_t mask);

    static RingElement zero(unsigned p) { return RingElement(p, 0); }
    static RingElement one(unsigned p) { return RingElement(p, 1); }
    /// e(x) = x + x^2 + ... + x^(p-1).
    static RingElement even_identity(unsigned p);
    static RingElement monomial(unsigned p, unsigned k);
    static RingElement from_exponents(unsigned p, std::initializer_list<unsigned> exponents);
    static RingElement from_coeffs(const BitVector& coeffs);
    /// Accepts "x^1+x^2+x^5", "1+x+x^3", "0" and the hex form "0x<bytes>".
    static RingElement parse(unsigned p, std::string_view text);

    unsigned p() const noexcept { return p_; }
    std::uint64_t mask() const noexcept { return mask_; }
    BitVector coeffs() const;
    unsigned weight() const noexcept;
    bool is_zero() const noexcept { return mask_ == 0; }
    /// Even weight, i.e. a member of P.
    bool in_even_subring() const noexcept { return weight() % 2 == 0; }
    std::vector<unsigned> exponents() const;

    /// Cyclic shift: multiplication by x^k.
    RingElement shifted(unsigned k) const;

    std::string to_string() const;
    std::string to_hex() const;

    RingElement& operator+=(const RingElement& other);
    friend RingElement operator+(RingElement lhs, const RingElement& rhs) { return lhs += rhs; }
    friend bool operator==(const RingElement&, const RingElement&) = default;

private:
    unsigned p_ = 0;
    std::uint64_t mask_ = 0;
};

/// Polynomial product modulo x^p - 1. Throws modulus_mismatch on differing p.
RingElement multiply(const RingElement& u, const RingElement& v);
inline RingElement operator*(const RingElement& u, const RingElement& v) { return multiply(u, v); }

/// Square-and-multiply. power(u, 0) is e for u in P \ {0} and 1 otherwise;
/// throws `undefined` for power(0, 0).
RingElement power(const RingElement& u, std::uint64_t k);

/// Least k >= 1 with u^k = e. Throws not_a_unit unless u is a nonzero unit of P.
std::uint64_t multiplicative_order(const RingElement& u);

/// u^q with q = 2^((p-1)/2): the Galois involution of P over its subfield of size q.
RingElement conjugate(const RingElement& u);

/// Prime factorization with multiplicity, ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
bool is_prime(std::uint64_t n);
/// Multiplicative order of 2 modulo an odd prime p.
std::uint64_t order_of_two(std::uint64_t p);

struct FieldContext {
    unsigned p = 0;
    std::uint64_t q = 0;  // 2^((p-1)/2)
    RingElement e;        // identity of P
    RingElement a;        // order q - 1
    RingElement b;        // order (q + 1) / p

    std::uint64_t a_order() const noexcept { return q - 1; }
    std::uint64_t b_order() const noexcept { return (q + 1) / p; }
};

struct GeneratorOverrides {
    std::optional<RingElement> a;
    std::optional<RingElement> b;
};

/// Builds a context for p. A primitive element alpha of P is found by
/// scanning even-weight polynomials in increasing coefficient order (or in a
/// seeded pseudo-random order when `seed` is given); then a = alpha^(q+1)
/// and b = alpha^((q-1)p). Overrides replace a and/or b after their orders
/// are checked. Throws hypothesis_violated unless 2 is a primitive root mod p.
FieldContext find_generators(unsigned p, const GeneratorOverrides& overrides = {},
                             std::optional<std::uint64_t> seed = std::nullopt);

/// The fixed a and b used to tabulate the known length-78 (p = 19) and
/// length-116 (p = 29) constructions. Throws unsupported_case for other p.
FieldContext tabulated_context(unsigned p);

/// All pairs 1 <= v1 < v2 <= q-2 with a^v1 + a^v2 = e.
std::vector<std::pair<std::uint64_t, std::uint64_t>> find_v_pairs(const FieldContext& ctx);

}  // namespace sdc
