#include "sdc/cyclic_field.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "sdc/error.hpp"

namespace sdc {

namespace {

std::uint64_t low_mask(unsigned p) { return p >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p) - 1; }

std::uint64_t rotate(std::uint64_t v, unsigned k, unsigned p) {
    k %= p;
    if (k == 0) return v;
    return ((v << k) | (v >> (p - k))) & low_mask(p);
}

void require_same_modulus(const RingElement& u, const RingElement& v) {
    if (u.p() != v.p()) throw Error(ErrorKind::modulus_mismatch, "ring elements with different p");
}

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t pollard_rho(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const std::uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

// -------------------------------------------------------------- RingElement

RingElement::RingElement(unsigned p, std::uint64_t mask) : p_(p), mask_(mask) {
    if (p == 0 || p > kMaxCyclicPrime) throw Error(ErrorKind::shape_error, "cyclic modulus out of supported range");
    if (mask & ~low_mask(p)) throw Error(ErrorKind::shape_error, "coefficient beyond x^(p-1)");
}

RingElement RingElement::even_identity(unsigned p) { return RingElement(p, low_mask(p) & ~std::uint64_t{1}); }

RingElement RingElement::monomial(unsigned p, unsigned k) { return RingElement(p, std::uint64_t{1} << (k % p)); }

RingElement RingElement::from_exponents(unsigned p, std::initializer_list<unsigned> exponents) {
    std::uint64_t m = 0;
    for (unsigned k : exponents) m ^= std::uint64_t{1} << (k % p);
    return RingElement(p, m);
}

RingElement RingElement::from_coeffs(const BitVector& coeffs) {
    if (coeffs.size() == 0 || coeffs.size() > kMaxCyclicPrime)
        throw Error(ErrorKind::shape_error, "cyclic modulus out of supported range");
    return RingElement(static_cast<unsigned>(coeffs.size()), coeffs.words()[0]);
}

RingElement RingElement::parse(unsigned p, std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.starts_with("0x")) return from_coeffs(BitVector::from_hex(text.substr(2), p));
    if (text == "0") return zero(p);
    std::uint64_t m = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t plus = std::min(text.find('+', pos), text.size());
        const std::string_view term = trim(text.substr(pos, plus - pos));
        unsigned k = 0;
        if (term == "1") {
            k = 0;
        } else if (term == "x") {
            k = 1;
        } else if (term.starts_with("x^")) {
            auto [ptr, ec] = std::from_chars(term.data() + 2, term.data() + term.size(), k);
            if (ec != std::errc{} || ptr != term.data() + term.size())
                throw Error(ErrorKind::parse_error, "bad exponent in polynomial");
        } else {
            throw Error(ErrorKind::parse_error, "bad polynomial term '" + std::string(term) + "'");
        }
        m ^= std::uint64_t{1} << (k % p);
        pos = plus + 1;
    }
    return RingElement(p, m);
}

BitVector RingElement::coeffs() const {
    const std::uint64_t w = mask_;
    return BitVector::from_words(p_, std::span<const std::uint64_t>(&w, 1));
}

unsigned RingElement::weight() const noexcept { return static_cast<unsigned>(std::popcount(mask_)); }

std::vector<unsigned> RingElement::exponents() const {
    std::vector<unsigned> out;
    for (std::uint64_t m = mask_; m; m &= m - 1) out.push_back(static_cast<unsigned>(std::countr_zero(m)));
    return out;
}

RingElement RingElement::shifted(unsigned k) const { return RingElement(p_, rotate(mask_, k, p_)); }

std::string RingElement::to_string() const {
    if (mask_ == 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (unsigned k : exponents()) {
        if (!first) os << '+';
        first = false;
        if (k == 0)
            os << '1';
        else
            os << "x^" << k;
    }
    return os.str();
}

std::string RingElement::to_hex() const { return "0x" + coeffs().to_hex(); }

RingElement& RingElement::operator+=(const RingElement& other) {
    require_same_modulus(*this, other);
    mask_ ^= other.mask_;
    return *this;
}

// --------------------------------------------------------------- arithmetic

RingElement multiply(const RingElement& u, const RingElement& v) {
    require_same_modulus(u, v);
    const unsigned p = u.p();
    std::uint64_t acc = 0;
    for (std::uint64_t m = u.mask(); m; m &= m - 1)
        acc ^= rotate(v.mask(), static_cast<unsigned>(std::countr_zero(m)), p);
    return RingElement(p, acc);
}

RingElement power(const RingElement& u, std::uint64_t k) {
    if (k == 0) {
        if (u.is_zero()) throw Error(ErrorKind::undefined, "0^0");
        return u.in_even_subring() ? RingElement::even_identity(u.p()) : RingElement::one(u.p());
    }
    RingElement result = u;
    RingElement base = u;
    --k;
    while (k) {
        if (k & 1) result = multiply(result, base);
        base = multiply(base, base);
        k >>= 1;
    }
    return result;
}

std::uint64_t multiplicative_order(const RingElement& u) {
    if (u.is_zero() || !u.in_even_subring()) throw Error(ErrorKind::not_a_unit, "order needs a nonzero element of P");
    const unsigned p = u.p();
    const std::uint64_t group = (std::uint64_t{1} << (p - 1)) - 1;
    const RingElement e = RingElement::even_identity(p);
    if (power(u, group) != e) throw Error(ErrorKind::not_a_unit, "element is not a unit of P");
    std::uint64_t ord = group;
    for (auto [prime, mult] : factorize(group)) {
        for (unsigned i = 0; i < mult && ord % prime == 0; ++i) {
            if (power(u, ord / prime) != e) break;
            ord /= prime;
        }
    }
    return ord;
}

RingElement conjugate(const RingElement& u) {
    if (u.is_zero()) return u;
    return power(u, std::uint64_t{1} << ((u.p() - 1) / 2));
}

// ------------------------------------------------------------ number theory

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % sp == 0) return n == sp;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    // Deterministic witness set for 64-bit integers.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t d = 2; d < 1000 && d * d <= n; ++d) {
        while (n % d == 0) {
            primes.push_back(d);
            n /= d;
        }
    }
    factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t f : primes) {
        if (!out.empty() && out.back().first == f)
            ++out.back().second;
        else
            out.emplace_back(f, 1);
    }
    return out;
}

std::uint64_t order_of_two(std::uint64_t p) {
    std::uint64_t ord = p - 1;
    for (auto [prime, mult] : factorize(p - 1)) {
        for (unsigned i = 0; i < mult; ++i) {
            if (powmod(2, ord / prime, p) != 1) break;
            ord /= prime;
        }
    }
    return ord;
}

// ------------------------------------------------------------ field context

namespace {

void check_hypothesis(unsigned p) {
    if (p < 3 || p > kMaxCyclicPrime || !is_prime(p))
        throw Error(ErrorKind::hypothesis_violated, "p must be an odd prime <= 63");
    if (order_of_two(p) != p - 1)
        throw Error(ErrorKind::hypothesis_violated, "2 is not a primitive root mod " + std::to_string(p));
}

}  // namespace

FieldContext find_generators(unsigned p, const GeneratorOverrides& overrides, std::optional<std::uint64_t> seed) {
    check_hypothesis(p);
    FieldContext ctx;
    ctx.p = p;
    ctx.q = std::uint64_t{1} << ((p - 1) / 2);
    ctx.e = RingElement::even_identity(p);
    const std::uint64_t group = (std::uint64_t{1} << (p - 1)) - 1;

    if (!overrides.a || !overrides.b) {
        std::optional<RingElement> alpha;
        auto try_candidate = [&](std::uint64_t mask) {
            if (mask == 0 || std::popcount(mask) % 2 != 0) return false;
            RingElement cand(p, mask);
            if (multiplicative_order(cand) != group) return false;
            alpha = cand;
            return true;
        };
        if (seed) {
            std::mt19937_64 rng(*seed);
            while (!try_candidate(rng() & low_mask(p))) {
            }
        } else {
            for (std::uint64_t m = 1; m <= low_mask(p); ++m)
                if (try_candidate(m)) break;
        }
        ctx.a = power(*alpha, ctx.q + 1);
        ctx.b = power(*alpha, (ctx.q - 1) * p);
    }
    if (overrides.a) {
        if (overrides.a->p() != p) throw Error(ErrorKind::modulus_mismatch, "override a has wrong p");
        if (multiplicative_order(*overrides.a) != ctx.a_order())
            throw Error(ErrorKind::invalid_params, "override a does not have order q-1");
        ctx.a = *overrides.a;
    }
    if (overrides.b) {
        if (overrides.b->p() != p) throw Error(ErrorKind::modulus_mismatch, "override b has wrong p");
        if (multiplicative_order(*overrides.b) != ctx.b_order())
            throw Error(ErrorKind::invalid_params, "override b does not have order (q+1)/p");
        ctx.b = *overrides.b;
    }
    return ctx;
}

FieldContext tabulated_context(unsigned p) {
    GeneratorOverrides o;
    switch (p) {
        case 19:
            o.a = RingElement::from_exponents(19, {1, 2, 5, 6, 13, 14, 17, 18});
            o.b = RingElement::from_exponents(19, {4, 7, 8, 9, 10, 11, 12, 15, 16, 17});
            break;
        case 29:
            o.a = RingElement::from_exponents(29, {1, 3, 4, 6, 9, 10, 11, 18, 19, 20, 23, 25, 26, 28});
            o.b = RingElement::from_exponents(29, {1, 2, 3, 4, 6, 7, 10, 12, 13, 14, 17, 19, 20, 21, 22, 28});
            break;
        default:
            throw Error(ErrorKind::unsupported_case, "no tabulated generators for p = " + std::to_string(p));
    }
    return find_generators(p, o);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> find_v_pairs(const FieldContext& ctx) {
    const std::uint64_t n = ctx.q - 1;
    std::unordered_map<std::uint64_t, std::uint64_t> log;
    log.reserve(n * 2);
    std::vector<std::uint64_t> powers(n);
    RingElement cur = ctx.e;
    for (std::uint64_t v = 0; v < n; ++v) {
        powers[v] = cur.mask();
        log.emplace(cur.mask(), v);
        cur = multiply(cur, ctx.a);
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::uint64_t v1 = 1; v1 + 1 < n; ++v1) {
        const std::uint64_t target = powers[v1] ^ ctx.e.mask();
        auto it = log.find(target);
        if (it == log.end()) continue;
        const std::uint64_t v2 = it->second;
        if (v2 > v1 && v2 <= ctx.q - 2) pairs.emplace_back(v1, v2);
    }
    return pairs;
}

}  // namespace sdc
