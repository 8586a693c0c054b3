#include "sdc/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "sdc/bounds.hpp"
#include "sdc/error.hpp"

namespace sdc {

std::string AutomorphismType::to_string() const {
    return std::to_string(p) + "-(" + std::to_string(c) + ";" + std::to_string(f) + ")";
}

std::vector<AutomorphismType> feasible_types(unsigned n, unsigned d, unsigned p) {
    std::vector<AutomorphismType> out;
    if (p < 3 || !is_prime(p) || p > n) return out;
    const bool even_order = order_of_two(p) % 2 == 0;
    for (unsigned c = 1; c * p <= n; ++c) {
        const unsigned f = n - c * p;
        if (even_order && c % 2 != 0) continue;
        // (p-1)c/2 is the dimension of E; it must be integral
        if (((p - 1) * c) % 2 != 0) continue;
        if (p * c < griesmer_sum(d, (p - 1) * c / 2)) continue;
        if (f > c) {
            if ((f - c) % 2 != 0) continue;
            if (f < griesmer_sum(d, (f - c) / 2)) continue;
        }
        out.push_back({p, c, f});
    }
    return out;
}

Permutation sigma_permutation(const AutomorphismType& type) {
    std::vector<std::size_t> images(type.length());
    for (unsigned i = 0; i < type.c; ++i)
        for (unsigned j = 0; j < type.p; ++j) images[i * type.p + j] = i * type.p + (j + 1) % type.p;
    for (unsigned k = 0; k < type.f; ++k) images[type.c * type.p + k] = type.c * type.p + k;
    return Permutation(std::move(images));
}

BitMatrix fixed_generator(const std::string& id) {
    if (id == "i2x3") return BitMatrix::from_rows({"1001|00", "0100|10", "0010|01"});
    if (id == "i2x2") return BitMatrix::from_rows({"1100", "0011"});
    if (id == "i2x4") return BitMatrix::from_rows({"1000|1000", "0100|0100", "0010|0010", "0001|0001"});
    throw Error(ErrorKind::invalid_params, "unknown fixed generator id '" + id + "'");
}

std::string default_fixed_generator_id(unsigned f) {
    switch (f) {
        case 0: return "i2x2";
        case 2: return "i2x3";
        case 4: return "i2x4";
        default: throw Error(ErrorKind::invalid_params, "no default fixed generator for f=" + std::to_string(f));
    }
}

std::string ConstructionParams::to_record() const {
    std::ostringstream os;
    os << ctx.p << ' ' << f << ' ' << u[0] << ' ' << u[1] << ' ' << u[2] << ' ' << v.first << ' ' << v.second << ' '
       << s.to_cycles() << ' ' << fixed_gen_id;
    return os.str();
}

ConstructionParams parse_params_record(const std::string& line, const std::optional<FieldContext>& ctx) {
    std::istringstream is(line);
    unsigned p = 0, f = 0;
    std::array<std::uint64_t, 3> u{};
    std::pair<std::uint64_t, std::uint64_t> v{};
    std::string s, id;
    if (!(is >> p >> f >> u[0] >> u[1] >> u[2] >> v.first >> v.second >> s))
        throw Error(ErrorKind::parse_error, "malformed params record: '" + line + "'");
    is >> id;
    const FieldContext field = ctx ? *ctx : tabulated_context(p);
    return make_params(field, f, u, v, Permutation::from_cycles(s, 4), id);
}

ConstructionParams make_params(const FieldContext& ctx, unsigned f, std::array<std::uint64_t, 3> u,
                               std::pair<std::uint64_t, std::uint64_t> v, const Permutation& s,
                               const std::string& fixed_gen_id) {
    ConstructionParams params;
    params.ctx = ctx;
    params.f = f;
    const std::uint64_t modulus = ctx.b_order();
    for (auto& x : u) x %= modulus;
    params.u = u;
    if (dihedral_filter(u, modulus).empty())
        throw Error(ErrorKind::invalid_params, "u satisfies none of the congruence conditions");
    if (v.first < 1 || v.first >= v.second || v.second > ctx.q - 2)
        throw Error(ErrorKind::invalid_params, "v out of range");
    if (power(ctx.a, v.first) + power(ctx.a, v.second) != ctx.e)
        throw Error(ErrorKind::invalid_params, "a^v1 + a^v2 != e");
    params.v = v;
    if (s.size() != 4) throw Error(ErrorKind::invalid_params, "s must permute the 4 cycle labels");
    params.s = s;
    params.fixed_gen_id = fixed_gen_id.empty() ? default_fixed_generator_id(f) : fixed_gen_id;
    params.fixed_gen = fixed_generator(params.fixed_gen_id);
    if (params.fixed_gen.cols() != 4 + f || !is_self_dual(params.fixed_gen))
        throw Error(ErrorKind::invalid_params, "fixed generator is not a self-dual code of length 4+f");
    return params;
}

std::vector<int> dihedral_filter(const std::array<std::uint64_t, 3>& u, std::uint64_t modulus) {
    std::vector<int> classes;
    const auto [u1, u2, u3] = u;
    if ((u1 + u2) % modulus == u3 % modulus) classes.push_back(1);
    if ((u2 + u3) % modulus == u1 % modulus) classes.push_back(2);
    if ((u1 + u3) % modulus == u2 % modulus) classes.push_back(3);
    if (u1 % modulus == 0 && u2 % modulus == 0 && u3 % modulus == 0) classes.push_back(4);
    return classes;
}

namespace {

Permutation extend(const Permutation& head, std::size_t total) {
    std::vector<std::size_t> images(total);
    std::iota(images.begin(), images.end(), std::size_t{0});
    for (std::size_t i = 0; i < head.size(); ++i) images[i] = head(i);
    return Permutation(std::move(images));
}

}  // namespace

BitMatrix lift_fixed(const BitMatrix& fixed_gen, const AutomorphismType& type, const Permutation& s) {
    if (fixed_gen.cols() != type.c + type.f)
        throw Error(ErrorKind::shape_error, "fixed generator has " + std::to_string(fixed_gen.cols()) +
                                                " columns, expected " + std::to_string(type.c + type.f));
    if (s.size() != type.c) throw Error(ErrorKind::shape_error, "s must permute the cycle labels");
    const Permutation full = extend(s, type.c + type.f);
    BitMatrix out(type.length(), std::vector<BitVector>{});
    for (const auto& row : fixed_gen.row_data()) {
        const BitVector moved = apply_permutation(row, full);
        BitVector lifted(type.length());
        for (unsigned i = 0; i < type.c; ++i)
            if (moved.test(i))
                for (unsigned j = 0; j < type.p; ++j) lifted.set(i * type.p + j);
        for (unsigned k = 0; k < type.f; ++k)
            if (moved.test(type.c + k)) lifted.set(type.c * type.p + k);
        out.append_row(std::move(lifted));
    }
    return out;
}

BitVector project_fixed(const BitVector& v, const AutomorphismType& type) {
    if (v.size() != type.length()) throw Error(ErrorKind::shape_error, "vector length does not match the type");
    BitVector out(type.c + type.f);
    for (unsigned i = 0; i < type.c; ++i) {
        const bool bit = v.test(i * type.p);
        for (unsigned j = 1; j < type.p; ++j)
            if (v.test(i * type.p + j) != bit) throw Error(ErrorKind::invalid_params, "vector is not sigma-invariant");
        out.set(i, bit);
    }
    for (unsigned k = 0; k < type.f; ++k) out.set(type.c + k, v.test(type.c * type.p + k));
    return out;
}

std::array<std::array<RingElement, 4>, 2> skew_generator(const ConstructionParams& params) {
    const auto& ctx = params.ctx;
    const RingElement zero = RingElement::zero(ctx.p);
    const RingElement bu1 = power(ctx.b, params.u[0]);
    const RingElement bu2 = power(ctx.b, params.u[1]);
    const RingElement bu3 = power(ctx.b, params.u[2]);
    const RingElement av1 = power(ctx.a, params.v.first);
    const RingElement av2 = power(ctx.a, params.v.second);
    return {{{bu1, zero, av1, av2 * bu3}, {zero, bu2, av2, av1 * bu3}}};
}

BitMatrix lift_skew(const ConstructionParams& params) {
    if (dihedral_filter(params.u, params.ctx.b_order()).empty())
        throw Error(ErrorKind::invalid_params, "u satisfies none of the congruence conditions");
    const AutomorphismType type = params.type();
    const unsigned p = type.p;
    BitMatrix out(type.length(), std::vector<BitVector>{});
    for (const auto& prow : skew_generator(params)) {
        for (unsigned j = 0; j + 1 < p; ++j) {
            BitVector row(type.length());
            for (unsigned i = 0; i < 4; ++i) {
                const std::uint64_t m = prow[i].shifted(j).mask();
                for (unsigned k = 0; k < p; ++k)
                    if ((m >> k) & 1U) row.set(i * p + k);
            }
            out.append_row(std::move(row));
        }
    }
    return out;
}

BitMatrix build_code(const ConstructionParams& params) {
    const AutomorphismType type = params.type();
    const BitMatrix gen = canonical_generator(lift_fixed(params.fixed_gen, type, params.s).stacked(lift_skew(params)));
    if (gen.rows() * 2 != gen.cols() || !is_self_dual(gen))
        throw Error(ErrorKind::construction_bug, "constructed code is not self-dual for " + params.to_record());
    return gen;
}

std::vector<Permutation> brute_force_automorphisms(const BitMatrix& gen) {
    const std::size_t n = gen.cols();
    if (n > 8) throw Error(ErrorKind::too_large, "brute-force automorphisms limited to length 8");
    const BitMatrix canon = canonical_generator(gen);
    std::vector<std::size_t> images(n);
    std::iota(images.begin(), images.end(), std::size_t{0});
    std::vector<Permutation> out;
    do {
        Permutation perm(images);
        if (preserves_code(canon, perm)) out.push_back(perm);
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

namespace {

// Restriction to the first c coordinates of the automorphisms that fix the
// given point set setwise.
std::vector<Permutation> cycle_stabilizer(const BitMatrix& fixed_gen, const std::vector<std::size_t>& fixed_points) {
    const std::size_t n = fixed_gen.cols();
    const std::set<std::size_t> fixed(fixed_points.begin(), fixed_points.end());
    for (auto x : fixed)
        if (x >= n) throw Error(ErrorKind::shape_error, "fixed point index out of range");
    const std::size_t c = n - fixed.size();
    std::set<Permutation> stab;
    for (const auto& g : brute_force_automorphisms(fixed_gen)) {
        bool keeps = true;
        for (auto x : fixed) keeps = keeps && fixed.count(g(x)) == 1;
        if (!keeps) continue;
        // relabel the non-fixed coordinates as 0..c-1 in increasing order
        std::vector<std::size_t> moving;
        for (std::size_t i = 0; i < n; ++i)
            if (!fixed.count(i)) moving.push_back(i);
        std::vector<std::size_t> images(c);
        for (std::size_t i = 0; i < c; ++i)
            images[i] = static_cast<std::size_t>(std::find(moving.begin(), moving.end(), g(moving[i])) - moving.begin());
        stab.insert(Permutation(std::move(images)));
    }
    return {stab.begin(), stab.end()};
}

}  // namespace

std::vector<Permutation> coset_reps(const BitMatrix& fixed_gen, const std::vector<std::size_t>& fixed_points) {
    const auto stab = cycle_stabilizer(fixed_gen, fixed_points);
    const std::size_t c = fixed_gen.cols() - std::set<std::size_t>(fixed_points.begin(), fixed_points.end()).size();
    std::vector<std::size_t> images(c);
    std::iota(images.begin(), images.end(), std::size_t{0});
    std::vector<Permutation> reps;
    std::set<Permutation> covered;
    do {
        Permutation s(images);
        if (covered.count(s)) continue;
        reps.push_back(s);
        for (const auto& h : stab) covered.insert(s * h);
    } while (std::next_permutation(images.begin(), images.end()));
    return reps;
}

bool same_coset(const Permutation& s, const Permutation& t, const std::vector<Permutation>& stab) {
    const Permutation quotient = s.inverse() * t;
    return std::find(stab.begin(), stab.end(), quotient) != stab.end();
}

namespace {

Permutation perm_from_cycles(const char* text) { return Permutation::from_cycles(text, 4); }

std::vector<Permutation> perms(std::initializer_list<const char*> texts) {
    std::vector<Permutation> out;
    for (const char* t : texts) out.push_back(perm_from_cycles(t));
    return out;
}

}  // namespace

PairingTable pair_conditions(const AutomorphismType& type) {
    if (type.p == 19 && type.c == 4 && type.f == 2) {
        const auto all = perms({"I", "(1,2,3,4)", "(1,2)", "(1,3)(2,4)", "(1,3,4)", "(1,4,3,2)"});
        return {{1, perms({"(1,2,3,4)"})},
                {2, perms({"(1,3,4)", "(1,2)"})},
                {3, perms({"I", "(1,3)(2,4)", "(1,4,3,2)"})},
                {4, all}};
    }
    if (type.p == 29 && type.c == 4 && type.f == 0) {
        const auto reps = coset_reps(fixed_generator("i2x2"), {});
        return {{1, reps}, {2, reps}, {3, reps}, {4, reps}};
    }
    throw Error(ErrorKind::unsupported_case, "no tabulated class/s pairing for type " + type.to_string());
}

std::vector<Involution> involution_catalog(unsigned p) {
    // Each entry: for every cycle i, (target cycle, reversed). Pairs of
    // cycles are swapped with offsets reversed; singletons are reversed in place.
    using Spec = std::array<unsigned, 4>;
    static const std::array<std::pair<const char*, Spec>, 10> table{{
        {"(1,2)(3,4)", {1, 0, 3, 2}},
        {"(1,3)(2,4)", {2, 3, 0, 1}},
        {"(1,4)(2,3)", {3, 2, 1, 0}},
        {"I", {0, 1, 2, 3}},
        {"(3,4)", {0, 1, 3, 2}},
        {"(2,3)", {0, 2, 1, 3}},
        {"(2,4)", {0, 3, 2, 1}},
        {"(1,2)", {1, 0, 2, 3}},
        {"(1,3)", {2, 1, 0, 3}},
        {"(1,4)", {3, 1, 2, 0}},
    }};
    std::vector<Involution> out;
    for (const auto& [name, spec] : table) {
        std::vector<std::size_t> images(4 * p);
        for (unsigned i = 0; i < 4; ++i)
            for (unsigned k = 0; k < p; ++k) images[i * p + k] = spec[i] * p + (p - 1 - k);
        Involution inv;
        inv.name = std::string("tau") + name;
        inv.cycle_action = Permutation(std::vector<std::size_t>(spec.begin(), spec.end()));
        inv.on_cycles = Permutation(std::move(images));
        out.push_back(std::move(inv));
    }
    return out;
}

std::vector<Permutation> fixed_point_involutions(unsigned f) {
    std::vector<Permutation> out;
    std::vector<std::size_t> images(f);
    std::iota(images.begin(), images.end(), std::size_t{0});
    do {
        Permutation perm(images);
        if ((perm * perm).is_identity()) out.push_back(perm);
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

bool preserves_code(const BitMatrix& gen, const Permutation& perm) {
    if (perm.size() != gen.cols()) throw Error(ErrorKind::shape_error, "permutation length does not match code length");
    BitMatrix moved(gen.cols(), std::vector<BitVector>{});
    for (const auto& row : gen.row_data()) moved.append_row(apply_permutation(row, perm));
    return row_space_contains(gen, moved);
}

std::optional<DihedralWitness> dihedral_witness(const BitMatrix& gen, const AutomorphismType& type) {
    if (type.c != 4) throw Error(ErrorKind::unsupported_case, "involution catalogue is defined for c = 4");
    const BitMatrix canon = canonical_generator(gen);
    const auto tails = fixed_point_involutions(type.f);
    for (const auto& tau : involution_catalog(type.p)) {
        for (const auto& tail : tails) {
            std::vector<std::size_t> images(tau.on_cycles.images().begin(), tau.on_cycles.images().end());
            for (unsigned k = 0; k < type.f; ++k) images.push_back(4 * type.p + tail(k));
            Permutation full(std::move(images));
            if (preserves_code(canon, full)) {
                std::string name = tau.name;
                if (!tail.is_identity()) name += " fixed" + tail.to_cycles();
                return DihedralWitness{std::move(name), std::move(full)};
            }
        }
    }
    return std::nullopt;
}

PairingTable derive_pair_conditions(const AutomorphismType& type, const BitMatrix& fixed_gen) {
    if (type.c != 4 || fixed_gen.cols() != 4 + type.f)
        throw Error(ErrorKind::shape_error, "fixed generator does not match the type");
    std::vector<std::size_t> fixed_points;
    for (unsigned k = 0; k < type.f; ++k) fixed_points.push_back(4 + k);
    const auto reps = coset_reps(fixed_gen, fixed_points);
    const auto catalog = involution_catalog(type.p);
    const auto tails = fixed_point_involutions(type.f);
    PairingTable table;
    // classes 1..4 come from the first four catalogue entries; the
    // remaining six admit no u at all
    for (int cls = 1; cls <= 4; ++cls) {
        const Permutation& action = catalog[cls - 1].cycle_action;
        auto& admitted = table[cls];
        for (const auto& s : reps) {
            const BitMatrix moved = canonical_generator(lift_fixed(fixed_gen, {1, 4, type.f}, s));
            for (const auto& tail : tails) {
                std::vector<std::size_t> images(action.images().begin(), action.images().end());
                for (unsigned k = 0; k < type.f; ++k) images.push_back(4 + tail(k));
                if (preserves_code(moved, Permutation(std::move(images)))) {
                    admitted.push_back(s);
                    break;
                }
            }
        }
    }
    return table;
}

}  // namespace sdc
