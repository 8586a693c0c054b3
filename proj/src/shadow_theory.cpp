#include "sdc/shadow_theory.hpp"

#include <algorithm>
#include <sstream>

#include "sdc/bounds.hpp"
#include "sdc/error.hpp"

namespace sdc {

bool is_integer(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

std::string to_string(const Rational& x) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(x);
    if (!is_integer(x)) os << '/' << boost::multiprecision::denominator(x);
    return os.str();
}

Integer binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Integer out = 1;
    for (long long i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

LengthShape LengthShape::from_length(unsigned n) {
    if (n == 0 || n % 2 != 0) throw Error(ErrorKind::invalid_length, "self-dual length must be positive and even");
    LengthShape s;
    s.n = n;
    s.m = n / 24;
    const unsigned rest = n % 24;
    s.l = rest / 8;
    s.r = (rest % 8) / 2;
    return s;
}

unsigned Coefficient::weight(const LengthShape& shape) const {
    return series == 'a' ? 2 * index : shape.r + 4 * index;
}

std::string Coefficient::to_string() const { return std::string(1, series) + "_" + std::to_string(index); }

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Coefficients of (1 + sign*x)^e.
std::vector<Integer> binomial_row(unsigned e, int sign) {
    std::vector<Integer> out(e + 1);
    for (unsigned k = 0; k <= e; ++k) {
        out[k] = binomial(e, k);
        if (sign < 0 && k % 2 == 1) out[k] = -out[k];
    }
    return out;
}

std::vector<Integer> poly_mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Rational frac(long long num, long long den) { return Rational(num) / Rational(den); }

Rational power_of_two(int e) {
    if (e >= 0) return Rational(Integer(1) << e);
    return Rational(Integer(1), Integer(1) << (-e));
}

Matrix invert(Matrix m) {
    const std::size_t n = m.size();
    Matrix inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw Error(ErrorKind::construction_bug, "singular Gleason matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        const Rational scale = m[col][col];
        for (std::size_t k = 0; k < n; ++k) {
            m[col][k] /= scale;
            inv[col][k] /= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t k = 0; k < n; ++k) {
                m[r][k] -= f * m[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

// Gauss-Jordan on [A | rhs]; returns pivot columns, throws infeasible.
std::vector<std::size_t> solve_rref(Matrix& a, std::vector<Rational>& rhs, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
        std::size_t piv = row;
        while (piv < a.size() && a[piv][col] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[row]);
        std::swap(rhs[piv], rhs[row]);
        const Rational scale = a[row][col];
        for (auto& x : a[row]) x /= scale;
        rhs[row] /= scale;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[row][k];
            rhs[r] -= f * rhs[row];
        }
        pivots.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < a.size(); ++r)
        if (rhs[r] != 0) throw Error(ErrorKind::infeasible, "pinned coefficients are inconsistent");
    return pivots;
}

}  // namespace

GleasonSystem::GleasonSystem(const LengthShape& shape) : shape_(shape) {
    const unsigned N = shape.half();
    const unsigned D = shape.top();
    w_.assign(D + 1, std::vector<Rational>(N + 1));
    s_.assign(D + 1, std::vector<Rational>(2 * D + 1));
    for (unsigned i = 0; i <= D; ++i) {
        const auto w = poly_mul(binomial_row(N - 4 * i, +1), binomial_row(2 * i, -1));
        for (std::size_t k = 0; k < w.size(); ++k)
            if (i + k <= N) w_[i][i + k] = Rational(w[k]);
        const Rational scale = power_of_two(static_cast<int>(N) - 6 * static_cast<int>(i)) * (i % 2 ? -1 : 1);
        const auto s = binomial_row(2 * i, -1);
        for (std::size_t k = 0; k < s.size(); ++k) s_[i][D - i + k] = scale * Rational(s[k]);
    }
    Matrix wa(D + 1, std::vector<Rational>(D + 1)), sb(D + 1, std::vector<Rational>(D + 1));
    for (unsigned j = 0; j <= D; ++j)
        for (unsigned i = 0; i <= D; ++i) {
            wa[j][i] = w_[i][j];
            sb[j][i] = s_[i][j];
        }
    alpha_ = invert(wa);
    beta_ = invert(sb);
}

Rational GleasonSystem::coefficient(const Coefficient& which, std::size_t i) const {
    const auto& table = which.series == 'a' ? w_ : s_;
    if (which.series != 'a' && which.series != 'b') throw Error(ErrorKind::invalid_params, "series must be a or b");
    if (which.index >= table[i].size()) return 0;
    return table[i][which.index];
}

std::vector<Rational> GleasonSystem::a_from_c(const std::vector<Rational>& c) const {
    std::vector<Rational> a(a_terms());
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[j] += w_[i][j] * c[i];
    return a;
}

std::vector<Rational> GleasonSystem::b_from_c(const std::vector<Rational>& c) const {
    std::vector<Rational> b(b_terms());
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) b[j] += s_[i][j] * c[i];
    return b;
}

std::vector<Rational> GleasonSystem::c_from_a(const std::vector<Rational>& a) const {
    std::vector<Rational> c(size());
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) c[i] += alpha_[i][j] * a[j];
    return c;
}

std::vector<Rational> GleasonSystem::c_from_b(const std::vector<Rational>& b) const {
    std::vector<Rational> c(size());
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j + i < size(); ++j) c[i] += beta_[i][j] * b[j];
    return c;
}

std::string AffineExpr::to_string() const {
    std::ostringstream os;
    bool first = constant == 0;
    if (!first) os << sdc::to_string(constant);
    for (const auto& [name, coeff] : terms) {
        if (coeff == 0) continue;
        if (first)
            os << (coeff < 0 ? "-" : "");
        else
            os << (coeff < 0 ? " - " : " + ");
        first = false;
        const Rational mag = coeff < 0 ? Rational(-coeff) : coeff;
        if (mag != 1) os << sdc::to_string(mag) << '*';
        os << name;
    }
    if (first) os << '0';
    return os.str();
}

Rational AffineExpr::evaluate(const std::map<std::string, Rational>& values) const {
    Rational out = constant;
    for (const auto& [name, coeff] : terms) {
        const auto it = values.find(name);
        if (it == values.end()) throw Error(ErrorKind::invalid_params, "no value for parameter " + name);
        out += coeff * it->second;
    }
    return out;
}

EnumeratorFamily::EnumeratorFamily(const GleasonSystem& system, const std::map<Coefficient, Rational>& pinned)
    : system_(&system), pinned_(pinned) {
    const std::size_t n = system.size();
    Matrix a;
    std::vector<Rational> rhs;
    for (const auto& [which, value] : pinned) {
        a.push_back(functional(which));
        rhs.push_back(value);
    }
    const auto pivots = solve_rref(a, rhs, n);
    offset_.assign(n, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) offset_[pivots[r]] = rhs[r];
    for (std::size_t col = 0; col < n; ++col) {
        if (std::find(pivots.begin(), pivots.end(), col) != pivots.end()) continue;
        std::vector<Rational> dir(n);
        dir[col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) dir[pivots[r]] = -a[r][col];
        directions_.push_back(std::move(dir));
    }
}

std::vector<Rational> EnumeratorFamily::functional(const Coefficient& which) const {
    std::vector<Rational> f(system_->size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = system_->coefficient(which, i);
    return f;
}

AffineExpr EnumeratorFamily::expression(const Coefficient& which) const {
    const auto f = functional(which);
    AffineExpr e;
    for (std::size_t i = 0; i < f.size(); ++i) e.constant += f[i] * offset_[i];
    for (std::size_t k = 0; k < directions_.size(); ++k) {
        Rational v = 0;
        for (std::size_t i = 0; i < f.size(); ++i) v += f[i] * directions_[k][i];
        if (v != 0) e.terms["t" + std::to_string(k)] = v;
    }
    return e;
}

bool EnumeratorFamily::determines(const Coefficient& which) const { return expression(which).terms.empty(); }

Rational EnumeratorFamily::value(const Coefficient& which) const {
    const auto e = expression(which);
    if (!e.terms.empty())
        throw Error(ErrorKind::needs_more_constraints, which.to_string() + " depends on " +
                                                           std::to_string(e.terms.size()) + " free parameter(s)");
    return e.constant;
}

bool EnumeratorFamily::contains(const std::map<Coefficient, Rational>& values) const {
    auto all = pinned_;
    for (const auto& [k, v] : values) {
        const auto it = all.find(k);
        if (it != all.end() && it->second != v) return false;
        all[k] = v;
    }
    try {
        EnumeratorFamily probe(*system_, all);
        return true;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::infeasible) return false;
        throw;
    }
}

std::map<Coefficient, AffineExpr> EnumeratorFamily::reparametrize(
    const std::map<std::string, std::map<Coefficient, Rational>>& hints,
    const std::map<std::string, Rational>& hint_constants, const std::vector<Coefficient>& wanted) const {
    const std::size_t k = directions_.size();
    if (hints.size() != k)
        throw Error(ErrorKind::invalid_params, "family has " + std::to_string(k) + " parameter(s) but " +
                                                   std::to_string(hints.size()) + " hint(s) were given");
    // hint h = h0 + H t
    std::vector<std::string> names;
    std::vector<Rational> h0;
    Matrix H;
    for (const auto& [name, combo] : hints) {
        names.push_back(name);
        Rational c0 = 0;
        if (const auto it = hint_constants.find(name); it != hint_constants.end()) c0 = it->second;
        std::vector<Rational> row(k);
        for (const auto& [which, weight] : combo) {
            const auto e = expression(which);
            c0 += weight * e.constant;
            for (std::size_t j = 0; j < k; ++j)
                if (const auto it = e.terms.find("t" + std::to_string(j)); it != e.terms.end()) row[j] += weight * it->second;
        }
        h0.push_back(c0);
        H.push_back(std::move(row));
    }
    Matrix Hinv;
    try {
        Hinv = invert(H);
    } catch (const Error&) {
        throw Error(ErrorKind::invalid_params, "hints do not parametrise the family");
    }
    std::map<Coefficient, AffineExpr> out;
    for (const auto& which : wanted) {
        const auto e = expression(which);
        std::vector<Rational> g(k);
        for (std::size_t j = 0; j < k; ++j)
            if (const auto it = e.terms.find("t" + std::to_string(j)); it != e.terms.end()) g[j] = it->second;
        // g t = g Hinv (h - h0)
        AffineExpr r;
        r.constant = e.constant;
        for (std::size_t q = 0; q < k; ++q) {
            Rational w = 0;
            for (std::size_t j = 0; j < k; ++j) w += g[j] * Hinv[j][q];
            if (w != 0) r.terms[names[q]] = w;
            r.constant -= w * h0[q];
        }
        out[which] = std::move(r);
    }
    return out;
}

EnumeratorFamily enumerator_family(const GleasonSystem& system, unsigned d, std::optional<unsigned> shadow_min) {
    const LengthShape& shape = system.shape();
    std::map<Coefficient, Rational> pinned;
    pinned[{'a', 0}] = 1;
    for (unsigned j = 1; 2 * j < d; ++j) pinned[{'a', j}] = 0;
    if (shape.r == 0) pinned[{'b', 0}] = 0;
    if (shadow_min)
        for (unsigned j = 0; shape.r + 4 * j < *shadow_min && j < system.b_terms(); ++j) pinned[{'b', j}] = 0;
    return EnumeratorFamily(system, pinned);
}

Rational conway_sloane_value(const GleasonSystem& system, const std::map<Coefficient, Rational>& pinned,
                             const Coefficient& target) {
    return EnumeratorFamily(system, pinned).value(target);
}

std::string to_string(ShadowKind kind) {
    switch (kind) {
        case ShadowKind::minimal: return "minimal";
        case ShadowKind::near_minimal: return "near-minimal";
        case ShadowKind::near_near_minimal: return "near-near-minimal";
    }
    return "?";
}

std::string to_string(Extremality e) { return e == Extremality::extremal ? "extremal" : "near-extremal"; }

unsigned ShadowClass::shadow_weight() const {
    const unsigned step = kind == ShadowKind::minimal ? 0 : kind == ShadowKind::near_minimal ? 4 : 8;
    return shape.r > 0 ? shape.r + step : 4 + step;
}

unsigned ShadowClass::distance() const {
    return extremality == Extremality::extremal ? extremal_distance(shape.n) : near_extremal_distance(shape.n);
}

std::string ShadowClass::name() const { return to_string(extremality) + "-" + to_string(kind); }

ShadowClass ShadowClass::parse(unsigned n, const std::string& name) {
    ShadowClass cls;
    cls.shape = LengthShape::from_length(n);
    std::string rest;
    if (name.rfind("near-extremal-", 0) == 0) {
        cls.extremality = Extremality::near_extremal;
        rest = name.substr(14);
    } else if (name.rfind("extremal-", 0) == 0) {
        cls.extremality = Extremality::extremal;
        rest = name.substr(9);
    } else {
        throw Error(ErrorKind::parse_error, "unknown class '" + name + "'");
    }
    if (rest == "minimal")
        cls.kind = ShadowKind::minimal;
    else if (rest == "near-minimal")
        cls.kind = ShadowKind::near_minimal;
    else if (rest == "near-near-minimal")
        cls.kind = ShadowKind::near_near_minimal;
    else
        throw Error(ErrorKind::parse_error, "unknown shadow kind '" + rest + "'");
    return cls;
}

CoveredCase covered_case(const ShadowClass& cls) {
    const auto& [n, m, l, r] = cls.shape;
    CoveredCase cc;
    auto pin_a = [&](unsigned upto) {
        cc.pinned[{'a', 0}] = 1;
        for (unsigned j = 1; j <= upto; ++j) cc.pinned[{'a', j}] = 0;
    };
    auto pin_b = [&](unsigned j, int value) { cc.pinned[{'b', j}] = value; };
    const std::string where = " (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ", l=" + std::to_string(l) +
                              ", r=" + std::to_string(r) + ")";

    if (cls.extremality == Extremality::extremal && cls.kind == ShadowKind::near_minimal && r > 0 && m >= 1) {
        pin_a(2 * m + 1);
        pin_b(0, 0);
        pin_b(1, 1);
        for (unsigned j = 2; j + 2 <= m; ++j) pin_b(j, 0);
        if (r == 1 && l == 0) {
            if (m < 2) throw Error(ErrorKind::unsupported_case, "identity needs m >= 2" + where);
            pin_b(m - 1, 0);
            cc.target = {'b', m};
            cc.identity_only = true;
            cc.clause = "extremal near-minimal shadow, r=1, l=0: identity in m";
            cc.formula = "identity";
        } else if (r == 1 && l == 1) {
            pin_b(m - 1, 0);
            cc.target = {'b', m};
            cc.clause = "extremal near-minimal shadow, r=1, l=1";
            cc.formula = "eq2";
        } else if ((r == 2 || r == 3) && l == 0 && m >= 2) {
            cc.target = {'b', m - 1};
            cc.clause = "extremal near-minimal shadow, r=" + std::to_string(r) + ", l=0";
            cc.formula = r == 2 ? "eq3" : "eq4";
        } else {
            throw Error(ErrorKind::unsupported_case, "extremal near-minimal shadow not covered" + where);
        }
    } else if (cls.extremality == Extremality::near_extremal && cls.kind == ShadowKind::minimal && l == 0 &&
               (r == 1 || r == 2) && m >= 1) {
        pin_a(2 * m);
        pin_b(0, 1);
        for (unsigned j = 1; j + 1 <= m; ++j) pin_b(j, 0);
        cc.target = {'b', m};
        cc.clause = "near-extremal minimal shadow, r=" + std::to_string(r) + ", l=0";
        cc.formula = r == 1 ? "eq5" : "eq6";
    } else if (cls.extremality == Extremality::extremal && cls.kind == ShadowKind::near_near_minimal && r == 1 &&
               l == 0 && m >= 2) {
        pin_a(2 * m + 1);
        pin_b(0, 0);
        pin_b(1, 0);
        pin_b(2, 1);
        for (unsigned j = 3; j + 2 <= m; ++j) pin_b(j, 0);
        cc.target = {'b', m - 1};
        cc.clause = "extremal near-near-minimal shadow, r=1, l=0";
        cc.formula = "near-near-minimal";
    } else {
        throw Error(ErrorKind::unsupported_case, cls.name() + " is not covered" + where);
    }
    cc.pinned.erase(cc.target);
    return cc;
}

Rational closed_form_value(const ShadowClass& cls) {
    const CoveredCase cc = covered_case(cls);
    const long long m = cls.shape.m;
    const auto C = [](long long a, long long b) { return Rational(binomial(a, b)); };
    if (cc.formula == "eq2")
        return frac(-12 * m + 5, -4 * m - 2) * C(5 * m + 1, m) - frac(3 * m, 2 * m + 1) * C(5 * m, m - 1);
    if (cc.formula == "eq3")
        return frac(2 * (6 * m + 1) * (8 * m + 1), 16 * m * (2 * m + 1)) * C(5 * m, m - 1) -
               frac(3 * m - 1, 2 * m + 1) * C(5 * m - 1, m - 2);
    if (cc.formula == "eq4")
        return frac(3 * (4 * m + 1) * (6 * m + 1), 8 * m * (2 * m + 1)) * C(5 * m, m - 1) -
               frac(3 * m - 1, 2 * m + 1) * C(5 * m - 1, m - 2);
    if (cc.formula == "eq5") return frac(24 * m + 2, m) * C(5 * m - 1, m - 1) - frac(3, 2) * C(5 * m - 1, m);
    if (cc.formula == "eq6")
        return frac(24 * m + 4, m) * (C(5 * m, m - 2) + 3 * C(5 * m + 1, m - 2)) - frac(3, 2) * C(5 * m - 1, m);
    if (cc.formula == "near-near-minimal")
        return frac((12 * m + 1) * (56 * m + 4), 32 * (2 * m + 1) * (m - 1)) * C(5 * m - 1, m - 2);
    throw Error(ErrorKind::unsupported_case, "no closed form for " + cls.name());
}

bool theorem41_identity_holds(unsigned m) {
    if (m < 2) return false;
    const long long mm = m;
    const Rational binom(binomial(5 * mm - 1, mm - 2));
    const Rational lhs = -frac((12 * mm + 1) * (56 * mm + 4), (2 * mm + 1) * (mm - 1)) * binom;
    const Rational rhs = -32 * frac(3 * mm - 1, 2 * mm + 1) * binom;
    return lhs == rhs;
}

std::optional<unsigned> theorem41_identity_root(unsigned lo, unsigned hi) {
    for (unsigned long long m = std::max(lo, 2u); m <= hi; ++m)
        if (576 * m * m + 232 * m == 28) return static_cast<unsigned>(m);
    return std::nullopt;
}

BValue b_value(const ShadowClass& cls) {
    const CoveredCase cc = covered_case(cls);
    BValue out;
    out.target = cc.target;
    if (!cc.identity_only) out.closed_form = closed_form_value(cls);
    const GleasonSystem system(cls.shape);
    try {
        const EnumeratorFamily family(system, cc.pinned);
        if (family.determines(cc.target)) {
            out.gleason = family.value(cc.target);
            out.gleason_status = "determined";
        } else {
            out.gleason_status = "needs-more-constraints";
        }
        const Coefficient ad{'a', cls.distance() / 2};
        if (family.determines(ad)) out.gleason_a_d = family.value(ad);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::infeasible) throw;
        out.gleason_status = "infeasible";
    }
    return out;
}

std::string to_string(Verdict v) { return v == Verdict::eliminated ? "eliminated" : "not-eliminated"; }

Certificate nonexistence_verdict(const ShadowClass& cls) {
    const CoveredCase cc = covered_case(cls);
    Certificate cert;
    cert.cls = cls;
    cert.values = b_value(cls);
    const auto& v = cert.values;

    if (cc.identity_only) {
        if (!theorem41_identity_holds(cls.shape.m)) {
            cert.verdict = Verdict::eliminated;
            cert.clause = "the required identity in m fails";
        } else {
            cert.clause = "the required identity in m holds";
        }
    } else if (!is_integer(*v.closed_form)) {
        cert.verdict = Verdict::eliminated;
        cert.clause = cc.formula + " closed form is not an integer";
    } else if (*v.closed_form < 0) {
        cert.verdict = Verdict::eliminated;
        cert.clause = cc.formula + " closed form is negative";
    } else if (v.gleason && *v.gleason != *v.closed_form) {
        cert.verdict = Verdict::eliminated;
        cert.clause = cc.formula + " closed form disagrees with the Gleason solve";
    } else if (v.gleason_status == "infeasible") {
        cert.verdict = Verdict::eliminated;
        cert.clause = "Gleason constraints are inconsistent";
    } else {
        cert.clause = cc.formula + " closed form is a nonnegative integer";
    }

    if (v.gleason_status == "infeasible") {
        cert.gleason_verdict = Verdict::eliminated;
        cert.gleason_clause = "Gleason constraints are inconsistent";
    } else if (!v.gleason) {
        cert.gleason_clause = "target not determined by the constraints";
    } else if (!is_integer(*v.gleason)) {
        cert.gleason_verdict = Verdict::eliminated;
        cert.gleason_clause = v.target.to_string() + " is not an integer";
    } else if (*v.gleason < 0) {
        cert.gleason_verdict = Verdict::eliminated;
        cert.gleason_clause = v.target.to_string() + " is negative";
    } else {
        cert.gleason_clause = v.target.to_string() + " is a nonnegative integer";
    }
    return cert;
}

RangeRestriction rw_range_restriction(const GleasonSystem& system, unsigned d, unsigned s,
                                      const std::map<std::string, std::map<Coefficient, Rational>>& hints,
                                      const std::map<std::string, Rational>& hint_constants) {
    if (2 * static_cast<int>(s) - static_cast<int>(d) > 2)
        throw Error(ErrorKind::not_applicable, "requires 2s - d <= 2");
    const LengthShape& shape = system.shape();
    if (s < shape.r || (s - shape.r) % 4 != 0)
        throw Error(ErrorKind::invalid_params, "shadow weight " + std::to_string(s) + " is not r mod 4");
    const EnumeratorFamily family = enumerator_family(system, d, s);
    RangeRestriction out;
    out.bounded = {'b', (s - shape.r) / 4};
    std::vector<Coefficient> wanted;
    for (unsigned j = out.bounded.index; j < out.bounded.index + 3 && j < system.b_terms(); ++j) wanted.push_back({'b', j});
    for (unsigned j = d / 2; j < d / 2 + 2 && j < system.a_terms(); ++j) wanted.push_back({'a', j});
    const auto exprs = family.reparametrize(hints, hint_constants, wanted);

    const AffineExpr& bs = exprs.at(out.bounded);
    AffineExpr upper;
    upper.constant = Rational(shape.n) - bs.constant;
    for (const auto& [name, c] : bs.terms) upper.terms[name] = -c;
    out.bounds.push_back({upper, "B_" + std::to_string(s) + " <= n"});
    for (const auto& which : wanted)
        out.bounds.push_back({exprs.at(which), (which.series == 'a' ? "A_" : "B_") +
                                                   std::to_string(which.weight(shape)) + " >= 0"});

    if (hints.size() == 1) {
        out.parameter = hints.begin()->first;
        std::optional<Rational> lo, hi;
        for (const auto& b : out.bounds) {
            const auto it = b.expr.terms.find(out.parameter);
            if (it == b.expr.terms.end() || it->second == 0) continue;
            const Rational edge = -b.expr.constant / it->second;
            if (it->second > 0) {
                if (!lo || edge > *lo) lo = edge;
            } else if (!hi || edge < *hi) {
                hi = edge;
            }
        }
        if (lo && hi) out.interval = std::make_pair(*lo, *hi);
    }
    return out;
}

std::vector<int> theorem1_check(const std::map<unsigned, Integer>& counts, unsigned complete_up_to, unsigned n,
                                unsigned d) {
    auto B = [&](unsigned r) -> Integer {
        const auto it = counts.find(r);
        return it == counts.end() ? Integer(0) : it->second;
    };
    std::vector<int> violated;
    for (unsigned r = 0; r <= complete_up_to && r <= n; ++r)
        if (n - r <= complete_up_to && B(r) != B(n - r)) {
            violated.push_back(1);
            break;
        }
    for (const auto& [r, c] : counts)
        if (c != 0 && r % 4 != (n / 2) % 4) {
            violated.push_back(2);
            break;
        }
    if (B(0) != 0) violated.push_back(3);
    for (unsigned r = 0; 2 * r < d && r <= complete_up_to; ++r)
        if (B(r) > 1) {
            violated.push_back(4);
            break;
        }
    unsigned nonzero = 0;
    for (unsigned r = 0; 2 * r < d + 4 && r <= complete_up_to; ++r)
        if (B(r) != 0) ++nonzero;
    if (nonzero > 1) violated.push_back(5);
    return violated;
}

}  // namespace sdc
