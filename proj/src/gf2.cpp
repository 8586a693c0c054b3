#include "sdc/gf2.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <ostream>
#include <sstream>

#include "sdc/error.hpp"

namespace sdc {

// ---------------------------------------------------------------- BitVector

BitVector BitVector::from_indices(std::size_t length, std::span<const std::size_t> ones) {
    BitVector v(length);
    for (std::size_t i : ones) {
        if (i >= length) throw Error(ErrorKind::shape_error, "index out of range");
        v.set(i);
    }
    return v;
}

BitVector BitVector::from_indices(std::size_t length, std::initializer_list<std::size_t> ones) {
    return from_indices(length, std::span<const std::size_t>(ones.begin(), ones.size()));
}

BitVector BitVector::from_bits(std::string_view bits) {
    std::vector<std::size_t> ones;
    std::size_t n = 0;
    for (char ch : bits) {
        if (ch == ' ' || ch == '|') continue;
        if (ch != '0' && ch != '1') throw Error(ErrorKind::parse_error, "bad bit character");
        if (ch == '1') ones.push_back(n);
        ++n;
    }
    return from_indices(n, ones);
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t length) {
    const std::size_t bytes = (length + 7) / 8;
    if (hex.size() != 2 * bytes) throw Error(ErrorKind::parse_error, "hex row has wrong length");
    BitVector v(length);
    for (std::size_t b = 0; b < bytes; ++b) {
        unsigned value = 0;
        auto [ptr, ec] = std::from_chars(hex.data() + 2 * b, hex.data() + 2 * b + 2, value, 16);
        if (ec != std::errc{} || ptr != hex.data() + 2 * b + 2) throw Error(ErrorKind::parse_error, "bad hex digit");
        v.words_[b / 8] |= std::uint64_t{value} << (8 * (b % 8));
    }
    if (length % kWordBits != 0 && !v.words_.empty() &&
        (v.words_.back() >> (length % kWordBits)) != 0)
        throw Error(ErrorKind::parse_error, "bits set beyond row length");
    return v;
}

BitVector BitVector::from_words(std::size_t length, std::span<const std::uint64_t> words) {
    BitVector v(length);
    const std::size_t nw = std::min(words.size(), v.words_.size());
    std::copy_n(words.begin(), nw, v.words_.begin());
    if (length % kWordBits != 0 && !v.words_.empty())
        v.words_.back() &= (std::uint64_t{1} << (length % kWordBits)) - 1;
    return v;
}

std::size_t BitVector::weight() const noexcept {
    std::size_t w = 0;
    for (std::uint64_t x : words_) w += static_cast<std::size_t>(std::popcount(x));
    return w;
}

bool BitVector::none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t x) { return x == 0; });
}

bool BitVector::dot(const BitVector& other) const {
    if (other.length_ != length_) throw Error(ErrorKind::shape_error, "dot of vectors with different lengths");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
}

std::vector<std::size_t> BitVector::support() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t x = words_[w];
        while (x) {
            out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
            x &= x - 1;
        }
    }
    return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.length_ != length_) throw Error(ErrorKind::shape_error, "xor of vectors with different lengths");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
    if (other.length_ != length_) throw Error(ErrorKind::shape_error, "and of vectors with different lengths");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

std::string BitVector::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t bytes = (length_ + 7) / 8;
    std::string out;
    out.reserve(2 * bytes);
    for (std::size_t b = 0; b < bytes; ++b) {
        const unsigned byte = static_cast<unsigned>((words_[b / 8] >> (8 * (b % 8))) & 0xFF);
        out.push_back(kDigits[byte >> 4]);
        out.push_back(kDigits[byte & 0xF]);
    }
    return out;
}

std::string BitVector::to_bits() const {
    std::string out(length_, '0');
    for (std::size_t i = 0; i < length_; ++i)
        if (test(i)) out[i] = '1';
    return out;
}

std::strong_ordering operator<=>(const BitVector& lhs, const BitVector& rhs) {
    if (auto c = lhs.length_ <=> rhs.length_; c != 0) return c;
    // Lexicographic by coordinate, coordinate 0 most significant.
    for (std::size_t w = 0; w < lhs.words_.size(); ++w) {
        const std::uint64_t a = lhs.words_[w], b = rhs.words_[w];
        if (a == b) continue;
        const std::uint64_t diff = a ^ b;
        const std::uint64_t low = diff & (~diff + 1);
        return (a & low) ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const BitVector& v) { return os << v.to_bits(); }

std::size_t BitVectorHash::operator()(const BitVector& v) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ v.size();
    for (std::uint64_t w : v.words()) {
        h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        h *= 0xBF58476D1CE4E5B9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
}

// -------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t x : images_) {
        if (x >= images_.size() || seen[x]) throw Error(ErrorKind::invalid_permutation, "not a bijection");
        seen[x] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> img(n);
    std::iota(img.begin(), img.end(), std::size_t{0});
    return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(std::string_view text, std::size_t n, std::size_t base) {
    std::vector<std::size_t> img(n);
    std::iota(img.begin(), img.end(), std::size_t{0});
    std::vector<bool> used(n, false);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    skip_ws();
    if (text.substr(pos) == "I" || text.substr(pos) == "()" || text.substr(pos).empty())
        return Permutation(std::move(img));
    while (pos < text.size()) {
        skip_ws();
        if (pos >= text.size()) break;
        if (text[pos] != '(') throw Error(ErrorKind::parse_error, "expected '(' in cycle notation");
        ++pos;
        std::vector<std::size_t> cycle;
        while (true) {
            skip_ws();
            std::size_t value = 0;
            auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
            if (ec != std::errc{}) throw Error(ErrorKind::parse_error, "expected a point in cycle notation");
            pos = static_cast<std::size_t>(ptr - text.data());
            if (value < base || value - base >= n) throw Error(ErrorKind::invalid_permutation, "point out of range");
            const std::size_t point = value - base;
            if (used[point]) throw Error(ErrorKind::invalid_permutation, "point repeated in cycle notation");
            used[point] = true;
            cycle.push_back(point);
            skip_ws();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < text.size() && text[pos] == ')') {
                ++pos;
                break;
            }
            throw Error(ErrorKind::parse_error, "unterminated cycle");
        }
        for (std::size_t i = 0; i < cycle.size(); ++i) img[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
    return Permutation(std::move(img));
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
    return Permutation(std::move(inv));
}

std::size_t Permutation::order() const {
    std::size_t ord = 1;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = images_[j]) {
            seen[j] = true;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

std::string Permutation::to_cycles(std::size_t base) const {
    std::ostringstream os;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i] || images_[i] == i) continue;
        os << '(';
        for (std::size_t j = i; !seen[j]; j = images_[j]) {
            seen[j] = true;
            if (j != i) os << ',';
            os << j + base;
        }
        os << ')';
    }
    const std::string s = os.str();
    return s.empty() ? "I" : s;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) throw Error(ErrorKind::invalid_permutation, "composing permutations of different degree");
    std::vector<std::size_t> img(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) img[i] = p(q(i));
    return Permutation(std::move(img));
}

BitVector apply_permutation(const BitVector& v, const Permutation& perm) {
    if (perm.size() != v.size()) throw Error(ErrorKind::invalid_permutation, "permutation degree differs from vector length");
    BitVector out(v.size());
    for (std::size_t i : v.support()) out.set(perm(i));
    return out;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(std::size_t cols, std::vector<BitVector> rows) : cols_(cols), rows_(std::move(rows)) {
    for (const auto& r : rows_)
        if (r.size() != cols_) throw Error(ErrorKind::shape_error, "row length differs from column count");
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].set(i);
    return m;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::string_view> rows) {
    std::vector<BitVector> data;
    for (auto r : rows) data.push_back(BitVector::from_bits(r));
    const std::size_t cols = data.empty() ? 0 : data.front().size();
    return BitMatrix(cols, std::move(data));
}

void BitMatrix::append_row(BitVector row) {
    if (row.size() != cols_) throw Error(ErrorKind::shape_error, "appended row has wrong length");
    rows_.push_back(std::move(row));
}

BitMatrix BitMatrix::stacked(const BitMatrix& below) const {
    if (below.cols_ != cols_ && !below.rows_.empty() && !rows_.empty())
        throw Error(ErrorKind::shape_error, "stacking matrices with different widths");
    BitMatrix out = rows_.empty() ? BitMatrix(below.cols_, std::vector<BitVector>{}) : *this;
    for (const auto& r : below.rows_) out.append_row(r);
    return out;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (std::size_t c : rows_[r].support()) t.rows_[c].set(r);
    return t;
}

BitMatrix BitMatrix::permute_columns(const Permutation& perm) const {
    BitMatrix out(cols_, std::vector<BitVector>{});
    for (const auto& r : rows_) out.rows_.push_back(apply_permutation(r, perm));
    return out;
}

BitVector BitMatrix::combine(const BitVector& coeffs) const {
    if (coeffs.size() != rows_.size()) throw Error(ErrorKind::shape_error, "message length differs from row count");
    BitVector out(cols_);
    for (std::size_t i : coeffs.support()) out ^= rows_[i];
    return out;
}

std::string BitMatrix::to_text() const {
    std::ostringstream os;
    os << rows_.size() << ' ' << cols_ << '\n';
    for (const auto& r : rows_) os << r.to_hex() << '\n';
    return os.str();
}

BitMatrix BitMatrix::from_text(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::size_t rows = 0, cols = 0;
    if (!(is >> rows >> cols)) throw Error(ErrorKind::parse_error, "matrix header must be 'rows cols'");
    std::vector<BitVector> data;
    data.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        std::string hex;
        if (!(is >> hex)) throw Error(ErrorKind::parse_error, "matrix text has too few rows");
        data.push_back(BitVector::from_hex(hex, cols));
    }
    return BitMatrix(cols, std::move(data));
}

std::ostream& operator<<(std::ostream& os, const BitMatrix& m) {
    for (const auto& r : m.row_data()) os << r << '\n';
    return os;
}

// ------------------------------------------------------------ linear algebra

RrefResult rref(const BitMatrix& m) {
    std::vector<BitVector> rows = m.row_data();
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
        std::size_t sel = next;
        while (sel < rows.size() && !rows[sel].test(c)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[next], rows[sel]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != next && rows[r].test(c)) rows[r] ^= rows[next];
        pivots.push_back(c);
        ++next;
    }
    return {BitMatrix(m.cols(), std::move(rows)), std::move(pivots)};
}

std::size_t rank(const BitMatrix& m) { return rref(m).pivots.size(); }

BitMatrix canonical_generator(const BitMatrix& m) {
    auto [reduced, pivots] = rref(m);
    std::vector<BitVector> rows(reduced.row_data().begin(), reduced.row_data().begin() + static_cast<long>(pivots.size()));
    return BitMatrix(m.cols(), std::move(rows));
}

BitMatrix dual(const BitMatrix& g) {
    auto [reduced, pivots] = rref(g);
    const std::size_t n = g.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    BitMatrix out(n, std::vector<BitVector>{});
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        BitVector v(n);
        v.set(j);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (reduced.test(r, j)) v.set(pivots[r]);
        out.append_row(std::move(v));
    }
    return out;
}

bool is_self_orthogonal(const BitMatrix& g) {
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = i; j < g.rows(); ++j)
            if (g.row(i).dot(g.row(j))) return false;
    return true;
}

bool is_self_dual(const BitMatrix& g) {
    if (g.cols() % 2 != 0) throw Error(ErrorKind::invalid_length, "self-dual codes have even length");
    return rank(g) == g.cols() / 2 && is_self_orthogonal(g);
}

bool row_space_contains(const BitMatrix& space, const BitMatrix& sub) {
    if (sub.rows() == 0) return true;
    if (space.cols() != sub.cols()) throw Error(ErrorKind::shape_error, "row spaces of different lengths");
    auto [reduced, pivots] = rref(space);
    for (const auto& row : sub.row_data()) {
        BitVector v = row;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (v.test(pivots[r])) v ^= reduced.row(r);
        if (!v.none()) return false;
    }
    return true;
}

bool same_row_space(const BitMatrix& a, const BitMatrix& b) {
    return a.cols() == b.cols() && canonical_generator(a) == canonical_generator(b);
}

}  // namespace sdc
