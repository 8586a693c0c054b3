#pragma once

// Dense bit-packed vectors and matrices over GF(2).
//
// Coordinate i of a vector lives at bit (i % 64) of word i / 64. Bits past
// the logical length are always zero, so word-level equality, hashing and
// popcount need no masking.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdc {

constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) noexcept { return (bits + kWordBits - 1) / kWordBits; }

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t length) : length_(length), words_(words_for(length), 0) {}

    static BitVector from_indices(std::size_t length, std::span<const std::size_t> ones);
    static BitVector from_indices(std::size_t length, std::initializer_list<std::size_t> ones);
    /// Parses a string of '0'/'1' characters, coordinate 0 first. Spaces and '|' are ignored.
    static BitVector from_bits(std::string_view bits);
    /// Inverse of to_hex(); `length` is required since the hex form is byte-padded.
    static BitVector from_hex(std::string_view hex, std::size_t length);
    static BitVector from_words(std::size_t length, std::span<const std::uint64_t> words);

    std::size_t size() const noexcept { return length_; }
    bool empty() const noexcept { return length_ == 0; }

    bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool value = true) noexcept {
        const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
        if (value)
            words_[i / kWordBits] |= mask;
        else
            words_[i / kWordBits] &= ~mask;
    }
    void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

    std::size_t weight() const noexcept;
    bool none() const noexcept;
    /// Standard inner product over GF(2).
    bool dot(const BitVector& other) const;
    std::vector<std::size_t> support() const;

    BitVector& operator^=(const BitVector& other);
    BitVector& operator&=(const BitVector& other);
    friend BitVector operator^(BitVector lhs, const BitVector& rhs) { return lhs ^= rhs; }
    friend BitVector operator&(BitVector lhs, const BitVector& rhs) { return lhs &= rhs; }

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::span<std::uint64_t> words() noexcept { return words_; }

    /// Little-endian bytes, two hex digits per byte, ceil(size/8) bytes.
    std::string to_hex() const;
    std::string to_bits() const;

    friend bool operator==(const BitVector&, const BitVector&) = default;
    friend std::strong_ordering operator<=>(const BitVector& lhs, const BitVector& rhs);

private:
    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

std::ostream& operator<<(std::ostream& os, const BitVector& v);

struct BitVectorHash {
    std::size_t operator()(const BitVector& v) const noexcept;
};

/// A permutation of {0, ..., n-1}; `image(i)` is where coordinate i goes.
class Permutation {
public:
    Permutation() = default;
    /// Throws invalid_permutation unless `images` is a bijection on [0, size).
    explicit Permutation(std::vector<std::size_t> images);

    static Permutation identity(std::size_t n);
    /// Parses cycle notation such as "(1,2,3,4)(5,6)" or "I". Points are
    /// `base`-indexed (1 by default, matching the usual textbook notation).
    static Permutation from_cycles(std::string_view text, std::size_t n, std::size_t base = 1);

    std::size_t size() const noexcept { return images_.size(); }
    std::size_t operator()(std::size_t i) const { return images_[i]; }
    std::span<const std::size_t> images() const noexcept { return images_; }

    bool is_identity() const noexcept;
    Permutation inverse() const;
    std::size_t order() const;
    /// Cycle notation with `base`-indexed points; the identity prints as "I".
    std::string to_cycles(std::size_t base = 1) const;

    /// (p * q)(i) == p(q(i)): apply q first.
    friend Permutation operator*(const Permutation& p, const Permutation& q);
    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> images_;
};

/// Output bit perm(i) equals input bit i.
BitVector apply_permutation(const BitVector& v, const Permutation& perm);

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}
    /// Throws shape_error if a row length differs from `cols`.
    BitMatrix(std::size_t cols, std::vector<BitVector> rows);

    static BitMatrix identity(std::size_t n);
    /// One row per string, see BitVector::from_bits.
    static BitMatrix from_rows(std::initializer_list<std::string_view> rows);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    const BitVector& row(std::size_t i) const { return rows_[i]; }
    BitVector& row(std::size_t i) { return rows_[i]; }
    const std::vector<BitVector>& row_data() const noexcept { return rows_; }

    bool test(std::size_t r, std::size_t c) const { return rows_[r].test(c); }

    void append_row(BitVector row);
    /// Rows of `this` followed by rows of `below`.
    BitMatrix stacked(const BitMatrix& below) const;
    BitMatrix transpose() const;
    BitMatrix permute_columns(const Permutation& perm) const;
    /// Codeword for the message `coeffs` (bit i selects row i).
    BitVector combine(const BitVector& coeffs) const;

    /// Text form: a header line "rows cols" then one hex row per line.
    std::string to_text() const;
    static BitMatrix from_text(std::string_view text);

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

std::ostream& operator<<(std::ostream& os, const BitMatrix& m);

struct RrefResult {
    BitMatrix matrix;
    std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form. Pivots are chosen leftmost column first and,
/// within a column, topmost remaining row. Zero rows end up at the bottom.
RrefResult rref(const BitMatrix& m);

std::size_t rank(const BitMatrix& m);

/// RREF with zero rows dropped: the canonical generator matrix of the row space.
BitMatrix canonical_generator(const BitMatrix& m);

/// Generator matrix of the orthogonal complement, cols - rank(G) rows.
BitMatrix dual(const BitMatrix& g);

bool is_self_orthogonal(const BitMatrix& g);

/// Throws invalid_length if g has an odd number of columns.
bool is_self_dual(const BitMatrix& g);

/// True iff every row of `sub` lies in the row space of `space`.
bool row_space_contains(const BitMatrix& space, const BitMatrix& sub);

bool same_row_space(const BitMatrix& a, const BitMatrix& b);

}  // namespace sdc
