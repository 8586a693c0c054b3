#pragma once

// Low-weight codeword enumeration over disjoint information sets.
//
// The columns are split greedily into disjoint sets I_1, I_2, ...; each set
// carries a generator that is systematic on it (rank r_j) plus a kernel of
// codewords vanishing on it. Every codeword c then splits its weight as
// sum_j wt(c|I_j), so enumerating patterns of weight <= t_j on every I_j
// reaches every word of weight < sum_j (t_j + 1).
//
// Each word is attributed to the first set whose restriction weight is
// within its threshold; that set alone reports it, so no hash-set
// deduplication is needed.

#include <cstdint>
#include <optional>
#include <vector>

#include "sdc/gf2.hpp"

namespace sdc {

struct InformationSet {
    std::vector<std::size_t> columns;
    BitVector mask;
    /// r rows, row i has its unique information-set 1 at columns[i].
    std::vector<BitVector> rows;
    /// Basis of the codewords that vanish on `columns`.
    std::vector<BitVector> kernel;

    std::size_t rank() const noexcept { return rows.size(); }
};

class InformationSetFamily {
public:
    /// Splits the columns of `gen` into disjoint information sets.
    /// Throws too_large if some set has a kernel of dimension above 20.
    explicit InformationSetFamily(const BitMatrix& gen);

    std::size_t length() const noexcept { return length_; }
    std::size_t dimension() const noexcept { return dimension_; }
    const std::vector<InformationSet>& sets() const noexcept { return sets_; }
    /// Number of sets of full rank.
    std::size_t full_sets() const noexcept;

    /// Adds code words to `offset` so that it vanishes on set j.
    BitVector reduce(const BitVector& offset, std::size_t j) const;

    /// Thresholds t_j with sum_j (t_j + 1) > w, balanced, earlier sets
    /// first. -1 leaves a set unused; t_j = r_j means set j alone already
    /// reaches every codeword. Throws incomplete_coverage for an empty family.
    std::vector<int> thresholds_for(unsigned w) const;

private:
    std::size_t length_ = 0;
    std::size_t dimension_ = 0;
    std::vector<InformationSet> sets_;
};

struct EnumerationOptions {
    unsigned threads = 0;  // 0 = hardware concurrency
};

/// Exact counts of weights 0..max_weight in the code (offset absent) or in
/// the coset offset + C.
std::vector<std::uint64_t> low_weight_distribution(const InformationSetFamily& family, unsigned max_weight,
                                                   const std::optional<BitVector>& offset = std::nullopt,
                                                   const EnumerationOptions& options = {});

/// All words of exactly weight w in the code or coset, sorted.
std::vector<BitVector> collect_words(const InformationSetFamily& family, unsigned w,
                                     const std::optional<BitVector>& offset = std::nullopt,
                                     const EnumerationOptions& options = {});

struct MinWeightResult {
    unsigned weight = 0;  // best nonzero weight found (0 if none)
    bool proven = false;
    unsigned lower_bound = 0;
    unsigned rounds = 0;  // highest information weight fully enumerated, plus one
    std::optional<BitVector> witness;
};

/// Brouwer-Zimmermann style search: enumerates information weight 0, 1, ...
/// on every set until the lower bound meets the best weight found or
/// `max_info_weight` is exceeded. With `stop_below`, it returns as soon as a
/// word of weight < stop_below is seen (proven = false in that case unless
/// the bound also closes).
MinWeightResult min_weight_search(const InformationSetFamily& family, unsigned max_info_weight,
                                  std::optional<unsigned> stop_below = std::nullopt,
                                  const EnumerationOptions& options = {});

/// Any word of weight < bound whose information weight on set 0 is at most t.
std::optional<BitVector> probe_low_weight(const InformationSetFamily& family, unsigned t, unsigned bound);

/// Complete weight distribution (length n+1) by Gray-code walk over all
/// 2^k messages. Throws too_large for k > 32.
std::vector<std::uint64_t> exhaustive_distribution(const BitMatrix& gen,
                                                   const std::optional<BitVector>& offset = std::nullopt);

unsigned resolve_threads(unsigned requested);

}  // namespace sdc
