#include "sdc/enumeration.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>

#include "sdc/error.hpp"

namespace sdc {

namespace {

constexpr std::size_t kMaxKernelDim = 20;
constexpr std::size_t kMaxWords = 8;

// Gaussian elimination on `rows`, choosing pivots only among `candidates`
// (in order). Pivot rows are moved to the front and cleared on every other
// pivot column.
std::vector<std::size_t> eliminate(std::vector<BitVector>& rows, const std::vector<std::size_t>& candidates) {
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t col : candidates) {
        if (next == rows.size()) break;
        std::size_t found = next;
        while (found < rows.size() && !rows[found].test(col)) ++found;
        if (found == rows.size()) continue;
        std::swap(rows[next], rows[found]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != next && rows[r].test(col)) rows[r] ^= rows[next];
        pivots.push_back(col);
        ++next;
    }
    return pivots;
}

}  // namespace

InformationSetFamily::InformationSetFamily(const BitMatrix& gen) {
    const BitMatrix canon = canonical_generator(gen);
    length_ = canon.cols();
    dimension_ = canon.rows();
    std::vector<std::size_t> remaining(length_);
    for (std::size_t i = 0; i < length_; ++i) remaining[i] = i;
    while (!remaining.empty() && dimension_ > 0) {
        std::vector<BitVector> rows = canon.row_data();
        const auto pivots = eliminate(rows, remaining);
        if (pivots.empty()) break;  // the rest are zero columns
        if (dimension_ - pivots.size() > kMaxKernelDim)
            throw Error(ErrorKind::too_large, "information set kernel of dimension " +
                                                  std::to_string(dimension_ - pivots.size()));
        InformationSet set;
        set.columns = pivots;
        set.mask = BitVector::from_indices(length_, pivots);
        set.rows.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(pivots.size()));
        set.kernel.assign(rows.begin() + static_cast<std::ptrdiff_t>(pivots.size()), rows.end());
        sets_.push_back(std::move(set));
        std::erase_if(remaining, [&](std::size_t c) { return std::find(pivots.begin(), pivots.end(), c) != pivots.end(); });
    }
}

std::size_t InformationSetFamily::full_sets() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(sets_.begin(), sets_.end(), [&](const InformationSet& s) { return s.rank() == dimension_; }));
}

BitVector InformationSetFamily::reduce(const BitVector& offset, std::size_t j) const {
    if (offset.size() != length_) throw Error(ErrorKind::shape_error, "offset length does not match the code");
    BitVector out = offset;
    const auto& set = sets_.at(j);
    for (std::size_t i = 0; i < set.rank(); ++i)
        if (out.test(set.columns[i])) out ^= set.rows[i];
    return out;
}

std::vector<int> InformationSetFamily::thresholds_for(unsigned w) const {
    if (sets_.empty()) throw Error(ErrorKind::incomplete_coverage, "code has no information set");
    std::vector<int> t(sets_.size(), -1);
    unsigned covered = 0;
    for (;;) {
        bool progressed = false;
        for (std::size_t j = 0; j < sets_.size(); ++j) {
            if (covered > w) return t;
            if (static_cast<std::size_t>(t[j] + 1) > sets_[j].rank()) continue;
            ++t[j];
            ++covered;
            progressed = true;
            if (static_cast<std::size_t>(t[j]) == sets_[j].rank()) return t;  // exhaustive on its own
        }
        if (covered > w) return t;
        if (!progressed) return t;
    }
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

template <std::size_t W>
using Word = std::array<std::uint64_t, W>;

template <std::size_t W>
Word<W> to_word(const BitVector& v) {
    Word<W> out{};
    const auto words = v.words();
    for (std::size_t i = 0; i < words.size() && i < W; ++i) out[i] = words[i];
    return out;
}

template <std::size_t W>
BitVector from_word(const Word<W>& w, std::size_t n) {
    return BitVector::from_words(n, std::span<const std::uint64_t>(w.data(), words_for(n)));
}

template <std::size_t W>
inline void xor_into(Word<W>& a, const Word<W>& b) {
    for (std::size_t i = 0; i < W; ++i) a[i] ^= b[i];
}

template <std::size_t W>
inline unsigned popcount(const Word<W>& a) {
    unsigned c = 0;
    for (std::size_t i = 0; i < W; ++i) c += static_cast<unsigned>(std::popcount(a[i]));
    return c;
}

template <std::size_t W>
inline unsigned popcount_and(const Word<W>& a, const Word<W>& b) {
    unsigned c = 0;
    for (std::size_t i = 0; i < W; ++i) c += static_cast<unsigned>(std::popcount(a[i] & b[i]));
    return c;
}

template <std::size_t W>
struct CompiledSet {
    std::vector<Word<W>> rows;
    std::vector<Word<W>> kernel_span;  // all 2^dim kernel words, zero first
    Word<W> mask{};
    Word<W> start{};  // reduced offset, or zero
};

template <std::size_t W>
std::vector<CompiledSet<W>> compile(const InformationSetFamily& family, const std::optional<BitVector>& offset) {
    std::vector<CompiledSet<W>> out;
    for (std::size_t j = 0; j < family.sets().size(); ++j) {
        const auto& set = family.sets()[j];
        CompiledSet<W> cs;
        for (const auto& r : set.rows) cs.rows.push_back(to_word<W>(r));
        cs.kernel_span.assign(1, Word<W>{});
        for (const auto& k : set.kernel) {
            const Word<W> kw = to_word<W>(k);
            const std::size_t sz = cs.kernel_span.size();
            for (std::size_t i = 0; i < sz; ++i) {
                Word<W> x = cs.kernel_span[i];
                xor_into(x, kw);
                cs.kernel_span.push_back(x);
            }
        }
        cs.mask = to_word<W>(set.mask);
        if (offset) cs.start = to_word<W>(family.reduce(*offset, j));
        out.push_back(std::move(cs));
    }
    return out;
}

// Visits start ^ (sum of rows in T) for every T whose least element is
// `first` and |T| in [min_size, max_size]; first == npos stands for T = {}.
template <std::size_t W, class Visit>
void dfs(const std::vector<Word<W>>& rows, const Word<W>& cur, std::size_t next, unsigned depth, unsigned min_size,
         unsigned max_size, Visit& visit) {
    for (std::size_t i = next; i < rows.size(); ++i) {
        Word<W> w = cur;
        xor_into(w, rows[i]);
        if (depth + 1 >= min_size) visit(w);
        if (depth + 1 < max_size) dfs<W>(rows, w, i + 1, depth + 1, min_size, max_size, visit);
    }
}

struct Unit {
    std::size_t set;
    std::size_t first;  // npos = empty pattern
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

template <std::size_t W, class Visit>
void run_unit(const CompiledSet<W>& cs, const Unit& unit, unsigned min_size, unsigned max_size, Visit& visit) {
    auto expand = [&](const Word<W>& w) {
        for (const auto& k : cs.kernel_span) {
            Word<W> x = w;
            xor_into(x, k);
            visit(x);
        }
    };
    if (unit.first == kNone) {
        if (min_size == 0) expand(cs.start);
        return;
    }
    Word<W> w = cs.start;
    xor_into(w, cs.rows[unit.first]);
    if (min_size <= 1) expand(w);
    if (max_size > 1) dfs<W>(cs.rows, w, unit.first + 1, 1, min_size, max_size, expand);
}

// Units for the sets whose threshold is nonnegative; sizes restricted to
// [min_size, t_j]. Units are processed by a pool pulling from an atomic
// counter; each worker owns a State merged afterwards in worker order.
template <class State, class Work>
std::vector<State> parallel_units(const std::vector<Unit>& units, unsigned threads, Work work) {
    const unsigned nthreads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(units.size())));
    std::vector<State> states(nthreads);
    std::atomic<std::size_t> next{0};
    auto worker = [&](unsigned id) {
        for (std::size_t u = next.fetch_add(1); u < units.size(); u = next.fetch_add(1)) work(units[u], states[id]);
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker, i);
        for (auto& t : pool) t.join();
    }
    return states;
}

std::vector<Unit> units_for(const InformationSetFamily& family, const std::vector<int>& t, unsigned min_size) {
    std::vector<Unit> units;
    for (std::size_t j = 0; j < family.sets().size(); ++j) {
        if (t[j] < 0) continue;
        if (min_size == 0) units.push_back({j, kNone});
        if (t[j] >= 1)
            for (std::size_t i = 0; i < family.sets()[j].rank(); ++i) units.push_back({j, i});
    }
    return units;
}

template <std::size_t W>
struct CountState {
    std::vector<std::uint64_t> counts;
    std::vector<Word<W>> words;
};

template <std::size_t W>
CountState<W> count_impl(const InformationSetFamily& family, unsigned max_weight, std::optional<unsigned> collect,
                         const std::optional<BitVector>& offset, unsigned threads) {
    const auto sets = compile<W>(family, offset);
    const auto t = family.thresholds_for(max_weight);
    const auto units = units_for(family, t, 0);
    auto states = parallel_units<CountState<W>>(units, threads, [&](const Unit& unit, CountState<W>& st) {
        if (st.counts.empty()) st.counts.assign(max_weight + 1, 0);
        const std::size_t j = unit.set;
        auto visit = [&](const Word<W>& w) {
            const unsigned wt = popcount(w);
            if (wt > max_weight) return;
            for (std::size_t i = 0; i < j; ++i)
                if (t[i] >= 0 && popcount_and(w, sets[i].mask) <= static_cast<unsigned>(t[i])) return;
            ++st.counts[wt];
            if (collect && wt == *collect) st.words.push_back(w);
        };
        run_unit<W>(sets[j], unit, 0, static_cast<unsigned>(t[j]), visit);
    });
    CountState<W> total;
    total.counts.assign(max_weight + 1, 0);
    for (auto& st : states) {
        for (std::size_t w = 0; w < st.counts.size(); ++w) total.counts[w] += st.counts[w];
        total.words.insert(total.words.end(), st.words.begin(), st.words.end());
    }
    return total;
}

template <std::size_t W>
MinWeightResult min_weight_impl(const InformationSetFamily& family, unsigned max_info_weight,
                                std::optional<unsigned> stop_below, unsigned threads) {
    const auto sets = compile<W>(family, std::nullopt);
    const std::size_t n = family.length();
    MinWeightResult result;
    if (family.dimension() == 0) {
        result.proven = true;
        return result;
    }
    unsigned best = static_cast<unsigned>(n) + 1;
    std::optional<Word<W>> best_word;
    struct State {
        unsigned best = ~0u;
        Word<W> word{};
    };
    std::atomic<bool> stop{false};
    for (unsigned r = 0; r <= max_info_weight; ++r) {
        std::vector<int> t(sets.size(), -1);
        std::vector<Unit> units;
        for (std::size_t j = 0; j < sets.size(); ++j) {
            if (r > family.sets()[j].rank()) continue;
            t[j] = static_cast<int>(r);
            if (r == 0)
                units.push_back({j, kNone});
            else
                for (std::size_t i = 0; i + r <= sets[j].rows.size(); ++i) units.push_back({j, i});
        }
        auto states = parallel_units<State>(units, threads, [&](const Unit& unit, State& st) {
            if (stop.load(std::memory_order_relaxed)) return;
            auto visit = [&](const Word<W>& w) {
                const unsigned wt = popcount(w);
                if (wt == 0 || wt > st.best) return;
                if (wt < st.best || w < st.word) {
                    st.best = wt;
                    st.word = w;
                }
                if (stop_below && wt < *stop_below) stop.store(true, std::memory_order_relaxed);
            };
            run_unit<W>(sets[unit.set], unit, r, r, visit);
        });
        for (const auto& st : states) {
            if (st.best < best || (st.best == best && best_word && st.word < *best_word)) {
                best = st.best;
                best_word = st.word;
            }
        }
        result.rounds = r + 1;
        bool exhausted = false;
        unsigned lb = 0;
        for (std::size_t j = 0; j < sets.size(); ++j) {
            if (r >= family.sets()[j].rank()) exhausted = true;
            lb += r + 1;
        }
        result.lower_bound = exhausted ? best : lb;
        if (exhausted || best <= lb) {
            result.proven = true;
            break;
        }
        if (stop.load()) break;
    }
    if (best_word) {
        result.weight = best;
        result.witness = from_word<W>(*best_word, n);
    }
    return result;
}

template <template <std::size_t> class F, class... Args>
auto dispatch(std::size_t n, Args&&... args) {
    switch (words_for(n)) {
        case 0:
        case 1: return F<1>::run(std::forward<Args>(args)...);
        case 2: return F<2>::run(std::forward<Args>(args)...);
        case 3: return F<3>::run(std::forward<Args>(args)...);
        case 4: return F<4>::run(std::forward<Args>(args)...);
        case 5:
        case 6:
        case 7:
        case 8: return F<8>::run(std::forward<Args>(args)...);
        default: throw Error(ErrorKind::too_large, "enumeration supports lengths up to 512");
    }
}

template <std::size_t W>
struct CountRun {
    static std::pair<std::vector<std::uint64_t>, std::vector<BitVector>> run(const InformationSetFamily& family,
                                                                            unsigned max_weight,
                                                                            std::optional<unsigned> collect,
                                                                            const std::optional<BitVector>& offset,
                                                                            unsigned threads) {
        auto st = count_impl<W>(family, max_weight, collect, offset, threads);
        std::vector<BitVector> words;
        words.reserve(st.words.size());
        for (const auto& w : st.words) words.push_back(from_word<W>(w, family.length()));
        std::sort(words.begin(), words.end());
        return {std::move(st.counts), std::move(words)};
    }
};

template <std::size_t W>
struct MinRun {
    static MinWeightResult run(const InformationSetFamily& family, unsigned max_info_weight,
                               std::optional<unsigned> stop_below, unsigned threads) {
        return min_weight_impl<W>(family, max_info_weight, stop_below, threads);
    }
};

}  // namespace

std::vector<std::uint64_t> low_weight_distribution(const InformationSetFamily& family, unsigned max_weight,
                                                   const std::optional<BitVector>& offset,
                                                   const EnumerationOptions& options) {
    return dispatch<CountRun>(family.length(), family, max_weight, std::nullopt, offset,
                              resolve_threads(options.threads))
        .first;
}

std::vector<BitVector> collect_words(const InformationSetFamily& family, unsigned w,
                                     const std::optional<BitVector>& offset, const EnumerationOptions& options) {
    return dispatch<CountRun>(family.length(), family, w, std::optional<unsigned>(w), offset,
                              resolve_threads(options.threads))
        .second;
}

MinWeightResult min_weight_search(const InformationSetFamily& family, unsigned max_info_weight,
                                  std::optional<unsigned> stop_below, const EnumerationOptions& options) {
    return dispatch<MinRun>(family.length(), family, max_info_weight, stop_below, resolve_threads(options.threads));
}

std::optional<BitVector> probe_low_weight(const InformationSetFamily& family, unsigned t, unsigned bound) {
    if (family.sets().empty()) return std::nullopt;
    const auto& set = family.sets()[0];
    const std::size_t r = set.rank();
    // plain odometer over index combinations, cheap enough for t <= 3
    std::vector<std::size_t> idx;
    for (unsigned size = 1; size <= t && size <= r; ++size) {
        idx.resize(size);
        for (unsigned i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            BitVector w(family.length());
            for (auto i : idx) w ^= set.rows[i];
            const auto wt = w.weight();
            if (wt > 0 && wt < bound) return w;
            int pos = static_cast<int>(size) - 1;
            while (pos >= 0 && idx[pos] == r - size + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (unsigned i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
    return std::nullopt;
}

std::vector<std::uint64_t> exhaustive_distribution(const BitMatrix& gen, const std::optional<BitVector>& offset) {
    const BitMatrix canon = canonical_generator(gen);
    const std::size_t k = canon.rows();
    const std::size_t n = canon.cols();
    if (k > 32) throw Error(ErrorKind::too_large, "exhaustive enumeration limited to dimension 32");
    std::vector<std::uint64_t> dist(n + 1, 0);
    BitVector cur = offset ? *offset : BitVector(n);
    if (cur.size() != n) throw Error(ErrorKind::shape_error, "offset length does not match the code");
    ++dist[cur.weight()];
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t i = 1; i < total; ++i) {
        cur ^= canon.row(static_cast<std::size_t>(std::countr_zero(i)));
        ++dist[cur.weight()];
    }
    return dist;
}

}  // namespace sdc
