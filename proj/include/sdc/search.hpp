#pragma once

// Grid searches over construction parameters with invariant-based
// deduplication.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdc/analysis.hpp"
#include "sdc/decomposition.hpp"

namespace sdc {

using VPair = std::pair<std::uint64_t, std::uint64_t>;

/// The reduced v-pair list tabulated for p = 19. Throws unsupported_case
/// for other primes.
std::vector<VPair> reference_v_pairs(unsigned p);

struct SearchPlan {
    unsigned p = 19;
    unsigned f = 2;
    std::string fixed_gen_id;  // empty: default for f
    /// "reference", "all", or an explicit list "1,93;9,59".
    std::string v_source = "reference";
    std::vector<VPair> v_pairs;  // resolved by resolve_plan
    std::optional<std::size_t> v_limit;  // first N pairs only
    std::vector<int> classes{1, 2, 3, 4};
    /// Explicit u tuples (reduced mod (q+1)/p); empty means the full grid.
    std::vector<std::array<std::uint64_t, 3>> u_values;
    std::string pairing = "tabulated";  // or "derived"
    unsigned target_d = 14;
    unsigned probe_weight = 3;
    unsigned distance_budget = 64;
    /// Slice of the global grid order: [grid_offset, grid_offset + grid_limit).
    std::uint64_t grid_offset = 0;
    std::optional<std::uint64_t> grid_limit;
    /// Largest number of grid points processed in one run; the store is
    /// flagged incomplete if the slice is longer.
    std::optional<std::uint64_t> budget;
    unsigned threads = 0;
    std::string checkpoint;
    std::uint64_t checkpoint_every = 2000;
    /// Shadow weights counted for the fingerprint; 0: d - 3, -1: none.
    int shadow_ceiling = 0;
    unsigned weight_ceiling = 0;  // 0: d
    /// Keep only codes preserved by sigma and by some catalogue involution.
    bool require_dihedral = true;
};

/// Parses "key = value" lines; '#' starts a comment. Throws parse_error on
/// unknown keys or bad values.
SearchPlan parse_plan(const std::string& text);
/// Fills v_pairs from v_source and applies v_limit.
SearchPlan resolve_plan(SearchPlan plan);

struct GridPoint {
    std::uint64_t index = 0;
    std::array<std::uint64_t, 3> u{};
    VPair v{};
    Permutation s;
};

/// Grid points in search order: v pair, then u (class by class, each u
/// filed under the first class it satisfies), then s. Every (u, s) occurs
/// once even when u satisfies several classes.
class Grid {
public:
    explicit Grid(const SearchPlan& resolved);
    std::uint64_t size() const noexcept { return per_v_ * v_pairs_.size(); }
    std::uint64_t per_v() const noexcept { return per_v_; }
    /// Calls `visit` for the points in [begin, end) in order.
    void for_each(std::uint64_t begin, std::uint64_t end, const std::function<void(const GridPoint&)>& visit) const;

private:
    struct UEntry {
        std::array<std::uint64_t, 3> u;
        std::vector<Permutation> s;
    };
    void for_each_u(const std::function<bool(const UEntry&)>& visit) const;

    std::vector<VPair> v_pairs_;
    std::vector<std::array<std::uint64_t, 3>> u_values_;
    std::uint64_t modulus_ = 0;
    std::vector<int> classes_;
    PairingTable pairing_;
    std::uint64_t per_v_ = 0;
};

struct Fingerprint {
    unsigned d = 0;
    std::uint64_t a_d = 0;
    std::uint64_t i_2d = 0;
    std::vector<std::uint64_t> shadow_prefix;  // B_0..B_ceiling, empty if unused

    friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
    std::string to_string() const;
};

/// Throws incomplete_coverage if the record lacks A_d or I_2d. The shadow
/// prefix is included when the record has shadow counts.
Fingerprint fingerprint(const CodeRecord& rec);

struct StoredRecord {
    CodeRecord record;
    Fingerprint key;
    /// Set when another grid point gave a different code with the same
    /// fingerprint; equality of invariants does not prove equivalence.
    bool needs_review = false;
    std::vector<std::string> collisions;  // params records of those grid points
    std::uint64_t hits = 1;                // grid points mapping to this fingerprint
};

struct SearchStats {
    std::uint64_t grid_size = 0;
    std::uint64_t processed = 0;
    std::uint64_t invalid = 0;
    std::uint64_t probe_rejected = 0;
    std::uint64_t distance_rejected = 0;
    std::uint64_t unproven = 0;
    std::uint64_t not_dihedral = 0;
    std::uint64_t survivors = 0;
};

struct ResultStore {
    std::vector<StoredRecord> records;
    std::map<Fingerprint, std::vector<std::size_t>> dedup_index;
    SearchStats stats;
    std::uint64_t next_index = 0;  // first unprocessed grid point
    bool complete = false;

    /// Inserts a survivor; returns the record id it was filed under.
    std::size_t insert(CodeRecord rec);
    std::size_t distinct() const noexcept { return dedup_index.size(); }
};

struct SearchProgress {
    std::uint64_t processed = 0;
    std::uint64_t total = 0;
    std::size_t distinct = 0;
};

/// Runs the (resolved) plan. Resumes from plan.checkpoint if it exists and
/// flushes to it every checkpoint_every points. Output is independent of
/// the thread count.
ResultStore run_search(const SearchPlan& resolved, const std::function<void(const SearchProgress&)>& progress = {});

/// Analyses one grid point the way run_search does. Returns nullopt if it
/// is rejected; `reason` receives "invalid", "probe", "distance",
/// "unproven" or "dihedral".
std::optional<CodeRecord> evaluate_point(const SearchPlan& resolved, const FieldContext& ctx, const GridPoint& point,
                                         std::string* reason = nullptr);

/// `plan_tag` identifies the plan; a resumed run refuses a different tag.
void save_checkpoint(const ResultStore& store, const std::string& path, const std::string& plan_tag = "");
ResultStore load_checkpoint(const std::string& path);

/// One JSON object per record, then nothing else.
std::string to_json_lines(const ResultStore& store);
std::string to_csv(const ResultStore& store);

}  // namespace sdc
