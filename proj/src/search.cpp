#include "sdc/search.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "sdc/error.hpp"
#include "sdc/record.hpp"

namespace sdc {

std::vector<VPair> reference_v_pairs(unsigned p) {
    if (p != 19) throw Error(ErrorKind::unsupported_case, "no reference v pairs for p = " + std::to_string(p));
    return {{1, 93},    {6, 13},    {7, 505},   {9, 59},    {15, 37},   {19, 105},  {20, 99},   {21, 87},
            {25, 251},  {29, 178},  {31, 193},  {34, 175},  {39, 111},  {43, 246},  {45, 61},   {46, 255},
            {49, 119},  {63, 190},  {73, 219},  {83, 138},  {91, 167},  {94, 169},  {103, 108}, {106, 239},
            {114, 221}, {125, 187}, {155, 213}, {179, 220}, {191, 242}};
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const auto x = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw Error(ErrorKind::parse_error, "plan key '" + key + "' needs a nonnegative integer, got '" + value + "'");
    }
}

std::vector<VPair> parse_v_list(const std::string& text) {
    std::vector<VPair> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto comma = item.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::parse_error, "v pair '" + item + "' needs a comma");
        out.emplace_back(parse_uint("v_pairs", trim(item.substr(0, comma))),
                         parse_uint("v_pairs", trim(item.substr(comma + 1))));
    }
    return out;
}

FieldContext context_for(unsigned p) {
    try {
        return tabulated_context(p);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::unsupported_case) throw;
        return find_generators(p);
    }
}

std::string plan_signature(const SearchPlan& plan) {
    std::ostringstream os;
    os << plan.p << '/' << plan.f << '/' << plan.fixed_gen_id << '/' << plan.v_source << '/'
       << (plan.v_limit ? std::to_string(*plan.v_limit) : "-") << '/';
    for (int c : plan.classes) os << c;
    for (const auto& u : plan.u_values) os << ';' << u[0] << ',' << u[1] << ',' << u[2];
    os << '/' << plan.pairing << '/' << plan.target_d << '/' << plan.probe_weight << '/' << plan.grid_offset << '/'
       << (plan.grid_limit ? std::to_string(*plan.grid_limit) : "-") << '/' << plan.shadow_ceiling << '/'
       << plan.weight_ceiling << '/' << plan.require_dihedral;
    return os.str();
}

constexpr std::size_t kMaxCollisions = 64;

}  // namespace

SearchPlan parse_plan(const std::string& text) {
    SearchPlan plan;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::parse_error, "plan line '" + line + "' has no '='");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto num = [&] { return parse_uint(key, value); };
        if (key == "p")
            plan.p = static_cast<unsigned>(num());
        else if (key == "f")
            plan.f = static_cast<unsigned>(num());
        else if (key == "fixed_gen")
            plan.fixed_gen_id = value;
        else if (key == "v_pairs")
            plan.v_source = value;
        else if (key == "u") {
            std::istringstream us(value);
            std::string item;
            while (std::getline(us, item, ';')) {
                item = trim(item);
                if (item.empty()) continue;
                std::array<std::uint64_t, 3> u{};
                std::istringstream parts(item);
                std::string part;
                std::size_t k = 0;
                while (std::getline(parts, part, ',')) {
                    if (k == 3) throw Error(ErrorKind::parse_error, "u tuple '" + item + "' has more than 3 entries");
                    u[k++] = parse_uint(key, trim(part));
                }
                if (k != 3) throw Error(ErrorKind::parse_error, "u tuple '" + item + "' needs 3 entries");
                plan.u_values.push_back(u);
            }
        } else if (key == "v_limit")
            plan.v_limit = num();
        else if (key == "classes") {
            plan.classes.clear();
            std::istringstream cs(value);
            std::string c;
            while (std::getline(cs, c, ',')) {
                const auto k = parse_uint(key, trim(c));
                if (k < 1 || k > 4) throw Error(ErrorKind::parse_error, "condition classes are 1..4");
                plan.classes.push_back(static_cast<int>(k));
            }
            std::sort(plan.classes.begin(), plan.classes.end());
            plan.classes.erase(std::unique(plan.classes.begin(), plan.classes.end()), plan.classes.end());
        } else if (key == "pairing") {
            if (value != "tabulated" && value != "derived")
                throw Error(ErrorKind::parse_error, "pairing must be 'tabulated' or 'derived'");
            plan.pairing = value;
        } else if (key == "target_d")
            plan.target_d = static_cast<unsigned>(num());
        else if (key == "probe_weight")
            plan.probe_weight = static_cast<unsigned>(num());
        else if (key == "distance_budget")
            plan.distance_budget = static_cast<unsigned>(num());
        else if (key == "grid_offset")
            plan.grid_offset = num();
        else if (key == "grid_limit")
            plan.grid_limit = num();
        else if (key == "budget")
            plan.budget = num();
        else if (key == "threads")
            plan.threads = static_cast<unsigned>(num());
        else if (key == "checkpoint")
            plan.checkpoint = value;
        else if (key == "checkpoint_every")
            plan.checkpoint_every = std::max<std::uint64_t>(1, num());
        else if (key == "shadow_ceiling")
            plan.shadow_ceiling = value == "none" ? -1 : static_cast<int>(num());
        else if (key == "weight_ceiling")
            plan.weight_ceiling = static_cast<unsigned>(num());
        else if (key == "require_dihedral") {
            if (value != "true" && value != "false") throw Error(ErrorKind::parse_error, "require_dihedral is true or false");
            plan.require_dihedral = value == "true";
        }
        else
            throw Error(ErrorKind::parse_error, "unknown plan key '" + key + "'");
    }
    return plan;
}

SearchPlan resolve_plan(SearchPlan plan) {
    if (plan.v_source == "reference")
        plan.v_pairs = reference_v_pairs(plan.p);
    else if (plan.v_source == "all")
        plan.v_pairs = find_v_pairs(context_for(plan.p));
    else
        plan.v_pairs = parse_v_list(plan.v_source);
    if (plan.v_limit && plan.v_pairs.size() > *plan.v_limit) plan.v_pairs.resize(*plan.v_limit);
    if (plan.fixed_gen_id.empty()) plan.fixed_gen_id = default_fixed_generator_id(plan.f);
    return plan;
}

Grid::Grid(const SearchPlan& plan) : v_pairs_(plan.v_pairs), classes_(plan.classes) {
    const FieldContext ctx = context_for(plan.p);
    modulus_ = ctx.b_order();
    for (auto u : plan.u_values) {
        for (auto& x : u) x %= modulus_;
        if (std::find(u_values_.begin(), u_values_.end(), u) == u_values_.end()) u_values_.push_back(u);
    }
    const AutomorphismType type{plan.p, 4, plan.f};
    pairing_ = plan.pairing == "derived" ? derive_pair_conditions(type, fixed_generator(plan.fixed_gen_id))
                                         : pair_conditions(type);
    for_each_u([&](const UEntry& e) {
        per_v_ += e.s.size();
        return true;
    });
}

void Grid::for_each_u(const std::function<bool(const UEntry&)>& visit) const {
    const std::uint64_t M = modulus_;
    for (int cls : classes_) {
        auto emit = [&](std::array<std::uint64_t, 3> u) {
            const auto satisfied = dihedral_filter(u, M);
            std::vector<int> mine;
            for (int c : satisfied)
                if (std::find(classes_.begin(), classes_.end(), c) != classes_.end()) mine.push_back(c);
            // filed under its first class only
            if (mine.empty() || mine.front() != cls) return true;
            UEntry entry{u, {}};
            for (int c : mine) {
                const auto it = pairing_.find(c);
                if (it == pairing_.end()) continue;
                for (const auto& s : it->second)
                    if (std::find(entry.s.begin(), entry.s.end(), s) == entry.s.end()) entry.s.push_back(s);
            }
            if (entry.s.empty()) return true;
            return visit(entry);
        };
        if (!u_values_.empty()) {
            for (const auto& u : u_values_)
                if (!emit(u)) return;
            continue;
        }
        if (cls == 4) {
            if (!emit({0, 0, 0})) return;
            continue;
        }
        for (std::uint64_t x = 0; x < M; ++x)
            for (std::uint64_t y = 0; y < M; ++y) {
                const std::uint64_t z = (x + y) % M;
                std::array<std::uint64_t, 3> u{};
                if (cls == 1) u = {x, y, z};
                if (cls == 2) u = {z, x, y};
                if (cls == 3) u = {x, z, y};
                if (!emit(u)) return;
            }
    }
}

void Grid::for_each(std::uint64_t begin, std::uint64_t end, const std::function<void(const GridPoint&)>& visit) const {
    end = std::min(end, size());
    if (begin >= end) return;
    for (std::uint64_t vi = begin / per_v_; vi < v_pairs_.size() && vi * per_v_ < end; ++vi) {
        std::uint64_t index = vi * per_v_;
        for_each_u([&](const UEntry& e) {
            if (index + e.s.size() <= begin) {
                index += e.s.size();
                return true;
            }
            for (const auto& s : e.s) {
                if (index >= end) return false;
                if (index >= begin) visit(GridPoint{index, e.u, v_pairs_[vi], s});
                ++index;
            }
            return index < end;
        });
    }
}

std::string Fingerprint::to_string() const {
    std::ostringstream os;
    os << '(' << d << ", " << a_d << ", " << i_2d;
    if (!shadow_prefix.empty()) {
        os << ", [";
        for (std::size_t i = 0; i < shadow_prefix.size(); ++i) os << (i ? "," : "") << shadow_prefix[i];
        os << ']';
    }
    os << ')';
    return os.str();
}

Fingerprint fingerprint(const CodeRecord& rec) {
    if (!rec.intersection_2d) throw Error(ErrorKind::incomplete_coverage, "record has no intersection number");
    Fingerprint fp;
    fp.d = rec.d;
    fp.a_d = rec.a_d();
    fp.i_2d = *rec.intersection_2d;
    if (rec.shadow_counts)
        for (unsigned w = 0; w <= rec.shadow_counts->complete_up_to; ++w) fp.shadow_prefix.push_back(rec.shadow_counts->at(w));
    return fp;
}

std::size_t ResultStore::insert(CodeRecord rec) {
    const Fingerprint key = fingerprint(rec);
    auto& ids = dedup_index[key];
    for (std::size_t id : ids) {
        auto& stored = records[id];
        ++stored.hits;
        if (stored.record.gen != rec.gen) {
            stored.needs_review = true;
            if (stored.collisions.size() < kMaxCollisions && rec.params)
                stored.collisions.push_back(rec.params->to_record());
        }
        return id;
    }
    StoredRecord s;
    s.record = std::move(rec);
    s.key = key;
    records.push_back(std::move(s));
    ids.push_back(records.size() - 1);
    return records.size() - 1;
}

std::optional<CodeRecord> evaluate_point(const SearchPlan& plan, const FieldContext& ctx, const GridPoint& point,
                                         std::string* reason) {
    auto reject = [&](const char* why) -> std::optional<CodeRecord> {
        if (reason) *reason = why;
        return std::nullopt;
    };
    ConstructionParams params;
    try {
        params = make_params(ctx, plan.f, point.u, point.v, point.s, plan.fixed_gen_id);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::invalid_params) throw;
        return reject("invalid");
    }
    const BitMatrix gen = build_code(params);
    const InformationSetFamily family(gen);
    if (probe_low_weight(family, plan.probe_weight, plan.target_d)) return reject("probe");
    EnumerationOptions single;
    single.threads = 1;
    const auto md = min_weight_search(family, plan.distance_budget, plan.target_d, single);
    if (md.weight < plan.target_d) return reject("distance");
    if (!md.proven) return reject("unproven");

    AnalysisOptions opts;
    opts.known_distance = DistanceResult{md.weight, true};
    opts.weight_ceiling = plan.weight_ceiling ? plan.weight_ceiling : md.weight;
    opts.shadow_ceiling = plan.shadow_ceiling;
    opts.enumeration = single;
    CodeRecord rec = analyze_code(gen, params, opts);
    if (plan.require_dihedral && (!rec.sigma_invariant || !rec.dihedral_witness)) return reject("dihedral");
    if (reason) reason->clear();
    return rec;
}

ResultStore run_search(const SearchPlan& plan, const std::function<void(const SearchProgress&)>& progress) {
    const Grid grid(plan);
    const FieldContext ctx = context_for(plan.p);
    const std::uint64_t end =
        std::min(grid.size(), plan.grid_limit ? plan.grid_offset + *plan.grid_limit : grid.size());

    ResultStore store;
    store.next_index = plan.grid_offset;
    if (!plan.checkpoint.empty() && std::filesystem::exists(plan.checkpoint)) {
        store = load_checkpoint(plan.checkpoint);
        std::ifstream in(plan.checkpoint);
        const auto j = nlohmann::json::parse(in);
        if (j.value("plan", std::string()) != plan_signature(plan))
            throw Error(ErrorKind::invalid_params, "checkpoint " + plan.checkpoint + " belongs to a different plan");
    }
    store.stats.grid_size = end > plan.grid_offset ? end - plan.grid_offset : 0;
    const std::uint64_t stop = plan.budget ? std::min(end, store.next_index + *plan.budget) : end;
    const unsigned threads = resolve_threads(plan.threads);

    while (store.next_index < stop) {
        const std::uint64_t chunk_end = std::min(stop, store.next_index + plan.checkpoint_every);
        std::vector<GridPoint> points;
        grid.for_each(store.next_index, chunk_end, [&](const GridPoint& g) { points.push_back(g); });

        std::vector<std::optional<CodeRecord>> results(points.size());
        std::vector<std::string> reasons(points.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < points.size(); i = next++)
                results[i] = evaluate_point(plan, ctx, points[i], &reasons[i]);
        };
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        }

        // merge in grid order so the store does not depend on scheduling
        for (std::size_t i = 0; i < points.size(); ++i) {
            ++store.stats.processed;
            if (results[i]) {
                ++store.stats.survivors;
                store.insert(std::move(*results[i]));
            } else if (reasons[i] == "invalid") {
                ++store.stats.invalid;
            } else if (reasons[i] == "probe") {
                ++store.stats.probe_rejected;
            } else if (reasons[i] == "distance") {
                ++store.stats.distance_rejected;
            } else if (reasons[i] == "dihedral") {
                ++store.stats.not_dihedral;
            } else {
                ++store.stats.unproven;
            }
        }
        store.next_index = chunk_end;
        store.complete = store.next_index >= end;
        if (!plan.checkpoint.empty()) {
            save_checkpoint(store, plan.checkpoint, plan_signature(plan));
        }
        if (progress) progress({store.next_index - plan.grid_offset, store.stats.grid_size, store.distinct()});
    }
    store.complete = store.next_index >= end;
    return store;
}

namespace {

nlohmann::json stored_json(const StoredRecord& s) {
    nlohmann::json j = to_json(s.record);
    j["fingerprint"] = s.key.to_string();
    j["needs_review"] = s.needs_review;
    j["hits"] = s.hits;
    if (!s.collisions.empty()) j["collisions"] = s.collisions;
    return j;
}

}  // namespace

void save_checkpoint(const ResultStore& store, const std::string& path, const std::string& plan_tag) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    if (!plan_tag.empty()) j["plan"] = plan_tag;
    j["next_index"] = store.next_index;
    j["complete"] = store.complete;
    const auto& st = store.stats;
    j["stats"] = {{"grid_size", st.grid_size},           {"processed", st.processed},
                  {"invalid", st.invalid},               {"probe_rejected", st.probe_rejected},
                  {"distance_rejected", st.distance_rejected}, {"unproven", st.unproven},
                  {"not_dihedral", st.not_dihedral},
                  {"survivors", st.survivors}};
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& s : store.records) recs.push_back(stored_json(s));
    j["records"] = recs;
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error(ErrorKind::invalid_params, "cannot write checkpoint " + tmp);
        out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
}

ResultStore load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse_error, "cannot read checkpoint " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse_error, std::string("bad checkpoint: ") + e.what());
    }
    ResultStore store;
    store.next_index = j.at("next_index").get<std::uint64_t>();
    store.complete = j.at("complete").get<bool>();
    const auto& st = j.at("stats");
    store.stats.grid_size = st.at("grid_size");
    store.stats.processed = st.at("processed");
    store.stats.invalid = st.at("invalid");
    store.stats.probe_rejected = st.at("probe_rejected");
    store.stats.distance_rejected = st.at("distance_rejected");
    store.stats.unproven = st.at("unproven");
    store.stats.not_dihedral = st.value("not_dihedral", std::uint64_t{0});
    store.stats.survivors = st.at("survivors");
    for (const auto& r : j.at("records")) {
        StoredRecord s;
        s.record = record_from_json(r);
        s.key = fingerprint(s.record);
        s.needs_review = r.value("needs_review", false);
        s.hits = r.value("hits", std::uint64_t{1});
        if (r.contains("collisions")) s.collisions = r["collisions"].get<std::vector<std::string>>();
        store.dedup_index[s.key].push_back(store.records.size());
        store.records.push_back(std::move(s));
    }
    return store;
}

std::string to_json_lines(const ResultStore& store) {
    std::string out;
    for (const auto& s : store.records) out += stored_json(s).dump() + '\n';
    return out;
}

std::string to_csv(const ResultStore& store) {
    std::string out = csv_header() + ",needs_review\n";
    for (const auto& s : store.records) out += csv_row(s.record) + (s.needs_review ? ",1\n" : ",0\n");
    return out;
}

}  // namespace sdc
