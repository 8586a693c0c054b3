#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdc/analysis.hpp"
#include "sdc/error.hpp"
#include "sdc/record.hpp"
#include "sdc/search.hpp"
#include "sdc/shadow_theory.hpp"

namespace {

using namespace sdc;

constexpr int kExitUsage = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitInternal = 4;

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::unsupported_case:
        case ErrorKind::not_applicable:
        case ErrorKind::too_large:
        case ErrorKind::hypothesis_violated:
        case ErrorKind::needs_more_constraints:
        case ErrorKind::infeasible:
            return kExitUnsupported;
        case ErrorKind::construction_bug:
        case ErrorKind::incomplete_coverage:
            return kExitInternal;
        default:
            return kExitUsage;
    }
}

std::vector<std::uint64_t> parse_list(const std::string& text, std::size_t expected, const std::string& flag) {
    std::vector<std::uint64_t> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::parse_error, flag + " expects comma-separated integers, got '" + text + "'");
        }
    }
    if (out.size() != expected)
        throw Error(ErrorKind::parse_error, flag + " expects " + std::to_string(expected) + " values");
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse_error, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

unsigned threads_from(unsigned flag) {
    if (flag) return flag;
    if (const char* env = std::getenv("SDC_THREADS")) {
        try {
            return static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            throw Error(ErrorKind::parse_error, "SDC_THREADS must be an integer");
        }
    }
    return 0;
}

// "a_7", "b_2"
Coefficient parse_coefficient(const std::string& text) {
    if (text.size() < 3 || (text[0] != 'a' && text[0] != 'b') || text[1] != '_')
        throw Error(ErrorKind::parse_error, "coefficient must look like a_7 or b_2, got '" + text + "'");
    try {
        return {text[0], static_cast<unsigned>(std::stoul(text.substr(2)))};
    } catch (const std::exception&) {
        throw Error(ErrorKind::parse_error, "bad coefficient index in '" + text + "'");
    }
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        return Rational(Integer(text.substr(0, slash))) / Rational(Integer(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw Error(ErrorKind::parse_error, "bad rational '" + text + "'");
    }
}

// name=TERM{(+|-)TERM}, TERM = rational | [rational*]coef[/den]
void parse_hint(const std::string& text, std::map<std::string, std::map<Coefficient, Rational>>& hints,
                std::map<std::string, Rational>& constants) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::parse_error, "hint must be name=expression");
    const std::string name = text.substr(0, eq);
    std::string expr = text.substr(eq + 1);
    auto& combo = hints[name];
    Rational& constant = constants[name];
    std::size_t i = 0;
    while (i < expr.size()) {
        int sign = 1;
        if (expr[i] == '+' || expr[i] == '-') {
            sign = expr[i] == '-' ? -1 : 1;
            ++i;
        }
        std::size_t j = i;
        while (j < expr.size() && expr[j] != '+' && expr[j] != '-') ++j;
        std::string term = expr.substr(i, j - i);
        i = j;
        if (term.empty()) throw Error(ErrorKind::parse_error, "empty term in hint '" + text + "'");
        const auto ab = term.find_first_of("ab");
        if (ab == std::string::npos) {
            constant += sign * parse_rational(term);
            continue;
        }
        Rational factor = sign;
        if (ab > 0) {
            if (term[ab - 1] != '*') throw Error(ErrorKind::parse_error, "expected '*' in hint term '" + term + "'");
            factor *= parse_rational(term.substr(0, ab - 1));
        }
        std::string coef = term.substr(ab);
        if (const auto slash = coef.find('/'); slash != std::string::npos) {
            factor /= parse_rational(coef.substr(slash + 1));
            coef.resize(slash);
        }
        combo[parse_coefficient(coef)] += factor;
    }
}

void emit_record(const CodeRecord& rec, const std::string& format) {
    if (format == "json")
        std::cout << to_json(rec).dump(2) << '\n';
    else if (format == "csv")
        std::cout << csv_header() << '\n' << csv_row(rec) << '\n';
    else
        std::cout << to_text(rec);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-dual codes with dihedral automorphisms: construction, search and shadow certificates"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    std::string format = "json";
    unsigned threads = 0;
    std::optional<std::uint64_t> seed;
    app.add_option("--output", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--threads", threads, "Worker threads (default: $SDC_THREADS, else all cores)");
    app.add_option("--seed", seed, "Seed for the primitive-element search");

    // construct
    auto* construct = app.add_subcommand("construct", "Build and analyse one code from construction parameters");
    unsigned c_p = 0, c_f = 0;
    std::string c_u, c_v, c_s, c_fixed;
    unsigned c_wceil = 0;
    int c_sceil = 0;
    bool c_no_int = false;
    construct->add_option("--p", c_p, "Prime p")->required();
    construct->add_option("--f", c_f, "Number of fixed points")->required();
    construct->add_option("--u", c_u, "u1,u2,u3")->required();
    construct->add_option("--v", c_v, "v1,v2")->required();
    construct->add_option("--s", c_s, "Permutation of the four cycles, e.g. \"(1,2,3,4)\"")->required();
    construct->add_option("--fixed-gen", c_fixed, "Fixed-subcode generator id");
    construct->add_option("--weight-ceiling", c_wceil, "Highest weight counted (default d+2)");
    construct->add_option("--shadow-ceiling", c_sceil, "Highest shadow weight counted (0: d-3, -1: none)");
    construct->add_flag("--no-intersections", c_no_int, "Skip I_2d");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Analyse a code given by a generator matrix file");
    std::string a_file;
    unsigned a_wceil = 0;
    int a_sceil = 0;
    analyze->add_option("--gen", a_file, "Matrix file: 'rows cols' then one hex row per line")->required();
    analyze->add_option("--weight-ceiling", a_wceil, "Highest weight counted (default d+2)");
    analyze->add_option("--shadow-ceiling", a_sceil, "Highest shadow weight counted (0: d-3, -1: none)");

    // search
    auto* search = app.add_subcommand("search", "Run a parameter-grid search");
    std::string s_plan, s_jsonl, s_csv;
    bool s_quiet = false;
    search->add_option("--plan", s_plan, "Plan file (key = value lines)")->required();
    search->add_option("--jsonl", s_jsonl, "Also write JSON lines to this file");
    search->add_option("--csv", s_csv, "Also write the CSV summary to this file");
    search->add_flag("--quiet", s_quiet, "No progress on stderr");

    // certify
    auto* certify = app.add_subcommand("certify", "Nonexistence certificate for a shadow class");
    unsigned t_n = 0;
    std::string t_class;
    certify->add_option("--n", t_n, "Length")->required();
    certify->add_option("--class", t_class,
                        "extremal-minimal | extremal-near-minimal | extremal-near-near-minimal | "
                        "near-extremal-minimal | ...")
        ->required();

    // gleason
    auto* gleason = app.add_subcommand("gleason", "Weight enumerator families from Gleason's theorem");
    unsigned g_n = 0, g_d = 0;
    std::optional<unsigned> g_smin, g_restrict;
    std::vector<std::string> g_pins, g_show, g_hints;
    gleason->add_option("--n", g_n, "Length")->required();
    gleason->add_option("--d", g_d, "Minimum distance")->required();
    gleason->add_option("--shadow-min", g_smin, "Minimum shadow weight");
    gleason->add_option("--pin", g_pins, "Extra constraint, e.g. b_0=1");
    gleason->add_option("--show", g_show, "Coefficients to print, e.g. a_7 b_2");
    gleason->add_option("--restrict", g_restrict, "Apply the B_s <= n restriction at shadow weight s");
    gleason->add_option("--hint", g_hints, "Parameter definition, e.g. alpha=b_2 or beta=a_9/16-52250/16");

    // types
    auto* types = app.add_subcommand("types", "Feasible automorphism types p-(c;f)");
    unsigned y_n = 0, y_d = 0, y_p = 0;
    types->add_option("--n", y_n, "Length")->required();
    types->add_option("--d", y_d, "Minimum distance")->required();
    types->add_option("--p", y_p, "Prime")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        const unsigned nthreads = threads_from(threads);
        EnumerationOptions enumeration;
        enumeration.threads = nthreads;

        if (*construct) {
            const auto u = parse_list(c_u, 3, "--u");
            const auto v = parse_list(c_v, 2, "--v");
            FieldContext ctx;
            try {
                ctx = tabulated_context(c_p);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::unsupported_case) throw;
                ctx = find_generators(c_p, {}, seed);
            }
            const auto params = make_params(ctx, c_f, {u[0], u[1], u[2]}, {v[0], v[1]},
                                             Permutation::from_cycles(c_s, 4), c_fixed);
            AnalysisOptions opts;
            opts.weight_ceiling = c_wceil;
            opts.shadow_ceiling = c_sceil;
            opts.intersections = !c_no_int;
            opts.enumeration = enumeration;
            emit_record(construct_and_analyze(params, opts), format);
        } else if (*analyze) {
            const BitMatrix gen = BitMatrix::from_text(read_file(a_file));
            AnalysisOptions opts;
            opts.weight_ceiling = a_wceil;
            opts.shadow_ceiling = a_sceil;
            opts.enumeration = enumeration;
            emit_record(analyze_code(gen, std::nullopt, opts), format);
        } else if (*search) {
            SearchPlan plan = parse_plan(read_file(s_plan));
            if (threads_from(threads)) plan.threads = nthreads;
            plan = resolve_plan(plan);
            const Grid grid(plan);
            std::cerr << "grid: " << grid.size() << " points (" << plan.v_pairs.size() << " v pairs x "
                      << grid.per_v() << ")\n";
            const ResultStore store = run_search(plan, [&](const SearchProgress& p) {
                if (!s_quiet)
                    std::cerr << "  " << p.processed << "/" << p.total << " points, " << p.distinct
                              << " fingerprints\n";
            });
            if (!s_jsonl.empty()) std::ofstream(s_jsonl) << to_json_lines(store);
            if (!s_csv.empty()) std::ofstream(s_csv) << to_csv(store);
            const auto& st = store.stats;
            if (format == "json") {
                std::cout << to_json_lines(store);
            } else if (format == "csv") {
                std::cout << to_csv(store);
            } else {
                std::cout << "processed " << st.processed << " of " << st.grid_size << " grid points"
                          << (store.complete ? "" : " (incomplete)") << '\n'
                          << "  rejected: " << st.invalid << " invalid, " << st.probe_rejected << " by probe, "
                          << st.distance_rejected << " by distance, " << st.unproven << " unproven, "
                          << st.not_dihedral << " without involution\n"
                          << "  survivors: " << st.survivors << ", distinct fingerprints: " << store.distinct() << '\n';
                for (const auto& r : store.records)
                    std::cout << "  " << r.key.to_string() << "  " << r.record.params->to_record()
                              << (r.needs_review ? "  [review]" : "") << '\n';
            }
            if (!store.complete) std::cerr << "search incomplete: budget exhausted\n";
        } else if (*certify) {
            const auto cls = ShadowClass::parse(t_n, t_class);
            const auto cert = nonexistence_verdict(cls);
            if (format == "text") std::cout << to_text(cert);
            std::cout << to_json(cert).dump(format == "json" ? 2 : -1) << '\n';
        } else if (*gleason) {
            const GleasonSystem system(LengthShape::from_length(g_n));
            auto family = enumerator_family(system, g_d, g_smin);
            if (!g_pins.empty()) {
                auto pinned = family.pinned();
                for (const auto& pin : g_pins) {
                    const auto eq = pin.find('=');
                    if (eq == std::string::npos) throw Error(ErrorKind::parse_error, "--pin needs coef=value");
                    pinned[parse_coefficient(pin.substr(0, eq))] = parse_rational(pin.substr(eq + 1));
                }
                family = EnumeratorFamily(system, pinned);
            }
            nlohmann::json out;
            out["schema_version"] = kSchemaVersion;
            out["n"] = g_n;
            out["d"] = g_d;
            out["free_parameters"] = family.dimension();
            if (g_restrict) {
                std::map<std::string, std::map<Coefficient, Rational>> hints;
                std::map<std::string, Rational> constants;
                for (const auto& h : g_hints) parse_hint(h, hints, constants);
                out["restriction"] = to_json(rw_range_restriction(system, g_d, *g_restrict, hints, constants));
            }
            std::vector<std::string> show = g_show;
            if (show.empty())
                for (unsigned j = 0; j < 4; ++j) {
                    show.push_back("a_" + std::to_string(g_d / 2 + j));
                    show.push_back("b_" + std::to_string(j));
                }
            nlohmann::ordered_json coeffs = nlohmann::ordered_json::object();
            for (const auto& c : show) coeffs[c] = family.expression(parse_coefficient(c)).to_string();
            out["coefficients"] = coeffs;
            if (format == "text") {
                std::cout << "n = " << g_n << ", d = " << g_d << ", " << family.dimension() << " free parameter(s)\n";
                for (const auto& [k, v] : coeffs.items()) std::cout << "  " << k << " = " << v.get<std::string>() << '\n';
                if (out.contains("restriction")) std::cout << out["restriction"].dump(2) << '\n';
            } else {
                std::cout << out.dump(2) << '\n';
            }
        } else if (*types) {
            const auto found = feasible_types(y_n, y_d, y_p);
            if (format == "json") {
                nlohmann::json out;
                out["schema_version"] = kSchemaVersion;
                out["types"] = nlohmann::json::array();
                for (const auto& t : found) out["types"].push_back(t.to_string());
                std::cout << out.dump(2) << '\n';
            } else {
                if (format == "csv") std::cout << "p,c,f\n";
                for (const auto& t : found) {
                    if (format == "csv")
                        std::cout << t.p << ',' << t.c << ',' << t.f << '\n';
                    else
                        std::cout << t.to_string() << '\n';
                }
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return 0;
}
