#ifndef SYMHYP_CLI_HPP
#define SYMHYP_CLI_HPP

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "symhyp/verify.hpp"

namespace symhyp::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolated = 2;

/// A fully parsed invocation. Serializes to JSON and back to argv.
struct CommandConfig {
    std::string command;     // field | count | vander | rs | verify
    std::string subcommand;  // vander: count; rs: deephole; verify: experiment id
    unsigned p = 0, m = 0;
    std::size_t k = 0;
    std::vector<std::uint64_t> coeffs;  // count
    std::vector<std::uint64_t> poly;    // vander, rs
    std::optional<std::vector<std::uint64_t>> subset;
    bool distinct = false;
    std::string method;  // empty selects the default for the command
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0 defers to SYMHYP_THREADS
    std::size_t m_lo = 0, m_hi = 0;
    std::uint64_t a_km1 = 0, a_k = 1;
    std::string out;
    std::string format = "json";

    [[nodiscard]] json to_json() const {
        json j{{"command", command}, {"subcommand", subcommand}, {"field", {p, m}}, {"k", k},
               {"coeffs", coeffs},   {"poly", poly},             {"distinct", distinct},
               {"method", method},   {"budget", budget},         {"seed", seed},
               {"threads", threads}, {"m_range", {m_lo, m_hi}},  {"a_k_minus_1", a_km1},
               {"a_k", a_k},         {"out", out},               {"format", format}};
        j["subset"] = subset ? json(*subset) : json(nullptr);
        return j;
    }

    static CommandConfig from_json(const json& j) {
        CommandConfig c;
        c.command = j.at("command");
        c.subcommand = j.value("subcommand", "");
        c.p = j.at("field").at(0);
        c.m = j.at("field").at(1);
        c.k = j.value("k", std::size_t{0});
        c.coeffs = j.value("coeffs", std::vector<std::uint64_t>{});
        c.poly = j.value("poly", std::vector<std::uint64_t>{});
        if (j.contains("subset") && !j["subset"].is_null()) c.subset = j["subset"].get<std::vector<std::uint64_t>>();
        c.distinct = j.value("distinct", false);
        c.method = j.value("method", "");
        c.budget = j.value("budget", kDefaultBudget);
        c.seed = j.value("seed", std::uint64_t{0});
        c.threads = j.value("threads", 0u);
        if (j.contains("m_range")) {
            c.m_lo = j["m_range"].at(0);
            c.m_hi = j["m_range"].at(1);
        }
        c.a_km1 = j.value("a_k_minus_1", std::uint64_t{0});
        c.a_k = j.value("a_k", std::uint64_t{1});
        c.out = j.value("out", "");
        c.format = j.value("format", "json");
        return c;
    }

    /// Arguments (without argv[0]) that parse back to this config.
    [[nodiscard]] std::vector<std::string> to_args() const {
        auto list = [](const std::vector<std::uint64_t>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s;
        };
        std::vector<std::string> a{command};
        if (!subcommand.empty()) a.push_back(subcommand);
        a.insert(a.end(), {"--field", std::to_string(p) + "," + std::to_string(m)});
        if (command == "field") return a;
        a.insert(a.end(), {"--k", std::to_string(k)});
        if (command == "count") {
            a.insert(a.end(), {"--coeffs", list(coeffs)});
            if (distinct) a.push_back("--distinct");
        }
        if (command == "vander" || command == "rs") a.insert(a.end(), {"--poly", list(poly)});
        if (command == "rs") return a;
        if (subset) a.insert(a.end(), {"--subset", list(*subset)});
        if (!method.empty()) a.insert(a.end(), {"--method", method});
        a.insert(a.end(), {"--budget", std::to_string(budget)});
        if (threads) a.insert(a.end(), {"--threads", std::to_string(threads)});
        if (command == "verify") {
            a.insert(a.end(), {"--seed", std::to_string(seed)});
            if (m_hi) a.insert(a.end(), {"--m-range", std::to_string(m_lo) + ".." + std::to_string(m_hi)});
            a.insert(a.end(), {"--a-km1", std::to_string(a_km1), "--a-k", std::to_string(a_k)});
            a.insert(a.end(), {"--format", format});
            if (!out.empty()) a.insert(a.end(), {"--out", out});
        }
        return a;
    }
};

namespace detail {

inline std::vector<Elem> to_elems(const Field& F, const std::vector<std::uint64_t>& v) {
    std::vector<Elem> out;
    for (auto x : v) out.push_back(F.at(x));
    return out;
}

inline std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("range must look like a..b, got '" + s + "'");
    auto num = [&](const std::string& t) {
        const auto v = parse_index_list(t);
        if (v.size() != 1) throw std::invalid_argument("bad range bound '" + t + "'");
        return static_cast<std::size_t>(v[0]);
    };
    return {num(s.substr(0, dots)), num(s.substr(dots + 2))};
}

inline std::pair<unsigned, unsigned> parse_field(const std::string& s) {
    const auto v = parse_index_list(s);
    if (v.size() != 2) throw std::invalid_argument("--field expects p,m, got '" + s + "'");
    return {static_cast<unsigned>(v[0]), static_cast<unsigned>(v[1])};
}

inline CountMethod count_method(const std::string& s) {
    if (s.empty() || s == "multiset-orbit") return CountMethod::MultisetOrbit;
    if (s == "naive") return CountMethod::Naive;
    if (s == "subset-orbit") return CountMethod::SubsetOrbit;
    throw std::invalid_argument("unknown count method '" + s + "'");
}

inline VanderMethod vander_method(const std::string& s) {
    if (s.empty() || s == "companion") return VanderMethod::Companion;
    if (s == "determinant") return VanderMethod::Determinant;
    throw std::invalid_argument("unknown vander method '" + s + "'");
}

inline json field_json(const Field& F) {
    json j = F.descriptor();
    j["q"] = F.q();
    j["name"] = F.name();
    j["primitive"] = F.primitive().v;
    return j;
}

inline int report(const verify::ExperimentReport& r, const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string body = cfg.format == "csv" ? r.to_csv() : r.to_json().dump(2) + "\n";
    std::ostringstream summary;
    summary << r.experiment_id << ' ' << verify::to_string(r.verdict) << ": " << r.cases_checked << " cases, "
            << r.violations.size() << " violations, " << r.findings.size() << " findings";
    if (r.min_count_observed && r.bound_required)
        summary << ", min count " << *r.min_count_observed << " (bound " << *r.bound_required << ")";
    summary << ", " << r.elapsed_seconds << " s\n";
    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out);
        if (!f) throw std::runtime_error("cannot write " + cfg.out);
        f << body;
        out << summary.str();
    } else {
        out << body;
        err << summary.str();
    }
    return r.verdict == verify::Verdict::Violated ? kExitViolated : kExitOk;
}

}  // namespace detail

/// Executes a parsed command. Library errors propagate as exceptions.
inline int dispatch(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    const Field F = Field::make(cfg.p, cfg.m);
    const unsigned threads = resolve_threads(cfg.threads);
    const CountOptions copt{.budget = cfg.budget, .threads = threads};
    std::optional<std::vector<Elem>> subset;
    if (cfg.subset) subset = detail::to_elems(F, *cfg.subset);

    if (cfg.command == "field") {
        out << detail::field_json(F).dump() << '\n';
        return kExitOk;
    }
    if (cfg.command == "count") {
        const CompleteSymPoly h(F, cfg.k, detail::to_elems(F, cfg.coeffs));
        json j{{"field", F.descriptor()}, {"k", cfg.k}, {"coeffs", cfg.coeffs}};
        if (cfg.distinct || subset) {
            const auto method = cfg.method.empty() ? CountMethod::SubsetOrbit : detail::count_method(cfg.method);
            const auto c = count_points_distinct(h, subset, method, copt);
            j["N_star"] = c.n_distinct;
            j["subset_size"] = c.subset_size;
            j["method"] = to_string(c.method);
            if (c.n_total) j["N"] = *c.n_total;
        } else {
            const auto c = count_points(h, detail::count_method(cfg.method), copt);
            j["N"] = *c.n_total;
            j["N_star"] = c.n_distinct;
            j["method"] = to_string(c.method);
        }
        out << j.dump() << '\n';
        return kExitOk;
    }
    if (cfg.command == "vander") {
        const GenVanderInstance inst(UniPoly(F, detail::to_elems(F, cfg.poly)), cfg.k);
        const auto c = count_Df_zero(inst, subset, detail::vander_method(cfg.method), copt);
        json j{{"field", F.descriptor()},
               {"k", cfg.k},
               {"poly", inst.f().indices()},
               {"N_star_Df", c.n_star},
               {"subsets_vanishing", c.subsets_vanishing},
               {"subset_size", c.subset_size},
               {"identically_zero", c.identically_zero}};
        j["first_witness"] = verify::detail::maybe_indices(c.first_witness);
        out << j.dump() << '\n';
        return kExitOk;
    }
    if (cfg.command == "rs") {
        const RSSpec rs(F, cfg.k - 1);
        const auto v = is_deep_hole(rs, UniPoly(F, detail::to_elems(F, cfg.poly)));
        json j = to_json(v);
        j["field"] = F.descriptor();
        j["k"] = cfg.k;
        out << j.dump() << '\n';
        return kExitOk;
    }
    if (cfg.command == "verify") {
        verify::Options vopt;
        vopt.budget = cfg.budget;
        vopt.seed = cfg.seed;
        vopt.threads = threads;
        const auto& id = cfg.subcommand;
        auto range = [&](std::size_t lo, std::size_t hi) {
            return cfg.m_hi ? std::pair{cfg.m_lo, cfg.m_hi} : std::pair{lo, hi};
        };
        verify::ExperimentReport r;
        if (id == "thm-main") {
            const auto [lo, hi] = range(1, F.q() >= 4 ? F.q() - 3 : 0);
            r = verify::verify_thm_main(F, cfg.k, lo, hi, vopt);
        } else if (id == "thm-even") {
            const auto [lo, hi] = range(1, F.q() / 2);
            r = verify::verify_thm_even(F, cfg.k, lo, hi, vopt);
        } else if (id == "deep-holes") {
            r = verify::scan_deep_holes(F, cfg.k, vopt);
        } else if (id == "remarks") {
            r = verify::verify_remarks(F, vopt);
        } else if (id == "conj-nonzeros") {
            r = verify::verify_conj_nonzeros(F, cfg.k, vopt);
        } else if (id == "subset-escape") {
            r = verify::subset_escape_check(F, cfg.k, vopt);
        } else if (id == "subset-sum") {
            r = verify::subset_sum_bridge(F, cfg.k, F.at(cfg.a_km1), F.at(cfg.a_k), subset, vopt);
        } else {
            throw std::invalid_argument("unknown experiment '" + id + "'");
        }
        return detail::report(r, cfg, out, err);
    }
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

/// Parses argv into a CommandConfig; nullopt with an exit code on help or usage errors.
inline std::optional<CommandConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                               int& exit_code) {
    CLI::App app{"Zeros of complete symmetric polynomials and deep holes of Reed-Solomon codes", "symhyp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SYMHYP_VERSION);
    CommandConfig cfg;
    std::string field, coeffs, poly, subset, m_range;

    auto add_field = [&](CLI::App* s) { s->add_option("--field", field, "field as p,m")->required(); };
    auto add_k = [&](CLI::App* s) { s->add_option("--k", cfg.k, "number of variables")->required(); };
    auto add_common = [&](CLI::App* s) {
        s->add_option("--budget", cfg.budget, "evaluation budget");
        s->add_option("--threads", cfg.threads, "worker threads (default SYMHYP_THREADS or 1)");
    };

    auto* f = app.add_subcommand("field", "describe F_q");
    add_field(f);

    auto* count = app.add_subcommand("count", "count zeros of a complete symmetric polynomial");
    add_field(count);
    add_k(count);
    count->add_option("--coeffs", coeffs, "a_0,...,a_m as field indices")->required();
    count->add_flag("--distinct", cfg.distinct, "count zeros with distinct coordinates");
    count->add_option("--subset", subset, "restrict coordinates to these field indices");
    count->add_option("--method", cfg.method)->check(CLI::IsMember({"multiset-orbit", "naive", "subset-orbit"}));
    add_common(count);

    auto* vander = app.add_subcommand("vander", "generalized Vandermonde determinants");
    auto* vcount = vander->add_subcommand("count", "count zeros of D_f on distinct points");
    vander->require_subcommand(1);
    add_field(vcount);
    add_k(vcount);
    vcount->add_option("--poly", poly, "f coefficients as field indices")->required();
    vcount->add_option("--subset", subset);
    vcount->add_option("--method", cfg.method)->check(CLI::IsMember({"companion", "determinant"}));
    add_common(vcount);

    auto* rs = app.add_subcommand("rs", "Reed-Solomon codes");
    auto* deep = rs->add_subcommand("deephole", "classify a received word");
    rs->require_subcommand(1);
    add_field(deep);
    add_k(deep);
    deep->add_option("--poly", poly, "received word as a polynomial")->required();

    auto* ver = app.add_subcommand("verify", "run an experiment");
    std::string experiment;
    ver->add_option("experiment", experiment)
        ->required()
        ->check(CLI::IsMember(
            {"thm-main", "thm-even", "deep-holes", "remarks", "conj-nonzeros", "subset-escape", "subset-sum"}));
    add_field(ver);
    ver->add_option("--k", cfg.k);
    ver->add_option("--m-range", m_range, "degree range a..b");
    ver->add_option("--seed", cfg.seed);
    ver->add_option("--out", cfg.out, "write the report here");
    ver->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
    ver->add_option("--a-km1", cfg.a_km1);
    ver->add_option("--a-k", cfg.a_k);
    ver->add_option("--subset", subset);
    add_common(ver);

    try {
        app.parse(argc, argv);
        if (!field.empty()) std::tie(cfg.p, cfg.m) = detail::parse_field(field);
        if (!coeffs.empty()) cfg.coeffs = parse_index_list(coeffs);
        if (!poly.empty()) cfg.poly = parse_index_list(poly);
        if (!subset.empty()) cfg.subset = parse_index_list(subset);
        if (!m_range.empty()) std::tie(cfg.m_lo, cfg.m_hi) = detail::parse_range(m_range);
        if (*f) cfg.command = "field";
        if (*count) cfg.command = "count";
        if (*vander) cfg.command = "vander", cfg.subcommand = "count";
        if (*rs) cfg.command = "rs", cfg.subcommand = "deephole";
        if (*ver) {
            cfg.command = "verify";
            cfg.subcommand = experiment;
            if (cfg.k == 0 && experiment != "remarks") throw CLI::ValidationError("--k", "required for " + experiment);
        }
    } catch (const CLI::ParseError& e) {
        exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
        return std::nullopt;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        exit_code = kExitUsage;
        return std::nullopt;
    }
    return cfg;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    int code = kExitOk;
    const auto cfg = parse_args(argc, argv, out, err, code);
    if (!cfg) return code;
    try {
        return dispatch(*cfg, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << " (raise --budget)\n";
    }
    return kExitUsage;
}

}  // namespace symhyp::cli

#endif  // SYMHYP_CLI_HPP
