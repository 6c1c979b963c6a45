#pragma once

// Command-line front end. run() is the whole program minus process
// plumbing, so it can be driven from tests with string streams.

#include "invarank/invarank.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace invarank::cli {

struct CliConfig {
    std::string field;  // empty: per-command default
    std::optional<std::uint64_t> seed;
    unsigned trials = default_trials;
    std::string strategy = "random";
    std::string output = "json";
    std::size_t samples = 100;
};

/// Usage errors exit with 2; everything else that fails exits with 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline nlohmann::json matrices_json(const std::vector<Matrix>& ms) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : ms) arr.push_back(m.to_strings());
    return arr;
}

inline void render_text(const nlohmann::json& j, std::ostream& out, const std::string& prefix = "") {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        std::string key = prefix + it.key();
        if (v.is_object()) {
            render_text(v, out, key + ".");
        } else if (v.is_string()) {
            out << key << ": " << v.get<std::string>() << "\n";
        } else if (v.is_array() && !v.empty() && v[0].is_array()) {
            out << key << ":\n";
            for (const auto& row : v) out << "  " << row.dump() << "\n";
        } else {
            out << key << ": " << v.dump() << "\n";
        }
    }
}

inline std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

inline std::size_t parse_size(const std::string& s, const char* what) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size() || s[0] == '-')
        throw UsageError(std::string(what) + " must be a non-negative integer, got '" + s + "'");
    return v;
}

inline FieldSpec field_or(const CliConfig& cfg, const char* fallback) {
    return FieldSpec::parse(cfg.field.empty() ? fallback : cfg.field);
}

inline std::uint64_t require_seed(const CliConfig& cfg, const char* cmd) {
    if (!cfg.seed) throw UsageError(std::string(cmd) + " uses random sampling and needs --seed");
    return *cfg.seed;
}

inline RankOptions rank_options(const CliConfig& cfg, const char* cmd) {
    RankOptions opt;
    opt.strategy = parse_strategy(cfg.strategy);
    opt.trials = cfg.trials;
    if (opt.strategy == RankStrategy::RandomEval) opt.seed = require_seed(cfg, cmd);
    return opt;
}

/// Random evaluation defaults to GF(32003); symbolic defaults to Q.
inline FieldSpec rank_field(const CliConfig& cfg) {
    return field_or(cfg, cfg.strategy == "symbolic" || cfg.strategy == "Symbolic" ? "q" : "p:32003");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"invarank: square-zero bases, induced representations and invariant-count bounds"};
    app.name("invarank");
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig cfg;
    app.add_option("--field", cfg.field, "Ground field: q or p:<prime>");
    app.add_option("--seed", cfg.seed, "Seed for every randomized step");
    app.add_option("--trials", cfg.trials, "Random evaluation trials")->check(CLI::PositiveNumber);
    app.add_option("--strategy", cfg.strategy, "Rank strategy")->check(CLI::IsMember({"random", "symbolic"}));
    app.add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--samples", cfg.samples, "Samples for group invariance checks")->check(CLI::PositiveNumber);

    std::string kind, nstr, rep, path, name;
    bool squarezero = false;

    auto* basis_cmd = app.add_subcommand("basis", "Print a basis of a classical Lie algebra");
    basis_cmd->add_option("kind", kind)->required();
    basis_cmd->add_option("n", nstr)->required();
    basis_cmd->add_flag("--squarezero", squarezero, "Use the square-zero basis");

    auto* star_cmd = app.add_subcommand("star-check", "Verify the square-zero basis property");
    star_cmd->add_option("kind", kind)->required();
    star_cmd->add_option("n", nstr)->required();

    auto* bound_cmd = app.add_subcommand("bound", "Bound the number of independent invariants");
    bound_cmd->add_option("kind", kind)->required();
    bound_cmd->add_option("n", nstr)->required();
    bound_cmd->add_option("rep", rep)->required();

    auto* rank_cmd = app.add_subcommand("rank", "Generic rank of the induced vector fields");
    rank_cmd->add_option("kind", kind)->required();
    rank_cmd->add_option("n", nstr)->required();
    rank_cmd->add_option("rep", rep)->required();

    auto* lf_cmd = app.add_subcommand("lf", "Lie algebra L(f) of a Gram matrix over GF(2)");
    lf_cmd->add_option("gram", path)->required();

    auto* idd_cmd = app.add_subcommand("identity-decomp", "Square-zero decomposition of I_n over GF(2)");
    idd_cmd->add_option("n", nstr)->required();

    auto* cls_cmd = app.add_subcommand("classify2x2", "First-integral class of a 2x2 linear vector field");
    cls_cmd->add_option("matrix", path)->required();

    auto* inv_cmd = app.add_subcommand("invcheck", "Check a named invariant against an algebra");
    inv_cmd->add_option("name", name)->required();
    inv_cmd->add_option("kind", kind)->required();
    inv_cmd->add_option("n", nstr)->required();
    inv_cmd->add_option("rep", rep)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << detail::one_line(e.what()) << "\n";
        return 2;
    }

    nlohmann::json report;
    try {
        if (basis_cmd->parsed()) {
            auto k = parse_algebra_kind(kind);
            auto n = detail::parse_size(nstr, "n");
            auto f = detail::field_or(cfg, "q");
            auto b = squarezero ? squarezero_basis(k, n, f) : standard_basis(k, n, f);
            report = {{"kind", to_string(k)},
                      {"n", n},
                      {"ambient", b.ambient},
                      {"field", f.to_string()},
                      {"squarezero", squarezero},
                      {"dimension", b.elements.size()},
                      {"labels", b.labels},
                      {"elements", detail::matrices_json(b.elements)}};
        } else if (star_cmd->parsed()) {
            auto k = parse_algebra_kind(kind);
            auto n = detail::parse_size(nstr, "n");
            auto f = detail::field_or(cfg, "q");
            bool has_sz = k != AlgebraKind::gl && k != AlgebraKind::so;
            auto b = has_sz ? squarezero_basis(k, n, f) : standard_basis(k, n, f);
            auto s = verify_star(b, k, n);
            report = {{"kind", to_string(k)},
                      {"n", n},
                      {"field", f.to_string()},
                      {"basis", has_sz ? "squarezero" : "standard"},
                      {"all_square_zero", s.all_square_zero},
                      {"inside_algebra", s.inside_algebra},
                      {"span_rank", s.span_rank},
                      {"target_dim", s.target_dim},
                      {"satisfied", s.satisfied},
                      {"failing_indices", s.failing_indices}};
        } else if (bound_cmd->parsed()) {
            auto k = parse_algebra_kind(kind);
            auto n = detail::parse_size(nstr, "n");
            auto opt = detail::rank_options(cfg, "bound");
            auto expr = parse_rep(rep);
            auto b = invariant_bound(k, n, expr, detail::rank_field(cfg), opt);
            if (!b.star_certified)
                err << "warning: " << to_string(k) << " has no square-zero basis; bound uses the standard basis\n";
            report = to_json(b);
        } else if (rank_cmd->parsed()) {
            auto k = parse_algebra_kind(kind);
            auto n = detail::parse_size(nstr, "n");
            auto opt = detail::rank_options(cfg, "rank");
            auto expr = parse_rep(rep);
            auto [basis, certified] = bound_basis(k, n, detail::rank_field(cfg));
            auto r = generic_rank(induced_fields(basis, expr), opt);
            report = to_json(r);
            report["group"] = to_string(k);
            report["n"] = n;
            report["rep"] = rep_to_string(expr);
            report["seed"] = opt.strategy == RankStrategy::RandomEval ? nlohmann::json(opt.seed) : nlohmann::json();
            report["star_certified"] = certified;
        } else if (lf_cmd->parsed()) {
            auto gram = read_matrix_file(path);
            auto lf = lf_algebra(gram);
            report = {{"field", gram.field().to_string()},
                      {"n", gram.rows()},
                      {"dimension", lf.dimension},
                      {"abelian", lf.abelian},
                      {"basis", detail::matrices_json(lf.basis)}};
        } else if (idd_cmd->parsed()) {
            auto n = detail::parse_size(nstr, "n");
            auto parts = identity_decomposition_char2(n);
            Matrix sum(parts.front().field(), n, n);
            bool all_sz = true;
            for (const auto& p : parts) {
                sum += p;
                all_sz = all_sz && is_square_zero(p);
            }
            report = {{"n", n},
                      {"field", "p:2"},
                      {"count", parts.size()},
                      {"all_square_zero", all_sz},
                      {"sum_is_identity", sum == Matrix::identity(sum.field(), n)},
                      {"matrices", detail::matrices_json(parts)}};
        } else if (cls_cmd->parsed()) {
            report = to_json(classify_2x2(read_matrix_file(path)));
        } else if (inv_cmd->parsed()) {
            auto which = parse_builtin_invariant(name);
            auto k = parse_algebra_kind(kind);
            auto n = detail::parse_size(nstr, "n");
            auto seed = detail::require_seed(cfg, "invcheck");
            auto f = detail::field_or(cfg, "q");
            auto expr = parse_rep(rep);
            auto inv = builtin_invariant(which, f);
            auto basis = standard_basis(k, n, f);
            nlohmann::json per = nlohmann::json::array();
            bool all = true;
            for (std::size_t i = 0; i < basis.elements.size(); ++i) {
                bool ok = annihilation_check(vector_field(induced_derivative_action(expr, basis.elements[i])), inv);
                all = all && ok;
                per.push_back({{"element", basis.labels[i]}, {"annihilated", ok}});
            }
            // Finite check through unipotent generators I + tB: the algebra's own
            // square-zero basis, or sl's inside gl.
            nlohmann::json group = nullptr;
            std::string generators;
            if (k != AlgebraKind::so) {
                auto sz = k == AlgebraKind::gl ? squarezero_basis(AlgebraKind::sl, n, f) : squarezero_basis(k, n, f);
                generators = to_string(sz.kind) + " square-zero basis";
                group = group_invariance_check(expr, inv, sz, cfg.samples, seed);
            }
            report = {{"invariant", inv.name},
                      {"group", to_string(k)},
                      {"n", n},
                      {"rep", rep_to_string(expr)},
                      {"field", f.to_string()},
                      {"numerator", inv.numerator.to_string({"x", "y", "z", "t", "u"})},
                      {"denominator", inv.denominator.to_string({"x", "y", "z", "t", "u"})},
                      {"annihilation", per},
                      {"all_annihilated", all},
                      {"group_generators", generators},
                      {"samples", cfg.samples},
                      {"seed", seed},
                      {"group_invariant", group}};
        }
    } catch (const UsageError& e) {
        err << "usage error: " << detail::one_line(e.what()) << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << detail::one_line(e.what()) << "\n";
        return 1;
    }

    if (cfg.output == "text")
        detail::render_text(report, out);
    else
        out << report.dump(2) << "\n";
    return 0;
}

}  // namespace invarank::cli
