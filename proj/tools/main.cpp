#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "qmod/analysis.hpp"
#include "qmod/errors.hpp"
#include "qmod/forms.hpp"
#include "qmod/json_io.hpp"
#include "qmod/operators.hpp"
#include "qmod/solutions.hpp"

namespace {

using namespace qmod;

enum class OutFormat { Text, Json, Csv };

struct CommonOpts {
    long terms = 100;
    long exp_den = 0; // 0 = natural grid
    bool json = false;
    bool csv = false;

    OutFormat format() const {
        if (json) return OutFormat::Json;
        if (csv) return OutFormat::Csv;
        return OutFormat::Text;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--terms", o.terms, "number of terms / verification order")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--exp-den", o.exp_den, "emit on this exponent denominator (multiple of the natural grid)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--json", o.json, "emit JSON");
    cmd->add_flag("--csv", o.csv, "emit CSV (exp_num,exp_den,coeff_num,coeff_den)");
}

SolutionKind parse_kind(const std::string& s) {
    if (s == "normalized") return SolutionKind::Normalized;
    if (s == "cuspidal") return SolutionKind::Cuspidal;
    if (s == "quasi") return SolutionKind::Quasi;
    throw BadInput("unknown kind '" + s + "' (use normalized|cuspidal|quasi)");
}

// Expand a catalog form far enough to have `terms` stored lattice entries.
QSeries expand_form(FormId id, long terms) {
    QSeries probe = catalog(id, 8);
    long lead_q = probe.lead_exp() / probe.exp_den();
    long need = lead_q + (terms * probe.step()) / probe.exp_den() + 2;
    return catalog(id, std::max(need, 8L));
}

void print_series(const QSeries& s, const CommonOpts& o) {
    switch (o.format()) {
        case OutFormat::Json: std::cout << to_json(s, false, o.exp_den) << "\n"; return;
        case OutFormat::Csv: std::cout << to_csv(s, o.exp_den); return;
        case OutFormat::Text: break;
    }
    if (o.exp_den != 0 && (o.exp_den < s.exp_den() || o.exp_den % s.exp_den() != 0))
        throw BadInput("exp_den override " + std::to_string(o.exp_den) +
                       " is not a multiple of the series grid " + std::to_string(s.exp_den()));
    long shown = 0;
    for (long i = 0; shown < o.terms; ++i) {
        long e = s.lead_exp() + i * s.step();
        if (e >= s.trunc()) break;
        Rational v = (i < static_cast<long>(s.size())) ? s.coeffs()[static_cast<std::size_t>(i)]
                                                       : Rational(0);
        if (shown) std::cout << ", ";
        std::cout << to_string(v);
        ++shown;
    }
    std::cout << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"exact q-expansions of modular forms and the solution families of the "
                 "hypergeometric-type equation f'' - ((k+1)/6)E2 f' + (k(k+1)/12)E2' f = 0"};
    app.require_subcommand(1);

    // expand
    auto* c_expand = app.add_subcommand("expand", "print the q-expansion of a catalog form");
    std::string expand_id;
    CommonOpts expand_o;
    c_expand->add_option("form", expand_id, "form id (e.g. E4, Delta, j_2, sqrtDelta4_2)")
        ->required();
    add_common(c_expand, expand_o);

    // solve
    auto* c_solve = app.add_subcommand("solve", "construct a solution family member");
    std::string solve_k, solve_kind = "normalized";
    bool solve_verify = false;
    CommonOpts solve_o;
    c_solve->add_option("--k", solve_k, "weight (integer or p/2)")->required();
    c_solve->add_option("--kind", solve_kind, "normalized|cuspidal|quasi");
    c_solve->add_flag("--verify", solve_verify, "also verify the residual");
    add_common(c_solve, solve_o);

    // verify
    auto* c_verify = app.add_subcommand("verify", "verify a solution and print the report");
    std::string verify_k, verify_family = "normalized";
    CommonOpts verify_o;
    c_verify->add_option("--k", verify_k, "weight")->required();
    c_verify->add_option("--family", verify_family, "normalized|cuspidal|quasi");
    add_common(c_verify, verify_o);

    // ladder
    auto* c_ladder = app.add_subcommand("ladder", "ascend the weight-by-6 recursion");
    std::string ladder_k, ladder_kind = "normalized";
    long ladder_steps = 4;
    bool ladder_verify = false;
    CommonOpts ladder_o;
    c_ladder->add_option("--k", ladder_k, "base weight")->required();
    c_ladder->add_option("--steps", ladder_steps, "number of rungs")->check(CLI::PositiveNumber);
    c_ladder->add_option("--kind", ladder_kind, "seed family: normalized|cuspidal|quasi");
    c_ladder->add_flag("--verify", ladder_verify, "verify each rung's residual");
    add_common(c_ladder, ladder_o);

    // oracle
    auto* c_oracle = app.add_subcommand("oracle", "Frobenius power-series solution");
    std::string oracle_k, oracle_branch = "zero";
    CommonOpts oracle_o;
    c_oracle->add_option("--k", oracle_k, "weight")->required();
    c_oracle->add_option("--branch", oracle_branch, "zero|cusp");
    add_common(c_oracle, oracle_o);

    // positivity
    auto* c_pos = app.add_subcommand("positivity", "scan a solution's coefficients");
    std::string pos_k, pos_kind = "cuspidal";
    CommonOpts pos_o;
    c_pos->add_option("--k", pos_k, "weight")->required();
    c_pos->add_option("--kind", pos_kind, "normalized|cuspidal|quasi");
    add_common(c_pos, pos_o);

    // cf
    auto* c_cf = app.add_subcommand("cf", "expansion in powers of 1/j");
    std::string cf_target = "e4p-over-e6";
    long cf_depth = 3;
    c_cf->add_option("--target", cf_target, "e4p-over-e6|atkin");
    c_cf->add_option("--depth", cf_depth, "number of 1/j powers")->check(CLI::PositiveNumber);

    // decompose
    auto* c_dec = app.add_subcommand("decompose", "E2-graded decomposition of the quasimodular solution");
    long dec_n = 0;
    CommonOpts dec_o;
    c_dec->add_option("--n", dec_n, "index n (weight k = 6n+5)")->check(CLI::NonNegativeNumber);
    add_common(c_dec, dec_o);

    // suite
    auto* c_suite = app.add_subcommand("suite", "run the identity regression suite");
    long suite_order = 200;
    c_suite->add_option("--terms", suite_order, "check order")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (c_expand->parsed()) {
        QSeries s = expand_form(form_id_from_string(expand_id), expand_o.terms);
        print_series(s, expand_o);
        return 0;
    }

    if (c_solve->parsed()) {
        Weight k = Weight::parse(solve_k);
        SolutionKind kind = parse_kind(solve_kind);
        QSeries s = solve(k, kind, solve_o.terms);
        if (solve_o.format() == OutFormat::Text)
            std::cout << s.to_string(16) << "\n";
        else
            print_series(s, solve_o);
        if (!solve_verify) return 0;
        SolutionReport rep = verify_solution(k, kind, solve_o.terms);
        std::cout << rep.str() << "\n";
        return rep.verified ? 0 : 1;
    }

    if (c_verify->parsed()) {
        SolutionReport rep =
            verify_solution(Weight::parse(verify_k), parse_kind(verify_family), verify_o.terms);
        std::cout << rep.str() << "\n";
        return rep.verified ? 0 : 1;
    }

    if (c_ladder->parsed()) {
        Weight k = Weight::parse(ladder_k);
        SolutionKind kind = parse_kind(ladder_kind);
        if (classify_weight(k) == ResidueClass::Quasi) kind = SolutionKind::Quasi;
        LadderSeed seed = ladder_seed(k, kind, ladder_o.terms);
        LadderState st = ascend_ladder(k, seed.Fk, seed.Fkm6, ladder_steps, seed.mu0_override);
        bool all_ok = true;
        for (const auto& [w, s] : st.rungs) {
            std::cout << "k=" << w.str() << ": " << s.to_string(4);
            if (ladder_verify && !s.is_zero()) {
                OperatorResidual r = kz_apply(s, w);
                bool ok = r.clean();
                all_ok = all_ok && ok;
                std::cout << (ok ? "  [solution verified]" : "  [RESIDUAL NONZERO]");
            }
            std::cout << "\n";
        }
        return (ladder_verify && !all_ok) ? 1 : 0;
    }

    if (c_oracle->parsed()) {
        FrobeniusBranch br;
        if (oracle_branch == "zero")
            br = FrobeniusBranch::Zero;
        else if (oracle_branch == "cusp")
            br = FrobeniusBranch::Cusp;
        else
            throw BadInput("unknown branch '" + oracle_branch + "' (use zero|cusp)");
        QSeries s = frobenius_solve(Weight::parse(oracle_k), br, oracle_o.terms);
        print_series(s, oracle_o);
        return 0;
    }

    if (c_pos->parsed()) {
        Weight k = Weight::parse(pos_k);
        QSeries s = solve(k, parse_kind(pos_kind), pos_o.terms + 1);
        PositivityReport rep = check_positivity(s, pos_o.terms);
        std::cout << rep.str() << "\n";
        return rep.status == PositivityStatus::AllPositive ? 0 : 1;
    }

    if (c_cf->parsed()) {
        long T = cf_depth + 8;
        QSeries target;
        if (cf_target == "e4p-over-e6") {
            target = mul(scale(make_rational(1, 240), theta_deriv(catalog(FormId::E4, T))),
                         inv(catalog(FormId::E6, T)));
        } else if (cf_target == "atkin") {
            target = mul(mul(catalog(FormId::E2, T), catalog(FormId::E4, T)),
                         inv(mul(catalog(FormId::E6, T), catalog(FormId::j, T))));
        } else {
            throw BadInput("unknown target '" + cf_target + "' (use e4p-over-e6|atkin)");
        }
        InvJExpansion ex = expand_in_inv_j(target, cf_depth);
        for (std::size_t i = 0; i < ex.coeffs.size(); ++i)
            std::cout << (i ? ", " : "") << to_string(ex.coeffs[i]);
        std::cout << "\n";
        return 0;
    }

    if (c_dec->parsed()) {
        long w = 6 * dec_n + 6;
        QuasiDecomposition d = decompose_quasimodular(quasimodular_solution(dec_n, dec_o.terms), w);
        std::cout << d.str() << "\n";
        return 0;
    }

    if (c_suite->parsed()) {
        auto results = identity_suite(suite_order);
        int fails = 0;
        for (const auto& r : results) {
            std::cout << (r.pass ? "[ok]   " : "[FAIL] ") << r.name;
            if (!r.pass && !r.detail.empty()) std::cout << "  (" << r.detail << ")";
            std::cout << "\n";
            fails += r.pass ? 0 : 1;
        }
        std::cout << results.size() - fails << "/" << results.size() << " identities hold\n";
        return fails ? 1 : 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qmod::BadInput& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const qmod::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
