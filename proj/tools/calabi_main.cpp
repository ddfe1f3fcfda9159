// calabi: exact solver and certifier for the coupled Kahler-Einstein /
// Hermitian-Yang-Mills equations on P(L+O) over (P^1)^k via the Calabi
// ansatz. Subcommands: constants | solve | verify | sweep | plot | export.
//
// Exit codes: 0 success/solvable, 2 certified no-solution, 1 usage or
// internal error.

#include "calabi/acceptance.hpp"
#include "calabi/json_io.hpp"
#include "calabi/profile.hpp"
#include "calabi/reconstruct.hpp"
#include "calabi/scenario.hpp"
#include "calabi/svg.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace calabi;

struct ScenarioFlags {
    std::string case_name;
    long k = 0;
    long m1 = 0, m2 = 0;
    bool m1_set = false, m2_set = false;
    std::string alpha1 = "1";

    void attach(CLI::App* cmd) {
        cmd->add_option("--case", case_name, "ansatz case: general | even | odd")
            ->required()
            ->check(CLI::IsMember({"general", "even", "odd"}));
        cmd->add_option("--k", k, "base dimension k")->required();
        cmd->add_option("--m1", m1, "twisting integer m1 (general case)")
            ->each([this](const std::string&) { m1_set = true; });
        cmd->add_option("--m2", m2, "twisting integer m2 (general case)")
            ->each([this](const std::string&) { m2_set = true; });
        cmd->add_option("--alpha1", alpha1, "alpha1 > 0 as a fraction p/q (default 1)");
    }

    Scenario build() const {
        Rational a1 = parse_rational(alpha1);
        if (case_name == "even") return Scenario::even(k, a1);
        if (case_name == "odd") return Scenario::odd(k, a1);
        if (!m1_set && !m2_set)
            throw ScenarioError("general case needs --m1 and/or --m2 (not both zero)");
        return Scenario::general(k, Int(m1), Int(m2), a1);
    }
};

Rational parse_width(const std::string& s) {
    // accepts "p/q" and the shorthand "1e-N"
    auto epos = s.find('e');
    if (epos != std::string::npos && s.substr(0, epos) == "1") {
        int ex = std::stoi(s.substr(epos + 1));
        if (ex < 0) return pow10_neg(-ex);
    }
    return parse_rational(s);
}

Rational display_width() {
    int exp = 30;
    if (const char* env = std::getenv("ANSATZ_PRECISION_EXP")) {
        int v = std::atoi(env);
        if (v >= 1 && v <= 300) exp = v;
    }
    return pow10_neg(exp);
}

std::string enclosure_str(const Interval& v) {
    return decimal_string(v.mid(), 12) + " (width <= " + decimal_string(v.width(), 40) + ")";
}

std::string coupling_line(const ScaledConstant& c, const Rational& width) {
    std::string line = c.str();
    if (c.exact() && c.base.two_pi_pow == 1 && c.base.coeff.is_rational())
        line += " = " + to_display_string(c.base.coeff.rational_value() * 2) + "*pi";
    line += " ~= " + decimal_string(c.eval(width).mid(), 10);
    return line;
}

int cmd_constants(const ScenarioFlags& flags, bool as_json) {
    Scenario s = flags.build();
    ConstantSet c = constant_set(s);
    Rational w = display_width();
    if (as_json) {
        std::cout << constants_json(s, c, w).dump(2) << "\n";
        return 0;
    }
    std::cout << "scenario: " << s.name() << " (alpha1 = " << to_display_string(s.alpha1)
              << ")\n";
    std::cout << "C_k     = " << c.C_k.str() << " ~= " << decimal_string(c.C_k.eval(w).mid(), 10)
              << "\n";
    std::cout << "R_k     = " << c.R_k.str();
    if (!c.R_k.is_rational())
        std::cout << " ~= " << decimal_string(c.R_k.eval(w).mid(), 10);
    std::cout << "\n";
    std::cout << "lambda  = " << c.lambda.str() << " ~= "
              << decimal_string(c.lambda.eval(w).mid(), 10) << "\n";
    if (c.ab) {
        std::cout << "a_k     = " << c.ab->first.str() << " ~= "
                  << decimal_string(c.ab->first.eval(w).mid(), 10) << "\n";
        std::cout << "b_k     = " << c.ab->second.str() << " ~= "
                  << decimal_string(c.ab->second.eval(w).mid(), 10) << "\n";
        std::cout << "C~_k    = " << c.c_tilde.asq.str() << " * a_k^2 + ("
                  << c.c_tilde.bsq.str() << ") * b_k^2 ~= "
                  << decimal_string(c.c_tilde.eval(c.ab->first, c.ab->second, w).mid(), 10)
                  << "\n";
    } else {
        std::cout << "C~_k    = " << c.c_tilde.one.str() << " ~= "
                  << decimal_string(c.c_tilde.one.eval(w).mid(), 10) << "\n";
    }
    std::cout << "alpha0/alpha1 = " << coupling_line(c.coupling, w) << "\n";
    return 0;
}

int cmd_solve(const ScenarioFlags& flags, bool as_json, const std::string& csv_path,
              const std::string& out_path, const Rational& tol, const Rational& eps,
              int grid) {
    Scenario s = flags.build();
    SolvabilityReport rep = solvability(s);
    Rational w = display_width();
    json j = report_json(rep, w);

    if (as_json) std::cout << j.dump(2) << "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << j.dump(2) << "\n";
    }
    if (!as_json) {
        std::cout << "scenario: " << s.name() << "\n";
        std::cout << "verdict: " << (rep.solvable() ? "solvable" : "no-solution") << "\n";
        std::cout << (rep.solvable() ? "alpha0/alpha1 = " : "pseudo-constraint alpha0/alpha1 = ")
                  << coupling_line(rep.coupling, w) << "\n";
        if (rep.solvable()) {
            for (const auto& e : rep.boundary->entries)
                std::cout << "boundary " << e.name << ": " << (e.pass ? "pass (exact)" : "FAIL")
                          << (e.pass ? "" : " residue " + e.residue) << "\n";
            std::cout << "positivity: Q > 0 on [0,2] ("
                      << (rep.positivity.method == SignCertificate::Method::Sturm
                              ? "sturm"
                              : "interval subdivision")
                      << ")\n";
            const MomentumProfile& p = *rep.profile;
            if (p.q.shape.max_exp() == 0 && p.q.shape.min_exp() == 0) {
                std::string coeffs;
                for (const auto& cc : to_tau_basis(to_rational_poly(p.N_poly)))
                    coeffs += (coeffs.empty() ? "" : ", ") + to_display_string(cc);
                std::cout << "phi coefficients [" << coeffs << "]\n";
            } else {
                std::cout << "phi = N/Q, N = " << p.N_poly.str()
                          << (p.has_log_term() ? " + " + p.N_log.str() + "*ln(u)" : "")
                          << ", Q = " << p.q.shape.str() << "  (u = 1 + tau)\n";
            }
        } else {
            std::cout << "witness: Q changes sign for u in ["
                      << to_display_string(rep.positivity.witness_lo) << ", "
                      << to_display_string(rep.positivity.witness_hi) << "]\n";
        }
    }
    if (!rep.solvable()) return 2;

    if (!csv_path.empty()) {
        Reconstruction rec = reconstruct(*rep.profile, eps, tol, grid);
        std::ofstream f(csv_path);
        f << reconstruction_csv(rec, *rep.profile);
    }
    return 0;
}

int cmd_verify(bool all, std::vector<std::string> ids, bool list_only) {
    if (list_only) {
        for (const auto& cr : acceptance::criteria())
            std::cout << cr.id << ": " << cr.summary << "\n";
        return 0;
    }
    if (!all && ids.empty()) {
        std::cerr << "verify: pass --all or one or more check ids (see --list)\n";
        return 1;
    }
    auto results = acceptance::run(all ? std::vector<std::string>{} : ids);
    if (results.empty()) {
        std::cerr << "verify: no matching checks\n";
        return 1;
    }
    bool ok = true;
    for (const auto& r : results) {
        std::printf("[%s] %-26s (%8.1f ms)  %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.ms,
                    r.detail.c_str());
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

int cmd_sweep(const std::string& case_name, long k_min, long k_max, long m1, long m2,
              const std::string& alpha1, bool as_json, const std::string& csv_path) {
    Rational a1 = parse_rational(alpha1);
    Rational w = display_width();
    json arr = json::array();
    std::string csv = "case,k,verdict,ratio_mid,witness_lo,witness_hi\n";
    for (long k = k_min; k <= k_max; ++k) {
        Scenario s;
        try {
            if (case_name == "even") {
                if (k % 2 != 0 || k < 2) continue;
                s = Scenario::even(k, a1);
            } else if (case_name == "odd") {
                if (k % 2 != 1 || k < 3) continue;
                s = Scenario::odd(k, a1);
            } else {
                s = Scenario::general(k, Int(m1), Int(m2), a1);
            }
        } catch (const ScenarioError&) {
            continue;
        }
        SolvabilityReport rep = solvability(s);
        std::string verdict = rep.solvable() ? "solvable" : "no-solution";
        std::string ratio_mid = decimal_string(rep.coupling.eval(w).mid(), 10);
        if (as_json || !csv_path.empty()) {
            arr.push_back(report_json(rep, w));
            csv += case_name + "," + std::to_string(k) + "," + verdict + "," + ratio_mid + ",";
            if (!rep.solvable())
                csv += to_display_string(rep.positivity.witness_lo) + "," +
                       to_display_string(rep.positivity.witness_hi);
            else
                csv += ",";
            csv += "\n";
        }
        if (!as_json) {
            std::cout << s.name() << ": " << verdict;
            if (rep.solvable())
                std::cout << ", alpha0/alpha1 = " << coupling_line(rep.coupling, w);
            else
                std::cout << ", witness u in [" << to_display_string(rep.positivity.witness_lo)
                          << ", " << to_display_string(rep.positivity.witness_hi) << "]";
            std::cout << "\n";
        }
    }
    if (as_json) std::cout << arr.dump(2) << "\n";
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        f << csv;
    }
    return 0;
}

int cmd_plot(const ScenarioFlags& flags, const std::string& out_path, bool with_s,
             const Rational& tol, const Rational& eps, int grid) {
    Scenario s = flags.build();
    SolvabilityReport rep = solvability(s);
    if (!rep.solvable()) {
        std::cerr << "no solution for " << s.name() << "; witness: Q changes sign for u in ["
                  << to_display_string(rep.positivity.witness_lo) << ", "
                  << to_display_string(rep.positivity.witness_hi) << "]\n";
        return 2;
    }
    const MomentumProfile& p = *rep.profile;

    PlotSeries phi{"phi(tau)", "#1f77b4", {}};
    PlotSeries q{"Q (scaled)", "#d62728", {}};
    const int n = 257;
    double qmax = 0, phimax = 0;
    std::vector<double> qv(n), pv(n);
    for (int i = 0; i < n; ++i) {
        Rational tau(2 * i, n - 1);
        pv[i] = p.phi_double(tau);
        qv[i] = to_double(p.Q_interval(1 + tau, pow10_neg(17)).mid());
        phimax = std::max(phimax, std::fabs(pv[i]));
        qmax = std::max(qmax, std::fabs(qv[i]));
    }
    double qscale = qmax > 0 ? phimax / qmax : 1.0;
    for (int i = 0; i < n; ++i) {
        double tau = 2.0 * i / (n - 1);
        phi.points.push_back({tau, pv[i]});
        q.points.push_back({tau, qv[i] * qscale});
    }
    std::vector<PlotSeries> series{phi, q};

    if (with_s) {
        PlotSeries sser{"s (scaled)", "#2ca02c", {}};
        Reconstruction rec = reconstruct(p, eps, tol, grid);
        double smax = 0;
        for (const auto& node : rec.nodes)
            smax = std::max(smax, std::fabs(to_double(node.s.mid())));
        double sscale = smax > 0 ? phimax / smax : 1.0;
        for (const auto& node : rec.nodes)
            sser.points.push_back({to_double(node.tau), to_double(node.s.mid()) * sscale});
        series.push_back(sser);
    }

    std::ofstream f(out_path);
    f << svg_line_chart("momentum profile: " + s.name(), "tau", "phi(tau)", series);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_export(const ScenarioFlags& flags, const std::string& out_path) {
    Scenario s = flags.build();
    Rational w = display_width();
    json j;
    j["scenario"] = to_json(s);
    j["constants"] = constants_json(s, constant_set(s), w);
    j["report"] = report_json(solvability(s), w);
    std::ofstream f(out_path);
    f << j.dump(2) << "\n";
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "calabi: exact solutions of the coupled Kahler-Einstein / Hermitian-Yang-Mills\n"
        "equations on P(L+O) over (P^1)^k via the Calabi ansatz"};
    app.require_subcommand(1);

    ScenarioFlags sc_constants, sc_solve, sc_plot, sc_export;
    bool json_constants = false, json_solve = false, json_sweep = false;
    std::string solve_csv, solve_out, plot_out, export_out, sweep_csv;
    std::string tol_s = "1e-12", eps_s = "1/100";
    int grid = 512;
    bool verify_all = false, verify_list = false;
    std::vector<std::string> verify_ids;
    std::string sweep_case;
    long sweep_kmin = 1, sweep_kmax = 8, sweep_m1 = 0, sweep_m2 = 1;
    std::string sweep_alpha1 = "1";

    CLI::App* constants = app.add_subcommand("constants", "print the topological constants");
    sc_constants.attach(constants);
    constants->add_flag("--json", json_constants, "machine-readable output");

    CLI::App* solve = app.add_subcommand("solve", "solve and certify one scenario");
    sc_solve.attach(solve);
    solve->add_flag("--json", json_solve, "machine-readable report");
    solve->add_option("--csv", solve_csv, "write the reconstruction CSV here");
    solve->add_option("--out", solve_out, "write the JSON report here");
    solve->add_option("--tol", tol_s, "quadrature tolerance (p/q or 1e-N; default 1e-12)");
    solve->add_option("--eps", eps_s, "endpoint truncation (default 1/100)");
    solve->add_option("--grid", grid, "reconstruction grid nodes (default 512)");

    CLI::App* verify = app.add_subcommand("verify", "run acceptance checks");
    verify->add_flag("--all", verify_all, "run every check");
    verify->add_flag("--list", verify_list, "list check ids");
    verify->add_option("ids", verify_ids, "check ids to run");

    CLI::App* sweep = app.add_subcommand("sweep", "verdicts across a k range");
    sweep->add_option("--case", sweep_case, "general | even | odd")
        ->required()
        ->check(CLI::IsMember({"general", "even", "odd"}));
    sweep->add_option("--k-min", sweep_kmin, "lowest k (default 1)");
    sweep->add_option("--k-max", sweep_kmax, "highest k (default 8)");
    sweep->add_option("--m1", sweep_m1, "m1 for the general case (default 0)");
    sweep->add_option("--m2", sweep_m2, "m2 for the general case (default 1)");
    sweep->add_option("--alpha1", sweep_alpha1, "alpha1 (default 1)");
    sweep->add_flag("--json", json_sweep, "machine-readable output");
    sweep->add_option("--csv", sweep_csv, "write a CSV summary here");

    CLI::App* plot = app.add_subcommand("plot", "emit an SVG of phi and Q");
    sc_plot.attach(plot);
    plot->add_option("--out", plot_out, "output SVG path")->required();
    bool with_s = false;
    plot->add_flag("--with-s", with_s, "include s(tau) from reconstruction");
    plot->add_option("--tol", tol_s, "quadrature tolerance for --with-s");
    plot->add_option("--eps", eps_s, "endpoint truncation for --with-s");
    plot->add_option("--grid", grid, "reconstruction grid nodes");

    CLI::App* exportc = app.add_subcommand("export", "write scenario+constants+report JSON");
    sc_export.attach(exportc);
    exportc->add_option("--out", export_out, "output JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (constants->parsed()) return cmd_constants(sc_constants, json_constants);
        if (solve->parsed())
            return cmd_solve(sc_solve, json_solve, solve_csv, solve_out, parse_width(tol_s),
                             parse_width(eps_s), grid);
        if (verify->parsed()) return cmd_verify(verify_all, verify_ids, verify_list);
        if (sweep->parsed())
            return cmd_sweep(sweep_case, sweep_kmin, sweep_kmax, sweep_m1, sweep_m2,
                             sweep_alpha1, json_sweep, sweep_csv);
        if (plot->parsed())
            return cmd_plot(sc_plot, plot_out, with_s, parse_width(tol_s), parse_width(eps_s),
                            grid);
        if (exportc->parsed()) return cmd_export(sc_export, export_out);
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
