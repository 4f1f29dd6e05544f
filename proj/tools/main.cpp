// stablewh: batch evaluation of the Lamperti-stable MAP exponents and ladder
// factors, identity verification, and Monte Carlo experiments.
//
// Exit codes: 0 success, 1 verification/statistical failure, 2 usage/domain
// error, 3 numerical non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "stablewh/exit_laws.hpp"
#include "stablewh/map_exponent.hpp"
#include "stablewh/montecarlo.hpp"
#include "stablewh/wiener_hopf.hpp"

using json = nlohmann::json;
using namespace stablewh;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

unsigned env_workers() {
    if (const char* w = std::getenv("STABLEWH_WORKERS")) {
        const long v = std::strtol(w, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::string config_comment(double alpha, double rho) {
    std::ostringstream os;
    os.precision(17);
    os << "alpha=" << alpha << " rho=" << rho;
    return os.str();
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    out.precision(17);
    return out;
}

void put(std::ostream& os, const cplx& z) { os << "," << z.real() << "," << z.imag(); }

// ---- exponent ---------------------------------------------------------------

int cmd_exponent(double alpha, double rho, const std::string& which, double re_min, double re_max,
                 int re_count, double z_im, const std::string& out_path) {
    const auto p = StableParams::validate(alpha, rho);
    auto out = open_csv(out_path);
    out << "# stablewh exponent which=" << which << " " << config_comment(alpha, rho)
        << " z_im=" << z_im << " z_re=[" << re_min << "," << re_max << "]x" << re_count << "\n";
    out << "z_re,z_im,m11_re,m11_im,m12_re,m12_im,m21_re,m21_im,m22_re,m22_im,det_re,det_im\n";
    for (int k = 0; k < re_count; ++k) {
        const double re =
            re_count == 1 ? re_min : re_min + (re_max - re_min) * k / (re_count - 1.0);
        const cplx z(re, z_im);
        Matrix2cd M;
        if (which == "F")
            M = map_F<double>(p, z);
        else if (which == "Fcirc")
            M = map_F_circ<double>(p, z);
        else if (which == "Fhat")
            M = map_F_hat<double>(p, z);
        else
            throw CLI::ValidationError("--which must be F, Fcirc or Fhat");
        const cplx det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
        out << re << "," << z_im;
        put(out, M(0, 0));
        put(out, M(0, 1));
        put(out, M(1, 0));
        put(out, M(1, 1));
        put(out, det);
        out << "\n";
    }
    return 0;
}

// ---- factors ----------------------------------------------------------------

int cmd_factors(double alpha, double rho, double lam_min, double lam_max, int lam_count,
                const std::string& out_path) {
    const auto p = StableParams::validate(alpha, rho);
    const LadderFactor<> asc(p, LadderKind::ascending);
    const LadderFactor<> dual(p, LadderKind::dual_ascending);
    std::vector<double> grid;
    for (int k = 0; k < lam_count; ++k)
        grid.push_back(lam_count == 1 ? lam_min
                                      : lam_min + (lam_max - lam_min) * k / (lam_count - 1.0));
    const auto comp = ladder_components(asc, grid);
    auto out = open_csv(out_path);
    out << "# stablewh factors " << config_comment(alpha, rho) << " lambda=[" << lam_min << ","
        << lam_max << "]x" << lam_count << "\n";
    out << "lambda,k11,k12,k21,k22,kh11,kh12,kh21,kh22,Phi1,Phi2,Lambda12,Lambda21,K12,K21\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto ka = asc(cplx(grid[k]));
        const auto kh = dual(cplx(grid[k]));
        out << grid[k];
        for (const auto& m : {ka, kh})
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) out << "," << m(i, j).real();
        out << "," << comp.Phi1[k] << "," << comp.Phi2[k] << "," << comp.Lambda(0, 1) << ","
            << comp.Lambda(1, 0) << "," << comp.K12[k] << "," << comp.K21[k] << "\n";
    }
    return 0;
}

// ---- verify -----------------------------------------------------------------

struct IdentityResult {
    std::string name;
    std::string grid;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

IdentityResult check_det_root(const StableParams& p) {
    IdentityResult r{"determinant_root", "z = alpha - 1", 0.0, 1e-10, false};
    const cplx z(p.alpha() - 1.0, 0.0);
    r.max_residual = std::abs(det_F(p, z)) / std::abs(det_F_prefactor(p, z));
    r.pass = r.max_residual <= r.tolerance;
    return r;
}

IdentityResult check_esscher_circ(const StableParams& p) {
    IdentityResult r{"esscher_equals_circ", "20 z-points", 0.0, 1e-10, false};
    for (int k = 0; k < 20; ++k) {
        const double re = -0.8 * std::min(p.alpha(), 1.0) + 0.08 * k * std::min(p.alpha(), 1.0);
        const cplx z(0.9 * re, 0.3 * (k - 10));
        if (!(z.real() > -p.alpha() && z.real() < 1.0)) continue;
        const auto a = esscher<double>(p, z, p.alpha() - 1.0);
        const auto b = map_F_circ<double>(p, z);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.max_residual = std::max(
                    r.max_residual, std::abs(a(i, j) - b(i, j)) /
                                        std::max(std::abs(b(i, j)), 1e-300));
    }
    r.pass = r.max_residual <= r.tolerance;
    return r;
}

IdentityResult check_duality(const StableParams& p) {
    IdentityResult r{"duality", "20 z-points", 0.0, 1e-12, false};
    const auto pi = stationary_pi(p);
    for (int k = 0; k < 20; ++k) {
        const cplx z(-0.4 + 0.06 * k, 0.25 * (k - 10));
        if (!(z.real() > -p.alpha() && z.real() < 1.0)) continue;
        const auto lhs = map_F_hat<double>(p, z);
        const auto Fm = map_F<double>(p, -z);
        Matrix2cd rhs;
        rhs(0, 0) = Fm(0, 0);
        rhs(1, 1) = Fm(1, 1);
        rhs(0, 1) = Fm(1, 0) * (pi(1) / pi(0));
        rhs(1, 0) = Fm(0, 1) * (pi(0) / pi(1));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.max_residual =
                    std::max(r.max_residual, std::abs(lhs(i, j) - rhs(i, j)) /
                                                 std::max(std::abs(rhs(i, j)), 1e-300));
    }
    r.pass = r.max_residual <= r.tolerance;
    return r;
}

IdentityResult check_factorisation(const StableParams& p, const std::vector<double>& thetas,
                                   const QuadConfig& cfg) {
    IdentityResult r{"deep_factorisation", "theta in {0.5,1,2,5} both signs", 0.0, 1e-6, false};
    const auto report = verify_factorisation(p, thetas, cfg);
    r.max_residual = report.max_rel_residual;
    r.pass = r.max_residual <= r.tolerance && report.fitted_constant.real() > 0.0;
    return r;
}

IdentityResult check_shift(const StableParams& p, const QuadConfig& cfg) {
    IdentityResult r{"kappa_shift", "lambda in {0.5,1,2,5}", 0.0, 1e-8, false};
    const double p1 = std::sin(kPi * p.alpha_rho_hat());
    const double p2 = std::sin(kPi * p.alpha_rho());
    for (double lam : {0.5, 1.0, 2.0, 5.0}) {
        const auto kc = kappa_circ_matrix(p, cplx(lam + p.alpha() - 1.0), cfg);
        const auto ka = kappa_matrix(p, cplx(lam), cfg);
        Matrix2cd shifted;
        shifted(0, 0) = kc(0, 0);
        shifted(1, 1) = kc(1, 1);
        shifted(0, 1) = kc(0, 1) * (p1 / p2);
        shifted(1, 0) = kc(1, 0) * (p2 / p1);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.max_residual =
                    std::max(r.max_residual, std::abs(shifted(i, j) - ka(i, j)) /
                                                 std::max(std::abs(ka(i, j)), 1e-300));
    }
    r.pass = r.max_residual <= r.tolerance;
    return r;
}

IdentityResult check_lemma52(const StableParams& p, const QuadConfig& cfg) {
    IdentityResult r{"lemma52_two_routes", "lambda in {0.5,1,2,5}", 0.0, 1e-6, false};
    const FactorIndices idx{p.alpha_rho(), p.alpha_rho_hat(), 1, 0};
    for (double lam : {0.5, 1.0, 2.0, 5.0}) {
        const double via_double = phi1_double_integral_oracle(p, lam, cfg);
        const double closed =
            std::sin(kPi * p.alpha_rho()) / kPi * kappa_qp(p, idx, cplx(lam), cfg).real();
        r.max_residual = std::max(r.max_residual, std::abs(via_double - closed) / closed);
    }
    r.pass = r.max_residual <= r.tolerance;
    return r;
}

IdentityResult check_hypergeometric(const StableParams& p, const QuadConfig& cfg) {
    const bool big = p.alpha() > 1.0;
    IdentityResult r{"hypergeometric_identity", big ? "big alpha bracket = pi" : "hat constant",
                     0.0, 1e-8, false};
    const auto [lhs, rhs] = hypergeometric_identity_check(
        p, big ? IdentityRegime::big_alpha : IdentityRegime::small_alpha, cfg);
    r.max_residual = std::abs(lhs - rhs) / std::abs(rhs);
    r.pass = r.max_residual <= r.tolerance;
    return r;
}

IdentityResult check_normalisations(const StableParams& p, const QuadConfig& cfg) {
    IdentityResult r{"overshoot_law_mass", "u > 0, both branches", 0.0, 1e-8, false};
    const double mass = cramer_branch_mass(p, 1, CramerRegime::big_alpha, cfg) +
                        cramer_branch_mass(p, 2, CramerRegime::big_alpha, cfg);
    r.max_residual = std::abs(mass - 1.0);
    r.pass = r.max_residual <= r.tolerance;
    return r;
}

IdentityResult check_killing(const StableParams& p, const QuadConfig& cfg) {
    IdentityResult r{"killing_dichotomy", "row sums at lambda = 0", 0.0, 1e-9, false};
    const auto k0 = kappa_matrix(p, cplx(0.0), cfg);
    const auto kh0 = kappa_hat_matrix(p, cplx(0.0), cfg);
    const bool small = p.alpha() <= 1.0;
    bool pattern = true;
    for (int i = 0; i < 2; ++i) {
        const double rs = (k0(i, 0) + k0(i, 1)).real();
        const double rsh = (kh0(i, 0) + kh0(i, 1)).real();
        if (small) {
            pattern = pattern && std::abs(rs) <= 1e-9;
            r.max_residual = std::max(r.max_residual, std::abs(rs));
            if (p.alpha() < 1.0) pattern = pattern && rsh > 1e-9;
        } else {
            pattern = pattern && std::abs(rsh) <= 1e-9 && rs > 1e-9;
            r.max_residual = std::max(r.max_residual, std::abs(rsh));
        }
    }
    r.pass = pattern;
    return r;
}

IdentityResult check_bernstein_shape(const StableParams& p, const QuadConfig& cfg) {
    IdentityResult r{"bernstein_shape", "lambda in {0,0.25,...,10}", 0.0, 0.0, true};
    const double ar = p.alpha_rho(), arh = p.alpha_rho_hat();
    for (const FactorIndices idx : {FactorIndices{ar, arh, 1, 0}, FactorIndices{ar, arh, 0, 1},
                                    FactorIndices{arh, ar, 1, 0}, FactorIndices{arh, ar, 0, 1}}) {
        std::vector<double> vals;
        for (double lam = 0.0; lam <= 10.0 + 1e-9; lam += 0.25)
            vals.push_back(p.alpha() <= 1.0 ? kappa_qp(p, idx, cplx(lam), cfg).real()
                                            : phi_qp(p, idx, cplx(lam), cfg).real());
        for (std::size_t k = 0; k + 1 < vals.size(); ++k)
            if (!(vals[k + 1] > vals[k])) r.pass = false;
        for (std::size_t k = 0; k + 2 < vals.size(); ++k)
            if (!(vals[k + 2] - 2.0 * vals[k + 1] + vals[k] < 0.0)) r.pass = false;
    }
    return r;
}

int cmd_verify(double alpha, double rho, double quad_rel_tol, const std::string& out_path) {
    const auto p = StableParams::validate(alpha, rho);
    QuadConfig cfg;
    cfg.rel_tol = quad_rel_tol;
    cfg.abs_tol = std::min(1e-14, quad_rel_tol);
    std::vector<IdentityResult> results;
    results.push_back(check_det_root(p));
    results.push_back(check_esscher_circ(p));
    results.push_back(check_duality(p));
    results.push_back(check_factorisation(p, {1.0, -1.0, 0.5, -0.5, 2.0, -2.0, 5.0, -5.0}, cfg));
    results.push_back(check_shift(p, cfg));
    if (p.alpha() <= 1.0) results.push_back(check_lemma52(p, cfg));
    results.push_back(check_hypergeometric(p, cfg));
    results.push_back(check_normalisations(p, cfg));
    results.push_back(check_killing(p, cfg));
    results.push_back(check_bernstein_shape(p, cfg));

    json report;
    report["config"] = {{"alpha", alpha}, {"rho", rho}, {"quad_rel_tol", quad_rel_tol}};
    bool all_pass = true;
    for (const auto& r : results) {
        report["identities"].push_back({{"name", r.name},
                                        {"grid", r.grid},
                                        {"max_residual", r.max_residual},
                                        {"tolerance", r.tolerance},
                                        {"pass", r.pass}});
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
                  << " residual=" << r.max_residual << "\n";
    }
    report["all_pass"] = all_pass;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot open output file: " + out_path);
        out << report.dump(2) << "\n";
    } else {
        std::cout << report.dump(2) << "\n";
    }
    return all_pass ? 0 : 1;
}

// ---- identities (standalone hypergeometric checks) --------------------------

int cmd_identities(double alpha, double rho, const std::string& out_path) {
    const auto p = StableParams::validate(alpha, rho);
    const bool big = p.alpha() > 1.0;
    const auto [lhs, rhs] = hypergeometric_identity_check(
        p, big ? IdentityRegime::big_alpha : IdentityRegime::small_alpha);
    json j;
    j["config"] = {{"alpha", alpha}, {"rho", rho}};
    j["regime"] = big ? "big_alpha" : "small_alpha";
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["residual"] = std::abs(lhs - rhs) / std::abs(rhs);
    const std::string text = j.dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << text;
    } else {
        std::cout << text;
    }
    return 0;
}

// ---- simulate ---------------------------------------------------------------

int cmd_simulate(const std::string& kind, double alpha, double rho, double x, double level_a,
                 MCConfig mc, double ks_bound, const std::string& out_prefix) {
    const auto p = StableParams::validate(alpha, rho);
    json summary;
    summary["config"] = {{"kind", kind},       {"alpha", alpha},
                         {"rho", rho},         {"n_paths", mc.n_paths},
                         {"time_step", mc.time_step}, {"seed", mc.seed},
                         {"n_workers", mc.n_workers}, {"x", x},
                         {"a", level_a},       {"ks_bound", ks_bound}};
    double ks = 0.0;
    if (kind == "two-sided-exit") {
        const auto rec = simulate_two_sided_exit(p, x, mc);
        std::uint64_t up = 0;
        std::vector<double> overshoots;
        for (const auto& r : rec)
            if (r.side == 1) {
                ++up;
                overshoots.push_back(r.overshoot);
            }
        const double up_mass = rogozin_up_mass(p, x, RogozinForm::symmetric);
        const auto est = proportion_estimate(up, rec.size());
        auto dens = [&](double th) { return rogozin_density(p, x, th, RogozinForm::symmetric); };
        ks = ks_statistic_vs_density(overshoots, dens, p.alpha_rho(), up_mass);
        summary["up_probability"] = {{"estimate", est.value},
                                     {"std_error", est.std_error},
                                     {"analytic", up_mass},
                                     {"sigmas", std::abs(est.value - up_mass) /
                                                    std::max(est.std_error, 1e-300)}};
        summary["overshoot_ks"] = ks;
        auto hist = Histogram::build(overshoots, 0.0, 10.0, 200);
        hist.write_csv(out_prefix + "_hist.csv",
                       {summary["config"].dump(), "conditional upward overshoot"},
                       [&](double th) { return dens(th) / up_mass; });
    } else if (kind == "ladder-overshoot") {
        const auto samples = estimate_ladder_overshoot(p, level_a, mc);
        std::vector<double> us;
        std::uint64_t j1 = 0;
        for (const auto& s : samples) {
            us.push_back(s.u);
            j1 += (s.j == 1);
        }
        std::sort(us.begin(), us.end());
        const double n = static_cast<double>(us.size());
        for (std::size_t i = 0; i < us.size(); ++i) {
            const double F = cramer_overshoot_cdf(p, us[i], CramerRegime::big_alpha);
            ks = std::max(ks, std::abs(F - static_cast<double>(i) / n));
            ks = std::max(ks, std::abs(F - static_cast<double>(i + 1) / n));
        }
        const auto est = proportion_estimate(j1, samples.size());
        summary["state1_probability"] = {
            {"estimate", est.value},
            {"std_error", est.std_error},
            {"analytic", cramer_branch_mass(p, 1, CramerRegime::big_alpha)}};
        summary["overshoot_ks"] = ks;
        auto hist = Histogram::build(us, 0.0, 8.0, 160);
        hist.write_csv(out_prefix + "_hist.csv", {summary["config"].dump(), "ladder overshoot u"},
                       [&](double u) {
                           return cramer_overshoot_density(p, u, 1, CramerRegime::big_alpha) +
                                  cramer_overshoot_density(p, u, 2, CramerRegime::big_alpha);
                       });
    } else {
        throw CLI::ValidationError("simulate kind must be two-sided-exit or ladder-overshoot");
    }
    summary["pass"] = ks <= ks_bound;
    std::ofstream out(out_prefix + "_summary.json");
    out << summary.dump(2) << "\n";
    std::cout << summary.dump(2) << "\n";
    return ks <= ks_bound ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deep Wiener-Hopf factorisation of the Lamperti-stable MAP: exponents, ladder "
                 "factors, identity verification, Monte Carlo"};
    app.set_config("--config", "", "key=value config file; flags override file values");
    app.require_subcommand(1);

    double alpha = 1.5, rho = 0.5;

    auto add_params = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "stability index in (0,2)")->required();
        cmd->add_option("--rho", rho, "positivity parameter")->required();
    };

    // exponent
    auto* exp_cmd = app.add_subcommand("exponent", "evaluate F / Fcirc / Fhat on a z grid");
    std::string which = "F", out_path = "exponent.csv";
    double re_min = 0.0, re_max = 0.0, z_im = 0.0;
    int re_count = 1;
    add_params(exp_cmd);
    exp_cmd->add_option("--which", which, "F | Fcirc | Fhat");
    exp_cmd->add_option("--z-re-min", re_min, "grid start");
    exp_cmd->add_option("--z-re-max", re_max, "grid end");
    exp_cmd->add_option("--z-re-count", re_count, "grid size");
    exp_cmd->add_option("--z-im", z_im, "imaginary part of z");
    exp_cmd->add_option("--out", out_path, "output CSV path");

    // factors
    auto* fac_cmd = app.add_subcommand("factors", "ladder matrices and components on a lambda grid");
    double lam_min = 0.0, lam_max = 5.0;
    int lam_count = 11;
    std::string fac_out = "factors.csv";
    add_params(fac_cmd);
    fac_cmd->add_option("--lambda-min", lam_min, "grid start (>= 0)");
    fac_cmd->add_option("--lambda-max", lam_max, "grid end");
    fac_cmd->add_option("--lambda-count", lam_count, "grid size");
    fac_cmd->add_option("--out", fac_out, "output CSV path");

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "run the closed-form identity suite");
    double quad_rel_tol = 1e-10;
    std::string ver_out;
    add_params(ver_cmd);
    ver_cmd->add_option("--quad-rel-tol", quad_rel_tol, "quadrature relative tolerance");
    ver_cmd->add_option("--out", ver_out, "JSON report path (default: stdout)");

    // identities
    auto* ide_cmd = app.add_subcommand("identities", "standalone hypergeometric identity checks");
    std::string ide_out;
    add_params(ide_cmd);
    ide_cmd->add_option("--out", ide_out, "JSON output path (default: stdout)");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo experiments vs closed forms");
    std::string kind = "two-sided-exit", sim_out = "simulate";
    double x = 0.3, level_a = 5.0, ks_bound = 0.02;
    MCConfig mc;
    mc.n_paths = 200000;
    mc.time_step = 1e-4;
    add_params(sim_cmd);
    sim_cmd->add_option("kind", kind, "two-sided-exit | ladder-overshoot");
    sim_cmd->add_option("--x", x, "start point in (-1,1)");
    sim_cmd->add_option("--a", level_a, "ladder level (start at e^{-a})");
    sim_cmd->add_option("--n-paths", mc.n_paths, "number of paths");
    sim_cmd->add_option("--h", mc.time_step, "skeleton time step");
    sim_cmd->add_option("--seed", mc.seed, "RNG seed");
    sim_cmd->add_option("--workers", mc.n_workers, "worker threads (default: env/hardware)");
    sim_cmd->add_option("--ks-bound", ks_bound, "KS acceptance bound");
    sim_cmd->add_option("--out", sim_out, "output path prefix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (exp_cmd->parsed())
            return cmd_exponent(alpha, rho, which, re_min, re_max, re_count, z_im, out_path);
        if (fac_cmd->parsed())
            return cmd_factors(alpha, rho, lam_min, lam_max, lam_count, fac_out);
        if (ver_cmd->parsed()) return cmd_verify(alpha, rho, quad_rel_tol, ver_out);
        if (ide_cmd->parsed()) return cmd_identities(alpha, rho, ide_out);
        if (sim_cmd->parsed()) {
            if (mc.n_workers == 0) mc.n_workers = env_workers();
            return cmd_simulate(kind, alpha, rho, x, level_a, mc, ks_bound, sim_out);
        }
    } catch (const NoConvergence& e) {
        std::cerr << "numerical non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const InadmissibleError& e) {
        std::cerr << "inadmissible parameters: " << e.what()
                  << "\n(admissible: rho in (1-1/alpha, 1/alpha), rho = 1/2 when alpha = 1)\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
