// Command-line front end: builds quasispline families, measures the summation
// conditions, runs the convergence study against the Meyer reference, and
// dumps plot-ready samples.  All outputs are deterministic for a fixed config.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsw/analysis.hpp"
#include "qsw/conditions.hpp"
#include "qsw/meyer.hpp"
#include "qsw/quasispline.hpp"
#include "qsw/report_io.hpp"
#include "qsw/trigpoly.hpp"

namespace {

constexpr int exit_usage = 1;
constexpr int exit_construction = 2;
constexpr int exit_numerical = 3;

struct RunConfig {
    double omega0 = qsw::pi / 3.0;
    std::string method = "vp";
    int l_min = 1;
    int l_max = 4;
    std::vector<int> n_list;          // explicit n per l; empty = budget-driven
    double alpha_budget = 0.7;        // per-l budgets are alpha_budget/l, gamma_budget/l
    double gamma_budget = 2.6;
    int n_max = 1 << 16;
    int grid = 8192;
    int loc_samples = 1 << 16;
    double loc_omega = 64.0 * qsw::pi;
    double synth_omega = 64.0 * qsw::pi;
    int synth_samples = 1 << 16;
    std::string out_dir = ".";
    std::string format = "csv";
    std::string theta_coeffs;         // optional odd-core override "c0,c1,..."
};

qsw::ThetaProfile theta_from(const RunConfig& cfg) {
    if (cfg.theta_coeffs.empty()) return qsw::ThetaProfile::default_quintic();
    std::vector<double> c;
    std::stringstream ss(cfg.theta_coeffs);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(std::stod(tok));
    return qsw::ThetaProfile{c};
}

void validate(const RunConfig& cfg) {
    if (!(cfg.omega0 >= qsw::pi / 3.0 && cfg.omega0 < qsw::pi / 2.0))
        throw CLI::ValidationError("--omega0 must lie in [pi/3, pi/2)");
    if (cfg.l_min < 1 || cfg.l_max < cfg.l_min)
        throw CLI::ValidationError("l range must satisfy 1 <= l-min <= l-max");
    if (cfg.l_max > qsw::max_double_precision_level) {
        const char* p = std::getenv("QSW_PRECISION");
        if (p == nullptr || std::string(p) != "extended")
            throw CLI::ValidationError(
                "l-max exceeds the double-precision cap (24); set QSW_PRECISION=extended to force");
    }
    if (!cfg.n_list.empty() &&
        static_cast<int>(cfg.n_list.size()) != cfg.l_max - cfg.l_min + 1)
        throw CLI::ValidationError("--n list must have one entry per l in the range");
    if (cfg.format != "csv" && cfg.format != "json")
        throw CLI::ValidationError("--format must be csv or json");
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream os(std::filesystem::path(cfg.out_dir) / name, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open output file " + name);
    return os;
}

int pick_n(const RunConfig& cfg, const qsw::MeyerSystem& sys, const qsw::SummationMethod& method,
           int l) {
    if (!cfg.n_list.empty()) return cfg.n_list[static_cast<std::size_t>(l - cfg.l_min)];
    return qsw::select_n(sys, l, method, {cfg.alpha_budget / l, cfg.gamma_budget / l}, cfg.n_max,
                         cfg.grid);
}

int cmd_meyer_info(const RunConfig& cfg) {
    const qsw::MeyerSystem sys(cfg.omega0, theta_from(cfg));
    double qmf = 0.0, pu = 0.0;
    const int grid = 4096;
    for (int i = 0; i < grid; ++i) {
        const double w = -qsw::pi + 2.0 * qsw::pi * i / grid;
        const double a = qsw::meyer_mask(sys, w), b = qsw::meyer_mask(sys, w + qsw::pi);
        qmf = std::max(qmf, std::abs(a * a + b * b - 1.0));
        double s = 0.0;
        for (int k = -3; k <= 3; ++k) {
            const double v = qsw::meyer_phi_hat(sys, w + 2.0 * qsw::pi * k);
            s += v * v;
        }
        pu = std::max(pu, std::abs(s - 1.0));
    }
    const auto lp = qsw::meyer_phi_localization(sys);
    const auto lw = qsw::meyer_psi_localization(sys);
    auto os = open_out(cfg, "meyer_info.csv");
    os << "omega0,qmf_residual,pu_residual,uc_meyer_phi,uc_meyer_psi,phi_freq2,phi_time2,"
          "psi_freq2,psi_time2\n";
    os << qsw::fmt_g17(cfg.omega0) << "," << qsw::fmt_g17(qmf) << "," << qsw::fmt_g17(pu) << ","
       << qsw::fmt_g17(lp.uc) << "," << qsw::fmt_g17(lw.uc) << "," << qsw::fmt_g17(lp.freq_radius2)
       << "," << qsw::fmt_g17(lp.time_radius2) << "," << qsw::fmt_g17(lw.freq_radius2) << ","
       << qsw::fmt_g17(lw.time_radius2) << "\n";
    std::cout << "meyer-info: qmf=" << qmf << " pu=" << pu << " uc_phi=" << lp.uc
              << " uc_psi=" << lw.uc << "\n";
    return 0;
}

int cmd_check_conditions(const RunConfig& cfg) {
    const qsw::MeyerSystem sys(cfg.omega0, theta_from(cfg));
    const auto method = qsw::SummationMethod::by_name(cfg.method);
    std::vector<qsw::ConditionReport> rows;
    for (int l = cfg.l_min; l <= cfg.l_max; ++l) {
        const int n = pick_n(cfg, sys, method, l);
        rows.push_back(qsw::measure_report(sys, l, n, method, std::max(cfg.grid, 4 * n)));
    }
    auto os = open_out(cfg, "conditions.csv");
    qsw::write_condition_csv(os, rows);
    const auto led = qsw::ledger(rows, cfg.omega0);
    std::cout << "check-conditions: c=" << led.c << " C0=" << led.c0 << "\n";
    for (const auto& r : rows)
        if (!r.con3) {
            std::cerr << "con3 failed at l=" << r.l << "\n";
            return exit_construction;
        }
    return 0;
}

int cmd_build_family(const RunConfig& cfg) {
    const qsw::MeyerSystem sys(cfg.omega0, theta_from(cfg));
    const auto method = qsw::SummationMethod::by_name(cfg.method);
    std::vector<qsw::ConditionReport> rows;
    int failures = 0;
    for (int l = cfg.l_min; l <= cfg.l_max; ++l) {
        try {
            const int n = pick_n(cfg, sys, method, l);
            const auto q = qsw::build(sys, l, n, method);
            rows.push_back(qsw::measure_report(sys, l, n, method, std::max(cfg.grid, 4 * n)));
            std::cout << "built l=" << l << " n=" << n << " u0=" << q.u_at_0()
                      << " K=" << q.k_width() << "\n";
        } catch (const std::exception& e) {
            ++failures;
            qsw::ConditionReport bad;
            bad.l = l;
            rows.push_back(bad);
            std::cerr << "l=" << l << " failed: " << e.what() << "\n";
        }
    }
    auto os = open_out(cfg, "family.csv");
    qsw::write_condition_csv(os, rows);
    if (failures == cfg.l_max - cfg.l_min + 1) return exit_construction;
    return 0;
}

int cmd_convergence(const RunConfig& cfg) {
    const qsw::MeyerSystem sys(cfg.omega0, theta_from(cfg));
    const auto method = qsw::SummationMethod::by_name(cfg.method);
    std::vector<qsw::QuasisplineSystem> family;
    std::vector<qsw::ConditionReport> rows;
    for (int l = cfg.l_min; l <= cfg.l_max; ++l) {
        const int n = pick_n(cfg, sys, method, l);
        family.push_back(qsw::build(sys, l, n, method));
        rows.push_back(qsw::measure_report(sys, l, n, method, std::max(cfg.grid, 4 * n)));
    }
    const auto led = qsw::ledger(rows, cfg.omega0);
    std::vector<const qsw::QuasisplineSystem*> ptrs;
    for (const auto& q : family) ptrs.push_back(&q);
    qsw::LocalizationOptions opt;
    opt.samples = cfg.loc_samples;
    opt.omega = cfg.loc_omega;
    auto st = qsw::uc_gap_table(ptrs, sys, opt);
    for (std::size_t i = 0; i < st.rows.size(); ++i) {
        st.rows[i].mu = rows[i].mu;
        st.rows[i].envelope =
            std::max(rows[i].mu, rows[i].l * std::pow(led.c0, led.envelope_exponent[i]));
    }
    if (cfg.format == "json") {
        auto os = open_out(cfg, "convergence.json");
        qsw::write_convergence_json(os, st);
    } else {
        auto os = open_out(cfg, "convergence.csv");
        qsw::write_convergence_csv(os, st);
    }
    std::cout << "convergence: " << st.rows.size() << " rows written\n";
    return 0;
}

int cmd_sample(const RunConfig& cfg, const std::string& which, const std::string& domain) {
    const qsw::MeyerSystem sys(cfg.omega0, theta_from(cfg));
    const auto method = qsw::SummationMethod::by_name(cfg.method);
    std::function<std::complex<double>(double)> fhat;
    std::unique_ptr<qsw::QuasisplineSystem> q;
    if (which == "phi_perp" || which == "psi_perp") {
        const int l = cfg.l_max;
        const int n = pick_n(cfg, sys, method, l);
        q = std::make_unique<qsw::QuasisplineSystem>(sys, l, n, method);
        if (which == "phi_perp")
            fhat = [&](double w) { return std::complex<double>(q->phi_hat_perp(w), 0.0); };
        else
            fhat = [&](double w) { return q->psi_hat_perp(w); };
    } else if (which == "meyer_phi") {
        fhat = [&](double w) { return std::complex<double>(qsw::meyer_phi_hat(sys, w), 0.0); };
    } else if (which == "meyer_psi") {
        fhat = [&](double w) { return qsw::meyer_psi_hat(sys, w); };
    } else {
        throw CLI::ValidationError("unknown sample target " + which);
    }
    auto os = open_out(cfg, "samples_" + which + "_" + domain + ".csv");
    if (domain == "frequency") {
        os << "omega,re,im\n";
        const int m = cfg.synth_samples;
        for (int i = 0; i <= m; ++i) {
            const double w = -cfg.synth_omega + 2.0 * cfg.synth_omega * i / m;
            const auto v = fhat(w);
            os << qsw::fmt_g17(w) << "," << qsw::fmt_g17(v.real()) << "," << qsw::fmt_g17(v.imag())
               << "\n";
        }
    } else if (domain == "time") {
        const auto ts = qsw::synthesize(fhat, cfg.synth_omega, cfg.synth_samples);
        os << "t,re,im\n";
        for (std::size_t i = 0; i < ts.t.size(); ++i)
            os << qsw::fmt_g17(ts.t[i]) << "," << qsw::fmt_g17(ts.f[i].real()) << ","
               << qsw::fmt_g17(ts.f[i].imag()) << "\n";
    } else {
        throw CLI::ValidationError("domain must be time or frequency");
    }
    std::cout << "sample: wrote " << which << " (" << domain << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasispline wavelet construction and analysis"};
    app.require_subcommand(1);
    RunConfig cfg;

    app.set_config("--config", "", "flat key=value config file");
    app.add_option("--omega0", cfg.omega0, "Meyer plateau parameter in [pi/3, pi/2)");
    app.add_option("--method", cfg.method, "summation method: vp|fejer|partial");
    app.add_option("--l-min", cfg.l_min, "smallest smoothness level");
    app.add_option("--l-max", cfg.l_max, "largest smoothness level");
    app.add_option("--n", cfg.n_list, "explicit n per l (overrides the budget policy)");
    app.add_option("--alpha-budget", cfg.alpha_budget, "alpha budget scale (per-l: value/l)");
    app.add_option("--gamma-budget", cfg.gamma_budget, "gamma budget scale (per-l: value/l)");
    app.add_option("--n-max", cfg.n_max, "doubling sweep cap");
    app.add_option("--grid", cfg.grid, "sup-norm measurement grid");
    app.add_option("--loc-samples", cfg.loc_samples, "localization quadrature samples");
    app.add_option("--loc-omega", cfg.loc_omega, "localization cutoff");
    app.add_option("--synth-omega", cfg.synth_omega, "synthesis cutoff");
    app.add_option("--synth-samples", cfg.synth_samples, "synthesis samples (power of two)");
    app.add_option("--out", cfg.out_dir, "output directory");
    app.add_option("--format", cfg.format, "csv|json");
    app.add_option("--theta-coeffs", cfg.theta_coeffs, "odd-core polynomial coefficients");

    auto* sc_meyer = app.add_subcommand("meyer-info", "Meyer mask residuals and localization");
    auto* sc_cond = app.add_subcommand("check-conditions", "measure (con1)-(con3) per level");
    auto* sc_build = app.add_subcommand("build-family", "build the family, write condition rows");
    auto* sc_conv = app.add_subcommand("convergence", "uncertainty-constant gap study");
    auto* sc_samp = app.add_subcommand("sample", "dump transform samples");
    for (auto* sc : {sc_meyer, sc_cond, sc_build, sc_conv, sc_samp}) sc->fallthrough();
    std::string which = "phi_perp", domain = "frequency";
    sc_samp->add_option("--which", which, "phi_perp|psi_perp|meyer_phi|meyer_psi");
    sc_samp->add_option("--domain", domain, "time|frequency");

    try {
        app.parse(argc, argv);
        validate(cfg);
        if (sc_meyer->parsed()) return cmd_meyer_info(cfg);
        if (sc_cond->parsed()) return cmd_check_conditions(cfg);
        if (sc_build->parsed()) return cmd_build_family(cfg);
        if (sc_conv->parsed()) return cmd_convergence(cfg);
        if (sc_samp->parsed()) return cmd_sample(cfg, which, domain);
        return exit_usage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    } catch (const qsw::construction_error& e) {
        std::cerr << "construction error: " << e.what() << "\n";
        return exit_construction;
    } catch (const qsw::PolicyError& e) {
        std::cerr << "policy error: " << e.what() << "\n";
        return exit_construction;
    } catch (const qsw::numerical_error& e) {
        std::cerr << "numerical-consistency error: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical-consistency error: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
