#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsw/meyer.hpp"
#include "qsw/trigpoly.hpp"

// Desk-scale measurements of the summation-method hypotheses: alpha(l) for
// the mask error, gamma(l) for the derivative error, u(pi) != 0, plus the
// n(l) selection policy and the parameter ledger.

namespace qsw {

struct ConditionReport {
    int l = 0;
    int n = 0;
    double alpha = 0.0;     // ||u_n(m^M_l) - m^M_l||_C
    double gamma = 0.0;     // ||u_n((m^M_l)') - (m^M_l)'||_C
    double u0 = 0.0;        // u_l(0)
    double upi = 0.0;       // u_l(pi)
    double mu = 0.0;        // l*alpha + gamma
    double epsilon = 0.0;   // alpha / ||m^M_l||_C
    bool con3 = false;
};

namespace detail_cond {

struct Approximant {
    TrigPolynomial u, u1;
};

inline Approximant make_u(const MeyerSystem& sys, int l, int n, const SummationMethod& method) {
    const int grid = std::max(8 * n, 8192);
    const auto c = cosine_coeffs([&](double w) { return divided_meyer_mask(sys, l, w); }, n, grid);
    const auto d =
        sine_coeffs([&](double w) { return divided_meyer_mask_prime(sys, l, w); }, n, grid);
    return {apply_summation(method, c, n), apply_summation(method, d, n)};
}

} // namespace detail_cond

inline double measure_alpha(const MeyerSystem& sys, int l, int n, const SummationMethod& method,
                            int grid = 8192) {
    if (grid < 4 * n) throw std::invalid_argument("measure_alpha: grid must be >= 4n");
    const auto ap = detail_cond::make_u(sys, l, n, method);
    double m = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double w = -pi + 2.0 * pi * i / grid;
        m = std::max(m, std::abs(ap.u.eval(w) - divided_meyer_mask(sys, l, w)));
    }
    return m;
}

inline double measure_gamma(const MeyerSystem& sys, int l, int n, const SummationMethod& method,
                            int grid = 8192) {
    if (grid < 4 * n) throw std::invalid_argument("measure_gamma: grid must be >= 4n");
    const auto ap = detail_cond::make_u(sys, l, n, method);
    double m = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double w = -pi + 2.0 * pi * i / grid;
        m = std::max(m, std::abs(ap.u1.eval(w) - divided_meyer_mask_prime(sys, l, w)));
    }
    return m;
}

struct Con3Result {
    double value = 0.0;
    bool pass = false;
};

inline Con3Result check_con3(const TrigPolynomial& u) {
    const double v = u.eval(pi);
    return {v, std::abs(v) > 1e-12};
}

inline ConditionReport measure_report(const MeyerSystem& sys, int l, int n,
                                      const SummationMethod& method, int grid = 8192) {
    const auto ap = detail_cond::make_u(sys, l, n, method);
    ConditionReport r;
    r.l = l;
    r.n = n;
    double norm = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double w = -pi + 2.0 * pi * i / grid;
        const double f = divided_meyer_mask(sys, l, w);
        const double f1 = divided_meyer_mask_prime(sys, l, w);
        r.alpha = std::max(r.alpha, std::abs(ap.u.eval(w) - f));
        r.gamma = std::max(r.gamma, std::abs(ap.u1.eval(w) - f1));
        norm = std::max(norm, std::abs(f));
    }
    r.u0 = ap.u.eval(0.0);
    r.upi = ap.u.eval(pi);
    r.mu = l * r.alpha + r.gamma;
    r.epsilon = r.alpha / norm;
    r.con3 = std::abs(r.upi) > 1e-12;
    return r;
}

struct Budgets {
    double alpha_budget = 0.0;  // requirement: alpha(l) <= alpha_budget / l
    double gamma_budget = 0.0;  // requirement: gamma(l) <= gamma_budget
};

// Defaults chosen so that the de la Vallee Poussin sweep terminates for every
// l <= 12 in double precision and the measured alpha/gamma ladders actually
// decrease across the family.
inline Budgets default_budgets(int l) { return {0.7 / l, 2.6 / l}; }

struct PolicyError : std::runtime_error {
    double best_alpha, best_gamma;
    PolicyError(const std::string& msg, double a, double g)
        : std::runtime_error(msg), best_alpha(a), best_gamma(g) {}
};

// Smallest n in the doubling sweep meeting both budgets with (con3) passing.
inline int select_n(const MeyerSystem& sys, int l, const SummationMethod& method,
                    const Budgets& budgets, int n_max = 1 << 16, int grid = 8192) {
    if (!(budgets.alpha_budget > 0.0) || !(budgets.gamma_budget > 0.0))
        throw std::invalid_argument("select_n: budgets must be positive");
    double best_a = std::numeric_limits<double>::infinity();
    double best_g = std::numeric_limits<double>::infinity();
    for (int n = 8; n <= n_max; n *= 2) {
        const auto r = measure_report(sys, l, n, method, std::max(grid, 4 * n));
        best_a = std::min(best_a, r.alpha);
        best_g = std::min(best_g, r.gamma);
        if (r.alpha <= budgets.alpha_budget / l && r.gamma <= budgets.gamma_budget && r.con3)
            return n;
    }
    throw PolicyError("select_n: n_max exhausted for l=" + std::to_string(l) +
                          " (best alpha=" + std::to_string(best_a) +
                          ", best gamma=" + std::to_string(best_g) + ")",
                      best_a, best_g);
}

struct ParameterLedger {
    double c = 0.0;                     // min |u_l(0)| over the range
    double c0 = 0.0;                    // 32 pi^2 e^{2 omega0} / 27
    std::vector<int> ls;
    std::vector<double> epsilon, mu;
    std::vector<double> envelope_exponent;  // -l + 2 log2((1+eps)/c)
};

inline ParameterLedger ledger(const std::vector<ConditionReport>& reports, double omega0 = pi / 3.0) {
    if (reports.empty()) throw std::invalid_argument("ledger: empty report list");
    ParameterLedger out;
    out.c = std::abs(reports.front().u0);
    for (const auto& r : reports) out.c = std::min(out.c, std::abs(r.u0));
    out.c0 = 32.0 * pi * pi * std::exp(2.0 * omega0) / 27.0;
    for (const auto& r : reports) {
        out.ls.push_back(r.l);
        out.epsilon.push_back(r.epsilon);
        out.mu.push_back(r.mu);
        out.envelope_exponent.push_back(-r.l + 2.0 * std::log2((1.0 + r.epsilon) / out.c));
    }
    return out;
}

} // namespace qsw
