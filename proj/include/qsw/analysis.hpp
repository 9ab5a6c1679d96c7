#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qsw/meyer.hpp"
#include "qsw/quasispline.hpp"
#include "qsw/trigpoly.hpp"

// Quantitative analysis of constructed transforms: time/frequency
// localization, uncertainty-constant gaps against the Meyer reference,
// transfer-operator smoothness estimates, mask purity, and decay fitting.

namespace qsw {

struct LocalizationReport {
    double time_centre = 0.0;
    double freq_centre = 0.0;
    double time_radius2 = 0.0;
    double freq_radius2 = 0.0;
    double uc = 0.0;              // Delta_f * Delta_fhat
    double norm = 0.0;            // (2pi)^-1 int |fhat|^2
    double quad_error = 0.0;      // |endpoint integrand| as a crude tail indicator
};

struct LocalizationOptions {
    double omega = 64.0 * pi;    // quadrature cutoff (wrappers double it until decay holds)
    int samples = 1 << 16;       // points across [-omega, omega]
    double far_delta = 1e-8;     // decay gate at the cutoff; squared tail stays below 1e-13
    double time_centre = 0.0;    // t0 is fixed, not measured: transforms here are real/even
};

// quadrature body; frequency centre/radius by direct quadrature of w |fhat|^2
// and w^2 |fhat|^2, time radius through (2pi)^-1 int |fhat'|^2
inline LocalizationReport localization_pair(
    const std::function<std::pair<std::complex<double>, std::complex<double>>(double)>& fhat_pair,
    const LocalizationOptions& opt) {
    const int m = opt.samples / 2;
    const double h = opt.omega / m;
    for (int i = 1; i <= 4; ++i) {
        const double probe = opt.omega * (1.0 - 0.002 * i);
        if (std::abs(fhat_pair(probe).first) > opt.far_delta ||
            std::abs(fhat_pair(-probe).first) > opt.far_delta)
            throw std::domain_error("localization: insufficient decay at the cutoff");
    }
    double nrm = 0.0, wf = 0.0, w2f = 0.0, dnorm = 0.0, tail = 0.0;
    for (int i = -m; i <= m; ++i) {
        const double w = i * h;
        const double wt = (i == -m || i == m) ? 0.5 : 1.0;
        const auto [fv, fd] = fhat_pair(w);
        const double f2 = std::norm(fv), d2 = std::norm(fd);
        nrm += wt * f2;
        wf += wt * w * f2;
        w2f += wt * w * w * f2;
        dnorm += wt * d2;
        if (i == m) tail = std::max(f2, d2);
    }
    nrm *= h; wf *= h; w2f *= h; dnorm *= h;
    if (nrm <= 0.0) throw numerical_error("localization: zero norm");
    LocalizationReport r;
    r.norm = nrm / (2.0 * pi);
    r.freq_centre = wf / nrm;
    r.freq_radius2 = w2f / nrm - r.freq_centre * r.freq_centre;
    r.time_centre = opt.time_centre;
    const double t2 = dnorm / nrm - opt.time_centre * opt.time_centre;
    if (t2 < 0.0) throw numerical_error("localization: negative time-radius radicand");
    r.time_radius2 = t2;
    r.uc = std::sqrt(r.freq_radius2 * r.time_radius2);
    r.quad_error = tail * h;
    return r;
}

// spec-shaped entry point over separate transform / derivative evaluators
inline LocalizationReport localization(const std::function<std::complex<double>(double)>& fhat,
                                       const std::function<std::complex<double>(double)>& fhat_prime,
                                       const LocalizationOptions& opt = {}) {
    return localization_pair(
        [&](double w) {
            return std::pair<std::complex<double>, std::complex<double>>{fhat(w), fhat_prime(w)};
        },
        opt);
}

// Meyer scaling reference
inline LocalizationReport meyer_phi_localization(const MeyerSystem& sys,
                                                 LocalizationOptions opt = {}) {
    opt.omega = 16.0 * pi;
    opt.time_centre = 0.0;
    return localization([&](double w) { return std::complex<double>(meyer_phi_hat(sys, w), 0.0); },
                        [&](double w) { return std::complex<double>(meyer_phi_hat_prime(sys, w), 0.0); },
                        opt);
}

// Meyer wavelet reference; t0 = 1/2 by evenness of |psi hat|
inline LocalizationReport meyer_psi_localization(const MeyerSystem& sys,
                                                 LocalizationOptions opt = {}) {
    opt.omega = 16.0 * pi;
    opt.time_centre = 0.5;
    return localization([&](double w) { return meyer_psi_hat(sys, w); },
                        [&](double w) { return meyer_psi_hat_prime(sys, w); }, opt);
}

// widen the cutoff until the transform has decayed below far_delta
inline double adapt_cutoff(const std::function<double(double)>& fabs_eval, double omega0,
                           double far_delta) {
    double om = omega0;
    for (int tries = 0; tries < 6; ++tries) {
        bool ok = true;
        for (int i = 1; i <= 4 && ok; ++i)
            ok = fabs_eval(om * (1.0 - 0.002 * i)) <= far_delta;
        if (ok) return om;
        om *= 2.0;
    }
    throw std::domain_error("adapt_cutoff: transform does not decay below far_delta; raise Omega");
}

inline LocalizationReport scaling_localization(const QuasisplineSystem& q,
                                               LocalizationOptions opt = {}) {
    opt.time_centre = 0.0;
    opt.omega = adapt_cutoff([&](double w) { return std::abs(q.phi_hat_perp(w)); }, opt.omega,
                             opt.far_delta);
    return localization_pair(
        [&](double w) {
            const auto [v, d] = q.phi_hat_perp_pair(w);
            return std::pair<std::complex<double>, std::complex<double>>{v, d};
        },
        opt);
}

inline LocalizationReport wavelet_localization(const QuasisplineSystem& q,
                                               LocalizationOptions opt = {}) {
    opt.time_centre = 0.5;
    opt.omega = adapt_cutoff([&](double w) { return std::abs(q.psi_hat_perp(w)); }, opt.omega,
                             opt.far_delta);
    return localization_pair([&](double w) { return q.psi_hat_perp_pair(w); }, opt);
}

struct ConvergenceRow {
    int l = 0;
    int n = 0;
    double gap_phi_freq = 0.0;   // |D2_{phi_perp hat} - D2_{phiM hat}|
    double gap_phi_time = 0.0;
    double gap_psi_freq = 0.0;
    double gap_psi_time = 0.0;
    double mask_dist = 0.0;      // ||m_l - m^M||_C
    double phi_factor_dist = 0.0; // ||Phi_l - 1||_C
    double phi_factor_deriv = 0.0; // ||Phi_l'||_C
    double perp_dist = 0.0;      // sup |phi_perp hat - phiM hat|
    double mu = 0.0;
    double envelope = 0.0;       // max(mu, C0 power term) from the ledger
    double uc_phi = 0.0, uc_psi = 0.0;
};

struct ConvergenceStudy {
    double meyer_phi_freq2 = 0.0, meyer_phi_time2 = 0.0;
    double meyer_psi_freq2 = 0.0, meyer_psi_time2 = 0.0;
    double meyer_uc_phi = 0.0, meyer_uc_psi = 0.0;
    std::vector<ConvergenceRow> rows;
};

// Family-level UC gaps against the Meyer reference plus the sup-norm columns.
inline ConvergenceStudy uc_gap_table(const std::vector<const QuasisplineSystem*>& family,
                                     const MeyerSystem& meyer, LocalizationOptions opt = {}) {
    ConvergenceStudy st;
    const auto mp = meyer_phi_localization(meyer, opt);
    const auto mw = meyer_psi_localization(meyer, opt);
    st.meyer_phi_freq2 = mp.freq_radius2;
    st.meyer_phi_time2 = mp.time_radius2;
    st.meyer_psi_freq2 = mw.freq_radius2;
    st.meyer_psi_time2 = mw.time_radius2;
    st.meyer_uc_phi = mp.uc;
    st.meyer_uc_psi = mw.uc;
    const int grid = 4096;
    for (const auto* q : family) {
        const auto lp = scaling_localization(*q, opt);
        const auto lw = wavelet_localization(*q, opt);
        ConvergenceRow row;
        row.l = q->l();
        row.n = q->n();
        row.gap_phi_freq = std::abs(lp.freq_radius2 - mp.freq_radius2);
        row.gap_phi_time = std::abs(lp.time_radius2 - mp.time_radius2);
        row.gap_psi_freq = std::abs(lw.freq_radius2 - mw.freq_radius2);
        row.gap_psi_time = std::abs(lw.time_radius2 - mw.time_radius2);
        row.uc_phi = lp.uc;
        row.uc_psi = lw.uc;
        for (int i = 0; i < grid; ++i) {
            const double w = -pi + 2.0 * pi * i / grid;
            row.mask_dist = std::max(row.mask_dist, std::abs(q->mask(w) - meyer_mask(meyer, w)));
            row.phi_factor_dist = std::max(row.phi_factor_dist, std::abs(q->phi_cached(w) - 1.0));
            row.phi_factor_deriv = std::max(row.phi_factor_deriv, std::abs(q->phi_cached_prime(w)));
        }
        const double wmax = 4.0 * std::exp(2.0 * meyer.omega0);
        const int fgrid = 4096;
        for (int i = 0; i <= fgrid; ++i) {
            const double w = -wmax + 2.0 * wmax * i / fgrid;
            row.perp_dist =
                std::max(row.perp_dist, std::abs(q->phi_hat_perp(w) - meyer_phi_hat(meyer, w)));
        }
        st.rows.push_back(row);
    }
    return st;
}

struct SmoothnessReport {
    std::vector<double> theta_k;
    double theta_estimate = 0.0;      // theta_{k_max}
    double theta_extrapolated = 0.0;  // k th_k - (k-1) th_{k-1}, the limit estimate
    double holder_lower = 0.0;        // 2l - 1 + log2(c/(1+eps))
    double holder_upper = 0.0;        // 2l
    int trivial_cycle_multiplicity = 0;
};

// theta_k = -(1/k) log2 || m_c(w) m_c(2w) ... m_c(2^{k-1} w) ||_inf via grid
// maximisation with golden-section refinement around the argmax.
inline std::vector<double> theta_k_sequence(const std::function<double(double)>& m_c, int k_max,
                                            int grid = 1 << 14) {
    if (k_max < 1) throw std::invalid_argument("theta_k_sequence: k_max >= 1");
    std::vector<double> out;
    std::vector<double> best_w(static_cast<std::size_t>(k_max), 0.0);
    for (int k = 1; k <= k_max; ++k) {
        double mx = 0.0, arg = 0.0;
        for (int i = 0; i < grid; ++i) {
            const double w = -pi + 2.0 * pi * i / grid;
            double p = 1.0;
            for (int j = 0; j < k; ++j) p *= m_c(std::ldexp(w, j));
            const double a = std::abs(p);
            if (a > mx) { mx = a; arg = w; }
        }
        // golden-section refinement on [arg-h, arg+h]
        const double gr = 0.6180339887498949;
        double lo = arg - 2.0 * pi / grid, hi = arg + 2.0 * pi / grid;
        auto val = [&](double w) {
            double p = 1.0;
            for (int j = 0; j < k; ++j) p *= m_c(std::ldexp(w, j));
            return std::abs(p);
        };
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = val(x1), f2 = val(x2);
        for (int it = 0; it < 60; ++it) {
            if (f1 < f2) {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + gr * (hi - lo); f2 = val(x2);
            } else {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - gr * (hi - lo); f1 = val(x1);
            }
        }
        mx = std::max(mx, std::max(f1, f2));
        out.push_back(-std::log2(mx) / k);
    }
    return out;
}

inline SmoothnessReport smoothness_report(const QuasisplineSystem& q, double c_running,
                                          double epsilon, int k_max = 12, int grid = 1 << 14) {
    SmoothnessReport r;
    const double u0 = q.u_at_0();
    r.theta_k = theta_k_sequence([&](double w) { return q.u().eval(w) / u0; }, k_max, grid);
    r.theta_estimate = r.theta_k.back();
    r.theta_extrapolated = k_max > 1
        ? k_max * r.theta_k[static_cast<std::size_t>(k_max) - 1] -
              (k_max - 1) * r.theta_k[static_cast<std::size_t>(k_max) - 2]
        : r.theta_estimate;
    r.holder_lower = 2.0 * q.l() - 1.0 + std::log2(c_running / (1.0 + epsilon));
    r.holder_upper = 2.0 * q.l();
    r.trivial_cycle_multiplicity = 2 * q.l();
    return r;
}

struct PurityReport {
    std::vector<double> circle_zeros;              // angles of unit-circle roots
    std::vector<std::pair<double, double>> symmetric_pairs;
    std::vector<std::vector<double>> cycles;       // angle lists, squaring-closed
    bool trivial_cycle = false;
    bool is_pure = false;
};

namespace detail_pure {

// All zeros of an even/general trig polynomial on the unit circle |z|=1,
// found as real roots in w: sign-change bisection plus touching-zero minima.
inline std::vector<double> circle_roots(const TrigPolynomial& p, double tol) {
    const int grid = std::max(4 * (p.degree() + 1), 4096);
    std::vector<double> vals(static_cast<std::size_t>(grid));
    double scale = 0.0;
    for (int i = 0; i < grid; ++i) {
        vals[static_cast<std::size_t>(i)] = p.eval(-pi + 2.0 * pi * i / grid);
        scale = std::max(scale, std::abs(vals[static_cast<std::size_t>(i)]));
    }
    if (scale == 0.0) return {};  // identically zero: treated as rootless
    const double zero_tol = tol * std::max(1.0, scale);
    std::vector<double> roots;
    auto push = [&](double w) {
        const double wr = wrap_pi(w);
        for (double r : roots)
            if (std::abs(wrap_pi(r - wr)) < 1e-9) return;
        roots.push_back(wr);
    };
    const double h = 2.0 * pi / grid;
    for (int i = 0; i < grid; ++i) {
        const double a = vals[static_cast<std::size_t>(i)];
        const double b = vals[static_cast<std::size_t>((i + 1) % grid)];
        const double w0 = -pi + h * i;
        if (a == 0.0) { push(w0); continue; }
        if (a * b < 0.0) {
            double lo = w0, hi = w0 + h, flo = a;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi), fm = p.eval(mid);
                if (flo * fm <= 0.0) hi = mid;
                else { lo = mid; flo = fm; }
            }
            push(0.5 * (lo + hi));
        } else if (std::abs(a) < 1e-4 * scale) {
            // candidate touching zero (even-order root, no sign change):
            // refine the local |p| minimum, then test against the tolerance
            const double am = std::abs(p.eval(w0 - h)), ap = std::abs(p.eval(w0 + h));
            if (std::abs(a) > am || std::abs(a) > ap) continue;
            double lo = w0 - h, hi = w0 + h;
            const double gr = 0.6180339887498949;
            double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            double f1 = std::abs(p.eval(x1)), f2 = std::abs(p.eval(x2));
            for (int it = 0; it < 80; ++it) {
                if (f1 > f2) {
                    lo = x1; x1 = x2; f1 = f2;
                    x2 = lo + gr * (hi - lo); f2 = std::abs(p.eval(x2));
                } else {
                    hi = x2; x2 = x1; f2 = f1;
                    x1 = hi - gr * (hi - lo); f1 = std::abs(p.eval(x1));
                }
            }
            if (std::min(f1, f2) < zero_tol) push(0.5 * (lo + hi));
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace detail_pure

// Root search on the unit circle (the symmetric-pair and cycle definitions
// only involve on-circle zeros), then pair matching and cycle membership over
// the rational angles 2 pi k / (2^n - 1), n <= 8.
inline PurityReport purity_check(const TrigPolynomial& p, double tol = 1e-12) {
    PurityReport rep;
    rep.circle_zeros = detail_pure::circle_roots(p, tol);
    const double angle_tol = 1e-6;
    for (std::size_t i = 0; i < rep.circle_zeros.size(); ++i) {
        for (std::size_t j = i; j < rep.circle_zeros.size(); ++j) {
            const double d = std::abs(wrap_pi(rep.circle_zeros[j] - rep.circle_zeros[i] - pi));
            if (d < angle_tol)
                rep.symmetric_pairs.emplace_back(rep.circle_zeros[i], rep.circle_zeros[j]);
        }
    }
    double scale = 0.0;
    for (int i = 0; i < 1024; ++i)
        scale = std::max(scale, std::abs(p.eval(-pi + 2.0 * pi * i / 1024.0)));
    const double zero_tol = tol * std::max(1.0, scale);
    for (int nn = 1; nn <= 8; ++nn) {
        const int period = (1 << nn) - 1;
        for (int k = 0; k < period; ++k) {
            std::vector<double> orbit;
            bool smallest = true;
            int kk = k;
            for (int step = 0; step < nn; ++step) {
                if (step > 0 && kk == k) break;  // shorter period, seen earlier
                if (kk < k) { smallest = false; break; }
                orbit.push_back(2.0 * pi * kk / period);
                kk = (2 * kk) % period;
            }
            if (!smallest || kk != k || static_cast<int>(orbit.size()) != nn) continue;
            bool cycle = true;
            for (double ang : orbit)
                if (std::abs(p.eval(ang + pi)) > zero_tol) { cycle = false; break; }
            if (cycle) {
                rep.cycles.push_back(orbit);
                if (nn == 1 && k == 0) rep.trivial_cycle = true;
            }
        }
    }
    rep.is_pure = rep.symmetric_pairs.empty() && rep.cycles.empty();
    return rep;
}

struct DecayFit {
    double beta = 0.0;        // slope of log|f| vs |t| (negative for decay)
    double intercept = 0.0;
    double r2 = 0.0;
    int points = 0;
    bool underflow = false;   // all tail samples at the numerical floor
};

// Least-squares fit of log|f(t)| against t over the tail t in [T, max t],
// applied to per-unit-interval envelope maxima so oscillation nulls do not
// drown the regression.  Samples below `floor` are dropped.
inline DecayFit decay_fit(const std::vector<double>& t, const std::vector<std::complex<double>>& f,
                          double tail_start, double floor_level = 1e-13, double block = 1.0) {
    if (t.size() != f.size() || t.empty())
        throw std::invalid_argument("decay_fit: mismatched or empty samples");
    std::vector<double> xs, ys;
    const double t_max = t.back();
    int above = 0;
    for (double b0 = tail_start; b0 < t_max; b0 += block) {
        double best = 0.0, arg = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] < b0 || t[i] >= b0 + block) continue;
            const double a = std::abs(f[i]);
            if (a > best) { best = a; arg = t[i]; }
        }
        if (best > floor_level) {
            xs.push_back(arg);
            ys.push_back(std::log(best));
            ++above;
        }
    }
    DecayFit out;
    out.points = above;
    if (above < 3) {
        out.underflow = true;
        return out;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
    }
    out.beta = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.intercept = (sy - out.beta * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ym = sy / n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double pred = out.beta * xs[i] + out.intercept;
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - ym) * (ys[i] - ym);
    }
    out.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return out;
}

// Log-log envelope slope of |fhat| over [lo, hi]: window maxima on a
// log-spaced partition, then linear regression.
inline double far_field_slope(const std::function<double(double)>& fhat_abs, double lo, double hi,
                              int windows = 24, int samples_per_window = 512) {
    std::vector<double> xs, ys;
    for (int wdx = 0; wdx < windows; ++wdx) {
        const double a = lo * std::pow(hi / lo, static_cast<double>(wdx) / windows);
        const double b = lo * std::pow(hi / lo, static_cast<double>(wdx + 1) / windows);
        double best = 0.0, arg = a;
        for (int i = 0; i < samples_per_window; ++i) {
            const double w = a + (b - a) * i / samples_per_window;
            const double v = std::abs(fhat_abs(w));
            if (v > best) { best = v; arg = w; }
        }
        if (best > 0.0) {
            xs.push_back(std::log(arg));
            ys.push_back(std::log(best));
        }
    }
    if (xs.size() < 3) throw numerical_error("far_field_slope: not enough usable windows");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace qsw
