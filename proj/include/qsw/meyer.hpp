#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Meyer system: transition profile theta, scaling transform, mask and wavelet
// transform in closed form, plus their first derivatives.

namespace qsw {

inline constexpr double pi = 3.14159265358979323846;

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite argument");
}

// Odd core s(x) of the transition profile, stored as plain polynomial
// coefficients (c[j] multiplies x^j). theta(w) = (pi/4) s(3w/pi) on |w| <= pi/3
// and +-pi/4 outside.
struct ThetaProfile {
    std::vector<double> core;

    // s(x) = (15x - 10x^3 + 3x^5)/8: odd, s(1)=1, s'(1)=s''(1)=0, s' >= 0.
    static ThetaProfile default_quintic() {
        return ThetaProfile{{0.0, 15.0 / 8.0, 0.0, -10.0 / 8.0, 0.0, 3.0 / 8.0}};
    }

    double s(double x) const {
        double v = 0.0;
        for (std::size_t j = core.size(); j-- > 0;) v = v * x + core[j];
        return v;
    }
    double s1(double x) const {
        double v = 0.0;
        for (std::size_t j = core.size(); j-- > 1;) v = v * x + core[j] * static_cast<double>(j);
        return v;
    }
    double s2(double x) const {
        double v = 0.0;
        for (std::size_t j = core.size(); j-- > 2;)
            v = v * x + core[j] * static_cast<double>(j) * static_cast<double>(j - 1);
        return v;
    }
};

struct ThetaValidation {
    double odd_residual = 0.0;        // max |s(x)+s(-x)|
    double boundary_residual = 0.0;   // |s(1)-1|
    double c1_residual = 0.0;         // |s'(1)|
    double c2_residual = 0.0;         // |s''(1)|
    double monotone_min = 0.0;        // min s'(x) on [-1,1]
    double tolerance = 1e-9;
    bool odd_ok = false, boundary_ok = false, c1_ok = false, c2_ok = false, monotone_ok = false;
    bool passed = false;
};

inline ThetaValidation validate_theta(const ThetaProfile& p, double tol = 1e-9) {
    ThetaValidation r;
    r.tolerance = tol;
    const int grid = 2048;
    double odd = 0.0, mono = p.s1(-1.0);
    for (int i = 0; i <= grid; ++i) {
        const double x = -1.0 + 2.0 * i / grid;
        odd = std::max(odd, std::abs(p.s(x) + p.s(-x)));
        mono = std::min(mono, p.s1(x));
    }
    r.odd_residual = odd;
    r.boundary_residual = std::abs(p.s(1.0) - 1.0);
    r.c1_residual = std::abs(p.s1(1.0));
    r.c2_residual = std::abs(p.s2(1.0));
    r.monotone_min = mono;
    r.odd_ok = r.odd_residual <= tol;
    r.boundary_ok = r.boundary_residual <= tol;
    r.c1_ok = r.c1_residual <= tol;
    r.c2_ok = r.c2_residual <= tol;
    r.monotone_ok = r.monotone_min >= -tol;
    r.passed = r.odd_ok && r.boundary_ok && r.c1_ok && r.c2_ok && r.monotone_ok;
    return r;
}

inline double theta_eval(const ThetaProfile& p, double w) {
    require_finite(w, "theta_eval");
    if (w >= pi / 3.0) return pi / 4.0;
    if (w <= -pi / 3.0) return -pi / 4.0;
    return (pi / 4.0) * p.s(3.0 * w / pi);
}

inline double theta_prime(const ThetaProfile& p, double w) {
    if (std::abs(w) >= pi / 3.0) return 0.0;
    return 0.75 * p.s1(3.0 * w / pi);
}

// Band-limited Meyer system with plateau parameter omega0 in [pi/3, pi/2).
struct MeyerSystem {
    double omega0;
    double omega1;
    ThetaProfile theta;

    explicit MeyerSystem(double w0 = pi / 3.0, ThetaProfile prof = ThetaProfile::default_quintic())
        : omega0(w0), omega1(pi - w0), theta(std::move(prof)) {
        if (!(w0 >= pi / 3.0 && w0 < pi / 2.0))
            throw std::invalid_argument("MeyerSystem: omega0 must lie in [pi/3, pi/2)");
    }

    double band_scale() const { return pi / (3.0 * (pi - 2.0 * omega0)); }
};

// phi^M hat: 1 on |w|<=2w0, cos(pi/4 + theta(scale*(|w|-pi))) on the band, 0 beyond.
inline double meyer_phi_hat(const MeyerSystem& m, double w) {
    require_finite(w, "meyer_phi_hat");
    const double aw = std::abs(w);
    if (aw <= 2.0 * m.omega0) return 1.0;
    if (aw > 2.0 * pi - 2.0 * m.omega0) return 0.0;
    return std::cos(pi / 4.0 + theta_eval(m.theta, m.band_scale() * (aw - pi)));
}

inline double meyer_phi_hat_prime(const MeyerSystem& m, double w) {
    require_finite(w, "meyer_phi_hat_prime");
    const double aw = std::abs(w);
    if (aw <= 2.0 * m.omega0 || aw >= 2.0 * pi - 2.0 * m.omega0) return 0.0;
    const double b = m.band_scale();
    const double arg = b * (aw - pi);
    const double v = -std::sin(pi / 4.0 + theta_eval(m.theta, arg)) * theta_prime(m.theta, arg) * b;
    return w >= 0.0 ? v : -v;
}

inline double wrap_pi(double w) { return w - 2.0 * pi * std::round(w / (2.0 * pi)); }

// m^M(w) = phi^M hat(2w), 2pi-periodized.
inline double meyer_mask(const MeyerSystem& m, double w) {
    require_finite(w, "meyer_mask");
    return meyer_phi_hat(m, 2.0 * wrap_pi(w));
}

inline double meyer_mask_prime(const MeyerSystem& m, double w) {
    require_finite(w, "meyer_mask_prime");
    return 2.0 * meyer_phi_hat_prime(m, 2.0 * wrap_pi(w));
}

// psi^M hat(w) = e^{-iw/2} m^M(w/2 + pi) phi^M hat(w/2); the mask is real.
inline std::complex<double> meyer_psi_hat(const MeyerSystem& m, double w) {
    require_finite(w, "meyer_psi_hat");
    const double amp = meyer_mask(m, w / 2.0 + pi) * meyer_phi_hat(m, w / 2.0);
    return std::polar(1.0, -w / 2.0) * amp;
}

inline std::complex<double> meyer_psi_hat_prime(const MeyerSystem& m, double w) {
    require_finite(w, "meyer_psi_hat_prime");
    const double a = meyer_mask(m, w / 2.0 + pi) * meyer_phi_hat(m, w / 2.0);
    const double da = 0.5 * (meyer_mask_prime(m, w / 2.0 + pi) * meyer_phi_hat(m, w / 2.0) +
                             meyer_mask(m, w / 2.0 + pi) * meyer_phi_hat_prime(m, w / 2.0));
    const std::complex<double> ph = std::polar(1.0, -w / 2.0);
    return ph * (da - std::complex<double>(0.0, 0.5) * a);
}

} // namespace qsw
