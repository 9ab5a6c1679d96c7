#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsw/fft.hpp"
#include "qsw/meyer.hpp"

// Finite trigonometric polynomials, Fourier coefficient extraction on uniform
// grids, and linear methods of summation (de la Vallee Poussin by default).

namespace qsw {

// a0/2 + sum_{k=1..n} (a[k] cos kw + b[k] sin kw).  b may be empty for even
// polynomials; when present it is indexed b[k-1] for k = 1..n.
struct TrigPolynomial {
    std::vector<double> a;  // size degree+1
    std::vector<double> b;  // size degree or empty

    TrigPolynomial() : a(1, 0.0) {}
    explicit TrigPolynomial(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs = {})
        : a(std::move(cos_coeffs)), b(std::move(sin_coeffs)) {
        if (a.empty()) a.assign(1, 0.0);
        if (!b.empty() && b.size() != a.size() - 1)
            throw std::invalid_argument("TrigPolynomial: sine coefficients must cover k=1..degree");
    }

    int degree() const { return static_cast<int>(a.size()) - 1; }

    double eval(double w) const {
        // rotation recurrence; one cos/sin call per evaluation
        const double c1 = std::cos(w), s1 = std::sin(w);
        double ck = 1.0, sk = 0.0;
        double acc = 0.5 * a[0];
        const bool odd = !b.empty();
        for (std::size_t k = 1; k < a.size(); ++k) {
            const double cn = ck * c1 - sk * s1;
            const double sn = sk * c1 + ck * s1;
            ck = cn; sk = sn;
            acc += a[k] * ck;
            if (odd) acc += b[k - 1] * sk;
        }
        return acc;
    }

    double operator()(double w) const { return eval(w); }

    // value and coefficient-level derivative from one recurrence pass
    std::pair<double, double> eval_pair(double w) const {
        const double c1 = std::cos(w), s1 = std::sin(w);
        double ck = 1.0, sk = 0.0;
        double v = 0.5 * a[0], d = 0.0;
        const bool odd = !b.empty();
        for (std::size_t k = 1; k < a.size(); ++k) {
            const double cn = ck * c1 - sk * s1;
            const double sn = sk * c1 + ck * s1;
            ck = cn; sk = sn;
            const auto kk = static_cast<double>(k);
            v += a[k] * ck;
            d -= kk * a[k] * sk;
            if (odd) {
                v += b[k - 1] * sk;
                d += kk * b[k - 1] * ck;
            }
        }
        return {v, d};
    }

    // coefficient-level d/dw: a_k cos -> -k a_k sin, b_k sin -> k b_k cos
    TrigPolynomial derivative() const {
        const int n = degree();
        std::vector<double> da(static_cast<std::size_t>(n) + 1, 0.0);
        std::vector<double> db(static_cast<std::size_t>(std::max(n, 0)), 0.0);
        for (int k = 1; k <= n; ++k) {
            db[k - 1] = -k * a[k];
            if (!b.empty()) da[k] = k * b[k - 1];
        }
        return TrigPolynomial(std::move(da), std::move(db));
    }

    // max |p| over a uniform grid of [-pi, pi)
    double sup_norm(int grid = 8192) const {
        double m = 0.0;
        for (int i = 0; i < grid; ++i)
            m = std::max(m, std::abs(eval(-pi + 2.0 * pi * i / grid)));
        return m;
    }
};

// Values of the polynomial on the uniform grid w_j = 2 pi j / size via FFT.
// size must be a power of two with size >= 2*(degree+1).
inline std::vector<double> eval_on_uniform_grid(const TrigPolynomial& p, std::size_t size) {
    if (!detail::is_pow2(size) || size < 2 * p.a.size())
        throw std::invalid_argument("eval_on_uniform_grid: size must be a power of two >= 2(deg+1)");
    std::vector<std::complex<double>> spec(size, 0.0);
    spec[0] = 0.5 * p.a[0] * static_cast<double>(size);
    for (std::size_t k = 1; k < p.a.size(); ++k) {
        std::complex<double> ck(0.5 * p.a[k], 0.0);
        if (!p.b.empty()) ck += std::complex<double>(0.0, -0.5 * p.b[k - 1]);
        spec[k] = ck * static_cast<double>(size);
        spec[size - k] = std::conj(ck) * static_cast<double>(size);
    }
    detail::fft(spec, +1);
    std::vector<double> out(size);
    for (std::size_t j = 0; j < size; ++j) out[j] = spec[j].real() / static_cast<double>(size);
    return out;
}

// Cosine coefficients a_k ~ (1/pi) int f cos(kw) dw of an even 2pi-periodic f
// by uniform-grid quadrature (exact for band-limited f up to grid/2).
inline TrigPolynomial cosine_coeffs(const std::function<double(double)>& f, int degree, int grid) {
    if (grid < 4 * degree) throw std::invalid_argument("cosine_coeffs: grid must be >= 4*degree");
    std::size_t n = 1;
    while (n < static_cast<std::size_t>(grid)) n <<= 1;
    std::vector<std::complex<double>> x(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double v = f(2.0 * pi * static_cast<double>(j) / static_cast<double>(n));
        if (!std::isfinite(v)) throw std::domain_error("cosine_coeffs: non-finite sample");
        x[j] = v;
    }
    detail::fft(x, -1);
    std::vector<double> a(static_cast<std::size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) a[k] = 2.0 * x[k].real() / static_cast<double>(n);
    return TrigPolynomial(std::move(a));
}

// Sine coefficients of an odd 2pi-periodic f (k = 1..degree).
inline TrigPolynomial sine_coeffs(const std::function<double(double)>& f, int degree, int grid) {
    if (grid < 4 * degree) throw std::invalid_argument("sine_coeffs: grid must be >= 4*degree");
    std::size_t n = 1;
    while (n < static_cast<std::size_t>(grid)) n <<= 1;
    std::vector<std::complex<double>> x(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double v = f(2.0 * pi * static_cast<double>(j) / static_cast<double>(n));
        if (!std::isfinite(v)) throw std::domain_error("sine_coeffs: non-finite sample");
        x[j] = v;
    }
    detail::fft(x, -1);
    std::vector<double> a(static_cast<std::size_t>(degree) + 1, 0.0);
    std::vector<double> b(static_cast<std::size_t>(degree));
    for (int k = 1; k <= degree; ++k) b[k - 1] = -2.0 * x[k].imag() / static_cast<double>(n);
    return TrigPolynomial(std::move(a), std::move(b));
}

// de la Vallee Poussin triangle row: 1 up to n/2, then linear decay to 0 at n.
inline std::vector<double> vp_weights(int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("vp_weights: n must be even and >= 2");
    std::vector<double> lam(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k)
        lam[k - 1] = k <= n / 2 ? 1.0 : static_cast<double>(n - k) / (n / 2.0);
    return lam;
}

struct SummationMethod {
    std::string name;
    std::function<std::vector<double>(int)> weights;

    static SummationMethod vp() { return {"vp", [](int n) { return vp_weights(n); }}; }
    static SummationMethod fejer() {
        return {"fejer", [](int n) {
                    std::vector<double> lam(static_cast<std::size_t>(n));
                    for (int k = 1; k <= n; ++k) lam[k - 1] = 1.0 - static_cast<double>(k) / (n + 1.0);
                    return lam;
                }};
    }
    static SummationMethod partial() {
        return {"partial", [](int n) { return std::vector<double>(static_cast<std::size_t>(n), 1.0); }};
    }
    static SummationMethod by_name(const std::string& s) {
        if (s == "vp") return vp();
        if (s == "fejer") return fejer();
        if (s == "partial") return partial();
        throw std::invalid_argument("unknown summation method: " + s);
    }
};

// u_n(f, w) = a0/2 + sum lam_{n,k} (a_k cos kw + b_k sin kw)
inline TrigPolynomial apply_summation(const SummationMethod& m, const TrigPolynomial& coeffs, int n) {
    if (coeffs.degree() < n)
        throw std::invalid_argument("apply_summation: coefficient stream shorter than n");
    const auto lam = m.weights(n);
    std::vector<double> a(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> b;
    a[0] = coeffs.a[0];
    for (int k = 1; k <= n; ++k) a[k] = lam[k - 1] * coeffs.a[k];
    if (!coeffs.b.empty()) {
        b.assign(static_cast<std::size_t>(n), 0.0);
        for (int k = 1; k <= n; ++k) b[k - 1] = lam[k - 1] * coeffs.b[k - 1];
    }
    return TrigPolynomial(std::move(a), std::move(b));
}

// m^M_l(w) = m^M(w) / cos(w/2)^{2l} with value 0 wherever m^M vanishes, so the
// pole at w = +-pi is never touched; evaluated in log space.
inline double divided_meyer_mask(const MeyerSystem& sys, int l, double w) {
    if (l < 1) throw std::invalid_argument("divided_meyer_mask: l >= 1 required");
    require_finite(w, "divided_meyer_mask");
    const double wr = wrap_pi(w);
    const double m = meyer_mask(sys, wr);
    if (m <= 0.0) return 0.0;
    return std::exp(std::log(m) - 2.0 * l * std::log(std::cos(wr / 2.0)));
}

// quotient-rule derivative with the same support convention
inline double divided_meyer_mask_prime(const MeyerSystem& sys, int l, double w) {
    if (l < 1) throw std::invalid_argument("divided_meyer_mask_prime: l >= 1 required");
    require_finite(w, "divided_meyer_mask_prime");
    const double wr = wrap_pi(w);
    const double m = meyer_mask(sys, wr);
    if (m <= 0.0) return 0.0;
    const double m1 = meyer_mask_prime(sys, wr);
    const double scale = std::exp(-2.0 * l * std::log(std::cos(wr / 2.0)));
    return (m1 + l * std::tan(wr / 2.0) * m) * scale;
}

// hard cap for cos^{+-2l} dynamic range in double precision
inline constexpr int max_double_precision_level = 24;

} // namespace qsw
