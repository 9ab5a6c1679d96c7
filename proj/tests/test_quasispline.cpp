#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "qsw/quasispline.hpp"

using namespace qsw;
using Catch::Approx;

namespace {
const MeyerSystem& meyer() {
    static MeyerSystem sys;
    return sys;
}
const QuasisplineSystem& q2() {
    static QuasisplineSystem q(meyer(), 2, 16, SummationMethod::vp());
    return q;
}
const QuasisplineSystem& q3() {
    static QuasisplineSystem q(meyer(), 3, 128, SummationMethod::vp());
    return q;
}
const QuasisplineSystem& q4() {
    static QuasisplineSystem q(meyer(), 4, 128, SummationMethod::vp());
    return q;
}
} // namespace

TEST_CASE("build rejects degenerate levels") {
    CHECK_THROWS_AS(build(meyer(), 0, 16, SummationMethod::vp()), std::invalid_argument);
    CHECK_THROWS_AS(build(meyer(), 25, 16, SummationMethod::vp()), std::invalid_argument);
}

TEST_CASE("mask normalization and the zero at pi") {
    for (const auto* q : {&q2(), &q3(), &q4()}) {
        CHECK(q->mask(0.0) == Approx(1.0).margin(1e-13));
        CHECK(std::abs(q->mask(pi)) < 1e-30);
    }
}

TEST_CASE("mask matches an independent assembly from the raw polynomial") {
    const auto& q = q3();
    const double w = pi / 3.0;
    const double expect = std::pow(std::cos(w / 2.0), 6.0) * q.u().eval(w) / q.u_at_0();
    CHECK(q.mask(w) == Approx(expect).epsilon(1e-14));
}

TEST_CASE("mask is 2pi-periodic and even") {
    const auto& q = q2();
    for (double w : {0.3, 1.1, 2.7}) {
        CHECK(q.mask(w) == Approx(q.mask(-w)).margin(1e-12));
        CHECK(q.mask(w) == Approx(q.mask(w + 2.0 * pi)).margin(1e-12));
    }
}

TEST_CASE("mask derivative endpoints and finite differences") {
    const auto& q = q3();
    CHECK(q.mask_prime(0.0) == Approx(0.0).margin(1e-12));
    CHECK(std::abs(q.mask_prime(pi)) < 1e-20);
    const double h = 1e-6;
    for (double w : {0.8, 1.6, 2.4}) {
        const double fd = (q.mask(w + h) - q.mask(w - h)) / (2.0 * h);
        CHECK(q.mask_prime(w) == Approx(fd).margin(1e-7 * (1.0 + std::abs(fd))));
    }
}

TEST_CASE("phi hat at zero and the refinement identity") {
    const auto& q = q3();
    CHECK(q.phi_hat(0.0) == Approx(1.0));
    for (double w : {0.7, 2.9, 11.0, 24.0}) {
        const double lhs = q.phi_hat(w);
        const double rhs = q.mask(w / 2.0) * q.phi_hat(w / 2.0);
        CHECK(lhs == Approx(rhs).margin(1e-9 * (1.0 + std::abs(rhs))));
    }
}

TEST_CASE("phi hat at 2 pi k is near zero (near-orthogonality)") {
    const QuasisplineSystem q(meyer(), 3, 48, SummationMethod::vp());
    for (int k : {1, -1}) {
        const double v = std::abs(q.phi_hat(2.0 * pi * k));
        CHECK(v < 1e-2);  // scale of ||Phi_l - 1||, against Meyer's exact 0
    }
}

TEST_CASE("phi hat prime: zero at origin, finite differences elsewhere") {
    const auto& q = q3();
    CHECK(q.phi_hat_prime(0.0) == Approx(0.0).margin(1e-12));
    const double h = 1e-6;
    for (double w : {1.3, 3.3, 9.2}) {
        const double fd = (q.phi_hat(w + h) - q.phi_hat(w - h)) / (2.0 * h);
        CHECK(q.phi_hat_prime(w) == Approx(fd).margin(1e-6 * (1.0 + std::abs(fd))));
    }
}

TEST_CASE("orthogonalizing factor: symmetry, periodicity, positivity") {
    const auto& q = q2();
    for (double w : {0.2, 1.5, 2.9}) {
        const double v = q.big_phi(w);
        CHECK(v > 0.0);
        CHECK(q.big_phi(-w) == Approx(v).margin(1e-12));
        CHECK(q.big_phi(w + 2.0 * pi) == Approx(v).margin(1e-12));
    }
}

TEST_CASE("cached cosine expansion reproduces the direct K-sum") {
    for (const auto* q : {&q2(), &q4()}) {
        std::mt19937 rng(4242);
        std::uniform_real_distribution<double> u(-pi, pi);
        for (int i = 0; i < 24; ++i) {
            const double w = u(rng);
            REQUIRE(q->phi_cached(w) == Approx(q->big_phi(w)).margin(1e-9));
        }
    }
}

TEST_CASE("big phi prime matches finite differences") {
    const auto& q = q2();
    const double h = 1e-6;
    for (double w : {0.4, 1.9}) {
        const double fd = (q.big_phi(w + h) - q.big_phi(w - h)) / (2.0 * h);
        CHECK(q.big_phi_prime(w) == Approx(fd).margin(1e-6 * (1.0 + std::abs(fd))));
    }
}

TEST_CASE("orthogonal mask: endpoints and the QMF residual") {
    const auto& q = q4();
    CHECK(q.ortho_mask(0.0) == Approx(1.0).margin(1e-9));
    CHECK(std::abs(q.ortho_mask(pi)) < 1e-20);
    double worst = 0.0;
    for (int i = 0; i < 1024; ++i) {
        const double w = -pi + 2.0 * pi * i / 1024.0;
        const double a = q.ortho_mask(w), b = q.ortho_mask(w + pi);
        worst = std::max(worst, std::abs(a * a + b * b - 1.0));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("orthogonalized scaling transform: normalization identity") {
    const auto& q = q3();
    CHECK(q.phi_hat_perp(0.0) == Approx(1.0).margin(1e-4));
    double worst = 0.0;
    for (int i = 0; i <= 256; ++i) {
        const double w = -pi + 2.0 * pi * i / 256.0;
        double s = 0.0;
        for (int k = -q.k_width(); k <= q.k_width(); ++k) {
            const double v = q.phi_hat_perp(w + 2.0 * pi * k);
            s += v * v;
        }
        worst = std::max(worst, std::abs(s - 1.0));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("wavelet transform: zero at origin, evenness, Plancherel") {
    const auto& q = q3();
    CHECK(std::abs(q.psi_hat_perp(0.0)) < 1e-20);
    for (double w : {0.9, 3.3, 7.1})
        CHECK(std::abs(q.psi_hat_perp(w)) == Approx(std::abs(q.psi_hat_perp(-w))).margin(1e-12));
    const int m = 1 << 14;
    const double om = 64.0 * pi, h = om / m;
    double s = 0.0;
    for (int i = -m; i <= m; ++i) {
        const double wt = (std::abs(i) == m) ? 0.5 : 1.0;
        s += wt * std::norm(q.psi_hat_perp(i * h));
    }
    CHECK(s * h / (2.0 * pi) == Approx(1.0).margin(1e-6));
}

TEST_CASE("wavelet derivative: finite at zero, finite differences, symmetry") {
    const auto& q = q3();
    CHECK(std::isfinite(std::abs(q.psi_hat_perp_prime(0.0))));
    const double h = 1e-6;
    for (double w : {2.1, 4.4, 6.0}) {
        const auto fd = (q.psi_hat_perp(w + h) - q.psi_hat_perp(w - h)) / (2.0 * h);
        CHECK(std::abs(q.psi_hat_perp_prime(w) - fd) < 1e-6 * (1.0 + std::abs(fd)));
    }
    for (double w : {1.7, 5.2})
        CHECK(std::abs(q.psi_hat_perp_prime(w)) ==
              Approx(std::abs(q.psi_hat_perp_prime(-w))).margin(1e-10));
}

TEST_CASE("synthesize: box transform gives sinc samples") {
    const auto ts = synthesize(
        [](double w) { return std::complex<double>(std::abs(w) <= pi ? 1.0 : 0.0, 0.0); },
        2.0 * pi, 1 << 22);
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.t.size(); i += 7) {
        const double t = ts.t[i];
        const double ref = t == 0.0 ? 1.0 : std::sin(pi * t) / (pi * t);
        worst = std::max(worst, std::abs(ts.f[i].real() - ref));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("synthesize: Meyer scaling function is real with unit energy") {
    const auto& sys = meyer();
    const auto ts = synthesize(
        [&](double w) { return std::complex<double>(meyer_phi_hat(sys, w), 0.0); }, 16.0 * pi,
        1 << 16);
    double energy = 0.0, max_imag = 0.0;
    for (std::size_t i = 0; i < ts.f.size(); ++i) {
        energy += std::norm(ts.f[i]) * ts.step;
        max_imag = std::max(max_imag, std::abs(ts.f[i].imag()));
    }
    CHECK(energy == Approx(1.0).margin(1e-6));
    CHECK(max_imag < 1e-10);
    CHECK(ts.f[ts.f.size() / 2].real() > 0.5);  // phi^M(0) real positive
}

TEST_CASE("synthesize rejects insufficient decay and bad sample counts") {
    auto one = [](double) { return std::complex<double>(1.0, 0.0); };
    CHECK_THROWS_AS(synthesize(one, 4.0 * pi, 1 << 10), std::domain_error);
    auto box = [](double w) { return std::complex<double>(std::abs(w) <= 1.0 ? 1.0 : 0.0, 0.0); };
    CHECK_THROWS_AS(synthesize(box, 4.0 * pi, 1000), std::invalid_argument);
}

TEST_CASE("fused pair evaluators agree with the individual operations") {
    const auto& q = q3();
    for (double w : {0.0, 0.37, 1.9, -2.6, 5.5, 13.4}) {
        const auto mp = q.mask_pair(w);
        CHECK(mp.first == Approx(q.mask(w)).margin(1e-14));
        CHECK(mp.second == Approx(q.mask_prime(w)).margin(1e-12));
        const auto pp = q.phi_hat_pair(w);
        CHECK(pp.first == Approx(q.phi_hat(w)).margin(1e-13));
        CHECK(pp.second == Approx(q.phi_hat_prime(w)).margin(1e-12));
        const auto op = q.phi_hat_perp_pair(w);
        CHECK(op.first == Approx(q.phi_hat_perp(w)).margin(1e-12));
        CHECK(op.second == Approx(q.phi_hat_perp_prime(w)).margin(1e-12));
        const auto wp = q.psi_hat_perp_pair(w);
        CHECK(std::abs(wp.first - q.psi_hat_perp(w)) < 1e-12);
        CHECK(std::abs(wp.second - q.psi_hat_perp_prime(w)) < 1e-12);
    }
}

TEST_CASE("family norms shrink from l=2 to l=4 at matched policy levels") {
    // desk-scale slice of the monotone-family invariant (full range in acceptance)
    const auto& a = q2();
    const auto& b = q4();
    double da = 0.0, db = 0.0, pa = 0.0, pb = 0.0;
    for (int i = 0; i < 2048; ++i) {
        const double w = -pi + 2.0 * pi * i / 2048.0;
        da = std::max(da, std::abs(a.mask(w) - meyer_mask(meyer(), w)));
        db = std::max(db, std::abs(b.mask(w) - meyer_mask(meyer(), w)));
        pa = std::max(pa, std::abs(a.phi_cached(w) - 1.0));
        pb = std::max(pb, std::abs(b.phi_cached(w) - 1.0));
    }
    CHECK(db < da);
    CHECK(pb < pa);
}
