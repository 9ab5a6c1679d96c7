#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qsw/meyer.hpp"

using namespace qsw;
using Catch::Approx;

TEST_CASE("theta profile evaluates the odd core with constant extensions") {
    const auto p = ThetaProfile::default_quintic();
    CHECK(theta_eval(p, 0.0) == Approx(0.0).margin(1e-15));
    CHECK(theta_eval(p, pi / 2.0) == Approx(pi / 4.0));
    CHECK(theta_eval(p, -pi / 2.0) == Approx(-pi / 4.0));
    CHECK(theta_eval(p, pi / 3.0) == Approx(pi / 4.0));
    CHECK_THROWS_AS(theta_eval(p, std::nan("")), std::domain_error);
}

TEST_CASE("default quintic profile passes validation") {
    const auto r = validate_theta(ThetaProfile::default_quintic());
    CHECK(r.passed);
    // s, s', s'' at 1 are exact: 1, 0, 0
    CHECK(r.boundary_residual == Approx(0.0).margin(1e-15));
    CHECK(r.c1_residual == Approx(0.0).margin(1e-15));
    CHECK(r.c2_residual == Approx(0.0).margin(1e-15));
}

TEST_CASE("linear core fails C2 matching at the joints") {
    const auto r = validate_theta(ThetaProfile{{0.0, 1.0}});  // s(x) = x
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.c1_ok);  // s'(1) = 1 breaks the constant extension
}

TEST_CASE("x^3 - x core fails monotonicity") {
    const auto r = validate_theta(ThetaProfile{{0.0, -1.0, 0.0, 1.0}});
    CHECK_FALSE(r.monotone_ok);
}

TEST_CASE("meyer scaling transform branch values") {
    const MeyerSystem sys;
    CHECK(meyer_phi_hat(sys, 0.0) == Approx(1.0));
    CHECK(meyer_phi_hat(sys, 2.0 * pi - 2.0 * sys.omega0) == Approx(0.0).margin(1e-15));
    CHECK(meyer_phi_hat(sys, pi) == Approx(std::sqrt(2.0) / 2.0));
    CHECK(meyer_phi_hat(sys, -pi) == Approx(std::sqrt(2.0) / 2.0));
    CHECK_THROWS_AS(meyer_phi_hat(sys, std::nan("")), std::domain_error);
}

TEST_CASE("meyer system rejects omega0 outside [pi/3, pi/2)") {
    CHECK_THROWS_AS(MeyerSystem(0.9), std::invalid_argument);
    CHECK_THROWS_AS(MeyerSystem(pi / 2.0), std::invalid_argument);
    CHECK_NOTHROW(MeyerSystem(0.45 * pi));
}

TEST_CASE("meyer mask plateaus and QMF identity") {
    for (double w0 : {pi / 3.0, 0.4 * pi, 0.45 * pi}) {
        const MeyerSystem sys(w0);
        CHECK(meyer_mask(sys, 0.0) == Approx(1.0));
        CHECK(meyer_mask(sys, pi) == Approx(0.0).margin(1e-15));
        const double a = meyer_mask(sys, 0.7);
        const double b = meyer_mask(sys, 0.7 + pi);
        CHECK(a * a + b * b == Approx(1.0).margin(1e-12));
        double worst = 0.0;
        for (int i = 0; i < 4096; ++i) {
            const double w = -pi + 2.0 * pi * i / 4096.0;
            const double x = meyer_mask(sys, w), y = meyer_mask(sys, w + pi);
            worst = std::max(worst, std::abs(x * x + y * y - 1.0));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("partition of unity for the scaling transform") {
    const MeyerSystem sys;
    double worst = 0.0;
    for (int i = 0; i <= 4096; ++i) {
        const double w = -pi + 2.0 * pi * i / 4096.0;
        double s = 0.0;
        for (int k = -3; k <= 3; ++k) {
            const double v = meyer_phi_hat(sys, w + 2.0 * pi * k);
            s += v * v;
        }
        worst = std::max(worst, std::abs(s - 1.0));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("mask derivative: plateaus and finite differences") {
    const MeyerSystem sys;
    CHECK(meyer_mask_prime(sys, 0.0) == 0.0);
    CHECK(meyer_mask_prime(sys, pi - 0.01) == 0.0);
    const double h = 1e-6;
    for (double w : {0.55 * pi, 0.4 * pi, 1.3, -1.7}) {
        const double fd = (meyer_mask(sys, w + h) - meyer_mask(sys, w - h)) / (2.0 * h);
        CHECK(meyer_mask_prime(sys, w) == Approx(fd).margin(1e-8));
    }
}

TEST_CASE("wavelet transform support and normalization") {
    const MeyerSystem sys;
    CHECK(std::abs(meyer_psi_hat(sys, 0.0)) == Approx(0.0).margin(1e-15));
    CHECK(std::abs(meyer_psi_hat(sys, 3.0 * pi)) == Approx(0.0).margin(1e-15));
    // |psi hat| is even
    for (double w : {0.9, 2.2, 5.0})
        CHECK(std::abs(meyer_psi_hat(sys, w)) == Approx(std::abs(meyer_psi_hat(sys, -w))).margin(1e-14));
    // Plancherel: (2pi)^-1 int |psi hat|^2 = 1 by quadrature
    const int n = 1 << 16;
    const double om = 16.0 * pi, h = 2.0 * om / n;
    double s = 0.0;
    for (int i = -n / 2; i <= n / 2; ++i) s += std::norm(meyer_psi_hat(sys, i * h));
    CHECK(s * h / (2.0 * pi) == Approx(1.0).margin(1e-6));
}

TEST_CASE("psi hat assembled from mask and phi hat matches the evaluator") {
    const MeyerSystem sys;
    for (double w : {0.3, 1.9, -4.4, 7.7}) {
        const auto direct = meyer_psi_hat(sys, w);
        const auto assembled = std::polar(1.0, -w / 2.0) *
                               (meyer_mask(sys, w / 2.0 + pi) * meyer_phi_hat(sys, w / 2.0));
        CHECK(std::abs(direct - assembled) < 1e-15);
    }
}
