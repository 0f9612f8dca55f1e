#include "doctest.h"

#include <cmath>
#include <random>

#include "riotwave/spectra.hpp"

using namespace riotwave;

static ModelParams params(double gamma, double beta, double p, double omega,
                          double c) {
    ModelParams mp;
    mp.gamma = gamma;
    mp.beta = beta;
    mp.p = p;
    mp.omega = omega;
    mp.c = c;
    return mp;
}

TEST_CASE("A is a saddle with exact triangular eigenvalues for gamma > 2") {
    ModelParams mp = params(4.0, 1.0, 2.0, 1.0, 1.0);
    Spectrum s = eigen_A(mp);
    CHECK(s.lambda1.real() == -1.0);
    CHECK(s.lambda1.imag() == 0.0);
    CHECK(s.lambda2.real() == 1.0);
    CHECK(s.lambda2.imag() == 0.0);
    CHECK(s.classification == Classification::Saddle);
}

TEST_CASE("A is a node for gamma < 2") {
    ModelParams mp = params(1.5, 1.0, 2.0, 1.0, 1.0);
    Spectrum s = eigen_A(mp);
    CHECK(s.classification == Classification::UnstableNode);
    CHECK(s.lambda1.real() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(s.lambda2.real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigen_A scales as (omega/c)(2-gamma)/2 and 1/c") {
    ModelParams mp = params(4.0, 1.0, 2.0, 5.0, 1.0);
    Spectrum s = eigen_A(mp);
    CHECK(s.lambda1.real() == doctest::Approx(-5.0).epsilon(1e-14));
    CHECK(s.lambda2.real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("analytic Jacobian matches central differences") {
    ModelParams mp = params(6.0, 2.0, 1.5, 0.8, 1.7);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> du(0.01, 0.9), dv(0.1, 2.0);
    const double h = 1e-6;
    for (int i = 0; i < 50; ++i) {
        double u = du(rng), v = dv(rng);
        Mat2 J = jacobian_reduced(u, v, mp);
        Deriv2 up = reduced_rhs(u + h, v, mp), um = reduced_rhs(u - h, v, mp);
        Deriv2 vp = reduced_rhs(u, v + h, mp), vm = reduced_rhs(u, v - h, mp);
        double fd[2][2] = {{(up.du - um.du) / (2 * h), (vp.du - vm.du) / (2 * h)},
                           {(up.dv - um.dv) / (2 * h), (vp.dv - vm.dv) / (2 * h)}};
        for (int r = 0; r < 2; ++r)
            for (int cidx = 0; cidx < 2; ++cidx) {
                double scale = std::max(1.0, std::abs(fd[r][cidx]));
                CHECK(std::abs(J[r][cidx] - fd[r][cidx]) / scale <= 1e-6);
            }
    }
}

TEST_CASE("classify_2x2 canonical matrices") {
    CHECK(classify_2x2({{{2.0, 0.0}, {0.0, -1.0}}}).classification ==
          Classification::Saddle);
    CHECK(classify_2x2({{{1.0, 0.0}, {0.0, 2.0}}}).classification ==
          Classification::UnstableNode);
    CHECK(classify_2x2({{{-1.0, 0.0}, {0.0, -2.0}}}).classification ==
          Classification::StableNode);
    CHECK(classify_2x2({{{1.0, -2.0}, {2.0, 1.0}}}).classification ==
          Classification::UnstableSpiral);
    CHECK(classify_2x2({{{-1.0, -2.0}, {2.0, -1.0}}}).classification ==
          Classification::StableSpiral);
    // center and zero eigenvalue both refuse a generic label
    CHECK(classify_2x2({{{0.0, -1.0}, {1.0, 0.0}}}).classification ==
          Classification::Degenerate);
    CHECK(classify_2x2({{{0.0, 0.0}, {0.0, 1.0}}}).classification ==
          Classification::Degenerate);
}

TEST_CASE("classification_name covers the enum") {
    CHECK(std::string(classification_name(Classification::Saddle)) == "Saddle");
    CHECK(std::string(classification_name(Classification::Degenerate)) ==
          "Degenerate");
}

TEST_CASE("partials at B, p = 0 closed form") {
    // p = 0, gamma = 4: ubar = 1/2, vbar = 1, so f1u = u/(1-u) = 1,
    // f1v = -beta u (gamma - 1/(1-u))/gamma = -beta/4, f2u = 0, f2v = 1.
    ModelParams mp = params(4.0, 7.0, 0.0, 1.0, 1.0);
    Equilibrium B = equilibrium_B(mp);
    PartialsAtB pb = partials_at_B(mp, B);
    CHECK(std::abs(pb.f1u - 1.0) <= 1e-12);
    CHECK(std::abs(pb.f1v + 1.75) <= 1e-12);
    CHECK(std::abs(pb.f2u - 0.0) <= 1e-12);
    CHECK(std::abs(pb.f2v - 1.0) <= 1e-12);
}

TEST_CASE("eigen_B satisfies trace and determinant of the reduced Jacobian") {
    ModelParams mp = params(4.0, 1.0, 2.0, 5.0, 1.3);
    Equilibrium B = equilibrium_B(mp);
    Mat2 J = jacobian_reduced(B.u_star, B.v_star, mp);
    Spectrum s = eigen_B(mp);
    std::complex<double> sum = s.lambda1 + s.lambda2;
    std::complex<double> prod = s.lambda1 * s.lambda2;
    CHECK(std::abs(sum.real() - (J[0][0] + J[1][1])) <= 1e-10);
    CHECK(std::abs(sum.imag()) <= 1e-10);
    CHECK(std::abs(prod.real() - (J[0][0] * J[1][1] - J[0][1] * J[1][0])) <= 1e-10);
    CHECK(std::abs(prod.imag()) <= 1e-10);
}

TEST_CASE("spectral window at B") {
    ModelParams mp = params(4.0, 1.0, 2.0, 1.0, 1.0);
    OmegaThresholds t = omega_thresholds(mp);
    CHECK(!t.degenerate);
    CHECK(t.omega1 > 0.0);
    CHECK(t.omega2 > t.omega1);
    CHECK(std::abs(t.omega1 - 1.1386128526233479) / t.omega1 <= 1e-10);
    CHECK(std::abs(t.omega2 - 9.738216427742008) / t.omega2 <= 1e-10);

    Equilibrium B = equilibrium_B(mp);
    PartialsAtB pb = partials_at_B(mp, B);

    SUBCASE("product identity omega1 omega2 = (f2v/f1u)^2") {
        double rhs = (pb.f2v / pb.f1u) * (pb.f2v / pb.f1u);
        CHECK(std::abs(t.omega1 * t.omega2 - rhs) / rhs <= 1e-10);
    }

    SUBCASE("discriminant sign flips across the window") {
        auto D = [&](double w) {
            double a = pb.f2v - w * pb.f1u;
            return a * a + 4.0 * w * pb.f1v * pb.f2u;
        };
        CHECK(D(0.5 * (t.omega1 + t.omega2)) < 0.0);
        CHECK(D(2.0 * t.omega2) > 0.0);
        CHECK(D(0.5 * t.omega1) > 0.0);
    }

    SUBCASE("classification flips Node -> Spiral -> Node over a log sweep") {
        int spirals = 0, nodes = 0;
        for (int i = 0; i < 50; ++i) {
            double w = 0.1 * std::pow(1e4, i / 49.0);
            ModelParams m2 = mp;
            m2.omega = w;
            Spectrum s = eigen_B(m2);
            bool inside = (w > t.omega1 && w < t.omega2);
            bool spiral = s.classification == Classification::UnstableSpiral;
            if (std::abs(w - t.omega1) > 1e-6 && std::abs(w - t.omega2) > 1e-6)
                CHECK(spiral == inside);
            spiral ? ++spirals : ++nodes;
        }
        CHECK(spirals > 0);
        CHECK(nodes > 0);
    }
}

TEST_CASE("p = 0 collapses the window") {
    ModelParams mp = params(4.0, 1.0, 0.0, 1.0, 1.0);
    OmegaThresholds t = omega_thresholds(mp);
    CHECK(t.degenerate);
}
