#include "doctest.h"

#include <cmath>
#include <random>

#include "riotwave/equilibria.hpp"
#include "riotwave/kpp.hpp"
#include "riotwave/reduced.hpp"

using namespace riotwave;

static ModelParams params(double gamma, double beta, double p) {
    ModelParams mp;
    mp.gamma = gamma;
    mp.beta = beta;
    mp.p = p;
    return mp;
}

TEST_CASE("h_tilde composes the gate with the critical manifold") {
    ModelParams mp = params(4.0, 2.0, 1.5);
    for (double u : {0.0, 0.2, 0.6, 1.5}) {
        CHECK(h_tilde(u, mp) ==
              doctest::Approx(sigma_gate(slow_manifold_v(u, mp), mp))
                  .epsilon(1e-14));
    }
    CHECK(h_tilde(0.0, mp) == 0.5);
}

TEST_CASE("h_tilde is decreasing and convex on (0, 1) for beta, p > 0") {
    ModelParams mp = params(4.0, 3.0, 2.0);
    const int n = 200;
    const double h = 1.0 / n;
    for (int i = 1; i < n - 1; ++i) {
        double u = i * h;
        double hm = h_tilde(u - h, mp), h0 = h_tilde(u, mp), hp = h_tilde(u + h, mp);
        CHECK(hp < h0);
        CHECK(hm + hp - 2.0 * h0 > 0.0);
    }
}

TEST_CASE("f_kpp zeros and slope at the origin") {
    ModelParams mp = params(4.0, 1.0, 2.0);
    CHECK(f_kpp(0.0, mp) == 0.0);
    double ub = solve_ubar(mp);
    CHECK(std::abs(f_kpp(ub, mp)) <= 1e-12);
    double h = 1e-7;
    double fd = (f_kpp(h, mp) - f_kpp(-h, mp)) / (2.0 * h);
    CHECK(std::abs(fd - (mp.gamma / 2.0 - 1.0)) <= 1e-6);
}

TEST_CASE("fprime_ubar matches finite differences across seeds") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> dg(2.5, 12.0), db(0.5, 6.0),
        dp(0.3, 3.0);
    for (int i = 0; i < 50; ++i) {
        ModelParams mp = params(dg(rng), db(rng), dp(rng));
        double ub = solve_ubar(mp);
        double h = 1e-6;
        double fd = (f_kpp(ub + h, mp) - f_kpp(ub - h, mp)) / (2.0 * h);
        double an = fprime_ubar(mp);
        CHECK(std::abs(an - fd) <= 1e-6 * std::max(1.0, std::abs(an)));
        CHECK(an < 0.0);
    }
}

TEST_CASE("p_threshold closed form") {
    CHECK(p_threshold(2.0) == 1.0);
    CHECK(std::abs(p_threshold(3.0) - 0.7020357417415043) <= 1e-15);
    // decreasing in beta
    double prev = p_threshold(0.5);
    for (double b = 1.0; b <= 16.0; b *= 2.0) {
        double pt = p_threshold(b);
        CHECK(pt < prev);
        prev = pt;
    }
}

TEST_CASE("region quadratic roots multiply to -1/(b(b+1))") {
    for (double b : {0.7, 2.0, 5.0, 20.0}) {
        std::array<double, 2> r = region_quadratic_roots(b);
        CHECK(std::abs(r[0] * r[1] + 1.0 / (b * (b + 1.0))) <= 1e-12);
        CHECK(std::max(r[0], r[1]) == doctest::Approx(p_threshold(b)).epsilon(1e-13));
    }
}

TEST_CASE("kpp_region_check") {
    CHECK(kpp_region_check(2.0, 1.0).guaranteed);
    CHECK(kpp_region_check(2.0, 0.5).guaranteed == false);
    CHECK(kpp_region_check(2.0, 0.5).p_threshold == 1.0);
    CHECK_THROWS_AS(kpp_region_check(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(kpp_region_check(2.0, 0.0), DomainError);
}

TEST_CASE("concavity scan fixture") {
    ModelParams mp = params(4.0, 2.0, 1.0);
    ConcavityScan s = concavity_scan(mp, 1000);
    CHECK(s.is_concave);
    CHECK(std::abs(s.max_f2 - (-3.2861850789337588)) <= 1e-12);
}

TEST_CASE("concavity scan guards") {
    ModelParams mp = params(4.0, 2.0, 1.0);
    CHECK_THROWS_AS(concavity_scan(mp, 99), DomainError);
    CHECK_THROWS_AS(concavity_scan(params(4.0, 0.0, 1.0), 1000), DomainError);
    CHECK_THROWS_AS(concavity_scan(params(4.0, 2.0, -0.6), 1000), DomainError);
}

TEST_CASE("seeded points near the region boundary scan concave") {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> un(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        double b = 0.25 * std::pow(16.0, un(rng));
        double p = p_threshold(b) * (1.0 + 1.5 * un(rng));
        double g = 2.005 + 17.99 * un(rng);
        ConcavityScan s = concavity_scan(params(g, b, p), 300);
        CHECK(s.is_concave);
        CHECK(s.max_f2 < 0.0);
    }
}

TEST_CASE("region flag overstates at steep gates with heavy decay") {
    // far above the boundary the closed form stops being sufficient: convexity
    // reappears just left of ubar once beta*p and gamma are both large, so the
    // membership flag and the direct scan legitimately disagree there
    ModelParams mp = params(18.0, 5.0, 2.4421);
    CHECK(kpp_region_check(mp.beta, mp.p).guaranteed);
    ConcavityScan s = concavity_scan(mp, 1000);
    CHECK(s.is_concave == false);
    CHECK(s.max_f2 > 0.0);
}

TEST_CASE("minimal speed") {
    CHECK(min_speed(4.0) == 2.0);
    CHECK(min_speed(2.0) == 0.0);
    CHECK(std::abs(min_speed(300.0) - 24.413111231467404) <= 1e-13);
    CHECK_THROWS_AS(min_speed(1.9), DomainError);
}

TEST_CASE("phase plane rhs spot value") {
    // u2' = u1 - c u2 - gamma h_tilde(u1) u1 (1 - u1)
    ModelParams mp = params(4.0, 2.0, 1.0);
    mp.c = 3.0;
    std::array<double, 2> d = kpp_phase_rhs(0.25, 0.1, mp);
    CHECK(d[0] == 0.1);
    double expect = 0.25 - 0.3 - 4.0 * h_tilde(0.25, mp) * 0.25 * 0.75;
    CHECK(d[1] == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("three-dimensional front spectrum at the relaxed state") {
    SUBCASE("real pair above the critical speed") {
        ModelParams mp = params(4.0, 1.0, 2.0);
        mp.omega = 1.0;
        mp.c = 4.0;
        std::array<std::complex<double>, 3> ev = kpp_3d_eigenvalues(mp);
        double s = std::sqrt(12.0);
        CHECK(std::abs(ev[0] - std::complex<double>((-4.0 - s) / 2.0, 0.0)) <= 1e-12);
        CHECK(std::abs(ev[1] - std::complex<double>((-4.0 + s) / 2.0, 0.0)) <= 1e-12);
        CHECK(std::abs(ev[2] - std::complex<double>(0.25, 0.0)) <= 1e-12);
    }
    SUBCASE("conjugate pair below the critical speed") {
        ModelParams mp = params(4.0, 1.0, 2.0);
        mp.omega = 1.0;
        mp.c = 1.0;
        std::array<std::complex<double>, 3> ev = kpp_3d_eigenvalues(mp);
        CHECK(ev[0].real() == doctest::Approx(-0.5).epsilon(1e-13));
        CHECK(ev[1].real() == doctest::Approx(-0.5).epsilon(1e-13));
        CHECK(ev[0].imag() == doctest::Approx(-ev[1].imag()).epsilon(1e-13));
        CHECK(ev[0].imag() != 0.0);
    }
}

TEST_CASE("gamma0_search is consistent with its own verdict") {
    double g0 = gamma0_search(1.0, 0.5);
    if (std::isinf(g0)) {
        ConcavityScan s = concavity_scan(params(1e6, 1.0, 0.5), 400);
        CHECK(s.is_concave);
    } else {
        CHECK(g0 > 2.0);
        ConcavityScan below = concavity_scan(params(g0 * 0.9, 1.0, 0.5), 400);
        ConcavityScan above = concavity_scan(params(std::min(g0 * 1.1, 1e6), 1.0, 0.5), 400);
        CHECK(below.is_concave);
        CHECK(above.is_concave == false);
    }
}

TEST_CASE("kpp_verdict aggregates the pieces") {
    ModelParams mp = params(4.0, 2.0, 1.0);
    KppVerdict v = kpp_verdict(mp, 1000);
    CHECK(v.guaranteed_by_region);
    CHECK(v.numeric_concave);
    CHECK(v.p_threshold == 1.0);
    CHECK(v.min_speed == 2.0);
    CHECK(std::abs(v.max_f2 - (-3.2861850789337588)) <= 1e-12);
}
