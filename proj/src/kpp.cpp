#include "riotwave/kpp.hpp"

#include <cmath>
#include <limits>

#include "riotwave/equilibria.hpp"

namespace riotwave {

double h_tilde(double u, const ModelParams& mp) {
    if (u <= -1.0) throw DomainError("h_tilde: requires u > -1");
    return sigma_gate(std::pow(1.0 + u, -mp.p), mp);
}

double f_kpp(double u, const ModelParams& mp) {
    return -u * (1.0 - mp.gamma * h_tilde(u, mp) * (1.0 - u));
}

double fprime_ubar(const ModelParams& mp) {
    double ub = solve_ubar(mp);
    double vb = vbar(ub, mp);
    double E = std::exp(-mp.beta * (vb - mp.alpha));
    double gate = E / (1.0 + E);
    return -ub * (1.0 / (1.0 - ub) +
                  mp.p * mp.beta / std::pow(1.0 + ub, mp.p + 1.0) * gate);
}

std::array<double, 2> region_quadratic_roots(double beta) {
    if (beta <= 0.0) throw DomainError("region_quadratic_roots: requires beta > 0");
    double b1 = 2.0 * beta + 1.0;
    double disc = std::sqrt(b1 * b1 + 4.0 * beta * (beta + 1.0));
    double den = 2.0 * beta * (beta + 1.0);
    return {(b1 - disc) / den, (b1 + disc) / den};
}

double p_threshold(double beta) { return region_quadratic_roots(beta)[1]; }

KppRegion kpp_region_check(double beta, double p) {
    if (beta <= 0.0) throw DomainError("kpp_region_check: requires beta > 0");
    if (p <= 0.0) throw DomainError("kpp_region_check: requires p > 0");
    double thr = p_threshold(beta);
    return {p >= thr, thr};
}

ConcavityScan concavity_scan(const ModelParams& mp, int n_samples) {
    if (n_samples < 100)
        throw DomainError("concavity_scan: requires n_samples >= 100");
    if (mp.beta <= 0.0) throw DomainError("concavity_scan: requires beta > 0");
    if (mp.beta * mp.p <= -1.0)
        throw DomainError("concavity_scan: requires p > -1/beta");
    double ub = solve_ubar(mp);
    double h = ub / (10.0 * n_samples);
    long m = 10L * n_samples;
    double max_f2 = -std::numeric_limits<double>::infinity();
    double fm = f_kpp(0.0, mp);
    double f0 = f_kpp(h, mp);
    for (long j = 1; j < m; ++j) {
        double fp = f_kpp((j + 1) * h, mp);
        double f2 = (fp - 2.0 * f0 + fm) / (h * h);
        if (f2 > max_f2) max_f2 = f2;
        fm = f0;
        f0 = fp;
    }
    return {max_f2 < 0.0, max_f2};
}

double min_speed(double gamma) {
    if (gamma < 2.0) throw DomainError("min_speed: requires gamma >= 2");
    return std::sqrt(2.0 * (gamma - 2.0));
}

std::array<double, 2> kpp_phase_rhs(double u1, double u2, const ModelParams& mp) {
    return {u2, u1 - mp.c * u2 - mp.gamma * h_tilde(u1, mp) * u1 * (1.0 - u1)};
}

std::array<std::complex<double>, 3> kpp_3d_eigenvalues(const ModelParams& mp) {
    if (mp.c <= 0.0) throw InvalidSpeed("kpp_3d_eigenvalues: requires c > 0");
    double oc = mp.omega * mp.c;
    std::complex<double> disc(oc * oc - 2.0 * mp.omega * mp.omega * (mp.gamma - 2.0),
                              0.0);
    std::complex<double> root = std::sqrt(disc);
    return {(-oc - root) / 2.0, (-oc + root) / 2.0,
            std::complex<double>(1.0 / mp.c, 0.0)};
}

double gamma0_search(double beta, double p) {
    if (beta <= 0.0) throw DomainError("gamma0_search: requires beta > 0");
    if (beta * p <= -1.0) throw DomainError("gamma0_search: requires p > -1/beta");
    const double cap = 1e6;
    const int n = 400;
    auto concave_at = [&](double gamma) {
        ModelParams mp;
        mp.gamma = gamma;
        mp.beta = beta;
        mp.p = p;
        return concavity_scan(mp, n).is_concave;
    };
    if (concave_at(cap)) return std::numeric_limits<double>::infinity();
    double lo = 2.0 + 1e-6;
    if (!concave_at(lo)) return lo;
    double hi = cap;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (concave_at(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

KppVerdict kpp_verdict(const ModelParams& mp, int n_samples) {
    KppRegion region = kpp_region_check(mp.beta, mp.p);
    ConcavityScan scan = concavity_scan(mp, n_samples);
    return {region.guaranteed, scan.is_concave, region.p_threshold,
            min_speed(mp.gamma), scan.max_f2};
}

}  // namespace riotwave
