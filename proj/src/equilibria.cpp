#include "riotwave/equilibria.hpp"

#include <algorithm>
#include <cmath>

namespace riotwave {

double ubar_residual(double u, const ModelParams& mp) {
    return mp.gamma - 1.0 - mp.gamma * u -
           std::exp(-mp.beta * (std::pow(1.0 + u, -mp.p) - 1.0));
}

namespace {

double bisect_decreasing(const ModelParams& mp, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (ubar_residual(mid, mp) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// p < 0 flips the monotonicity of the exponential side, so the residual can
// have several roots; report the smallest.
double scan_then_bisect(const ModelParams& mp) {
    const int kScan = 4096;
    double ulo = 1e-9, rlo = ubar_residual(ulo, mp);
    for (int i = 1; i <= kScan; ++i) {
        double u = static_cast<double>(i) / kScan * (1.0 - 2e-9) + 1e-9;
        double r = ubar_residual(u, mp);
        if (rlo == 0.0) return ulo;
        if (rlo * r <= 0.0) {
            double lo = ulo, hi = u, sl = rlo;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                double rm = ubar_residual(mid, mp);
                if (sl * rm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    sl = rm;
                }
            }
            return 0.5 * (lo + hi);
        }
        ulo = u;
        rlo = r;
    }
    throw NoPositiveEquilibrium("solve_ubar: no root of the equilibrium equation in (0,1)");
}

}  // namespace

double solve_ubar(const ModelParams& mp, double tol) {
    if (!(tol > 0.0)) throw DomainError("solve_ubar: tol must be positive");
    if (mp.gamma <= 2.0)
        throw NoPositiveEquilibrium(
            "solve_ubar: no equilibrium in the open first quadrant for gamma <= 2");
    if (mp.p < 0.0) return scan_then_bisect(mp);
    return bisect_decreasing(mp, 0.0, (mp.gamma - 1.0) / mp.gamma);
}

double vbar(double u_bar, const ModelParams& mp) {
    if (u_bar <= -1.0) throw DomainError("vbar: requires u_bar > -1");
    return std::pow(1.0 + u_bar, -mp.p);
}

double nullcline_u_of_v(double v, const ModelParams& mp) {
    double t = mp.beta * (v - mp.alpha);
    if (t > 700.0) t = 700.0;
    if (t < -700.0) t = -700.0;
    return 1.0 - (1.0 + std::exp(-t)) / mp.gamma;
}

Equilibrium equilibrium_A() { return {0.0, 1.0, EquilibriumLabel::RelaxedA, 0.0}; }

Equilibrium equilibrium_B(const ModelParams& mp, double tol) {
    double ub = solve_ubar(mp, tol);
    double vb = vbar(ub, mp);
    KineticsValue k = kinetics(ub, vb, mp);
    return {ub, vb, EquilibriumLabel::ExcitedB,
            std::max(std::abs(k.fu), std::abs(k.fv))};
}

}  // namespace riotwave
