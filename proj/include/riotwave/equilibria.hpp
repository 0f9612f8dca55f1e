#pragma once

#include "riotwave/model.hpp"

namespace riotwave {

enum class EquilibriumLabel { RelaxedA, ExcitedB };

struct Equilibrium {
    double u_star;
    double v_star;
    EquilibriumLabel label;
    double residual;  // max abs kinetics at the point
};

// Residual of the scalar equilibrium equation for the excited state:
// gamma - 1 - gamma*u - exp(-beta((1+u)^{-p} - 1)). Positive at u = 0 for
// gamma > 2 and negative at u = (gamma-1)/gamma.
double ubar_residual(double u, const ModelParams& mp);

// Excited-state unrest level. Bracketed bisection on (0, (gamma-1)/gamma)
// for p >= 0 (the residual is strictly decreasing there); for p < 0 the
// monotonicity flips, so a scan over (0,1) locates the first sign change and
// bisection refines it (smallest root reported). Throws NoPositiveEquilibrium
// for gamma <= 2.
double solve_ubar(const ModelParams& mp, double tol = 1e-12);

double vbar(double u_bar, const ModelParams& mp);

// Non-trivial u-nullcline of the planar system: u = 1 - (1 + e^{-beta(v-alpha)})/gamma.
double nullcline_u_of_v(double v, const ModelParams& mp);

Equilibrium equilibrium_A();
Equilibrium equilibrium_B(const ModelParams& mp, double tol = 1e-12);

}  // namespace riotwave
