#pragma once

#include <array>

#include "riotwave/model.hpp"
#include "riotwave/ode.hpp"

namespace riotwave {

enum class Approach { Monotone, Oscillatory };

struct HeteroclinicResult {
    Trajectory<2> orbit;  // parameterized by the backward arclength in xi
    bool connected;
    Approach approach;
    double distance_to_B;
};

// Reduced flow on the omega->0 critical manifold v = (1+u)^{-p}:
// du/deta = -(1/c) u (gamma r((1+u)^{-p}) (1-u) - 1). Equilibria at 0 and ubar.
double flow_omega0_rhs(double u, const ModelParams& mp);

// The omega->0 critical manifold itself.
double slow_manifold_v(double u, const ModelParams& mp);

// Reduced flow on the branch S1 (u = 0): dv/dz = -(1/c)(1 - v).
double flow_s1_rhs(double v, const ModelParams& mp);

// Reduced flow on the branch S2 (u on the gate nullcline):
// dv/dz = (delta/c)(-1 + (2 - (1 + e^{-beta(v-1)})/gamma)^p v).
double flow_s2_rhs(double v, const ModelParams& mp, double delta);

// u-coordinate along S2; same curve as nullcline_u_of_v.
double s2_curve_u(double v, const ModelParams& mp);

struct RotationAngle {
    double phi;
    double dphi_domega;
};

// Direction angle of the field (omega f1, f2) and its exact omega-derivative
// -f1 f2 / (omega^2 f1^2 + f2^2). Throws UndefinedAngle at equilibria.
RotationAngle rotation_angle(double u, double v, const ModelParams& mp);

// Unit stable eigenvector of the reduced Jacobian at A with positive
// u-component; defined for gamma > 2.
std::array<double, 2> stable_eigenvector_A(const ModelParams& mp);

/// Shoots the unique orbit in the stable manifold of the saddle A backward in
/// xi from A + delta_seed * e_s until it is captured by a ball around B of
/// radius capture_radius*|B - A| or leaves the domain guard
/// u in (-0.05, 1.5), v in (0, 5 max(1, vbar)). The approach is Oscillatory
/// when u - ubar changes sign at least twice over the trailing 20% of stored
/// samples.
HeteroclinicResult shoot_heteroclinic(const ModelParams& mp,
                                      double delta_seed = 1e-6,
                                      double capture_radius = 1e-3);

// Traveling-frame slow system in the stretched variable, state
// (u, u', v, v'); eps is the singular parameter, mu the diffusion ratio.
std::array<double, 4> slow_system_rhs(const std::array<double, 4>& y,
                                      const ModelParams& mp, double eps,
                                      double mu);

// Residual of the algebraic closure whose zero set is the slow manifold:
// (u' + (omega/c) f-bracket, v' + g/c). Zero exactly on the manifold.
std::array<double, 2> closure_residual(const std::array<double, 4>& y,
                                       const ModelParams& mp);

}  // namespace riotwave
