#include "riotwave/reduced.hpp"

#include <algorithm>
#include <cmath>

#include "riotwave/equilibria.hpp"
#include "riotwave/spectra.hpp"

namespace riotwave {

double slow_manifold_v(double u, const ModelParams& mp) { return vbar(u, mp); }

double flow_omega0_rhs(double u, const ModelParams& mp) {
    if (mp.c <= 0.0) throw InvalidSpeed("flow_omega0_rhs: requires c > 0");
    double s = sigma_gate(slow_manifold_v(u, mp), mp);
    return -(1.0 / mp.c) * u * (mp.gamma * s * (1.0 - u) - 1.0);
}

double flow_s1_rhs(double v, const ModelParams& mp) {
    if (mp.c <= 0.0) throw InvalidSpeed("flow_s1_rhs: requires c > 0");
    return -(1.0 / mp.c) * (1.0 - v);
}

double flow_s2_rhs(double v, const ModelParams& mp, double delta) {
    if (mp.c <= 0.0) throw InvalidSpeed("flow_s2_rhs: requires c > 0");
    if (delta < 0.0) throw DomainError("flow_s2_rhs: requires delta >= 0");
    double t = mp.beta * (v - mp.alpha);
    if (t > 700.0) t = 700.0;
    if (t < -700.0) t = -700.0;
    double base = 2.0 - (1.0 + std::exp(-t)) / mp.gamma;
    if (base <= 0.0)
        throw DomainError("flow_s2_rhs: curve argument 2 - (1+e^{-beta(v-1)})/gamma <= 0");
    return (delta / mp.c) * (-1.0 + std::pow(base, mp.p) * v);
}

double s2_curve_u(double v, const ModelParams& mp) { return nullcline_u_of_v(v, mp); }

RotationAngle rotation_angle(double u, double v, const ModelParams& mp) {
    double s = sigma_gate(v, mp);
    double f1 = -(mp.gamma * s * u * (1.0 - u) - u);
    double f2 = std::pow(1.0 + u, mp.p) * v - 1.0;
    double den = mp.omega * mp.omega * f1 * f1 + f2 * f2;
    if (den == 0.0)
        throw UndefinedAngle("rotation_angle: undefined at an equilibrium");
    return {std::atan2(f2, mp.omega * f1), -f1 * f2 / den};
}

std::array<double, 2> stable_eigenvector_A(const ModelParams& mp) {
    if (mp.c <= 0.0) throw InvalidSpeed("stable_eigenvector_A: requires c > 0");
    double lu = (mp.omega / mp.c) * (2.0 - mp.gamma) / 2.0;
    double lv = 1.0 / mp.c;
    if (lu >= 0.0)
        throw SeedBranchError("stable_eigenvector_A: A is not a saddle for gamma <= 2");
    // lower-triangular Jacobian: (J - lu I) e = 0 with J21 = p/c
    double e2 = (mp.p / mp.c) / (lu - lv);
    double n = std::hypot(1.0, e2);
    return {1.0 / n, e2 / n};
}

HeteroclinicResult shoot_heteroclinic(const ModelParams& mp, double delta_seed,
                                      double capture_radius) {
    if (mp.omega <= 0.0)
        throw InvalidOmega("shoot_heteroclinic: omega must be positive");
    if (mp.c <= 0.0) throw InvalidSpeed("shoot_heteroclinic: requires c > 0");
    if (!(delta_seed > 0.0) || !(capture_radius > 0.0))
        throw DomainError("shoot_heteroclinic: seed and capture radius must be positive");

    Equilibrium B = equilibrium_B(mp);
    const double bu = B.u_star, bv = B.v_star;
    const double dBA = std::hypot(bu, bv - 1.0);
    const double cap = capture_radius * dBA;

    std::array<double, 2> es = stable_eigenvector_A(mp);
    std::array<double, 2> y0 = {delta_seed * es[0], 1.0 + delta_seed * es[1]};
    if (y0[0] <= 0.0)
        throw SeedBranchError("shoot_heteroclinic: seed left the first quadrant");

    // backward integration: s is the negated traveling-wave variable
    auto rhs = [&mp](double, const std::array<double, 2>& y) {
        Deriv2 d = reduced_rhs(y[0], y[1], mp);
        return std::array<double, 2>{-d.du, -d.dv};
    };
    const double vguard = 5.0 * std::max(1.0, bv);
    std::vector<Event<2>> events;
    events.push_back({[bu, bv, cap](double, const std::array<double, 2>& y) {
                          return std::hypot(y[0] - bu, y[1] - bv) - cap;
                      },
                      EventKind::Target});
    events.push_back({[vguard](double, const std::array<double, 2>& y) {
                          return std::min(std::min(y[0] + 0.05, 1.5 - y[0]),
                                          std::min(y[1], vguard - y[1]));
                      },
                      EventKind::Domain});

    // generous span; the slow timescale is c/omega
    double span = 1e4 * std::max(1.0, mp.c / mp.omega);
    Trajectory<2> orbit = integrate(rhs, y0, 0.0, span, 1e-10, 1e-12, events);

    HeteroclinicResult res;
    res.connected = orbit.termination == Termination::ReachedTarget;
    const auto& last = orbit.states.back();
    res.distance_to_B = std::hypot(last[0] - bu, last[1] - bv);

    // sign changes of u - ubar over the trailing 20% of samples
    std::size_t n = orbit.states.size();
    std::size_t start = n - std::max<std::size_t>(2, n / 5);
    int changes = 0;
    double prev = 0.0;
    for (std::size_t i = start; i < n; ++i) {
        double d = orbit.states[i][0] - bu;
        double sgn = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
        if (sgn != 0.0) {
            if (prev != 0.0 && sgn != prev) ++changes;
            prev = sgn;
        }
    }
    res.approach = changes >= 2 ? Approach::Oscillatory : Approach::Monotone;
    res.orbit = std::move(orbit);
    return res;
}

std::array<double, 4> slow_system_rhs(const std::array<double, 4>& y,
                                      const ModelParams& mp, double eps,
                                      double mu) {
    if (!(eps > 0.0) || !(mu > 0.0))
        throw DomainError("slow_system_rhs: eps and mu must be positive");
    double u = y[0], up = y[1], v = y[2], vp = y[3];
    double s = sigma_gate(v, mp);
    double f1 = mp.gamma * s * u * (1.0 - u) - u;
    double g = 1.0 - std::pow(1.0 + u, mp.p) * v;
    return {up, (-mp.c * up - mp.omega * f1) / eps, vp,
            (-mp.c * vp - g) / (eps * mu)};
}

std::array<double, 2> closure_residual(const std::array<double, 4>& y,
                                       const ModelParams& mp) {
    if (mp.c <= 0.0) throw InvalidSpeed("closure_residual: requires c > 0");
    double u = y[0], up = y[1], v = y[2], vp = y[3];
    double s = sigma_gate(v, mp);
    double f1 = mp.gamma * s * u * (1.0 - u) - u;
    double g = 1.0 - std::pow(1.0 + u, mp.p) * v;
    return {up + (mp.omega / mp.c) * f1, vp + g / mp.c};
}

}  // namespace riotwave
