#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace riotwave {

// Nondimensional parameters of the unrest/tension system
//   u_t = d1 u_xx + c u_x + omega (gamma r(v) u (1 - u) - u)
//   v_t = d2 v_xx + c v_x + 1 - (1 + u)^p v
// with the logistic gate r(v) = 1/(1 + exp(-beta (v - alpha))).
// c is the frame speed: c = 0 is the lab frame, c > 0 a right-moving frame.
struct ModelParams {
    double gamma = 4.0;
    double beta = 1.0;
    double p = 2.0;
    double omega = 1.0;
    double alpha = 1.0;
    double c = 1.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoPositiveEquilibrium : ModelError {
    using ModelError::ModelError;
};
struct InvalidSpeed : ModelError {
    using ModelError::ModelError;
};
struct InvalidOmega : ModelError {
    using ModelError::ModelError;
};
struct DomainError : ModelError {
    using ModelError::ModelError;
};
struct SeedBranchError : ModelError {
    using ModelError::ModelError;
};
struct UndefinedAngle : ModelError {
    using ModelError::ModelError;
};
struct StabilityGuardError : ModelError {
    using ModelError::ModelError;
};
struct SingularOperator : ModelError {
    using ModelError::ModelError;
};
struct NoFront : ModelError {
    using ModelError::ModelError;
};
struct NanAbort : ModelError {
    using ModelError::ModelError;
};

// Logistic gate at unit height; the exponent is clamped so steep gates
// (beta = 20 in the front regimes) saturate instead of overflowing.
inline double sigma_gate(double v, const ModelParams& mp) {
    double t = mp.beta * (v - mp.alpha);
    if (t > 700.0) t = 700.0;
    if (t < -700.0) t = -700.0;
    return 1.0 / (1.0 + std::exp(-t));
}

// Full-height response rate, bounded in (0, omega*gamma).
inline double sigmoid_r(double v, const ModelParams& mp) {
    return mp.omega * mp.gamma * sigma_gate(v, mp);
}

inline double decay_h(double u, const ModelParams& mp) {
    if (u <= -1.0) throw DomainError("decay_h: requires u > -1");
    return std::pow(1.0 + u, mp.p);
}

struct KineticsValue {
    double fu;
    double fv;
};

inline KineticsValue kinetics(double u, double v, const ModelParams& mp) {
    double s = sigma_gate(v, mp);
    return {mp.omega * (mp.gamma * s * u * (1.0 - u) - u),
            1.0 - std::pow(1.0 + u, mp.p) * v};
}

// Slow-time scaling of the kinetics: both components divided by omega.
inline KineticsValue kinetics_slow_time(double u, double v, const ModelParams& mp) {
    KineticsValue k = kinetics(u, v, mp);
    return {k.fu / mp.omega, k.fv / mp.omega};
}

struct Deriv2 {
    double du;
    double dv;
};

// Planar traveling-frame system in xi; requires c > 0.
inline Deriv2 reduced_rhs(double u, double v, const ModelParams& mp) {
    if (mp.c <= 0.0) throw InvalidSpeed("reduced_rhs: requires c > 0");
    double s = sigma_gate(v, mp);
    double du = -(mp.omega / mp.c) * (mp.gamma * s * u * (1.0 - u) - u);
    double dv = -(1.0 / mp.c) * (1.0 - std::pow(1.0 + u, mp.p) * v);
    return {du, dv};
}

}  // namespace riotwave
