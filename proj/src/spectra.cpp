#include "riotwave/spectra.hpp"

#include <algorithm>
#include <cmath>

namespace riotwave {

const char* classification_name(Classification c) {
    switch (c) {
        case Classification::Saddle: return "Saddle";
        case Classification::UnstableNode: return "UnstableNode";
        case Classification::UnstableSpiral: return "UnstableSpiral";
        case Classification::StableNode: return "StableNode";
        case Classification::StableSpiral: return "StableSpiral";
        case Classification::Degenerate: return "Degenerate";
    }
    return "Unknown";
}

Mat2 jacobian_reduced(double u, double v, const ModelParams& mp) {
    if (mp.c <= 0.0) throw InvalidSpeed("jacobian_reduced: requires c > 0");
    double s = sigma_gate(v, mp);
    double sprime = mp.beta * s * (1.0 - s);
    Mat2 J;
    J[0][0] = -(mp.omega / mp.c) * (mp.gamma * s * (1.0 - 2.0 * u) - 1.0);
    J[0][1] = -(mp.omega / mp.c) * mp.gamma * u * (1.0 - u) * sprime;
    J[1][0] = (1.0 / mp.c) * mp.p * std::pow(1.0 + u, mp.p - 1.0) * v;
    J[1][1] = (1.0 / mp.c) * std::pow(1.0 + u, mp.p);
    return J;
}

Spectrum classify_2x2(const Mat2& J) {
    double tr = J[0][0] + J[1][1];
    double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    double disc = tr * tr - 4.0 * det;
    Spectrum s;
    if (disc < 0.0) {
        double re = 0.5 * tr;
        double im = 0.5 * std::sqrt(-disc);
        s.lambda1 = {re, -im};
        s.lambda2 = {re, im};
    } else {
        double root = std::sqrt(disc);
        double l1 = 0.5 * (tr - root);
        double l2 = 0.5 * (tr + root);
        s.lambda1 = l1;
        s.lambda2 = l2;
    }
    double mag = std::max({std::abs(s.lambda1), std::abs(s.lambda2), 1e-300});
    double tiny = 1e-12 * mag;
    double im = s.lambda2.imag();
    if (std::abs(im) > tiny) {
        double re = s.lambda1.real();
        if (re > tiny)
            s.classification = Classification::UnstableSpiral;
        else if (re < -tiny)
            s.classification = Classification::StableSpiral;
        else
            s.classification = Classification::Degenerate;
    } else {
        double l1 = s.lambda1.real(), l2 = s.lambda2.real();
        if (std::abs(l1) <= tiny || std::abs(l2) <= tiny)
            s.classification = Classification::Degenerate;
        else if (l1 < 0.0 && l2 > 0.0)
            s.classification = Classification::Saddle;
        else if (l1 > 0.0)
            s.classification = Classification::UnstableNode;
        else
            s.classification = Classification::StableNode;
    }
    return s;
}

Spectrum eigen_A(const ModelParams& mp) {
    // triangular at A: the diagonal is exact
    Mat2 J = jacobian_reduced(0.0, mp.alpha, mp);
    return classify_2x2(J);
}

PartialsAtB partials_at_B(const ModelParams& mp, const Equilibrium& B) {
    double ub = B.u_star, vb = B.v_star;
    if (ub >= 1.0) throw DomainError("partials_at_B: requires u_bar < 1");
    double E = std::exp(-mp.beta * (vb - 1.0));
    PartialsAtB d;
    d.f1u = (mp.gamma - 1.0 - E) / (1.0 + E);
    d.f1v = -ub * mp.beta * E / (1.0 + E);
    d.f2u = mp.p * std::pow(1.0 + ub, mp.p - 1.0) * vb;
    d.f2v = std::pow(1.0 + ub, mp.p);
    // simplified closed forms; the f1v simplification carries a 1/gamma factor
    double s1u = ub / (1.0 - ub);
    double s1v = -mp.beta * ub * (mp.gamma - 1.0 / (1.0 - ub)) / mp.gamma;
    double s2u = mp.p / (1.0 + ub);
    double s2v = 1.0 / vb;
    auto close = [](double a, double b) {
        return std::abs(a - b) <= 1e-8 * std::max({std::abs(a), std::abs(b), 1.0});
    };
    if (!close(d.f1u, s1u) || !close(d.f1v, s1v) || !close(d.f2u, s2u) ||
        !close(d.f2v, s2v))
        throw ModelError("partials_at_B: direct and simplified forms disagree");
    return d;
}

Spectrum eigen_B(const ModelParams& mp) {
    Equilibrium B = equilibrium_B(mp);
    Mat2 J = jacobian_reduced(B.u_star, B.v_star, mp);
    return classify_2x2(J);
}

OmegaThresholds omega_thresholds(const ModelParams& mp) {
    Equilibrium B = equilibrium_B(mp);
    PartialsAtB f = partials_at_B(mp, B);
    if (mp.p == 0.0) {
        double w = f.f2v / f.f1u;
        return {w, w, true};
    }
    double disc_in = f.f1v * f.f1v * f.f2u * f.f2u -
                     f.f1u * f.f1v * f.f2u * f.f2v;
    double root = 2.0 * std::sqrt(disc_in);
    double base = f.f1u * f.f2v - 2.0 * f.f1v * f.f2u;
    double w1 = (base - root) / (f.f1u * f.f1u);
    double w2 = (base + root) / (f.f1u * f.f1u);
    // independent route: stable quadratic solve of
    // D(w) = f1u^2 w^2 + (4 f1v f2u - 2 f1u f2v) w + f2v^2
    double a = f.f1u * f.f1u;
    double b = 4.0 * f.f1v * f.f2u - 2.0 * f.f1u * f.f2v;
    double c0 = f.f2v * f.f2v;
    double q = -0.5 * (b + std::copysign(std::sqrt(b * b - 4.0 * a * c0), b));
    double r1 = q / a, r2 = c0 / q;
    if (r1 > r2) std::swap(r1, r2);
    double scale = std::max(std::abs(w2), 1.0);
    if (std::abs(r1 - w1) > 1e-6 * scale || std::abs(r2 - w2) > 1e-6 * scale)
        throw ModelError("omega_thresholds: quadratic cross-check failed");
    return {w1, w2, false};
}

}  // namespace riotwave
