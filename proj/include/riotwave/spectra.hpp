#pragma once

#include <array>
#include <complex>

#include "riotwave/equilibria.hpp"
#include "riotwave/model.hpp"

namespace riotwave {

enum class Classification {
    Saddle,
    UnstableNode,
    UnstableSpiral,
    StableNode,
    StableSpiral,
    Degenerate
};

const char* classification_name(Classification c);

struct Spectrum {
    std::complex<double> lambda1;  // smaller real part first
    std::complex<double> lambda2;
    Classification classification;
};

struct PartialsAtB {
    double f1u;
    double f1v;
    double f2u;
    double f2v;
};

struct OmegaThresholds {
    double omega1;
    double omega2;
    bool degenerate;  // p = 0 collapses the window to a point
};

using Mat2 = std::array<std::array<double, 2>, 2>;

// Analytic Jacobian of reduced_rhs at (u, v). At A = (0, 1) it is
// lower-triangular with diagonal ((omega/c)(2-gamma)/2, 1/c).
Mat2 jacobian_reduced(double u, double v, const ModelParams& mp);

// Eigenvalues and classification of a real 2x2 matrix. Imaginary parts below
// 1e-12 of the eigenvalue magnitude are treated as zero; eigenvalues that
// small in magnitude classify as Degenerate.
Spectrum classify_2x2(const Mat2& J);

Spectrum eigen_A(const ModelParams& mp);

// Partials of the brevity-notation kinetics (f1, f2) at B, computed by the
// direct formulas and cross-checked against the simplified closed forms
// (u/(1-u), -beta*u*(gamma - 1/(1-u))/gamma, p/(1+u), (1+u)^p) to 1e-8.
PartialsAtB partials_at_B(const ModelParams& mp, const Equilibrium& B);

Spectrum eigen_B(const ModelParams& mp);

// Window boundaries (omega1, omega2) where the discriminant
// D(w) = (f2v - w f1u)^2 + 4 w f1v f2u changes sign; eigen_B is complex
// exactly for omega inside the window. Verified internally against an
// independent quadratic solve of D.
OmegaThresholds omega_thresholds(const ModelParams& mp);

}  // namespace riotwave
