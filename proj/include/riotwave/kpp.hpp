#pragma once

#include <array>
#include <complex>

#include "riotwave/model.hpp"

namespace riotwave {

// Gate response composed with the critical manifold:
// h_tilde(u) = 1/(1 + e^{-beta((1+u)^{-p} - 1)}). Decreasing and convex for
// beta, p > 0.
double h_tilde(double u, const ModelParams& mp);

// Scalar front source f(u) = -u (1 - gamma h_tilde(u) (1 - u)); zeros at 0
// and ubar, f'(0) = gamma/2 - 1.
double f_kpp(double u, const ModelParams& mp);

// Exact derivative of f_kpp at ubar:
// -ubar [ 1/(1-ubar) + (p beta/(1+ubar)^{p+1}) E/(1+E) ], E = e^{-beta(vbar-1)}.
double fprime_ubar(const ModelParams& mp);

// Closed-form lower bound on p for the concavity region at given beta:
// ((2b+1) + sqrt((2b+1)^2 + 4b(b+1))) / (2b(b+1)). Reliable near the
// boundary; far above it, large beta*p at large gamma lets convexity
// reappear just left of ubar, which kpp_verdict exposes via the scan.
double p_threshold(double beta);

// Roots of the region quadratic b(b+1) rho^2 - (2b+1) rho - 1; the larger
// root is p_threshold. Exposed for cross-checks.
std::array<double, 2> region_quadratic_roots(double beta);

struct KppRegion {
    bool guaranteed;
    double p_threshold;
};

// Region membership test; requires beta > 0 and p > 0.
KppRegion kpp_region_check(double beta, double p);

struct ConcavityScan {
    bool is_concave;
    double max_f2;
};

// Central second differences of f_kpp on a uniform interior grid of (0, ubar)
// with step h = ubar/(10 n). Accepts any p > -1/beta; requires n >= 100.
ConcavityScan concavity_scan(const ModelParams& mp, int n_samples);

// Minimal front speed sqrt(2 (gamma - 2)); requires gamma >= 2.
double min_speed(double gamma);

// Phase-plane system of the scalar front equation on the critical manifold:
// u1' = u2, u2' = u1 - c u2 - gamma h_tilde(u1) u1 (1 - u1).
std::array<double, 2> kpp_phase_rhs(double u1, double u2, const ModelParams& mp);

// Eigenvalues of the three-dimensional front system linearized at (0, 0, 1):
// (-omega c +- sqrt(omega^2 c^2 - 2 omega^2 (gamma-2)))/2 and 1/c.
std::array<std::complex<double>, 3> kpp_3d_eigenvalues(const ModelParams& mp);

// Heuristic: largest gamma in (2, 1e6] whose concavity scan still reports
// concave, by bisection; returns +infinity if concavity never breaks within
// the cap (the sufficient region is conservative and this is the observed
// outcome across the sampled parameter space).
double gamma0_search(double beta, double p);

struct KppVerdict {
    bool guaranteed_by_region;
    bool numeric_concave;
    double p_threshold;
    double min_speed;
    double max_f2;
};

KppVerdict kpp_verdict(const ModelParams& mp, int n_samples = 1000);

}  // namespace riotwave
