#pragma once

#include <vector>

#include "riotwave/model.hpp"

namespace riotwave {

struct GridConfig {
    double L;
    int nx;
    double dtau;
    double t_end;
    double dx() const { return L / (nx - 1); }
};

// Exponential initial profile u(x,0) = A e^{-k x}, v(x,0) = B.
struct InitialData {
    double A;
    double k;
    double B;
};

struct FieldState {
    std::vector<double> u;
    std::vector<double> v;  // empty in scalar mode
    double tau = 0.0;
};

struct Tridiagonal {
    std::vector<double> sub;    // sub[0] unused
    std::vector<double> diag;
    std::vector<double> super;  // super[nx-1] unused
};

struct TridiagonalPair {
    Tridiagonal M;  // implicit side
    Tridiagonal N;  // explicit side
};

/// Crank-Nicolson transport operators for one field, scaled by 4:
/// interior M row (-(2L - nu), 4(1 + L), -(2L + nu)) and N row
/// (+(2L - nu), 4(1 - L), +(2L + nu)) with L = d dtau/dx^2 and
/// nu = c dtau/dx. Zero-Neumann boundaries are closed by ghost reflection,
/// folding both off-diagonal contributions onto the single interior
/// neighbor (-4L for M, +4L for N), which preserves row sums at c = 0.
/// Requires |c dx| < 2 for diagonal dominance of M.
TridiagonalPair build_operators(const GridConfig& grid, double d, double c);

// Thomas elimination; the scratch buffers are reused between calls, so an
// instance must not be shared across concurrent steps.
class ThomasSolver {
  public:
    explicit ThomasSolver(int n);
    void solve(const Tridiagonal& T, const std::vector<double>& b,
               std::vector<double>& x);

  private:
    std::vector<double> cp_;
    std::vector<double> dp_;
};

void apply_tridiagonal(const Tridiagonal& T, const std::vector<double>& x,
                       std::vector<double>& y);

struct StepOptions {
    bool zero_kinetics = false;  // test hook: drop both reaction terms
};

// One IMEX step: M u^{l+1} = N u^l + 4 dtau f(u^l, v^l) for both fields, with
// the reaction evaluated explicitly at level l.
FieldState step(const FieldState& state, const TridiagonalPair& op_u,
                const TridiagonalPair& op_v, const ModelParams& mp,
                const GridConfig& grid, ThomasSolver& solver,
                const StepOptions& opts = {});

struct SimulationResult {
    std::vector<FieldState> snapshots;
    double min_u;
    double min_v;
};

SimulationResult simulate(const ModelParams& mp, const GridConfig& grid,
                          const InitialData& init, int snapshot_every,
                          const StepOptions& opts = {});

// Same run from an arbitrary initial state (u and v of length nx).
SimulationResult simulate_from_state(const ModelParams& mp, const GridConfig& grid,
                                     FieldState state, int snapshot_every,
                                     const StepOptions& opts = {});

// Scalar mode: single field with source f_kpp(u) (v eliminated through the
// critical manifold). Diffusion d1, frame speed c.
SimulationResult simulate_scalar(const ModelParams& mp, const GridConfig& grid,
                                 const InitialData& init, int snapshot_every);

SimulationResult simulate_scalar_from_state(const ModelParams& mp,
                                            const GridConfig& grid,
                                            FieldState state, int snapshot_every);

struct FrontSpeed {
    double speed;
    double fit_residual;  // rms of the linear fit
    int n_points;
};

// Least-squares slope of the level-crossing position of u against tau; the
// crossing is the rightmost one, linearly interpolated. Snapshots earlier
// than t_from are excluded when t_from >= 0. Throws NoFront when fewer than
// two snapshots cross the level.
FrontSpeed measure_front_speed(const std::vector<FieldState>& snapshots,
                               const GridConfig& grid, double level,
                               double t_from = -1.0);

// max-norm of (u2 - u1, v2 - v1) / (tau2 - tau1).
double stationarity_residual(const FieldState& s1, const FieldState& s2);

std::vector<double> grid_x(const GridConfig& grid);

}  // namespace riotwave
