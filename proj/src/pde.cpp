#include "riotwave/pde.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iostream>
#include <string>

#include "riotwave/kpp.hpp"

namespace riotwave {

namespace {

void validate_grid(const GridConfig& grid) {
    if (grid.nx < 3) throw DomainError("grid: requires nx >= 3");
    if (!(grid.L > 0.0)) throw DomainError("grid: requires L > 0");
    if (!(grid.dtau > 0.0)) throw DomainError("grid: requires dtau > 0");
    if (!(grid.t_end >= 0.0)) throw DomainError("grid: requires t_end >= 0");
}

}  // namespace

std::vector<double> grid_x(const GridConfig& grid) {
    validate_grid(grid);
    std::vector<double> x(grid.nx);
    double dx = grid.dx();
    for (int i = 0; i < grid.nx; ++i) x[i] = i * dx;
    return x;
}

TridiagonalPair build_operators(const GridConfig& grid, double d, double c) {
    validate_grid(grid);
    if (d < 0.0) throw DomainError("build_operators: requires d >= 0");
    double dx = grid.dx();
    if (std::abs(c * dx) >= 2.0)
        throw StabilityGuardError(
            "build_operators: |c dx| >= 2 breaks diagonal dominance");
    double lam = d * grid.dtau / (dx * dx);
    double nu = c * grid.dtau / dx;
    if (std::abs(nu) >= 2.0 * (1.0 + lam))
        throw StabilityGuardError(
            "build_operators: advection number c dtau/dx too large for dominance");

    int n = grid.nx;
    TridiagonalPair pair;
    auto fill = [n](Tridiagonal& T, double sub, double diag, double super,
                    double edge) {
        T.sub.assign(n, sub);
        T.diag.assign(n, diag);
        T.super.assign(n, super);
        T.sub[0] = 0.0;
        T.super[n - 1] = 0.0;
        T.super[0] = edge;
        T.sub[n - 1] = edge;
    };
    fill(pair.M, -(2.0 * lam - nu), 4.0 * (1.0 + lam), -(2.0 * lam + nu),
         -4.0 * lam);
    fill(pair.N, 2.0 * lam - nu, 4.0 * (1.0 - lam), 2.0 * lam + nu, 4.0 * lam);
    return pair;
}

ThomasSolver::ThomasSolver(int n) : cp_(n), dp_(n) {
    if (n < 1) throw DomainError("ThomasSolver: requires n >= 1");
}

void ThomasSolver::solve(const Tridiagonal& T, const std::vector<double>& b,
                         std::vector<double>& x) {
    std::size_t n = T.diag.size();
    if (b.size() != n || cp_.size() < n)
        throw DomainError("ThomasSolver: size mismatch");
    double m = T.diag[0];
    if (std::abs(m) < 1e-300) throw SingularOperator("Thomas sweep: zero pivot");
    cp_[0] = T.super[0] / m;
    dp_[0] = b[0] / m;
    for (std::size_t i = 1; i < n; ++i) {
        m = T.diag[i] - T.sub[i] * cp_[i - 1];
        if (std::abs(m) < 1e-300)
            throw SingularOperator("Thomas sweep: zero pivot");
        cp_[i] = T.super[i] / m;
        dp_[i] = (b[i] - T.sub[i] * dp_[i - 1]) / m;
    }
    x.resize(n);
    x[n - 1] = dp_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = dp_[i] - cp_[i] * x[i + 1];
}

void apply_tridiagonal(const Tridiagonal& T, const std::vector<double>& x,
                       std::vector<double>& y) {
    std::size_t n = T.diag.size();
    if (x.size() != n) throw DomainError("apply_tridiagonal: size mismatch");
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = T.diag[i] * x[i];
        if (i > 0) acc += T.sub[i] * x[i - 1];
        if (i + 1 < n) acc += T.super[i] * x[i + 1];
        y[i] = acc;
    }
}

namespace {

struct Workspace {
    std::vector<double> react;
    std::vector<double> rhs;
    std::vector<double> next;
};

void kinetics_u(const std::vector<double>& u, const std::vector<double>& v,
                const ModelParams& mp, std::vector<double>& f) {
    std::size_t n = u.size();
    f.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = sigma_gate(v[i], mp);
        f[i] = mp.omega * (mp.gamma * s * u[i] * (1.0 - u[i]) - u[i]);
    }
}

void kinetics_v(const std::vector<double>& u, const std::vector<double>& v,
                const ModelParams& mp, std::vector<double>& g) {
    std::size_t n = u.size();
    g.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = 1.0 - std::pow(1.0 + u[i], mp.p) * v[i];
}

void kinetics_scalar(const std::vector<double>& u, const ModelParams& mp,
                     std::vector<double>& f) {
    std::size_t n = u.size();
    f.resize(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = f_kpp(u[i], mp);
}

void advance_field(const TridiagonalPair& op, const std::vector<double>& x,
                   const std::vector<double>& react, double dtau,
                   ThomasSolver& solver, Workspace& w) {
    apply_tridiagonal(op.N, x, w.rhs);
    std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) w.rhs[i] += 4.0 * dtau * react[i];
    solver.solve(op.M, w.rhs, w.next);
}

// Scans for the first non-finite entry, updating the running minimum.
void scan_field(const std::vector<double>& x, long step, const char* name,
                double& minval) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]))
            throw NanAbort("simulate: non-finite " + std::string(name) +
                           " at step " + std::to_string(step) + ", node " +
                           std::to_string(i));
        if (x[i] < minval) minval = x[i];
    }
}

void warn_stiff_reaction(double dtau, double maxdf, bool& warned) {
    if (!warned && dtau * maxdf > 0.5) {
        std::cerr << "warning: dtau*max|df/du| = " << dtau * maxdf
                  << " exceeds 0.5; explicit reaction may be inaccurate\n";
        warned = true;
    }
}

SimulationResult run_system(const ModelParams& mp, const GridConfig& grid,
                            FieldState st, int snapshot_every,
                            const StepOptions& opts) {
    validate_grid(grid);
    if (snapshot_every < 1)
        throw DomainError("simulate: requires snapshot_every >= 1");
    std::size_t n = static_cast<std::size_t>(grid.nx);
    if (st.u.size() != n || st.v.size() != n)
        throw DomainError("simulate: state length does not match grid");

    TridiagonalPair op_u = build_operators(grid, mp.d1, mp.c);
    TridiagonalPair op_v = build_operators(grid, mp.d2, mp.c);
    ThomasSolver solver(grid.nx);
    Workspace wu, wv;
    wu.react.assign(n, 0.0);
    wv.react.assign(n, 0.0);

    SimulationResult res;
    res.min_u = *std::min_element(st.u.begin(), st.u.end());
    res.min_v = *std::min_element(st.v.begin(), st.v.end());
    res.snapshots.push_back(st);

    long nsteps = std::llround(grid.t_end / grid.dtau);
    double tau0 = st.tau;
    bool warned = false;
    for (long l = 1; l <= nsteps; ++l) {
        if (!opts.zero_kinetics) {
            kinetics_u(st.u, st.v, mp, wu.react);
            kinetics_v(st.u, st.v, mp, wv.react);
        }
        advance_field(op_u, st.u, wu.react, grid.dtau, solver, wu);
        advance_field(op_v, st.v, wv.react, grid.dtau, solver, wv);
        st.u.swap(wu.next);
        st.v.swap(wv.next);
        st.tau = tau0 + l * grid.dtau;
        scan_field(st.u, l, "u", res.min_u);
        scan_field(st.v, l, "v", res.min_v);
        if (l % snapshot_every == 0 || l == nsteps) {
            if (l % snapshot_every == 0) res.snapshots.push_back(st);
            double maxdf = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double s = sigma_gate(st.v[i], mp);
                double df =
                    std::abs(mp.omega * (mp.gamma * s * (1.0 - 2.0 * st.u[i]) - 1.0));
                if (df > maxdf) maxdf = df;
            }
            warn_stiff_reaction(grid.dtau, maxdf, warned);
        }
    }
    if (nsteps % snapshot_every != 0) res.snapshots.push_back(st);
    return res;
}

SimulationResult run_scalar(const ModelParams& mp, const GridConfig& grid,
                            FieldState st, int snapshot_every,
                            const StepOptions& opts) {
    validate_grid(grid);
    if (snapshot_every < 1)
        throw DomainError("simulate: requires snapshot_every >= 1");
    std::size_t n = static_cast<std::size_t>(grid.nx);
    if (st.u.size() != n)
        throw DomainError("simulate: state length does not match grid");
    st.v.clear();

    TridiagonalPair op_u = build_operators(grid, mp.d1, mp.c);
    ThomasSolver solver(grid.nx);
    Workspace wu;
    wu.react.assign(n, 0.0);

    SimulationResult res;
    res.min_u = *std::min_element(st.u.begin(), st.u.end());
    res.min_v = 0.0;
    res.snapshots.push_back(st);

    long nsteps = std::llround(grid.t_end / grid.dtau);
    double tau0 = st.tau;
    bool warned = false;
    for (long l = 1; l <= nsteps; ++l) {
        if (!opts.zero_kinetics) kinetics_scalar(st.u, mp, wu.react);
        advance_field(op_u, st.u, wu.react, grid.dtau, solver, wu);
        st.u.swap(wu.next);
        st.tau = tau0 + l * grid.dtau;
        scan_field(st.u, l, "u", res.min_u);
        if (l % snapshot_every == 0 || l == nsteps) {
            if (l % snapshot_every == 0) res.snapshots.push_back(st);
            double h = 1e-6;
            double maxdf = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double df = std::abs(f_kpp(st.u[i] + h, mp) - f_kpp(st.u[i] - h, mp)) /
                            (2.0 * h);
                if (df > maxdf) maxdf = df;
            }
            warn_stiff_reaction(grid.dtau, maxdf, warned);
        }
    }
    if (nsteps % snapshot_every != 0) res.snapshots.push_back(st);
    return res;
}

FieldState exponential_state(const GridConfig& grid, const InitialData& init,
                             bool with_v) {
    if (!(init.A > 0.0) || !(init.k > 0.0) || !(init.B > 0.0))
        throw DomainError("initial data: requires A, k, B > 0");
    FieldState st;
    std::vector<double> x = grid_x(grid);
    st.u.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        st.u[i] = init.A * std::exp(-init.k * x[i]);
    if (with_v) st.v.assign(x.size(), init.B);
    return st;
}

}  // namespace

FieldState step(const FieldState& state, const TridiagonalPair& op_u,
                const TridiagonalPair& op_v, const ModelParams& mp,
                const GridConfig& grid, ThomasSolver& solver,
                const StepOptions& opts) {
    std::size_t n = state.u.size();
    if (op_u.M.diag.size() != n || op_v.M.diag.size() != n ||
        state.v.size() != n)
        throw DomainError("step: operator and state sizes disagree");
    Workspace wu, wv;
    wu.react.assign(n, 0.0);
    wv.react.assign(n, 0.0);
    if (!opts.zero_kinetics) {
        kinetics_u(state.u, state.v, mp, wu.react);
        kinetics_v(state.u, state.v, mp, wv.react);
    }
    advance_field(op_u, state.u, wu.react, grid.dtau, solver, wu);
    advance_field(op_v, state.v, wv.react, grid.dtau, solver, wv);
    FieldState out;
    out.u = std::move(wu.next);
    out.v = std::move(wv.next);
    out.tau = state.tau + grid.dtau;
    return out;
}

SimulationResult simulate(const ModelParams& mp, const GridConfig& grid,
                          const InitialData& init, int snapshot_every,
                          const StepOptions& opts) {
    return run_system(mp, grid, exponential_state(grid, init, true),
                      snapshot_every, opts);
}

SimulationResult simulate_from_state(const ModelParams& mp, const GridConfig& grid,
                                     FieldState state, int snapshot_every,
                                     const StepOptions& opts) {
    return run_system(mp, grid, std::move(state), snapshot_every, opts);
}

SimulationResult simulate_scalar(const ModelParams& mp, const GridConfig& grid,
                                 const InitialData& init, int snapshot_every) {
    return run_scalar(mp, grid, exponential_state(grid, init, false),
                      snapshot_every, {});
}

SimulationResult simulate_scalar_from_state(const ModelParams& mp,
                                            const GridConfig& grid,
                                            FieldState state, int snapshot_every) {
    return run_scalar(mp, grid, std::move(state), snapshot_every, {});
}

FrontSpeed measure_front_speed(const std::vector<FieldState>& snapshots,
                               const GridConfig& grid, double level,
                               double t_from) {
    if (snapshots.size() < 5)
        throw DomainError("measure_front_speed: requires >= 5 snapshots");
    double dx = grid.dx();
    std::vector<double> ts, xs;
    for (const FieldState& s : snapshots) {
        if (t_from >= 0.0 && s.tau < t_from) continue;
        const std::vector<double>& u = s.u;
        if (u.size() < 2) throw DomainError("measure_front_speed: short state");
        for (std::size_t i = u.size() - 1; i-- > 0;) {
            double a = u[i] - level, b = u[i + 1] - level;
            double sa = a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
            double sb = b > 0.0 ? 1.0 : (b < 0.0 ? -1.0 : 0.0);
            if (sa == sb) continue;
            double den = b - a;
            double xc = den != 0.0 ? i * dx + dx * (-a / den) : i * dx;
            ts.push_back(s.tau);
            xs.push_back(xc);
            break;
        }
    }
    if (ts.size() < 2)
        throw NoFront("measure_front_speed: level crossed in fewer than two snapshots");
    std::size_t n = ts.size();
    double tbar = 0.0, xbar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        tbar += ts[i];
        xbar += xs[i];
    }
    tbar /= n;
    xbar /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (ts[i] - tbar) * (xs[i] - xbar);
        sxx += (ts[i] - tbar) * (ts[i] - tbar);
    }
    if (sxx == 0.0)
        throw DomainError("measure_front_speed: degenerate time values");
    double slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = xs[i] - (xbar + slope * (ts[i] - tbar));
        ss += r * r;
    }
    return {slope, std::sqrt(ss / n), static_cast<int>(n)};
}

double stationarity_residual(const FieldState& s1, const FieldState& s2) {
    if (s1.u.size() != s2.u.size() || s1.v.size() != s2.v.size())
        throw DomainError("stationarity_residual: mismatched grids");
    if (!(s2.tau > s1.tau))
        throw DomainError("stationarity_residual: requires s2.tau > s1.tau");
    double dt = s2.tau - s1.tau;
    double m = 0.0;
    for (std::size_t i = 0; i < s1.u.size(); ++i)
        m = std::max(m, std::abs(s2.u[i] - s1.u[i]));
    for (std::size_t i = 0; i < s1.v.size(); ++i)
        m = std::max(m, std::abs(s2.v[i] - s1.v[i]));
    return m / dt;
}

}  // namespace riotwave
