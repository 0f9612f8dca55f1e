#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "riotwave/model.hpp"

namespace riotwave {

enum class Termination { ReachedTarget, LeftDomain, MaxSteps, StepUnderflow, SpanEnd };

template <std::size_t N>
struct Trajectory {
    std::vector<double> xi;
    std::vector<std::array<double, N>> states;
    Termination termination = Termination::SpanEnd;
    int event_index = -1;
};

enum class EventKind { Target, Domain };

// Terminal event: triggers when fn crosses from positive to non-positive
// between accepted steps; the crossing is localized by bisection on the step.
template <std::size_t N>
struct Event {
    std::function<double(double, const std::array<double, N>&)> fn;
    EventKind kind;
};

namespace detail {

// Dormand-Prince 5(4) tableau (FSAL).
inline constexpr double kA21 = 1.0 / 5;
inline constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
inline constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
inline constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                        kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
inline constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                        kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                        kA65 = -5103.0 / 18656;
inline constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                        kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
inline constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                        kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;
inline constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5,
                        kC5 = 8.0 / 9;

template <std::size_t N, class F>
std::array<double, N> dopri_stage(F&& rhs, double x, const std::array<double, N>& y,
                                  double h, const std::array<double, N>& k1,
                                  std::array<double, N>& k7,
                                  std::array<double, N>& err) {
    std::array<double, N> w, k2, k3, k4, k5, k6;
    for (std::size_t i = 0; i < N; ++i) w[i] = y[i] + h * kA21 * k1[i];
    k2 = rhs(x + kC2 * h, w);
    for (std::size_t i = 0; i < N; ++i)
        w[i] = y[i] + h * (kA31 * k1[i] + kA32 * k2[i]);
    k3 = rhs(x + kC3 * h, w);
    for (std::size_t i = 0; i < N; ++i)
        w[i] = y[i] + h * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
    k4 = rhs(x + kC4 * h, w);
    for (std::size_t i = 0; i < N; ++i)
        w[i] = y[i] + h * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
    k5 = rhs(x + kC5 * h, w);
    for (std::size_t i = 0; i < N; ++i)
        w[i] = y[i] + h * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] +
                           kA64 * k4[i] + kA65 * k5[i]);
    k6 = rhs(x + h, w);
    std::array<double, N> y5;
    for (std::size_t i = 0; i < N; ++i)
        y5[i] = y[i] + h * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] +
                            kB5 * k5[i] + kB6 * k6[i]);
    k7 = rhs(x + h, y5);
    for (std::size_t i = 0; i < N; ++i)
        err[i] = h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] +
                      kE6 * k6[i] + kE7 * k7[i]);
    return y5;
}

}  // namespace detail

/// Adaptive embedded Runge-Kutta integration of dy/dxi = rhs(xi, y) from xi0
/// to xi1 (either direction). Steps are accepted on the mixed error norm
/// rms((y5 - y4) / (atol + rtol*max(|y|, |ynew|))) <= 1 and every accepted
/// point is recorded. Terminal events stop the run at a localized crossing;
/// step underflow below 1e-14 of the span aborts.
template <std::size_t N, class F>
Trajectory<N> integrate(F&& rhs, std::array<double, N> y0, double xi0, double xi1,
                        double rtol, double atol,
                        const std::vector<Event<N>>& events = {},
                        std::size_t max_steps = 2000000) {
    if (!(rtol > 0.0) || !(atol > 0.0))
        throw DomainError("integrate: tolerances must be positive");
    Trajectory<N> tr;
    const double span = xi1 - xi0;
    const double dir = span >= 0.0 ? 1.0 : -1.0;
    double x = xi0;
    std::array<double, N> y = y0;
    tr.xi.push_back(x);
    tr.states.push_back(y);
    if (span == 0.0) return tr;

    std::vector<double> evprev(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) evprev[e] = events[e].fn(x, y);

    std::array<double, N> k1 = rhs(x, y);
    double h = dir * std::min(std::abs(span) / 100.0, 0.1);
    const double hmin = 1e-14 * std::abs(span);
    std::array<double, N> k7, errv;

    for (std::size_t step = 0; step < max_steps; ++step) {
        if ((x + h - xi1) * dir > 0.0) h = xi1 - x;
        std::array<double, N> ynew = detail::dopri_stage(rhs, x, y, h, k1, k7, errv);
        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < N; ++i) {
            if (!std::isfinite(ynew[i])) finite = false;
            double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            double q = errv[i] / sc;
            err += q * q;
        }
        err = std::sqrt(err / N);
        if (!finite) err = 2.0;  // force rejection and step shrink

        if (err <= 1.0) {
            double xn = x + h;
            bool triggered = false;
            for (std::size_t e = 0; e < events.size() && !triggered; ++e) {
                double ev = events[e].fn(xn, ynew);
                if (evprev[e] > 0.0 && ev <= 0.0) {
                    // bisection on the step fraction, re-stepping from (x, y)
                    double slo = 0.0, shi = 1.0;
                    std::array<double, N> yev = ynew, ktmp, etmp;
                    for (int it = 0; it < 48; ++it) {
                        double sm = 0.5 * (slo + shi);
                        std::array<double, N> ym =
                            detail::dopri_stage(rhs, x, y, h * sm, k1, ktmp, etmp);
                        if (events[e].fn(x + h * sm, ym) <= 0.0) {
                            shi = sm;
                            yev = ym;
                        } else {
                            slo = sm;
                        }
                    }
                    tr.xi.push_back(x + h * shi);
                    tr.states.push_back(yev);
                    tr.termination = events[e].kind == EventKind::Target
                                         ? Termination::ReachedTarget
                                         : Termination::LeftDomain;
                    tr.event_index = static_cast<int>(e);
                    return tr;
                }
                evprev[e] = ev;
            }
            x = xn;
            y = ynew;
            k1 = k7;  // FSAL
            tr.xi.push_back(x);
            tr.states.push_back(y);
            if ((x - xi1) * dir >= 0.0) {
                tr.termination = Termination::SpanEnd;
                return tr;
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
        if (std::abs(h) < hmin) {
            tr.termination = Termination::StepUnderflow;
            return tr;
        }
    }
    tr.termination = Termination::MaxSteps;
    return tr;
}

}  // namespace riotwave
