// TVD-RK3 time integration with CFL-based step control and post-stage
// limiting (1D minmod, 2D Cartesian moment limiter).
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hjdg/field.hpp"
#include "hjdg/solver1d.hpp"

namespace hjdg {

struct TimeControls {
    double cfl = 0.1;
    double t_final = 1.0;
    DtLaw law = DtLaw::Standard;
    double speed_floor = 1e-14;  // keeps dt finite on zero-speed states
};

struct BlowupError : std::runtime_error {
    BlowupError(int stage_, int element_, double time_)
        : std::runtime_error("non-finite state in RK stage " + std::to_string(stage_) +
                             ", element " + std::to_string(element_) + ", t = " + std::to_string(time_)),
          stage(stage_), element(element_), time(time_) {}
    int stage;
    int element;
    double time;
};

namespace detail {
template <class Mesh>
void throw_if_not_finite(const DGField<Mesh>& u, int stage) {
    const int nd = u.n_dofs();
    for (std::size_t i = 0; i < u.coef.size(); ++i)
        if (!std::isfinite(u.coef[i]))
            throw BlowupError(stage, static_cast<int>(i) / nd, u.time);
}
}  // namespace detail

// One Shu-Osher step:
//   u1 = u + dt L(u); u2 = 3/4 u + 1/4 (u1 + dt L(u1));
//   u  = 1/3 u + 2/3 (u2 + dt L(u2)); limiter after every stage.
template <class Mesh, class RhsFn, class LimitFn>
void tvd_rk3_step(DGField<Mesh>& u, double dt, RhsFn&& rhs, LimitFn&& limit,
                  std::vector<double>& k, DGField<Mesh>& work) {
    const std::size_t n = u.coef.size();
    const double t0 = u.time;

    rhs(u, k);
    work.coef = u.coef;
    for (std::size_t i = 0; i < n; ++i) work.coef[i] += dt * k[i];
    work.time = t0 + dt;
    limit(work);
    detail::throw_if_not_finite(work, 1);

    rhs(work, k);
    for (std::size_t i = 0; i < n; ++i)
        work.coef[i] = 0.75 * u.coef[i] + 0.25 * (work.coef[i] + dt * k[i]);
    work.time = t0 + 0.5 * dt;
    limit(work);
    detail::throw_if_not_finite(work, 2);

    rhs(work, k);
    for (std::size_t i = 0; i < n; ++i)
        u.coef[i] = u.coef[i] / 3.0 + 2.0 / 3.0 * (work.coef[i] + dt * k[i]);
    u.time = t0 + dt;
    limit(u);
    detail::throw_if_not_finite(u, 3);
}

// dt from the CFL law; speeds and mesh scales come from the caller:
//   Standard: cfl / (sum_d max|H_d| / min_width_d), P43: cfl * h_min^{4/3}.
double dt_from_speeds(const TimeControls& controls, const std::vector<double>& max_speeds,
                      const std::vector<double>& min_widths);

// Plain minmod limiter (TVB constant 0) acting on the linear mode; limited
// cells drop modes >= 2. Means are never altered.
void minmod_limit(DGField<Mesh1D>& field);

// Hierarchical moment limiter on directional Legendre moments, highest total
// degree first, stopping at the first unlimited level. Means preserved.
void moment_limit(DGField<CartMesh2D>& field);

// Generic time loop: solver must provide rhs(field, out), plus the speed /
// width data needed by stable_dt. Returns the number of steps taken.
template <class Solver, class Mesh, class DtFn, class LimitFn>
int run_to_time(const Solver& solver, DGField<Mesh>& u, const TimeControls& controls,
                DtFn&& stable_dt, LimitFn&& limit) {
    std::vector<double> k;
    DGField<Mesh> work = u;
    int steps = 0;
    const double t_end = controls.t_final;
    while (u.time < t_end - 1e-14 * std::max(1.0, std::abs(t_end))) {
        double dt = stable_dt(u);
        if (u.time + dt > t_end) dt = t_end - u.time;  // land exactly on T
        tvd_rk3_step(u, dt, [&](const DGField<Mesh>& f, std::vector<double>& out) { solver.rhs(f, out); },
                     limit, k, work);
        ++steps;
    }
    return steps;
}

}  // namespace hjdg
