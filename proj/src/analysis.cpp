#include "hjdg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hjdg {

namespace {

const double kPi = M_PI;

double wrap_to(double x, double lo, double period) {
    double s = std::fmod(x - lo, period);
    if (s < 0.0) s += period;
    return lo + s;
}

// Backward characteristic of dx/dt = sin(x) on [0, 2pi]:
// tan(x0/2) = exp(-t) tan(x/2), branch kept within the same half-period.
double linsmth_exact(double x, double t) {
    const double s = wrap_to(x, 0.0, 2.0 * kPi);
    double x0 = 2.0 * std::atan(std::exp(-t) * std::tan(0.5 * s));
    if (s > kPi) x0 += 2.0 * kPi;
    return std::sin(x0);
}

// Viscosity solution of phi_t + sign(cos x) phi_x = 0, phi0 = sin x, t < pi/2:
// shock (kink) fixed at pi/2, rarefaction plateau spreading from 3pi/2.
double linnonsmth_exact(double x, double t) {
    const double s = wrap_to(x, 0.0, 2.0 * kPi);
    if (s <= 0.5 * kPi) return std::sin(s - t);
    if (s <= 1.5 * kPi - t) return std::sin(s + t);
    if (s <= 1.5 * kPi + t) return -1.0;
    return std::sin(s - t);
}

double golden_refine(const std::function<double(double)>& f, double lo, double hi) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-12) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    return std::min(f1, f2);
}

}  // namespace

double trace_characteristic_1d(const std::function<double(double)>& phi0,
                               const std::function<double(double)>& dphi0,
                               const std::function<double(double)>& h_of_p,
                               const std::function<double(double)>& dh_of_p, double x, double t,
                               double reach) {
    if (t == 0.0) return phi0(x);
    auto g = [&](double s) { return s + t * dh_of_p(dphi0(s)) - x; };

    const int nscan = 256;
    const double lo = x - reach, hi = x + reach;
    double bracket_a = 0.0, bracket_b = 0.0;
    int n_roots = 0, last_cell = -10;
    double prev = g(lo);
    for (int i = 1; i <= nscan; ++i) {
        const double s = lo + (hi - lo) * i / nscan;
        const double cur = g(s);
        if (prev * cur <= 0.0 && !(prev == 0.0 && cur == 0.0)) {
            if (i - last_cell > 2) {  // a new root, not the same one re-straddled
                ++n_roots;
                bracket_a = lo + (hi - lo) * (i - 1) / nscan;
                bracket_b = s;
            }
            last_cell = i;
        }
        prev = cur;
    }
    if (n_roots == 0) throw std::runtime_error("characteristics oracle: no root within reach");
    if (n_roots > 1)
        throw std::runtime_error("characteristics oracle: multiple characteristics (past singularity time)");

    double fa = g(bracket_a);
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (bracket_a + bracket_b);
        const double fm = g(mid);
        if (fa * fm <= 0.0) {
            bracket_b = mid;
        } else {
            bracket_a = mid;
            fa = fm;
        }
    }
    const double x0 = 0.5 * (bracket_a + bracket_b);
    const double p = dphi0(x0);
    return phi0(x0) + t * (p * dh_of_p(p) - h_of_p(p));
}

double hopf_lax_min(const std::function<double(double)>& phi0,
                    const std::function<double(double)>& conjugate, double x, double t,
                    double reach) {
    if (t <= 0.0) return phi0(x);
    auto f = [&](double y) { return phi0(y) + t * conjugate((x - y) / t); };
    const int ns = 4096;
    const double lo = x - reach, hi = x + reach;
    double best = f(lo);
    int best_i = 0;
    for (int i = 1; i <= ns; ++i) {
        const double y = lo + (hi - lo) * i / ns;
        const double v = f(y);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    const double ra = lo + (hi - lo) * std::max(0, best_i - 1) / ns;
    const double rb = lo + (hi - lo) * std::min(ns, best_i + 1) / ns;
    return std::min(best, golden_refine(f, ra, rb));
}

ExactSolution exact_solution(std::string_view case_name, std::string_view variant) {
    const CaseSpec& spec = find_case(case_name);
    const std::string v = variant.empty() ? spec.variants.front() : std::string(variant);
    auto phi0 = initial_condition(spec, v);
    ExactSolution out;

    if (case_name == "linsmth") {
        out.provenance = ExactSolution::Provenance::Analytic;
        out.eval = [](const double* x, double t) { return linsmth_exact(x[0], t); };
        return out;
    }
    if (case_name == "linnonsmth" || case_name == "eikonal1d") {
        out.provenance = ExactSolution::Provenance::Analytic;
        out.valid_until = 0.5 * kPi - 1e-9;
        out.eval = [](const double* x, double t) { return linnonsmth_exact(x[0], t); };
        return out;
    }
    if (case_name == "burgers1d") {
        out.provenance = ExactSolution::Provenance::Characteristic;
        if (v == "corner") {
            // Hopf-Lax only: the corner data is singular from t = 0+.
            out.provenance = ExactSolution::Provenance::HopfLax;
            out.eval = [](const double* x, double t) {
                auto ic = [](double y) {
                    return std::abs(wrap_to(y, 0.0, 2.0 * kPi) - kPi);
                };
                return hopf_lax_min(ic, [](double w) { return 0.5 * w * w; }, x[0], t, 1.05 * t + 0.1);
            };
            return out;
        }
        out.eval = [](const double* x, double t) {
            if (t < 0.95) {
                return trace_characteristic_1d([](double s) { return std::sin(s); },
                                               [](double s) { return std::cos(s); },
                                               [](double p) { return 0.5 * p * p; },
                                               [](double p) { return p; }, x[0], t, t + 0.1);
            }
            auto ic = [](double y) { return std::sin(y); };
            return hopf_lax_min(ic, [](double w) { return 0.5 * w * w; }, x[0], t, 1.05 * t + 0.1);
        };
        return out;
    }
    if (case_name == "cos1d") {
        out.provenance = ExactSolution::Provenance::Characteristic;
        out.valid_until = 0.95 / (kPi * kPi);
        out.eval = [](const double* x, double t) {
            return trace_characteristic_1d([](double s) { return -std::cos(kPi * s); },
                                           [](double s) { return kPi * std::sin(kPi * s); },
                                           [](double p) { return -std::cos(p + 1.0); },
                                           [](double p) { return std::sin(p + 1.0); }, x[0], t,
                                           t + 0.1);
        };
        return out;
    }
    if (case_name == "rotation") {
        out.provenance = ExactSolution::Provenance::Analytic;
        out.eval = [phi0](const double* x, double t) {
            const double xr = x[0] * std::cos(t) + x[1] * std::sin(t);
            const double yr = -x[0] * std::sin(t) + x[1] * std::cos(t);
            const double p[2] = {xr, yr};
            return phi0(p);
        };
        return out;
    }
    if (case_name == "burgers2d" || case_name == "cos2d") {
        // Reduction along xi = x + y: psi_t + G(psi_xi) = 0 with
        // G(u) = H(u, u) and psi0(xi) = -cos(pi xi / 2).
        const bool is_burgers = case_name == "burgers2d";
        out.provenance = ExactSolution::Provenance::Characteristic;
        if (!is_burgers) out.valid_until = 0.15;  // characteristics cross near t = 0.19
        auto psi0 = [](double s) { return -std::cos(0.5 * kPi * s); };
        auto dpsi0 = [](double s) { return 0.5 * kPi * std::sin(0.5 * kPi * s); };
        if (is_burgers) {
            out.eval = [psi0, dpsi0](const double* x, double t) {
                const double xi = x[0] + x[1];
                if (t < 0.95 / (kPi * kPi)) {
                    return trace_characteristic_1d(
                        psi0, dpsi0, [](double u) { return 0.5 * (2.0 * u + 1.0) * (2.0 * u + 1.0); },
                        [](double u) { return 2.0 * (2.0 * u + 1.0); }, xi, t,
                        2.0 * (kPi + 1.0) * t + 0.1);
                }
                // convex conjugate of (2u+1)^2/2 is w^2/8 - w/2
                return hopf_lax_min(psi0, [](double w) { return w * w / 8.0 - 0.5 * w; }, xi, t,
                                    2.0 * (kPi + 1.0) * t + 0.5);
            };
        } else {
            out.eval = [psi0, dpsi0](const double* x, double t) {
                return trace_characteristic_1d(
                    psi0, dpsi0, [](double u) { return -std::cos(2.0 * u + 1.0); },
                    [](double u) { return 2.0 * std::sin(2.0 * u + 1.0); }, x[0] + x[1], t,
                    2.0 * t + 0.5);
            };
        }
        return out;
    }
    if (case_name == "crossderiv") {
        out.provenance = ExactSolution::Provenance::Characteristic;
        out.valid_until = 0.95;  // characteristic map folds at t = 1
        out.eval = [](const double* x, double t) {
            double x0 = x[0], y0 = x[1];
            for (int it = 0; it < 100; ++it) {
                const double fx = x0 - t * std::sin(y0) - x[0];
                const double fy = y0 + t * std::cos(x0) - x[1];
                const double a = -t * std::cos(y0);
                const double b = t * std::sin(x0);
                const double det = 1.0 - a * b;
                const double dx0 = (fx - a * fy) / det;
                const double dy0 = (fy - b * fx) / det;
                x0 -= dx0;
                y0 -= dy0;
                if (std::abs(dx0) + std::abs(dy0) < 1e-14) break;
            }
            return std::sin(x0) + std::cos(y0) - t * std::cos(x0) * std::sin(y0);
        };
        return out;
    }
    throw std::invalid_argument("case '" + std::string(case_name) +
                                "' has no closed-form oracle; use the reference solver");
}

// --- reference Lax-Friedrichs solvers ----------------------------------------

double LfReference1D::value(double x) const {
    const int n = static_cast<int>(phi.size()) - 1;
    const double dx = (b - a) / n;
    double s = (x - a) / dx;
    s = std::clamp(s, 0.0, static_cast<double>(n));
    const int i = std::min(n - 1, static_cast<int>(s));
    const double w = s - i;
    return (1.0 - w) * phi[static_cast<std::size_t>(i)] + w * phi[static_cast<std::size_t>(i) + 1];
}

LfReference1D reference_lf_solver(std::string_view case_name, std::string_view variant,
                                  int n_points, double t_final, double cfl) {
    const CaseSpec& spec = find_case(case_name);
    if (spec.dim != 1) throw std::invalid_argument("reference_lf_solver: 1D cases only");
    if (n_points < 1024) throw std::invalid_argument("reference_lf_solver: use at least 1024 points");
    const HamiltonianModel& model = hamiltonian_catalog(spec.hamiltonian);
    auto phi0 = initial_condition(spec, variant);
    const bool periodic = spec.bc == BoundaryKind::Periodic;

    LfReference1D ref;
    ref.a = spec.domain[0];
    ref.b = spec.domain[1];
    const int n = n_points;
    const double dx = (ref.b - ref.a) / n;
    ref.phi.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = ref.a + i * dx;
        ref.phi[static_cast<std::size_t>(i)] = phi0(&x);
    }

    std::vector<double> dm(static_cast<std::size_t>(n) + 1), dp(static_cast<std::size_t>(n) + 1);
    std::vector<double> next(static_cast<std::size_t>(n) + 1);
    double t = 0.0;
    while (t < t_final - 1e-14) {
        for (int i = 0; i <= n; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            if (i > 0) dm[ui] = (ref.phi[ui] - ref.phi[ui - 1]) / dx;
            if (i < n) dp[ui] = (ref.phi[ui + 1] - ref.phi[ui]) / dx;
        }
        if (periodic) {
            dm[0] = dm[static_cast<std::size_t>(n)];
            dp[static_cast<std::size_t>(n)] = dp[0];
        } else {
            dm[0] = dp[0];
            dp[static_cast<std::size_t>(n)] = dm[static_cast<std::size_t>(n)];
        }

        // dissipation speed from the current slope range (plus margin)
        double pmin = dm[0], pmax = dm[0];
        for (int i = 0; i <= n; ++i) {
            pmin = std::min({pmin, dm[static_cast<std::size_t>(i)], dp[static_cast<std::size_t>(i)]});
            pmax = std::max({pmax, dm[static_cast<std::size_t>(i)], dp[static_cast<std::size_t>(i)]});
        }
        const double span = std::max(1e-12, pmax - pmin);
        pmin -= 0.05 * span;
        pmax += 0.05 * span;
        double alpha = 1e-12;
        for (int j = 0; j <= 64; ++j) {
            const double p = pmin + (pmax - pmin) * j / 64.0;
            for (int l = 0; l <= 16; ++l) {
                const double x = ref.a + (ref.b - ref.a) * l / 16.0;
                alpha = std::max(alpha, std::abs(model.dHdp(p, 0.0, x, 0.0, Side::Center)));
            }
        }

        double dt = cfl * dx / alpha;
        if (t + dt > t_final) dt = t_final - t;
        for (int i = 0; i <= n; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            const double x = ref.a + i * dx;
            const double hval = model.H(0.5 * (dm[ui] + dp[ui]), 0.0, x, 0.0, Side::Center) -
                                0.5 * alpha * (dp[ui] - dm[ui]);
            next[ui] = ref.phi[ui] - dt * hval;
        }
        if (periodic) next[static_cast<std::size_t>(n)] = next[0];
        ref.phi.swap(next);
        t += dt;
    }
    return ref;
}

double LfReference2D::value(double x, double y) const {
    const double dx = (b - a) / nx, dy = (d - c) / ny;
    double sx = std::clamp((x - a) / dx, 0.0, static_cast<double>(nx));
    double sy = std::clamp((y - c) / dy, 0.0, static_cast<double>(ny));
    const int i = std::min(nx - 1, static_cast<int>(sx));
    const int j = std::min(ny - 1, static_cast<int>(sy));
    const double wx = sx - i, wy = sy - j;
    auto at = [&](int ii, int jj) { return phi[static_cast<std::size_t>(jj) * (nx + 1) + ii]; };
    return (1 - wx) * (1 - wy) * at(i, j) + wx * (1 - wy) * at(i + 1, j) +
           (1 - wx) * wy * at(i, j + 1) + wx * wy * at(i + 1, j + 1);
}

LfReference2D reference_lf_solver_2d(std::string_view case_name, std::string_view variant,
                                     int n_per_dim, double t_final, double cfl) {
    const CaseSpec& spec = find_case(case_name);
    if (spec.dim != 2) throw std::invalid_argument("reference_lf_solver_2d: 2D cases only");
    const HamiltonianModel& model = hamiltonian_catalog(spec.hamiltonian);
    auto phi0 = initial_condition(spec, variant);
    const bool periodic = spec.bc == BoundaryKind::Periodic;

    LfReference2D ref;
    ref.a = spec.domain[0];
    ref.b = spec.domain[1];
    ref.c = spec.domain[2];
    ref.d = spec.domain[3];
    ref.nx = ref.ny = n_per_dim;
    const int n = n_per_dim;
    const double dx = (ref.b - ref.a) / n, dy = (ref.d - ref.c) / n;
    ref.phi.resize(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            const double p[2] = {ref.a + i * dx, ref.c + j * dy};
            ref.phi[static_cast<std::size_t>(j) * (n + 1) + i] = phi0(p);
        }

    std::vector<double> next(ref.phi.size());
    auto at = [&](int i, int j) -> double {
        if (periodic) {
            i = (i % n + n) % n;
            j = (j % n + n) % n;
        } else {
            i = std::clamp(i, 0, n);
            j = std::clamp(j, 0, n);
        }
        return ref.phi[static_cast<std::size_t>(j) * (n + 1) + i];
    };

    double t = 0.0;
    while (t < t_final - 1e-14) {
        // conservative speed bounds from a coarse sample of the state
        double a1 = 1e-12, a2 = 1e-12;
        for (int j = 0; j < n; j += std::max(1, n / 64))
            for (int i = 0; i < n; i += std::max(1, n / 64)) {
                const double px = (at(i + 1, j) - at(i - 1, j)) / (2 * dx);
                const double py = (at(i, j + 1) - at(i, j - 1)) / (2 * dy);
                const double x = ref.a + i * dx, y = ref.c + j * dy;
                a1 = std::max(a1, std::abs(model.dHdp(px, py, x, y, Side::Center)));
                a2 = std::max(a2, std::abs(model.dHdq(px, py, x, y, Side::Center)));
            }
        a1 *= 1.5;
        a2 *= 1.5;
        double dt = cfl / (a1 / dx + a2 / dy);
        if (t + dt > t_final) dt = t_final - t;

        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i) {
                const double dxm = (at(i, j) - at(i - 1, j)) / dx;
                const double dxp = (at(i + 1, j) - at(i, j)) / dx;
                const double dym = (at(i, j) - at(i, j - 1)) / dy;
                const double dyp = (at(i, j + 1) - at(i, j)) / dy;
                const double x = ref.a + i * dx, y = ref.c + j * dy;
                const double hval = model.H(0.5 * (dxm + dxp), 0.5 * (dym + dyp), x, y, Side::Center) -
                                    0.5 * a1 * (dxp - dxm) - 0.5 * a2 * (dyp - dym);
                next[static_cast<std::size_t>(j) * (n + 1) + i] =
                    ref.phi[static_cast<std::size_t>(j) * (n + 1) + i] - dt * hval;
            }
        ref.phi.swap(next);
        t += dt;
    }
    return ref;
}

// --- convergence reports ------------------------------------------------------

void compute_orders(ConvergenceReport& report) {
    for (std::size_t r = 1; r < report.rows.size(); ++r)
        if (!(report.rows[r].h < report.rows[r - 1].h))
            throw std::invalid_argument("convergence report: resolutions must refine monotonically");
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        auto& row = report.rows[r];
        if (r == 0) {
            row.has_order = false;
            continue;
        }
        const auto& prev = report.rows[r - 1];
        const double ratio = std::log(prev.h / row.h);
        row.order_l1 = std::log(prev.error.l1 / row.error.l1) / ratio;
        row.order_l2 = std::log(prev.error.l2 / row.error.l2) / ratio;
        row.order_linf = std::log(prev.error.linf / row.error.linf) / ratio;
        row.has_order = true;
    }
}

namespace {
std::string sci(double v) {
    std::ostringstream os;
    os.setf(std::ios::scientific);
    os.precision(3);
    os << v;
    return os.str();
}
std::string fix2(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
}
}  // namespace

void ConvergenceReport::write_csv(std::ostream& os) const {
    os << "# case=" << case_name << ",variant=" << variant << ",k=" << degree
       << ",C=" << penalty_c << ",CFL=" << cfl << ",T=" << t_final << ",limiter=" << limiter
       << ",mesh=" << mesh_kind << "\n";
    os << "N,h,L1,L1_order,L2,L2_order,Linf,Linf_order\n";
    for (const auto& row : rows) {
        os << row.resolution << "," << sci(row.h) << "," << sci(row.error.l1) << ","
           << (row.has_order ? fix2(row.order_l1) : "") << "," << sci(row.error.l2) << ","
           << (row.has_order ? fix2(row.order_l2) : "") << "," << sci(row.error.linf) << ","
           << (row.has_order ? fix2(row.order_linf) : "") << "\n";
    }
}

void ConvergenceReport::write_markdown(std::ostream& os) const {
    os << "### " << case_name << " (P" << degree << ", C=" << penalty_c << ", CFL=" << cfl
       << ", T=" << t_final << ", " << mesh_kind << ")\n";
    os << "| N | h | L1 | order | L2 | order | Linf | order |\n";
    os << "|---|---|----|-------|----|-------|------|-------|\n";
    for (const auto& row : rows) {
        os << "| " << row.resolution << " | " << sci(row.h) << " | " << sci(row.error.l1) << " | "
           << (row.has_order ? fix2(row.order_l1) : "-") << " | " << sci(row.error.l2) << " | "
           << (row.has_order ? fix2(row.order_l2) : "-") << " | " << sci(row.error.linf) << " | "
           << (row.has_order ? fix2(row.order_linf) : "-") << " |\n";
    }
}

}  // namespace hjdg
