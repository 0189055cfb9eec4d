// Error norms, convergence tables, and the independent solution oracles
// (analytic formulas, characteristic tracing, Hopf-Lax minimization, and a
// first-order monotone Lax-Friedrichs reference solver).
#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "hjdg/cases.hpp"
#include "hjdg/field.hpp"

namespace hjdg {

struct Norms {
    double l1 = 0.0, l2 = 0.0, linf = 0.0;
};

// Domain-averaged norms of phi_h - exact, sampled at quadrature points of the
// given degree: L1 = (1/|O|) sum w |e|, L2 = sqrt((1/|O|) sum w e^2),
// Linf = max over sample points.
template <class Mesh>
Norms error_norms(const DGField<Mesh>& field,
                  const std::function<double(const double*, double)>& exact, int quad_degree) {
    const QuadratureRule rule = volume_rule(field.basis().kind(), quad_degree);
    const BasisTable table = tabulate(field.basis(), rule.points.data(), rule.n_points());
    const int nd = field.n_dofs();
    Norms norms;
    double measure = 0.0;
    for (int e = 0; e < field.n_elements(); ++e) {
        const double* c = field.elem(e);
        const double jac = field.mesh().jacobian_det(e);
        measure += field.mesh().measure(e);
        for (int q = 0; q < rule.n_points(); ++q) {
            double v = 0.0;
            for (int i = 0; i < nd; ++i) v += c[i] * table.v(q, i);
            double phys[2];
            field.mesh().to_physical(e, rule.point(q), phys);
            const double err = v - exact(phys, field.time);
            const double w = rule.weights[static_cast<std::size_t>(q)] * jac;
            norms.l1 += w * std::abs(err);
            norms.l2 += w * err * err;
            norms.linf = std::max(norms.linf, std::abs(err));
        }
    }
    norms.l1 /= measure;
    norms.l2 = std::sqrt(norms.l2 / measure);
    return norms;
}

struct ConvergenceRow {
    double resolution = 0.0;  // N (cells per direction) or element count
    double h = 0.0;
    Norms error;
    double order_l1 = 0.0, order_l2 = 0.0, order_linf = 0.0;
    bool has_order = false;
};

struct ConvergenceReport {
    std::string case_name, variant, mesh_kind, limiter;
    int degree = 1;
    double penalty_c = 0.25, cfl = 0.1, t_final = 1.0;
    std::vector<ConvergenceRow> rows;

    void write_csv(std::ostream& os) const;
    void write_markdown(std::ostream& os) const;
};

// Fills order columns from consecutive rows:
//   order = log(e_prev / e_cur) / log(h_prev / h_cur).
// Throws if the h column is not strictly decreasing.
void compute_orders(ConvergenceReport& report);

struct ExactSolution {
    enum class Provenance { Analytic, Characteristic, HopfLax, ReferenceSolver };
    Provenance provenance = Provenance::Analytic;
    double valid_until = std::numeric_limits<double>::infinity();
    std::function<double(const double* x, double t)> eval;

    bool valid_at(double t) const { return t <= valid_until; }
};

// Oracle for a benchmark case; throws std::invalid_argument when the case has
// no implemented oracle (e.g. quartic1d, which uses the reference solver).
ExactSolution exact_solution(std::string_view case_name, std::string_view variant = {});

// Characteristic tracing for 1D H(p): solves x0 + t H'(phi0'(x0)) = x by a
// bracketed scan plus bisection and returns phi0(x0) + t (p H'(p) - H(p)).
// Throws when bracketing finds several roots (past the singularity time).
double trace_characteristic_1d(const std::function<double(double)>& phi0,
                               const std::function<double(double)>& dphi0,
                               const std::function<double(double)>& h_of_p,
                               const std::function<double(double)>& dh_of_p, double x, double t,
                               double reach);

// min over y in [x-reach, x+reach] of phi0(y) + t*conjugate((x-y)/t), by dense
// sampling (about 4096 points per unit reach) plus golden-section refinement.
double hopf_lax_min(const std::function<double(double)>& phi0,
                    const std::function<double(double)>& conjugate, double x, double t,
                    double reach);

// --- monotone reference solver ----------------------------------------------

struct LfReference1D {
    double a = 0.0, b = 0.0;
    std::vector<double> phi;  // node values, uniform spacing
    double value(double x) const;
};

// First-order monotone Lax-Friedrichs run for a 1D case at the given final
// time; n_points >= 1024. The artificial-viscosity speed is refreshed from
// the current slope range every step.
LfReference1D reference_lf_solver(std::string_view case_name, std::string_view variant,
                                  int n_points, double t_final, double cfl = 0.4);

struct LfReference2D {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    int nx = 0, ny = 0;
    std::vector<double> phi;
    double value(double x, double y) const;
};

LfReference2D reference_lf_solver_2d(std::string_view case_name, std::string_view variant,
                                     int n_per_dim, double t_final, double cfl = 0.4);

}  // namespace hjdg
