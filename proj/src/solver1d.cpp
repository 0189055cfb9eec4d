#include "hjdg/solver1d.hpp"

#include <algorithm>
#include <cmath>

#include "hjdg/util.hpp"

namespace hjdg {

namespace {

struct FaceData {
    double w_minus = 0.0;   // min(roe_speed, 0)
    double w_plus = 0.0;    // max(roe_speed, 0)
    double jump_phi = 0.0;
    double jump_px = 0.0;
    double visc = 0.0;
    bool active = true;     // false on uncoupled (outflow) boundary faces
};

}  // namespace

Solver1D::Solver1D(const Mesh1D& mesh, const ReferenceBasis& basis, const HamiltonianModel& model,
                   const SchemeParams& params)
    : mesh_(&mesh), basis_(&basis), model_(&model), params_(params) {
    if (model.dim != 1) throw std::invalid_argument("Solver1D: needs a 1D Hamiltonian");
    if (basis.kind() != ElementKind::Interval) throw std::invalid_argument("Solver1D: needs an interval basis");

    const int k = basis.degree();
    volume_ = gauss_rule((2 * k + params.volume_quad_boost) / 2 + 1);
    vol_table_ = tabulate(basis, volume_.points.data(), volume_.n_points());

    const double left = -1.0, right = 1.0;
    left_val_ = basis.values_at({&left, 1});
    left_der_ = basis.derivatives_at({&left, 1});
    right_val_ = basis.values_at({&right, 1});
    right_der_ = basis.derivatives_at({&right, 1});
}

void Solver1D::rhs(const DGField<Mesh1D>& field, std::vector<double>& out) const {
    const Mesh1D& mesh = *mesh_;
    const int n = mesh.n_elements();
    const int nd = basis_->n_dofs();
    out.assign(static_cast<std::size_t>(n) * nd, 0.0);

    // Face sweep: one Roe evaluation per interface, shared by both cells.
    std::vector<FaceData> faces(static_cast<std::size_t>(n) + 1);
    parallel_for(n + 1, [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            FaceData fd;
            if (mesh.boundary == BoundaryKind::Outflow && (i == 0 || i == n)) {
                fd.active = false;  // copied traces, all jumps vanish
            } else {
                const InterfaceTrace1D tr = trace_at_interface(field, i);
                const RoeData roe = roe_data_1d(*model_, tr.grad_minus, tr.grad_plus, tr.x);
                const auto [wm, wp] = upwind_weights(roe);
                fd.w_minus = wm;
                fd.w_plus = wp;
                fd.jump_phi = tr.jump_value();
                fd.jump_px = tr.jump_grad();
                fd.visc = roe.visc;
            }
            faces[static_cast<std::size_t>(i)] = fd;
        }
    });

    const double c_pen = params_.penalty_c;
    parallel_for(n, [&](int begin, int end) {
        for (int e = begin; e < end; ++e) {
            double* r = out.data() + static_cast<std::size_t>(e) * nd;
            const double dx = mesh.width(e);
            const double scale = 0.5 * dx;  // |J| and diagonal mass entry

            // volume: - integral of H(phi_x, x) v
            for (int q = 0; q < volume_.n_points(); ++q) {
                double px = 0.0;
                const double* c = field.elem(e);
                for (int i = 0; i < nd; ++i) px += c[i] * vol_table_.d(q, i, 0);
                px *= 2.0 / dx;
                double x;
                mesh.to_physical(e, volume_.point(q), &x);
                const double hval = model_->H(px, 0.0, x, 0.0, Side::Center);
                const double w = -volume_.weights[static_cast<std::size_t>(q)] * scale * hval;
                for (int i = 0; i < nd; ++i) r[i] += w * vol_table_.v(q, i);
            }

            // right face (interface e+1): test function from the left, v^-
            const FaceData& fr = faces[static_cast<std::size_t>(e) + 1];
            if (fr.active) {
                const double upwind = -fr.w_minus * fr.jump_phi;
                const double penalty = c_pen * dx * fr.visc * fr.jump_px;
                for (int i = 0; i < nd; ++i) r[i] += (upwind + penalty) * right_val_[static_cast<std::size_t>(i)];
            }
            // left face (interface e): test function from the right, v^+
            const FaceData& fl = faces[static_cast<std::size_t>(e)];
            if (fl.active) {
                const double upwind = -fl.w_plus * fl.jump_phi;
                const double penalty = c_pen * dx * fl.visc * fl.jump_px;
                for (int i = 0; i < nd; ++i) r[i] += (upwind + penalty) * left_val_[static_cast<std::size_t>(i)];
            }

            for (int i = 0; i < nd; ++i) r[i] /= scale;
        }
    });
}

double Solver1D::max_speed(const DGField<Mesh1D>& field) const {
    const Mesh1D& mesh = *mesh_;
    const int nd = basis_->n_dofs();
    double vmax = 0.0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const double* c = field.elem(e);
        for (int q = 0; q < volume_.n_points(); ++q) {
            double px = 0.0;
            for (int i = 0; i < nd; ++i) px += c[i] * vol_table_.d(q, i, 0);
            px *= 2.0 / mesh.width(e);
            double x;
            mesh.to_physical(e, volume_.point(q), &x);
            vmax = std::max(vmax, std::abs(model_->dHdp(px, 0.0, x, 0.0, Side::Center)));
        }
    }
    return vmax;
}

std::vector<double> assemble_rhs_1d(const DGField<Mesh1D>& field, const HamiltonianModel& model,
                                    const SchemeParams& params) {
    Solver1D solver(field.mesh(), field.basis(), model, params);
    std::vector<double> out;
    solver.rhs(field, out);
    return out;
}

}  // namespace hjdg
