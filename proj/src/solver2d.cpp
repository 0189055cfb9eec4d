#include "hjdg/solver2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hjdg/util.hpp"

namespace hjdg {

namespace {

struct FacePointData {
    double w_minus = 0.0;
    double w_plus = 0.0;
    double jump_phi = 0.0;  // outside - inside, seen from the first element
    double jump_pn = 0.0;   // jump of grad.n, invariant under side swap
    double visc = 0.0;
};

}  // namespace

// --- Cartesian --------------------------------------------------------------

CartSolver2D::CartSolver2D(const CartMesh2D& mesh, const ReferenceBasis& basis,
                           const HamiltonianModel& model, const SchemeParams& params)
    : mesh_(&mesh), basis_(&basis), model_(&model), params_(params) {
    if (model.dim != 2) throw std::invalid_argument("CartSolver2D: needs a 2D Hamiltonian");
    if (basis.kind() != ElementKind::Rectangle)
        throw std::invalid_argument("CartSolver2D: needs a rectangle basis");

    const int k = basis.degree();
    volume_ = tensor_rule((2 * k + params.volume_quad_boost) / 2 + 1);
    vol_table_ = tabulate(basis, volume_.points.data(), volume_.n_points());
    face_gauss_ = gauss_rule(k + 1);  // exact to 2k+1 on edges

    const int nq = face_gauss_.n_points();
    std::vector<double> pts(static_cast<std::size_t>(nq) * 2);
    auto build = [&](double fixed, bool fixed_is_x) {
        for (int q = 0; q < nq; ++q) {
            pts[static_cast<std::size_t>(2 * q)] = fixed_is_x ? fixed : face_gauss_.points[static_cast<std::size_t>(q)];
            pts[static_cast<std::size_t>(2 * q + 1)] = fixed_is_x ? face_gauss_.points[static_cast<std::size_t>(q)] : fixed;
        }
        return tabulate(basis, pts.data(), nq);
    };
    xm_ = build(-1.0, true);
    xp_ = build(1.0, true);
    ym_ = build(-1.0, false);
    yp_ = build(1.0, false);
}

void CartSolver2D::rhs(const DGField<CartMesh2D>& field, std::vector<double>& out) const {
    const CartMesh2D& mesh = *mesh_;
    const int nx = mesh.nx(), ny = mesh.ny();
    const int nd = basis_->n_dofs();
    const int nq = face_gauss_.n_points();
    out.assign(static_cast<std::size_t>(mesh.n_elements()) * nd, 0.0);

    const bool per_x = mesh.bc_x == BoundaryKind::Periodic;
    const bool per_y = mesh.bc_y == BoundaryKind::Periodic;
    const int nfx = per_x ? nx : nx + 1;  // face fi between cells fi-1 and fi
    const int nfy = per_y ? ny : ny + 1;

    auto eval_side = [&](const BasisTable& table, const double* c, int q, double inv_dx,
                         double inv_dy, double* grad) {
        double v = 0.0, gx = 0.0, gy = 0.0;
        for (int i = 0; i < nd; ++i) {
            v += c[i] * table.v(q, i);
            gx += c[i] * table.d(q, i, 0);
            gy += c[i] * table.d(q, i, 1);
        }
        grad[0] = 2.0 * gx * inv_dx;
        grad[1] = 2.0 * gy * inv_dy;
        return v;
    };

    // x-face sweep
    std::vector<FacePointData> xfaces(static_cast<std::size_t>(nfx) * ny * nq);
    parallel_for(nfx * ny, [&](int begin, int end) {
        for (int f = begin; f < end; ++f) {
            const int fi = f % nfx, j = f / nfx;
            const bool boundary = !per_x && (fi == 0 || fi == nx);
            FacePointData* slot = xfaces.data() + static_cast<std::size_t>(f) * nq;
            if (boundary) continue;  // outflow: traces copied, jumps vanish
            const int il = (fi + nx - 1) % nx;
            const int ir = fi % nx;
            const double x = mesh.xs[static_cast<std::size_t>(fi)];
            const double* cl = field.elem(mesh.elem(il, j));
            const double* cr = field.elem(mesh.elem(ir, j));
            for (int q = 0; q < nq; ++q) {
                const double y = mesh.ys[static_cast<std::size_t>(j)] +
                                 0.5 * (face_gauss_.points[static_cast<std::size_t>(q)] + 1.0) * mesh.dy(j);
                double gl[2], gr[2];
                const double vl = eval_side(xp_, cl, q, 1.0 / mesh.dx(il), 1.0 / mesh.dy(j), gl);
                const double vr = eval_side(xm_, cr, q, 1.0 / mesh.dx(ir), 1.0 / mesh.dy(j), gr);
                const double qbar = 0.5 * (gl[1] + gr[1]);  // tangential-average trace
                const RoeData roe = roe_from_samples(
                    gl[0], gr[0], model_->H(gl[0], qbar, x, y, Side::Minus),
                    model_->H(gr[0], qbar, x, y, Side::Plus),
                    model_->dHdp(gl[0], qbar, x, y, Side::Minus),
                    model_->dHdp(gr[0], qbar, x, y, Side::Plus));
                const auto [wm, wp] = upwind_weights(roe);
                slot[q] = {wm, wp, vr - vl, gr[0] - gl[0], roe.visc};
            }
        }
    });

    // y-face sweep
    std::vector<FacePointData> yfaces(static_cast<std::size_t>(nx) * nfy * nq);
    parallel_for(nx * nfy, [&](int begin, int end) {
        for (int f = begin; f < end; ++f) {
            const int i = f % nx, fj = f / nx;
            const bool boundary = !per_y && (fj == 0 || fj == ny);
            FacePointData* slot = yfaces.data() + static_cast<std::size_t>(f) * nq;
            if (boundary) continue;
            const int jb = (fj + ny - 1) % ny;
            const int jt = fj % ny;
            const double y = mesh.ys[static_cast<std::size_t>(fj)];
            const double* cb = field.elem(mesh.elem(i, jb));
            const double* ct = field.elem(mesh.elem(i, jt));
            for (int q = 0; q < nq; ++q) {
                const double x = mesh.xs[static_cast<std::size_t>(i)] +
                                 0.5 * (face_gauss_.points[static_cast<std::size_t>(q)] + 1.0) * mesh.dx(i);
                double gb[2], gt[2];
                const double vb = eval_side(yp_, cb, q, 1.0 / mesh.dx(i), 1.0 / mesh.dy(jb), gb);
                const double vt = eval_side(ym_, ct, q, 1.0 / mesh.dx(i), 1.0 / mesh.dy(jt), gt);
                const double pbar = 0.5 * (gb[0] + gt[0]);
                const RoeData roe = roe_from_samples(
                    gb[1], gt[1], model_->H(pbar, gb[1], x, y, Side::Minus),
                    model_->H(pbar, gt[1], x, y, Side::Plus),
                    model_->dHdq(pbar, gb[1], x, y, Side::Minus),
                    model_->dHdq(pbar, gt[1], x, y, Side::Plus));
                const auto [wm, wp] = upwind_weights(roe);
                slot[q] = {wm, wp, vt - vb, gt[1] - gb[1], roe.visc};
            }
        }
    });

    const double c_pen = params_.penalty_c;
    parallel_for(mesh.n_elements(), [&](int begin, int end) {
        for (int e = begin; e < end; ++e) {
            const int i = e % nx, j = e / nx;
            const double dx = mesh.dx(i), dy = mesh.dy(j);
            double* r = out.data() + static_cast<std::size_t>(e) * nd;
            const double* c = field.elem(e);

            // volume: - integral of H(grad phi, x, y) v
            for (int q = 0; q < volume_.n_points(); ++q) {
                double gx = 0.0, gy = 0.0;
                for (int ii = 0; ii < nd; ++ii) {
                    gx += c[ii] * vol_table_.d(q, ii, 0);
                    gy += c[ii] * vol_table_.d(q, ii, 1);
                }
                gx *= 2.0 / dx;
                gy *= 2.0 / dy;
                double xy[2];
                mesh.to_physical(e, volume_.point(q), xy);
                const double w = -volume_.weights[static_cast<std::size_t>(q)] * (0.25 * dx * dy) *
                                 model_->H(gx, gy, xy[0], xy[1], Side::Center);
                for (int ii = 0; ii < nd; ++ii) r[ii] += w * vol_table_.v(q, ii);
            }

            auto face_slot = [&](const std::vector<FacePointData>& store, int f) {
                return store.data() + static_cast<std::size_t>(f) * nq;
            };
            const double arc_x = 0.5 * dy;  // line-integral scale along x-faces
            const double arc_y = 0.5 * dx;

            // right/left x-faces (test traces at xi = +1 / -1)
            {
                const int f = per_x ? (i + 1) % nx : i + 1;
                const FacePointData* fp = face_slot(xfaces, f + j * nfx);
                for (int q = 0; q < nq; ++q) {
                    const double w = face_gauss_.weights[static_cast<std::size_t>(q)] * arc_x;
                    const double term = (-fp[q].w_minus * fp[q].jump_phi +
                                         c_pen * dx * fp[q].visc * fp[q].jump_pn) * w;
                    for (int ii = 0; ii < nd; ++ii) r[ii] += term * xp_.v(q, ii);
                }
            }
            {
                const FacePointData* fp = face_slot(xfaces, i + j * nfx);
                for (int q = 0; q < nq; ++q) {
                    const double w = face_gauss_.weights[static_cast<std::size_t>(q)] * arc_x;
                    const double term = (-fp[q].w_plus * fp[q].jump_phi +
                                         c_pen * dx * fp[q].visc * fp[q].jump_pn) * w;
                    for (int ii = 0; ii < nd; ++ii) r[ii] += term * xm_.v(q, ii);
                }
            }
            // top/bottom y-faces (test traces at eta = +1 / -1)
            {
                const int f = per_y ? (j + 1) % ny : j + 1;
                const FacePointData* fp = face_slot(yfaces, i + f * nx);
                for (int q = 0; q < nq; ++q) {
                    const double w = face_gauss_.weights[static_cast<std::size_t>(q)] * arc_y;
                    const double term = (-fp[q].w_minus * fp[q].jump_phi +
                                         c_pen * dy * fp[q].visc * fp[q].jump_pn) * w;
                    for (int ii = 0; ii < nd; ++ii) r[ii] += term * yp_.v(q, ii);
                }
            }
            {
                const FacePointData* fp = face_slot(yfaces, i + j * nx);
                for (int q = 0; q < nq; ++q) {
                    const double w = face_gauss_.weights[static_cast<std::size_t>(q)] * arc_y;
                    const double term = (-fp[q].w_plus * fp[q].jump_phi +
                                         c_pen * dy * fp[q].visc * fp[q].jump_pn) * w;
                    for (int ii = 0; ii < nd; ++ii) r[ii] += term * ym_.v(q, ii);
                }
            }

            const double mass = 0.25 * dx * dy;
            for (int ii = 0; ii < nd; ++ii) r[ii] /= mass;
        }
    });
}

std::array<double, 2> CartSolver2D::max_speeds(const DGField<CartMesh2D>& field) const {
    const CartMesh2D& mesh = *mesh_;
    const int nd = basis_->n_dofs();
    double s1 = 0.0, s2 = 0.0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const int i = e % mesh.nx(), j = e / mesh.nx();
        const double* c = field.elem(e);
        for (int q = 0; q < volume_.n_points(); ++q) {
            double gx = 0.0, gy = 0.0;
            for (int ii = 0; ii < nd; ++ii) {
                gx += c[ii] * vol_table_.d(q, ii, 0);
                gy += c[ii] * vol_table_.d(q, ii, 1);
            }
            gx *= 2.0 / mesh.dx(i);
            gy *= 2.0 / mesh.dy(j);
            double xy[2];
            mesh.to_physical(e, volume_.point(q), xy);
            s1 = std::max(s1, std::abs(model_->dHdp(gx, gy, xy[0], xy[1], Side::Center)));
            s2 = std::max(s2, std::abs(model_->dHdq(gx, gy, xy[0], xy[1], Side::Center)));
        }
    }
    return {s1, s2};
}

// --- triangles ---------------------------------------------------------------

TriSolver2D::TriSolver2D(const TriMesh2D& mesh, const ReferenceBasis& basis,
                         const HamiltonianModel& model, const SchemeParams& params)
    : mesh_(&mesh), basis_(&basis), model_(&model), params_(params) {
    if (model.dim != 2) throw std::invalid_argument("TriSolver2D: needs a 2D Hamiltonian");
    if (basis.kind() != ElementKind::Triangle)
        throw std::invalid_argument("TriSolver2D: needs a triangle basis");

    const int k = basis.degree();
    volume_ = triangle_rule(2 * k + params.volume_quad_boost);
    vol_table_ = tabulate(basis, volume_.points.data(), volume_.n_points());
    face_gauss_ = gauss_rule(k + 1);

    const int nq = face_gauss_.n_points();
    const int nd = basis.n_dofs();
    edge_tables_.resize(mesh.edges.size());

    std::vector<double> val(static_cast<std::size_t>(nd)), der(static_cast<std::size_t>(nd) * 2);
    for (std::size_t ei = 0; ei < mesh.edges.size(); ++ei) {
        const auto& edge = mesh.edges[ei];
        EdgeTables& et = edge_tables_[ei];
        et.coupled = edge.is_coupled();
        et.points.resize(static_cast<std::size_t>(nq));

        const auto& pa = mesh.nodes[static_cast<std::size_t>(edge.nodes[0])];
        const auto& pb = mesh.nodes[static_cast<std::size_t>(edge.nodes[1])];
        for (int q = 0; q < nq; ++q) {
            const double s = 0.5 * (face_gauss_.points[static_cast<std::size_t>(q)] + 1.0);
            et.points[static_cast<std::size_t>(q)] = {pa[0] + s * (pb[0] - pa[0]),
                                                      pa[1] + s * (pb[1] - pa[1])};
        }

        for (int sd = 0; sd < 2; ++sd) {
            int elem = edge.elem[sd];
            std::array<double, 2> shift{0.0, 0.0};
            if (sd == 1 && elem < 0 && edge.periodic_partner >= 0) {
                elem = mesh.edges[static_cast<std::size_t>(edge.periodic_partner)].elem[0];
                shift = edge.periodic_shift;
            }
            EdgeSide& side = et.side[static_cast<std::size_t>(sd)];
            side.elem = elem;
            if (elem < 0) continue;
            side.val.resize(static_cast<std::size_t>(nq) * nd);
            side.gx.resize(static_cast<std::size_t>(nq) * nd);
            side.gy.resize(static_cast<std::size_t>(nq) * nd);
            for (int q = 0; q < nq; ++q) {
                const double phys[2] = {et.points[static_cast<std::size_t>(q)][0] + shift[0],
                                        et.points[static_cast<std::size_t>(q)][1] + shift[1]};
                double ref[2];
                mesh.to_reference(elem, phys, ref);
                basis.values(ref, val.data());
                basis.derivatives(ref, der.data());
                for (int i = 0; i < nd; ++i) {
                    double g[2];
                    mesh.ref_grad_to_phys(elem, der.data() + static_cast<std::size_t>(i) * 2, g);
                    side.val[static_cast<std::size_t>(q) * nd + i] = val[static_cast<std::size_t>(i)];
                    side.gx[static_cast<std::size_t>(q) * nd + i] = g[0];
                    side.gy[static_cast<std::size_t>(q) * nd + i] = g[1];
                }
            }
        }
    }
}

void TriSolver2D::rhs(const DGField<TriMesh2D>& field, std::vector<double>& out) const {
    const TriMesh2D& mesh = *mesh_;
    const int nd = basis_->n_dofs();
    const int nq = face_gauss_.n_points();
    const int n_edges = static_cast<int>(mesh.edges.size());
    out.assign(static_cast<std::size_t>(mesh.n_elements()) * nd, 0.0);

    // Face sweep in the first element's frame.
    std::vector<FacePointData> faces(static_cast<std::size_t>(n_edges) * nq);
    parallel_for(n_edges, [&](int begin, int end) {
        for (int ei = begin; ei < end; ++ei) {
            const auto& edge = mesh.edges[static_cast<std::size_t>(ei)];
            const EdgeTables& et = edge_tables_[static_cast<std::size_t>(ei)];
            if (!et.coupled) continue;  // outflow boundary: no contribution
            FacePointData* slot = faces.data() + static_cast<std::size_t>(ei) * nq;
            const double* c0 = field.elem(et.side[0].elem);
            const double* c1 = field.elem(et.side[1].elem);
            const auto& n = edge.normal;
            const auto& t = edge.tangent;
            for (int q = 0; q < nq; ++q) {
                double v0 = 0.0, g0x = 0.0, g0y = 0.0, v1 = 0.0, g1x = 0.0, g1y = 0.0;
                const std::size_t base = static_cast<std::size_t>(q) * nd;
                for (int i = 0; i < nd; ++i) {
                    v0 += c0[i] * et.side[0].val[base + i];
                    g0x += c0[i] * et.side[0].gx[base + i];
                    g0y += c0[i] * et.side[0].gy[base + i];
                    v1 += c1[i] * et.side[1].val[base + i];
                    g1x += c1[i] * et.side[1].gx[base + i];
                    g1y += c1[i] * et.side[1].gy[base + i];
                }
                const double pn0 = g0x * n[0] + g0y * n[1];
                const double pn1 = g1x * n[0] + g1y * n[1];
                const double pt_avg = 0.5 * ((g0x + g1x) * t[0] + (g0y + g1y) * t[1]);
                const double x = et.points[static_cast<std::size_t>(q)][0];
                const double y = et.points[static_cast<std::size_t>(q)][1];

                // H as a function of the normal derivative, tangential part frozen
                auto hdir = [&](double pn, Side s) {
                    return model_->H(pn * n[0] + pt_avg * t[0], pn * n[1] + pt_avg * t[1], x, y, s);
                };
                auto dhdir = [&](double pn, Side s) {
                    const double gx = pn * n[0] + pt_avg * t[0], gy = pn * n[1] + pt_avg * t[1];
                    return model_->dHdp(gx, gy, x, y, s) * n[0] + model_->dHdq(gx, gy, x, y, s) * n[1];
                };
                const RoeData roe = roe_from_samples(pn0, pn1, hdir(pn0, Side::Minus),
                                                     hdir(pn1, Side::Plus), dhdir(pn0, Side::Minus),
                                                     dhdir(pn1, Side::Plus));
                const auto [wm, wp] = upwind_weights(roe);
                slot[q] = {wm, wp, v1 - v0, pn1 - pn0, roe.visc};
            }
        }
    });

    const double c_pen = params_.penalty_c;
    parallel_for(mesh.n_elements(), [&](int begin, int end) {
        for (int e = begin; e < end; ++e) {
            double* r = out.data() + static_cast<std::size_t>(e) * nd;
            const double* c = field.elem(e);
            const double area = mesh.areas[static_cast<std::size_t>(e)];
            const auto& m = mesh.inv_jac[static_cast<std::size_t>(e)];

            // volume term
            for (int q = 0; q < volume_.n_points(); ++q) {
                double gr0 = 0.0, gr1 = 0.0;
                for (int i = 0; i < nd; ++i) {
                    gr0 += c[i] * vol_table_.d(q, i, 0);
                    gr1 += c[i] * vol_table_.d(q, i, 1);
                }
                const double gx = m[0] * gr0 + m[2] * gr1;
                const double gy = m[1] * gr0 + m[3] * gr1;
                double xy[2];
                mesh.to_physical(e, volume_.point(q), xy);
                const double w = -volume_.weights[static_cast<std::size_t>(q)] * (2.0 * area) *
                                 model_->H(gx, gy, xy[0], xy[1], Side::Center);
                for (int i = 0; i < nd; ++i) r[i] += w * vol_table_.v(q, i);
            }

            // edge terms: the element integrates over its own boundary
            for (int le = 0; le < 3; ++le) {
                const int ei = mesh.elem_edges[static_cast<std::size_t>(e)][static_cast<std::size_t>(le)];
                const auto& edge = mesh.edges[static_cast<std::size_t>(ei)];
                const EdgeTables& et = edge_tables_[static_cast<std::size_t>(ei)];
                if (!et.coupled) continue;
                const bool first = et.side[0].elem == e;
                const EdgeSide& my_side = first ? et.side[0] : et.side[1];
                const FacePointData* fp = faces.data() + static_cast<std::size_t>(ei) * nq;
                const double pen_scale = c_pen * (area / edge.length);
                for (int q = 0; q < nq; ++q) {
                    const double w = face_gauss_.weights[static_cast<std::size_t>(q)] * 0.5 * edge.length;
                    const double upwind = first ? -fp[q].w_minus * fp[q].jump_phi
                                                : -fp[q].w_plus * fp[q].jump_phi;
                    const double term = (upwind + pen_scale * fp[q].visc * fp[q].jump_pn) * w;
                    const std::size_t base = static_cast<std::size_t>(q) * nd;
                    for (int i = 0; i < nd; ++i) r[i] += term * my_side.val[base + i];
                }
            }

            const double mass = 2.0 * area;
            for (int i = 0; i < nd; ++i) r[i] /= mass;
        }
    });
}

std::array<double, 2> TriSolver2D::max_speeds(const DGField<TriMesh2D>& field) const {
    const TriMesh2D& mesh = *mesh_;
    const int nd = basis_->n_dofs();
    double s1 = 0.0, s2 = 0.0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const double* c = field.elem(e);
        const auto& m = mesh.inv_jac[static_cast<std::size_t>(e)];
        for (int q = 0; q < volume_.n_points(); ++q) {
            double gr0 = 0.0, gr1 = 0.0;
            for (int i = 0; i < nd; ++i) {
                gr0 += c[i] * vol_table_.d(q, i, 0);
                gr1 += c[i] * vol_table_.d(q, i, 1);
            }
            const double gx = m[0] * gr0 + m[2] * gr1;
            const double gy = m[1] * gr0 + m[3] * gr1;
            double xy[2];
            mesh.to_physical(e, volume_.point(q), xy);
            s1 = std::max(s1, std::abs(model_->dHdp(gx, gy, xy[0], xy[1], Side::Center)));
            s2 = std::max(s2, std::abs(model_->dHdq(gx, gy, xy[0], xy[1], Side::Center)));
        }
    }
    return {s1, s2};
}

std::vector<double> assemble_rhs_cart(const DGField<CartMesh2D>& field,
                                      const HamiltonianModel& model, const SchemeParams& params) {
    CartSolver2D solver(field.mesh(), field.basis(), model, params);
    std::vector<double> out;
    solver.rhs(field, out);
    return out;
}

std::vector<double> assemble_rhs_tri(const DGField<TriMesh2D>& field,
                                     const HamiltonianModel& model, const SchemeParams& params) {
    TriSolver2D solver(field.mesh(), field.basis(), model, params);
    std::vector<double> out;
    solver.rhs(field, out);
    return out;
}

}  // namespace hjdg
