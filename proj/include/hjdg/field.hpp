// Piecewise-polynomial DG fields: modal coefficient storage, L2 projection,
// point evaluation, one-sided interface traces and CSV dumps.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "hjdg/basis.hpp"
#include "hjdg/mesh.hpp"
#include "hjdg/util.hpp"

namespace hjdg {

template <class Mesh>
class DGField {
    const Mesh* mesh_;
    const ReferenceBasis* basis_;

public:
    DGField(const Mesh& mesh, const ReferenceBasis& basis)
        : mesh_(&mesh), basis_(&basis),
          coef(static_cast<std::size_t>(mesh.n_elements()) * basis.n_dofs(), 0.0) {}

    const Mesh& mesh() const { return *mesh_; }
    const ReferenceBasis& basis() const { return *basis_; }
    int n_elements() const { return mesh_->n_elements(); }
    int n_dofs() const { return basis_->n_dofs(); }

    double* elem(int e) { return coef.data() + static_cast<std::size_t>(e) * n_dofs(); }
    const double* elem(int e) const { return coef.data() + static_cast<std::size_t>(e) * n_dofs(); }

    double value_ref(int e, const double* ref) const {
        std::array<double, 96> buf;
        basis_->values(ref, buf.data());
        const double* c = elem(e);
        double s = 0.0;
        for (int i = 0; i < n_dofs(); ++i) s += c[i] * buf[static_cast<std::size_t>(i)];
        return s;
    }

    // Value plus physical-space gradient at a reference point.
    double value_and_grad_ref(int e, const double* ref, double* grad_phys) const {
        std::array<double, 96> val;
        std::array<double, 192> der;
        basis_->values(ref, val.data());
        basis_->derivatives(ref, der.data());
        const double* c = elem(e);
        const int d = basis_->dim();
        double s = 0.0;
        double gref[2] = {0.0, 0.0};
        for (int i = 0; i < n_dofs(); ++i) {
            s += c[i] * val[static_cast<std::size_t>(i)];
            for (int dd = 0; dd < d; ++dd) gref[dd] += c[i] * der[static_cast<std::size_t>(i * d + dd)];
        }
        mesh_->ref_grad_to_phys(e, gref, grad_phys);
        return s;
    }

    double value_phys(int e, const double* phys, double* grad_phys = nullptr) const {
        if (e < 0 || e >= n_elements()) throw std::out_of_range("DGField: element index");
        double ref[2];
        mesh_->to_reference(e, phys, ref);
        if (grad_phys == nullptr) return value_ref(e, ref);
        return value_and_grad_ref(e, ref, grad_phys);
    }

    double time = 0.0;
    std::vector<double> coef;
};

// Quadrature of at least the requested exactness for the basis' element kind.
inline QuadratureRule volume_rule(ElementKind kind, int degree) {
    switch (kind) {
        case ElementKind::Interval: return gauss_rule(degree / 2 + 1);
        case ElementKind::Rectangle: return tensor_rule(degree / 2 + 1);
        case ElementKind::Triangle: return triangle_rule(degree);
    }
    throw std::logic_error("volume_rule: bad kind");
}

// Element-wise L2 projection. Quadrature degree 2k+2: the 2k volume rule plus
// two degrees to keep the projection quadrature error behind the scheme's.
template <class Mesh, class F>
DGField<Mesh> project(const Mesh& mesh, const ReferenceBasis& basis, F&& f) {
    DGField<Mesh> field(mesh, basis);
    const QuadratureRule rule = volume_rule(basis.kind(), 2 * basis.degree() + 2);
    const BasisTable table = tabulate(basis, rule.points.data(), rule.n_points());
    const int nd = basis.n_dofs();

    parallel_for(mesh.n_elements(), [&](int begin, int end) {
        for (int e = begin; e < end; ++e) {
            double* c = field.elem(e);
            for (int q = 0; q < rule.n_points(); ++q) {
                double phys[2];
                mesh.to_physical(e, rule.point(q), phys);
                const double w = rule.weights[static_cast<std::size_t>(q)] * f(phys);
                for (int i = 0; i < nd; ++i) c[i] += w * table.v(q, i);
            }
        }
    });
    return field;
}

// --- interface traces -------------------------------------------------------

// 1D interface trace in the paper's left/right (minus/plus) convention.
struct InterfaceTrace1D {
    double x = 0.0;
    double value_minus = 0.0, value_plus = 0.0;  // left-cell, right-cell limits
    double grad_minus = 0.0, grad_plus = 0.0;

    double jump_value() const { return value_plus - value_minus; }
    double jump_grad() const { return grad_plus - grad_minus; }
    double avg_value() const { return 0.5 * (value_plus + value_minus); }
};

// Trace at interface i in [0, N]. Periodic meshes wrap; outflow meshes copy
// the interior limit to the missing side so boundary jumps vanish.
inline InterfaceTrace1D trace_at_interface(const DGField<Mesh1D>& field, int iface) {
    const Mesh1D& mesh = field.mesh();
    const int n = mesh.n_elements();
    InterfaceTrace1D tr;
    tr.x = mesh.interfaces[static_cast<std::size_t>(iface)];

    const double ref_r = 1.0, ref_l = -1.0;
    const bool periodic = mesh.boundary == BoundaryKind::Periodic;
    int left = iface - 1, right = iface;
    if (iface == 0) left = periodic ? n - 1 : -1;
    if (iface == n) right = periodic ? 0 : -1;

    if (left >= 0) tr.value_minus = field.value_and_grad_ref(left, &ref_r, &tr.grad_minus);
    if (right >= 0) tr.value_plus = field.value_and_grad_ref(right, &ref_l, &tr.grad_plus);
    if (left < 0) {
        tr.value_minus = tr.value_plus;
        tr.grad_minus = tr.grad_plus;
    }
    if (right < 0) {
        tr.value_plus = tr.value_minus;
        tr.grad_plus = tr.grad_minus;
    }
    return tr;
}

// 2D trace in the element-local convention: minus = inside the active
// element, plus = outside (neighbor / periodic partner / boundary rule).
struct InterfaceTrace2D {
    std::array<double, 2> point{0.0, 0.0};
    std::array<double, 2> normal{0.0, 0.0};   // active element's outward normal
    std::array<double, 2> tangent{0.0, 0.0};
    double value_minus = 0.0, value_plus = 0.0;
    std::array<double, 2> grad_minus{0.0, 0.0}, grad_plus{0.0, 0.0};
    double pn_minus = 0.0, pn_plus = 0.0;  // grad . n
    double pt_avg = 0.0;                   // mean of grad . t

    double jump_value() const { return value_plus - value_minus; }
    double jump_pn() const { return pn_plus - pn_minus; }
    double avg_value() const { return 0.5 * (value_plus + value_minus); }
};

// Trace on the element's local edge at arc parameter s in [0,1] (running along
// the element's ccw boundary). Both sides are evaluated at the same physical
// point; periodic partners are reached through the stored shift.
inline InterfaceTrace2D trace_on_edge(const DGField<TriMesh2D>& field, int e, int local_edge,
                                      double s) {
    const TriMesh2D& mesh = field.mesh();
    const int edge_id = mesh.elem_edges[static_cast<std::size_t>(e)][static_cast<std::size_t>(local_edge)];
    const TriMesh2D::Edge& edge = mesh.edges[static_cast<std::size_t>(edge_id)];
    const bool active_is_first = edge.elem[0] == e;

    const auto& t = mesh.tris[static_cast<std::size_t>(e)];
    const auto& pa = mesh.nodes[static_cast<std::size_t>(t[static_cast<std::size_t>(local_edge)])];
    const auto& pb = mesh.nodes[static_cast<std::size_t>(t[static_cast<std::size_t>((local_edge + 1) % 3)])];

    InterfaceTrace2D tr;
    tr.point = {pa[0] + s * (pb[0] - pa[0]), pa[1] + s * (pb[1] - pa[1])};
    const double orient = active_is_first ? 1.0 : -1.0;
    tr.normal = {orient * edge.normal[0], orient * edge.normal[1]};
    tr.tangent = {orient * edge.tangent[0], orient * edge.tangent[1]};

    tr.value_minus = field.value_phys(e, tr.point.data(), tr.grad_minus.data());

    int other = active_is_first ? edge.elem[1] : edge.elem[0];
    std::array<double, 2> other_point = tr.point;
    if (other < 0 && edge.periodic_partner >= 0) {
        const auto& partner = mesh.edges[static_cast<std::size_t>(edge.periodic_partner)];
        other = partner.elem[0];
        other_point = {tr.point[0] + edge.periodic_shift[0], tr.point[1] + edge.periodic_shift[1]};
    }
    if (other >= 0) {
        tr.value_plus = field.value_phys(other, other_point.data(), tr.grad_plus.data());
    } else {
        tr.value_plus = tr.value_minus;  // outflow: copy the interior trace
        tr.grad_plus = tr.grad_minus;
    }

    tr.pn_minus = tr.grad_minus[0] * tr.normal[0] + tr.grad_minus[1] * tr.normal[1];
    tr.pn_plus = tr.grad_plus[0] * tr.normal[0] + tr.grad_plus[1] * tr.normal[1];
    tr.pt_avg = 0.5 * ((tr.grad_minus[0] + tr.grad_plus[0]) * tr.tangent[0] +
                       (tr.grad_minus[1] + tr.grad_plus[1]) * tr.tangent[1]);
    return tr;
}

// --- dumps ------------------------------------------------------------------

template <class Mesh>
void dump_coefficients(const DGField<Mesh>& field, std::ostream& os) {
    os << "element,dof,coefficient\n";
    for (int e = 0; e < field.n_elements(); ++e)
        for (int i = 0; i < field.n_dofs(); ++i)
            os << e << "," << i << "," << format_double(field.elem(e)[i]) << "\n";
}

void dump_sampled(const DGField<Mesh1D>& field, int per_cell, std::ostream& os);
void dump_sampled(const DGField<CartMesh2D>& field, int per_cell, std::ostream& os);
void dump_sampled(const DGField<TriMesh2D>& field, int per_cell, std::ostream& os);

}  // namespace hjdg
