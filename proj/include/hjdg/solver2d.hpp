// Semi-discrete DG operators in two dimensions: Cartesian meshes with
// per-direction Roe quantities, and triangle meshes with normal/tangential
// decomposition per edge. Roe data is computed once per face quadrature point
// and shared by both adjacent elements.
#pragma once

#include <array>
#include <vector>

#include "hjdg/field.hpp"
#include "hjdg/hamiltonian.hpp"
#include "hjdg/riemann.hpp"
#include "hjdg/solver1d.hpp"

namespace hjdg {

class CartSolver2D {
public:
    CartSolver2D(const CartMesh2D& mesh, const ReferenceBasis& basis,
                 const HamiltonianModel& model, const SchemeParams& params);

    void rhs(const DGField<CartMesh2D>& field, std::vector<double>& out) const;

    // (max |H1|, max |H2|) over all volume quadrature points.
    std::array<double, 2> max_speeds(const DGField<CartMesh2D>& field) const;

    const CartMesh2D& mesh() const { return *mesh_; }
    const SchemeParams& params() const { return params_; }

private:
    const CartMesh2D* mesh_;
    const ReferenceBasis* basis_;
    const HamiltonianModel* model_;
    SchemeParams params_;

    QuadratureRule volume_;
    BasisTable vol_table_;
    QuadratureRule face_gauss_;  // (k+1)-point line rule
    BasisTable xm_, xp_, ym_, yp_;  // traces at xi=-1/+1 and eta=-1/+1
};

class TriSolver2D {
public:
    TriSolver2D(const TriMesh2D& mesh, const ReferenceBasis& basis,
                const HamiltonianModel& model, const SchemeParams& params);

    void rhs(const DGField<TriMesh2D>& field, std::vector<double>& out) const;

    std::array<double, 2> max_speeds(const DGField<TriMesh2D>& field) const;

    const TriMesh2D& mesh() const { return *mesh_; }
    const SchemeParams& params() const { return params_; }

private:
    const TriMesh2D* mesh_;
    const ReferenceBasis* basis_;
    const HamiltonianModel* model_;
    SchemeParams params_;

    QuadratureRule volume_;
    BasisTable vol_table_;
    QuadratureRule face_gauss_;

    // Per edge and quadrature point: basis values and physical gradients of
    // both adjacent elements, evaluated at identical physical points.
    struct EdgeSide {
        int elem = -1;
        std::vector<double> val;      // q*nd + i
        std::vector<double> gx, gy;   // physical-space basis gradients
    };
    struct EdgeTables {
        std::array<EdgeSide, 2> side;   // [0] = edge.elem[0], [1] = neighbor/partner
        std::vector<std::array<double, 2>> points;  // physical quad points (elem0 side)
        bool coupled = false;
    };
    std::vector<EdgeTables> edge_tables_;
};

std::vector<double> assemble_rhs_cart(const DGField<CartMesh2D>& field,
                                      const HamiltonianModel& model, const SchemeParams& params);
std::vector<double> assemble_rhs_tri(const DGField<TriMesh2D>& field,
                                     const HamiltonianModel& model, const SchemeParams& params);

}  // namespace hjdg
