// Semi-discrete DG operator in one dimension: Galerkin volume term, Roe
// upwind interface terms, and the entropy-fix penalty on the jump of phi_x.
#pragma once

#include <vector>

#include "hjdg/field.hpp"
#include "hjdg/hamiltonian.hpp"
#include "hjdg/riemann.hpp"

namespace hjdg {

enum class LimiterKind { None, Minmod, Moment };
enum class DtLaw { Standard, P43 };

struct SchemeParams {
    int degree = 2;
    double penalty_c = 0.25;  // C = 0.25 works well in practice
    double cfl = 0.1;
    LimiterKind limiter = LimiterKind::None;
    DtLaw dt_law = DtLaw::Standard;
    int volume_quad_boost = 0;  // raise the volume rule above degree 2k
};

class Solver1D {
public:
    Solver1D(const Mesh1D& mesh, const ReferenceBasis& basis, const HamiltonianModel& model,
             const SchemeParams& params);

    // dcoef/dt for the current coefficients; out is resized as needed.
    void rhs(const DGField<Mesh1D>& field, std::vector<double>& out) const;

    // max |H1| over all volume quadrature points of the current state.
    double max_speed(const DGField<Mesh1D>& field) const;

    const Mesh1D& mesh() const { return *mesh_; }
    const ReferenceBasis& basis() const { return *basis_; }
    const HamiltonianModel& model() const { return *model_; }
    const SchemeParams& params() const { return params_; }

private:
    const Mesh1D* mesh_;
    const ReferenceBasis* basis_;
    const HamiltonianModel* model_;
    SchemeParams params_;

    QuadratureRule volume_;
    BasisTable vol_table_;
    std::vector<double> left_val_, left_der_, right_val_, right_der_;  // traces at xi = -1, +1
};

std::vector<double> assemble_rhs_1d(const DGField<Mesh1D>& field, const HamiltonianModel& model,
                                    const SchemeParams& params);

}  // namespace hjdg
