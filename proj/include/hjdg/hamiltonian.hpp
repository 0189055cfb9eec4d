// Catalog of Hamiltonians H(grad phi, x) with partial derivatives, plus the
// directional view used on unstructured meshes.
#pragma once

#include <array>
#include <string_view>

namespace hjdg {

// Which one-sided limit a discontinuous coefficient should take when the
// evaluation point sits exactly on the coefficient's jump.
enum class Side : int { Minus = -1, Center = 0, Plus = 1 };

// sign with sign(0) = 0 (subdifferential midpoint convention).
inline double sgn0(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

struct HamiltonianModel {
    const char* name;
    int dim;           // 1 or 2
    bool convex;       // convex in the gradient argument
    bool smooth;       // smooth in all arguments (no sign/abs kinks)
    // 1D models ignore q and y.
    double (*H)(double p, double q, double x, double y, Side side);
    double (*dHdp)(double p, double q, double x, double y, Side side);
    double (*dHdq)(double p, double q, double x, double y, Side side);  // null for 1D
};

// Looks up a model by name; throws std::invalid_argument for unknown names.
const HamiltonianModel& hamiltonian_catalog(std::string_view name);

// H restricted to a face frame: gradient reconstructed as pn*n + pt*t.
class DirectionalHamiltonian {
public:
    DirectionalHamiltonian(const HamiltonianModel& model, std::array<double, 2> normal,
                           std::array<double, 2> tangent);

    double H(double pn, double pt, double x, double y, Side side) const {
        return model_->H(pn * n_[0] + pt * t_[0], pn * n_[1] + pt * t_[1], x, y, side);
    }
    // d/dpn of H(pn*n + pt*t) = grad_p H . n
    double dHdpn(double pn, double pt, double x, double y, Side side) const {
        const double gx = pn * n_[0] + pt * t_[0];
        const double gy = pn * n_[1] + pt * t_[1];
        return model_->dHdp(gx, gy, x, y, side) * n_[0] + model_->dHdq(gx, gy, x, y, side) * n_[1];
    }
    const HamiltonianModel& model() const { return *model_; }
    const std::array<double, 2>& normal() const { return n_; }
    const std::array<double, 2>& tangent() const { return t_; }

private:
    const HamiltonianModel* model_;
    std::array<double, 2> n_, t_;
};

}  // namespace hjdg
