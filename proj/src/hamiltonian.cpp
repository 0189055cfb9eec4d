#include "hjdg/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hjdg {

namespace {

// sign(cos x) with one-sided limits at the jump points x = pi/2 + m*pi.
double sign_cos(double x, Side side) {
    const double m = std::round(x / M_PI - 0.5);
    const double xd = (m + 0.5) * M_PI;
    if (side != Side::Center && std::abs(x - xd) < 1e-9) {
        const double left = sgn0(std::sin(xd));  // limit from below
        return side == Side::Minus ? left : -left;
    }
    return sgn0(std::cos(x));
}

double lin_smooth_H(double p, double, double x, double, Side) { return std::sin(x) * p; }
double lin_smooth_Hp(double, double, double x, double, Side) { return std::sin(x); }

double lin_nonsmooth_H(double p, double, double x, double, Side s) { return sign_cos(x, s) * p; }
double lin_nonsmooth_Hp(double, double, double x, double, Side s) { return sign_cos(x, s); }

double burgers1d_H(double p, double, double, double, Side) { return 0.5 * p * p; }
double burgers1d_Hp(double p, double, double, double, Side) { return p; }

double eikonal_H(double p, double, double, double, Side) { return std::abs(p); }
double eikonal_Hp(double p, double, double, double, Side) { return sgn0(p); }

double cos1d_H(double p, double, double, double, Side) { return -std::cos(p + 1.0); }
double cos1d_Hp(double p, double, double, double, Side) { return std::sin(p + 1.0); }

double quartic_H(double p, double, double, double, Side) {
    return 0.25 * (p * p - 1.0) * (p * p - 4.0);
}
double quartic_Hp(double p, double, double, double, Side) { return p * p * p - 2.5 * p; }

double rotation_H(double p, double q, double x, double y, Side) { return -y * p + x * q; }
double rotation_Hp(double, double, double, double y, Side) { return -y; }
double rotation_Hq(double, double, double x, double, Side) { return x; }

double burgers2d_H(double p, double q, double, double, Side) {
    const double s = p + q + 1.0;
    return 0.5 * s * s;
}
double burgers2d_Hp(double p, double q, double, double, Side) { return p + q + 1.0; }

double crossderiv_H(double p, double q, double, double, Side) { return p * q; }
double crossderiv_Hp(double, double q, double, double, Side) { return q; }
double crossderiv_Hq(double p, double, double, double, Side) { return p; }

double control_H(double p, double q, double x, double y, Side) {
    const double sy = std::sin(y);
    return sy * p + (std::sin(x) + sgn0(q)) * q - 0.5 * sy * sy + std::cos(x) - 1.0;
}
double control_Hp(double, double, double, double y, Side) { return std::sin(y); }
double control_Hq(double, double q, double x, double, Side) { return std::sin(x) + sgn0(q); }

double cos2d_H(double p, double q, double, double, Side) { return -std::cos(p + q + 1.0); }
double cos2d_Hp(double p, double q, double, double, Side) { return std::sin(p + q + 1.0); }

double sinsum_H(double p, double q, double, double, Side) { return std::sin(p + q); }
double sinsum_Hp(double p, double q, double, double, Side) { return std::cos(p + q); }

double surface_H(double p, double q, double, double, Side) {
    return -std::sqrt(p * p + q * q + 1.0);
}
double surface_Hp(double p, double q, double, double, Side) {
    return -p / std::sqrt(p * p + q * q + 1.0);
}
double surface_Hq(double p, double q, double, double, Side) {
    return -q / std::sqrt(p * p + q * q + 1.0);
}

const HamiltonianModel kCatalog[] = {
    {"linsmth", 1, true, true, lin_smooth_H, lin_smooth_Hp, nullptr},
    {"linnonsmth", 1, true, false, lin_nonsmooth_H, lin_nonsmooth_Hp, nullptr},
    {"burgers1d", 1, true, true, burgers1d_H, burgers1d_Hp, nullptr},
    {"eikonal1d", 1, true, false, eikonal_H, eikonal_Hp, nullptr},
    {"cos1d", 1, false, true, cos1d_H, cos1d_Hp, nullptr},
    {"quartic1d", 1, false, true, quartic_H, quartic_Hp, nullptr},
    {"rotation", 2, true, true, rotation_H, rotation_Hp, rotation_Hq},
    {"burgers2d", 2, true, true, burgers2d_H, burgers2d_Hp, burgers2d_Hp},
    {"crossderiv", 2, false, true, crossderiv_H, crossderiv_Hp, crossderiv_Hq},
    {"control", 2, true, false, control_H, control_Hp, control_Hq},
    {"cos2d", 2, false, true, cos2d_H, cos2d_Hp, cos2d_Hp},
    {"sinsum", 2, false, true, sinsum_H, sinsum_Hp, sinsum_Hp},
    {"surface", 2, false, true, surface_H, surface_Hp, surface_Hq},
};

}  // namespace

const HamiltonianModel& hamiltonian_catalog(std::string_view name) {
    for (const auto& m : kCatalog)
        if (name == m.name) return m;
    throw std::invalid_argument("unknown Hamiltonian '" + std::string(name) + "'");
}

DirectionalHamiltonian::DirectionalHamiltonian(const HamiltonianModel& model,
                                               std::array<double, 2> normal,
                                               std::array<double, 2> tangent)
    : model_(&model), n_(normal), t_(tangent) {
    if (model.dim != 2)
        throw std::invalid_argument("DirectionalHamiltonian: needs a 2D model");
    const double nn = n_[0] * n_[0] + n_[1] * n_[1];
    const double tt = t_[0] * t_[0] + t_[1] * t_[1];
    const double nt = n_[0] * t_[0] + n_[1] * t_[1];
    if (std::abs(nn - 1.0) > 1e-12 || std::abs(tt - 1.0) > 1e-12 || std::abs(nt) > 1e-12)
        throw std::invalid_argument("DirectionalHamiltonian: frame must be orthonormal");
}

}  // namespace hjdg
