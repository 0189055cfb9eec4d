#include "hjdg/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace hjdg {

RoeData roe_from_samples(double p_minus, double p_plus, double h_minus, double h_plus,
                         double dh_minus, double dh_plus) {
    RoeData roe;
    const double eps_eq = 1e-12 * std::max({1.0, std::abs(p_minus), std::abs(p_plus)});
    if (std::abs(p_plus - p_minus) > eps_eq)
        roe.roe_speed = (h_plus - h_minus) / (p_plus - p_minus);
    else
        roe.roe_speed = 0.5 * (dh_minus + dh_plus);
    roe.delta = std::max({0.0, roe.roe_speed - dh_minus, dh_plus - roe.roe_speed});
    roe.s_level = std::max(roe.delta, std::abs(roe.roe_speed));
    roe.visc = roe.s_level - std::abs(roe.roe_speed);
    return roe;
}

RoeData roe_data_1d(const HamiltonianModel& model, double p_minus, double p_plus, double x) {
    return roe_from_samples(p_minus, p_plus,
                            model.H(p_minus, 0.0, x, 0.0, Side::Minus),
                            model.H(p_plus, 0.0, x, 0.0, Side::Plus),
                            model.dHdp(p_minus, 0.0, x, 0.0, Side::Minus),
                            model.dHdp(p_plus, 0.0, x, 0.0, Side::Plus));
}

RoeData roe_data_normal(const DirectionalHamiltonian& dir, double pn_minus, double pn_plus,
                        double pt_avg, double x, double y) {
    return roe_from_samples(pn_minus, pn_plus,
                            dir.H(pn_minus, pt_avg, x, y, Side::Minus),
                            dir.H(pn_plus, pt_avg, x, y, Side::Plus),
                            dir.dHdpn(pn_minus, pt_avg, x, y, Side::Minus),
                            dir.dHdpn(pn_plus, pt_avg, x, y, Side::Plus));
}

std::pair<double, double> upwind_weights(const RoeData& roe) {
    return {std::min(roe.roe_speed, 0.0), std::max(roe.roe_speed, 0.0)};
}

double penalty_coeff(const RoeData& roe, double c, double length_scale) {
    return c * length_scale * roe.visc;
}

}  // namespace hjdg
