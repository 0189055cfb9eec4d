// Interface calculus: Roe speed, entropy detector, viscosity level, upwind
// weights and the penalty coefficient.
#pragma once

#include <utility>

#include "hjdg/hamiltonian.hpp"

namespace hjdg {

struct RoeData {
    double roe_speed = 0.0;  // divided difference of H across the interface
    double delta = 0.0;      // entropy-violation detector, >= 0
    double s_level = 0.0;    // max(delta, |roe_speed|)
    double visc = 0.0;       // s_level - |roe_speed| (> 0 only on expansions)
};

// Core combination rule from one-sided samples:
//   traces differ -> divided difference; equal traces -> mean of derivatives.
RoeData roe_from_samples(double p_minus, double p_plus, double h_minus, double h_plus,
                         double dh_minus, double dh_plus);

// 1D interface at coordinate x. The model is evaluated with one-sided limits
// so discontinuous coefficients pick the correct branch on each side.
RoeData roe_data_1d(const HamiltonianModel& model, double p_minus, double p_plus, double x);

// Interface with frame (n, t); pn traces are one-sided, the tangential
// derivative enters through its two-sided average.
RoeData roe_data_normal(const DirectionalHamiltonian& dir, double pn_minus, double pn_plus,
                        double pt_avg, double x, double y);

// (min(speed, 0), max(speed, 0))
std::pair<double, double> upwind_weights(const RoeData& roe);

// C * length_scale * visc; the scale is dx in 1D, dx or dy per direction on
// Cartesian meshes, area/edge-length on triangles.
double penalty_coeff(const RoeData& roe, double c, double length_scale);

}  // namespace hjdg
