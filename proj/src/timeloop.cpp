#include "hjdg/timeloop.hpp"

#include <algorithm>
#include <cmath>

namespace hjdg {

namespace {

double minmod2(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

// minmod over a short argument list; returns args[0] bit-exactly whenever it
// is the selected value, so "unchanged" can be tested with ==.
double minmod(const double* args, int n) {
    double m = args[0];
    for (int i = 1; i < n; ++i) m = minmod2(m, args[i]);
    return m;
}

const double kSlopeUnit = std::sqrt(6.0);  // slope * dx per unit linear-mode coefficient

}  // namespace

double dt_from_speeds(const TimeControls& controls, const std::vector<double>& max_speeds,
                      const std::vector<double>& min_widths) {
    double wmin = min_widths[0];
    for (double w : min_widths) wmin = std::min(wmin, w);
    if (controls.law == DtLaw::P43) return controls.cfl * std::pow(wmin, 4.0 / 3.0);

    double denom = 0.0;
    for (std::size_t d = 0; d < max_speeds.size(); ++d)
        denom += std::max(max_speeds[d], controls.speed_floor) / min_widths[d];
    return controls.cfl / denom;
}

void minmod_limit(DGField<Mesh1D>& field) {
    const Mesh1D& mesh = field.mesh();
    const int n = mesh.n_elements();
    const int nd = field.n_dofs();
    if (nd < 2) return;
    const bool periodic = mesh.boundary == BoundaryKind::Periodic;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    std::vector<double> mean(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) mean[static_cast<std::size_t>(e)] = field.elem(e)[0] * inv_sqrt2;

    for (int e = 0; e < n; ++e) {
        double* c = field.elem(e);
        const double s = kSlopeUnit * c[1];
        double args[3];
        int na = 0;
        args[na++] = s;
        if (e + 1 < n) args[na++] = mean[static_cast<std::size_t>(e) + 1] - mean[static_cast<std::size_t>(e)];
        else if (periodic) args[na++] = mean[0] - mean[static_cast<std::size_t>(e)];
        if (e > 0) args[na++] = mean[static_cast<std::size_t>(e)] - mean[static_cast<std::size_t>(e) - 1];
        else if (periodic) args[na++] = mean[static_cast<std::size_t>(e)] - mean[static_cast<std::size_t>(n) - 1];

        const double limited = minmod(args, na);
        if (limited != s) {
            c[1] = limited / kSlopeUnit;
            for (int i = 2; i < nd; ++i) c[i] = 0.0;
        }
    }
}

void moment_limit(DGField<CartMesh2D>& field) {
    const CartMesh2D& mesh = field.mesh();
    const ReferenceBasis& basis = field.basis();
    const int k = basis.degree();
    if (k < 1) return;
    const int nx = mesh.nx(), ny = mesh.ny();
    const int nd = basis.n_dofs();

    // mode (l,m) -> dof index
    std::vector<int> index(static_cast<std::size_t>(k + 1) * (k + 1), -1);
    for (int i = 0; i < nd; ++i) {
        const auto [l, m] = basis.mode(i);
        index[static_cast<std::size_t>(l) * (k + 1) + m] = i;
    }
    auto idx = [&](int l, int m) { return index[static_cast<std::size_t>(l) * (k + 1) + m]; };
    auto alpha = [](int l) { return std::sqrt((2.0 * l - 1.0) / (2.0 * l + 1.0)); };

    const std::vector<double> snap = field.coef;  // limit against the unlimited state
    auto cell = [&](int i, int j) { return snap.data() + static_cast<std::size_t>(mesh.elem(i, j)) * nd; };

    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            double* c = field.elem(mesh.elem(i, j));
            const int ip = (i + 1 < nx) ? i + 1 : (mesh.bc_x == BoundaryKind::Periodic ? 0 : -1);
            const int im = (i > 0) ? i - 1 : (mesh.bc_x == BoundaryKind::Periodic ? nx - 1 : -1);
            const int jp = (j + 1 < ny) ? j + 1 : (mesh.bc_y == BoundaryKind::Periodic ? 0 : -1);
            const int jm = (j > 0) ? j - 1 : (mesh.bc_y == BoundaryKind::Periodic ? ny - 1 : -1);

            for (int d = k; d >= 1; --d) {
                bool level_changed = false;
                for (int l = d; l >= 0; --l) {
                    const int m = d - l;
                    const int id = idx(l, m);
                    double args[5];
                    int na = 0;
                    args[na++] = c[id];
                    if (l >= 1) {
                        const int lo = idx(l - 1, m);
                        if (ip >= 0) args[na++] = alpha(l) * (cell(ip, j)[lo] - cell(i, j)[lo]);
                        if (im >= 0) args[na++] = alpha(l) * (cell(i, j)[lo] - cell(im, j)[lo]);
                    }
                    if (m >= 1) {
                        const int lo = idx(l, m - 1);
                        if (jp >= 0) args[na++] = alpha(m) * (cell(i, jp)[lo] - cell(i, j)[lo]);
                        if (jm >= 0) args[na++] = alpha(m) * (cell(i, j)[lo] - cell(i, jm)[lo]);
                    }
                    const double limited = minmod(args, na);
                    if (limited != c[id]) {
                        c[id] = limited;
                        level_changed = true;
                    }
                }
                if (!level_changed) break;  // lower moments stay untouched
            }
        }
    }
}

}  // namespace hjdg
