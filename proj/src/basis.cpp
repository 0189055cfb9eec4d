#include "hjdg/basis.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hjdg {

namespace {

constexpr int kMaxTriangleDegree = 10;
constexpr int kMaxQuadDegree = 60;

// Legendre values P_0..P_n and derivatives at x, standard recurrences.
void legendre_all(int n, double x, double* val, double* der) {
    val[0] = 1.0;
    der[0] = 0.0;
    if (n == 0) return;
    val[1] = x;
    der[1] = 1.0;
    for (int m = 1; m < n; ++m) {
        val[m + 1] = ((2 * m + 1) * x * val[m] - m * val[m - 1]) / (m + 1);
        der[m + 1] = der[m - 1] + (2 * m + 1) * val[m];
    }
}

double legendre_norm_factor(int l) { return std::sqrt((2.0 * l + 1.0) / 2.0); }

// Exact monomial moment on the unit triangle: integral of x^a y^b equals
// a! b! / (a+b+2)! = 1 / (C(a+b,a) * (a+b+1) * (a+b+2)). The denominator is
// formed in exact integer arithmetic so the result is correct to 0.5 ulp;
// orthonormalization amplifies any moment error by the basis conditioning.
double triangle_moment(int a, int b) {
    unsigned long long binom = 1;
    for (int i = 1; i <= a; ++i) binom = binom * (b + i) / i;  // stays integral stepwise
    const unsigned long long denom = binom * static_cast<unsigned long long>(a + b + 1) *
                                     static_cast<unsigned long long>(a + b + 2);
    return 1.0 / static_cast<double>(denom);
}

// In-place lower Cholesky of a symmetric positive definite n x n matrix.
void cholesky_lower(std::vector<double>& a, int n) {
    for (int j = 0; j < n; ++j) {
        double d = a[static_cast<std::size_t>(j) * n + j];
        for (int k = 0; k < j; ++k) {
            const double l = a[static_cast<std::size_t>(j) * n + k];
            d -= l * l;
        }
        if (d <= 0.0) throw std::runtime_error("basis: Gram matrix not positive definite");
        const double dj = std::sqrt(d);
        a[static_cast<std::size_t>(j) * n + j] = dj;
        for (int i = j + 1; i < n; ++i) {
            double s = a[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < j; ++k)
                s -= a[static_cast<std::size_t>(i) * n + k] * a[static_cast<std::size_t>(j) * n + k];
            a[static_cast<std::size_t>(i) * n + j] = s / dj;
        }
    }
}

// Solves L X = B in place (B: n x m row-major, L lower triangular).
void forward_solve(const std::vector<double>& l, int n, std::vector<double>& b, int m) {
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < m; ++c) {
            double s = b[static_cast<std::size_t>(i) * m + c];
            for (int k = 0; k < i; ++k)
                s -= l[static_cast<std::size_t>(i) * n + k] * b[static_cast<std::size_t>(k) * m + c];
            b[static_cast<std::size_t>(i) * m + c] = s / l[static_cast<std::size_t>(i) * n + i];
        }
    }
}

}  // namespace

double QuadratureRule::weight_sum() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

QuadratureRule gauss_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_rule: need n >= 1");
    QuadratureRule rule;
    rule.dim = 1;
    rule.exact_degree = 2 * n - 1;
    rule.points.assign(static_cast<std::size_t>(n), 0.0);
    rule.weights.assign(static_cast<std::size_t>(n), 0.0);

    std::vector<double> val(static_cast<std::size_t>(n) + 1), der(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n / 2; ++i) {
        // Newton from the Chebyshev-like initial guess; roots listed descending.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            legendre_all(n, x, val.data(), der.data());
            const double dx = val[static_cast<std::size_t>(n)] / der[static_cast<std::size_t>(n)];
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        legendre_all(n, x, val.data(), der.data());
        const double w = 2.0 / ((1.0 - x * x) * der[static_cast<std::size_t>(n)] * der[static_cast<std::size_t>(n)]);
        rule.points[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.points[static_cast<std::size_t>(i)] = -x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
        rule.weights[static_cast<std::size_t>(i)] = w;
    }
    if (n % 2 == 1) {
        legendre_all(n, 0.0, val.data(), der.data());
        rule.points[static_cast<std::size_t>(n / 2)] = 0.0;
        rule.weights[static_cast<std::size_t>(n / 2)] =
            2.0 / (der[static_cast<std::size_t>(n)] * der[static_cast<std::size_t>(n)]);
    }
    return rule;
}

QuadratureRule tensor_rule(int n) {
    const QuadratureRule line = gauss_rule(n);
    QuadratureRule rule;
    rule.dim = 2;
    rule.exact_degree = 2 * n - 1;
    rule.points.reserve(static_cast<std::size_t>(n) * n * 2);
    rule.weights.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            rule.points.push_back(line.points[static_cast<std::size_t>(i)]);
            rule.points.push_back(line.points[static_cast<std::size_t>(j)]);
            rule.weights.push_back(line.weights[static_cast<std::size_t>(i)] *
                                   line.weights[static_cast<std::size_t>(j)]);
        }
    }
    return rule;
}

QuadratureRule triangle_rule(int target_degree) {
    if (target_degree < 0 || target_degree > kMaxQuadDegree)
        throw std::invalid_argument("triangle_rule: unsupported degree " + std::to_string(target_degree));
    QuadratureRule rule;
    rule.dim = 2;
    if (target_degree <= 1) {
        rule.exact_degree = 1;
        rule.points = {1.0 / 3.0, 1.0 / 3.0};
        rule.weights = {0.5};
        return rule;
    }
    // Collapsed square: x = u, y = (1-u) v, Jacobian (1-u). The Jacobian raises
    // the u-degree by one, so an n-point product rule is exact to 2n-2.
    const int n = (target_degree + 3) / 2;
    const QuadratureRule line = gauss_rule(n);
    rule.exact_degree = target_degree;
    for (int i = 0; i < n; ++i) {
        const double u = 0.5 * (line.points[static_cast<std::size_t>(i)] + 1.0);
        const double wu = 0.5 * line.weights[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            const double v = 0.5 * (line.points[static_cast<std::size_t>(j)] + 1.0);
            const double wv = 0.5 * line.weights[static_cast<std::size_t>(j)];
            rule.points.push_back(u);
            rule.points.push_back((1.0 - u) * v);
            rule.weights.push_back(wu * wv * (1.0 - u));
        }
    }
    return rule;
}

ReferenceBasis ReferenceBasis::make(ElementKind kind, int degree) {
    if (degree < 1)
        throw std::invalid_argument("ReferenceBasis: degree must be >= 1 (interface derivatives vanish for k = 0)");
    if (degree > 12)
        throw std::invalid_argument("ReferenceBasis: degree limited to <= 12");
    ReferenceBasis b;
    b.kind_ = kind;
    b.k_ = degree;
    b.dim_ = (kind == ElementKind::Interval) ? 1 : 2;

    if (kind == ElementKind::Interval) {
        b.ndof_ = degree + 1;
        for (int l = 0; l <= degree; ++l) b.modes_.push_back({l, 0});
        return b;
    }

    // Total-degree mode set, ordered by degree.
    for (int d = 0; d <= degree; ++d)
        for (int a = d; a >= 0; --a) b.modes_.push_back({a, d - a});
    b.ndof_ = static_cast<int>(b.modes_.size());
    if (kind == ElementKind::Rectangle) return b;

    if (degree > kMaxTriangleDegree)
        throw std::invalid_argument("ReferenceBasis: triangle basis limited to degree <= " +
                                    std::to_string(kMaxTriangleDegree));

    // Orthonormalize monomials against the exact Gram matrix. A second
    // Cholesky pass removes the conditioning loss of the first.
    const int n = b.ndof_;
    std::vector<double> gram(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            gram[static_cast<std::size_t>(i) * n + j] =
                triangle_moment(b.modes_[static_cast<std::size_t>(i)][0] + b.modes_[static_cast<std::size_t>(j)][0],
                                b.modes_[static_cast<std::size_t>(i)][1] + b.modes_[static_cast<std::size_t>(j)][1]);

    std::vector<double> coef(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) coef[static_cast<std::size_t>(i) * n + i] = 1.0;

    // Residual Gram in extended precision: the double-precision triple product
    // floors near eps * cond(G), which is too coarse at degree 4.
    std::vector<double> work(static_cast<std::size_t>(n) * n);
    for (int pass = 0; pass < 6; ++pass) {
        std::vector<long double> rg(static_cast<std::size_t>(n) * n, 0.0L);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const long double r = coef[static_cast<std::size_t>(i) * n + k];
                if (r == 0.0L) continue;
                for (int j = 0; j < n; ++j)
                    rg[static_cast<std::size_t>(i) * n + j] +=
                        r * static_cast<long double>(gram[static_cast<std::size_t>(k) * n + j]);
            }
        double maxerr = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long double s = 0.0L;
                for (int k = 0; k < n; ++k)
                    s += rg[static_cast<std::size_t>(i) * n + k] *
                         static_cast<long double>(coef[static_cast<std::size_t>(j) * n + k]);
                work[static_cast<std::size_t>(i) * n + j] = static_cast<double>(s);
                maxerr = std::max(maxerr, std::abs(static_cast<double>(s) - (i == j ? 1.0 : 0.0)));
            }
        if (maxerr < 5e-14) break;
        cholesky_lower(work, n);
        forward_solve(work, n, coef, n);
    }
    b.mono_coef_ = std::move(coef);
    return b;
}

void ReferenceBasis::values(const double* ref, double* out) const {
    if (kind_ == ElementKind::Interval) {
        std::vector<double> val(static_cast<std::size_t>(k_) + 1), der(static_cast<std::size_t>(k_) + 1);
        legendre_all(k_, ref[0], val.data(), der.data());
        for (int l = 0; l <= k_; ++l) out[l] = legendre_norm_factor(l) * val[static_cast<std::size_t>(l)];
        return;
    }
    if (kind_ == ElementKind::Rectangle) {
        std::vector<double> vx(static_cast<std::size_t>(k_) + 1), dx(static_cast<std::size_t>(k_) + 1);
        std::vector<double> vy(static_cast<std::size_t>(k_) + 1), dy(static_cast<std::size_t>(k_) + 1);
        legendre_all(k_, ref[0], vx.data(), dx.data());
        legendre_all(k_, ref[1], vy.data(), dy.data());
        for (int i = 0; i < ndof_; ++i) {
            const auto [l, m] = modes_[static_cast<std::size_t>(i)];
            out[i] = legendre_norm_factor(l) * vx[static_cast<std::size_t>(l)] * legendre_norm_factor(m) *
                     vy[static_cast<std::size_t>(m)];
        }
        return;
    }
    // Triangle: powers once, then the coefficient matrix. Extended precision:
    // the coefficients are large with alternating signs and plain double
    // accumulation cancels down to ~1e-12, above the orthonormality budget.
    std::array<long double, 16> px, py;
    px[0] = py[0] = 1.0L;
    for (int a = 1; a <= k_; ++a) {
        px[static_cast<std::size_t>(a)] = px[static_cast<std::size_t>(a - 1)] * ref[0];
        py[static_cast<std::size_t>(a)] = py[static_cast<std::size_t>(a - 1)] * ref[1];
    }
    for (int i = 0; i < ndof_; ++i) {
        long double s = 0.0L;
        for (int j = 0; j < ndof_; ++j) {
            const double c = mono_coef_[static_cast<std::size_t>(i) * ndof_ + j];
            if (c == 0.0) continue;
            const auto [a, bb] = modes_[static_cast<std::size_t>(j)];
            s += static_cast<long double>(c) * px[static_cast<std::size_t>(a)] * py[static_cast<std::size_t>(bb)];
        }
        out[i] = static_cast<double>(s);
    }
}

void ReferenceBasis::derivatives(const double* ref, double* out) const {
    if (kind_ == ElementKind::Interval) {
        std::vector<double> val(static_cast<std::size_t>(k_) + 1), der(static_cast<std::size_t>(k_) + 1);
        legendre_all(k_, ref[0], val.data(), der.data());
        for (int l = 0; l <= k_; ++l) out[l] = legendre_norm_factor(l) * der[static_cast<std::size_t>(l)];
        return;
    }
    if (kind_ == ElementKind::Rectangle) {
        std::vector<double> vx(static_cast<std::size_t>(k_) + 1), dx(static_cast<std::size_t>(k_) + 1);
        std::vector<double> vy(static_cast<std::size_t>(k_) + 1), dy(static_cast<std::size_t>(k_) + 1);
        legendre_all(k_, ref[0], vx.data(), dx.data());
        legendre_all(k_, ref[1], vy.data(), dy.data());
        for (int i = 0; i < ndof_; ++i) {
            const auto [l, m] = modes_[static_cast<std::size_t>(i)];
            const double nl = legendre_norm_factor(l), nm = legendre_norm_factor(m);
            out[2 * i] = nl * dx[static_cast<std::size_t>(l)] * nm * vy[static_cast<std::size_t>(m)];
            out[2 * i + 1] = nl * vx[static_cast<std::size_t>(l)] * nm * dy[static_cast<std::size_t>(m)];
        }
        return;
    }
    std::array<long double, 16> px, py;
    px[0] = py[0] = 1.0L;
    for (int a = 1; a <= k_; ++a) {
        px[static_cast<std::size_t>(a)] = px[static_cast<std::size_t>(a - 1)] * ref[0];
        py[static_cast<std::size_t>(a)] = py[static_cast<std::size_t>(a - 1)] * ref[1];
    }
    for (int i = 0; i < ndof_; ++i) {
        long double sx = 0.0L, sy = 0.0L;
        for (int j = 0; j < ndof_; ++j) {
            const double c = mono_coef_[static_cast<std::size_t>(i) * ndof_ + j];
            if (c == 0.0) continue;
            const auto [a, bb] = modes_[static_cast<std::size_t>(j)];
            if (a > 0) sx += static_cast<long double>(c) * a * px[static_cast<std::size_t>(a - 1)] * py[static_cast<std::size_t>(bb)];
            if (bb > 0) sy += static_cast<long double>(c) * bb * px[static_cast<std::size_t>(a)] * py[static_cast<std::size_t>(bb - 1)];
        }
        out[2 * i] = static_cast<double>(sx);
        out[2 * i + 1] = static_cast<double>(sy);
    }
}

std::vector<double> ReferenceBasis::values_at(std::span<const double> ref) const {
    std::vector<double> out(static_cast<std::size_t>(ndof_));
    values(ref.data(), out.data());
    return out;
}

std::vector<double> ReferenceBasis::derivatives_at(std::span<const double> ref) const {
    std::vector<double> out(static_cast<std::size_t>(ndof_) * dim_);
    derivatives(ref.data(), out.data());
    return out;
}

BasisTable tabulate(const ReferenceBasis& basis, const double* ref_points, int n_points) {
    BasisTable t;
    t.n_points = n_points;
    t.n_dofs = basis.n_dofs();
    t.dim = basis.dim();
    t.value.resize(static_cast<std::size_t>(n_points) * t.n_dofs);
    t.deriv.resize(static_cast<std::size_t>(n_points) * t.n_dofs * t.dim);
    for (int q = 0; q < n_points; ++q) {
        basis.values(ref_points + static_cast<std::size_t>(q) * t.dim,
                     t.value.data() + static_cast<std::size_t>(q) * t.n_dofs);
        basis.derivatives(ref_points + static_cast<std::size_t>(q) * t.dim,
                          t.deriv.data() + static_cast<std::size_t>(q) * t.n_dofs * t.dim);
    }
    return t;
}

}  // namespace hjdg
