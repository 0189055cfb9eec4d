// Reference-element polynomial bases and quadrature rules.
//
// Bases are orthonormal in the reference-element L2 inner product, so physical
// mass matrices are diagonal (element measure factor times identity):
//   interval  [-1,1]          : normalized Legendre, k+1 functions
//   rectangle [-1,1]^2        : tensor Legendre products, total degree <= k
//   triangle  {x,y>=0, x+y<=1}: orthonormalized monomials, total degree <= k
#pragma once

#include <array>
#include <span>
#include <vector>

namespace hjdg {

enum class ElementKind { Interval, Rectangle, Triangle };

struct QuadratureRule {
    int dim = 1;
    int exact_degree = 0;
    std::vector<double> points;   // dim coordinates per point, flattened
    std::vector<double> weights;

    int n_points() const { return static_cast<int>(weights.size()); }
    const double* point(int q) const { return points.data() + static_cast<std::size_t>(q) * dim; }
    double weight_sum() const;
};

// n-point Gauss-Legendre rule on [-1,1], exact for degree 2n-1.
QuadratureRule gauss_rule(int n);

// Tensor (n x n) Gauss rule on [-1,1]^2, exact for total degree 2n-1.
QuadratureRule tensor_rule(int n);

// Rule on the unit triangle exact for polynomials of (at least) the target
// total degree: centroid rule for degree <= 1, collapsed-square Gauss product
// otherwise. Throws for unsupported (negative or very large) degrees.
QuadratureRule triangle_rule(int target_degree);

class ReferenceBasis {
public:
    static ReferenceBasis make(ElementKind kind, int degree);

    ElementKind kind() const { return kind_; }
    int degree() const { return k_; }
    int dim() const { return dim_; }
    int n_dofs() const { return ndof_; }

    // Mode descriptor: Legendre orders (l,m) for interval/rectangle (m unused
    // in 1D), monomial exponents for the triangle. Mode 0 is the constant.
    std::array<int, 2> mode(int i) const { return modes_[static_cast<std::size_t>(i)]; }

    // Values of all basis functions at a reference point (out: n_dofs).
    void values(const double* ref, double* out) const;
    // Reference-space first derivatives (out: n_dofs x dim, row-major).
    void derivatives(const double* ref, double* out) const;

    std::vector<double> values_at(std::span<const double> ref) const;
    std::vector<double> derivatives_at(std::span<const double> ref) const;

private:
    ReferenceBasis() = default;

    ElementKind kind_ = ElementKind::Interval;
    int k_ = 1;
    int dim_ = 1;
    int ndof_ = 2;
    std::vector<std::array<int, 2>> modes_;
    std::vector<double> mono_coef_;  // triangle only: ndof x ndof over monomials
};

// Basis values and reference derivatives tabulated at a fixed point set.
struct BasisTable {
    int n_points = 0;
    int n_dofs = 0;
    int dim = 1;
    std::vector<double> value;  // [q * n_dofs + i]
    std::vector<double> deriv;  // [(q * n_dofs + i) * dim + d]

    double v(int q, int i) const { return value[static_cast<std::size_t>(q) * n_dofs + i]; }
    double d(int q, int i, int dd) const {
        return deriv[(static_cast<std::size_t>(q) * n_dofs + i) * dim + dd];
    }
};

BasisTable tabulate(const ReferenceBasis& basis, const double* ref_points, int n_points);

}  // namespace hjdg
