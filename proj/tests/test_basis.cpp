#include <doctest.h>

#include <cmath>
#include <vector>

#include "hjdg/basis.hpp"

using namespace hjdg;

namespace {

QuadratureRule volume_rule_for(ElementKind kind, int degree) {
    const int n = (degree + 2) / 2;  // Gauss points for 1D/tensor exactness
    switch (kind) {
        case ElementKind::Interval: return gauss_rule(n);
        case ElementKind::Rectangle: return tensor_rule(n);
        case ElementKind::Triangle: return triangle_rule(degree);
    }
    return gauss_rule(1);
}

double reference_measure(ElementKind kind) {
    switch (kind) {
        case ElementKind::Interval: return 2.0;
        case ElementKind::Rectangle: return 4.0;
        case ElementKind::Triangle: return 0.5;
    }
    return 0.0;
}

}  // namespace

TEST_SUITE_BEGIN("basis");

TEST_CASE("dof counts and constant-mode normalization") {
    auto i1 = ReferenceBasis::make(ElementKind::Interval, 1);
    CHECK(i1.n_dofs() == 2);
    double pt = 0.37;
    CHECK(i1.values_at({&pt, 1})[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    auto t2 = ReferenceBasis::make(ElementKind::Triangle, 2);
    CHECK(t2.n_dofs() == 6);

    auto t1 = ReferenceBasis::make(ElementKind::Triangle, 1);
    double xy[2] = {0.2, 0.3};
    CHECK(t1.values_at({xy, 2})[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    auto r3 = ReferenceBasis::make(ElementKind::Rectangle, 3);
    CHECK(r3.n_dofs() == 10);  // total-degree space

    CHECK_THROWS(ReferenceBasis::make(ElementKind::Interval, 0));
}

TEST_CASE("orthonormality for all kinds up to degree 4") {
    for (auto kind : {ElementKind::Interval, ElementKind::Rectangle, ElementKind::Triangle}) {
        for (int k = 1; k <= 4; ++k) {
            auto basis = ReferenceBasis::make(kind, k);
            auto rule = volume_rule_for(kind, 2 * k);
            const int n = basis.n_dofs();
            std::vector<double> gram(static_cast<std::size_t>(n) * n, 0.0);
            std::vector<double> vals(static_cast<std::size_t>(n));
            for (int q = 0; q < rule.n_points(); ++q) {
                basis.values(rule.point(q), vals.data());
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        gram[static_cast<std::size_t>(i) * n + j] += rule.weights[static_cast<std::size_t>(q)] * vals[static_cast<std::size_t>(i)] * vals[static_cast<std::size_t>(j)];
            }
            double err = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    err = std::max(err, std::abs(gram[static_cast<std::size_t>(i) * n + j] - (i == j ? 1.0 : 0.0)));
            INFO("kind=", static_cast<int>(kind), " k=", k);
            CHECK(err <= 1e-12);
        }
    }
}

TEST_CASE("derivatives match central differences") {
    const double h = 1e-5;
    for (auto kind : {ElementKind::Interval, ElementKind::Rectangle, ElementKind::Triangle}) {
        auto basis = ReferenceBasis::make(kind, 3);
        const int n = basis.n_dofs();
        const int d = basis.dim();
        std::vector<double> test_points;
        if (d == 1) test_points = {-0.7, 0.11, 0.62};
        else if (kind == ElementKind::Rectangle) test_points = {-0.4, 0.3, 0.55, -0.2, 0.1, 0.8};
        else test_points = {0.2, 0.3, 0.55, 0.15, 0.1, 0.7};
        std::vector<double> der(static_cast<std::size_t>(n) * d), vp(static_cast<std::size_t>(n)), vm(static_cast<std::size_t>(n));
        for (std::size_t p = 0; p + d <= test_points.size(); p += static_cast<std::size_t>(d)) {
            const double* pt = test_points.data() + p;
            basis.derivatives(pt, der.data());
            for (int dd = 0; dd < d; ++dd) {
                double pp[2] = {pt[0], d > 1 ? pt[1] : 0.0};
                double pm[2] = {pt[0], d > 1 ? pt[1] : 0.0};
                pp[dd] += h;
                pm[dd] -= h;
                basis.values(pp, vp.data());
                basis.values(pm, vm.data());
                for (int i = 0; i < n; ++i) {
                    const double fd = (vp[static_cast<std::size_t>(i)] - vm[static_cast<std::size_t>(i)]) / (2 * h);
                    const double scale = std::max(1.0, std::abs(der[static_cast<std::size_t>(i) * d + dd]));
                    CHECK(std::abs(fd - der[static_cast<std::size_t>(i) * d + dd]) / scale <= 1e-6);
                }
            }
        }
    }
}

TEST_CASE("gauss rule basics") {
    auto g1 = gauss_rule(1);
    CHECK(g1.points[0] == doctest::Approx(0.0));
    CHECK(g1.weights[0] == doctest::Approx(2.0));

    auto g2 = gauss_rule(2);
    CHECK(g2.points[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(g2.points[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(g2.weights[0] == doctest::Approx(1.0));
    CHECK(g2.weights[1] == doctest::Approx(1.0));

    auto g3 = gauss_rule(3);
    double quartic = 0.0;
    for (int q = 0; q < 3; ++q) quartic += g3.weights[static_cast<std::size_t>(q)] * std::pow(g3.points[static_cast<std::size_t>(q)], 4);
    CHECK(quartic == doctest::Approx(0.4).epsilon(1e-14));

    CHECK_THROWS(gauss_rule(0));
}

TEST_CASE("triangle rule basics") {
    auto c = triangle_rule(1);
    CHECK(c.n_points() == 1);
    CHECK(c.points[0] == doctest::Approx(1.0 / 3.0));
    CHECK(c.weights[0] == doctest::Approx(0.5));

    for (int deg : {1, 2, 4, 6, 8}) {
        auto rule = triangle_rule(deg);
        CHECK(rule.weight_sum() == doctest::Approx(0.5).epsilon(1e-14));
    }

    auto r2 = triangle_rule(2);
    double xy = 0.0;
    for (int q = 0; q < r2.n_points(); ++q)
        xy += r2.weights[static_cast<std::size_t>(q)] * r2.point(q)[0] * r2.point(q)[1];
    CHECK(xy == doctest::Approx(1.0 / 24.0).epsilon(1e-13));

    CHECK_THROWS(triangle_rule(-1));
    CHECK_THROWS(triangle_rule(1000));
}

TEST_CASE("quadrature exactness on monomials up to declared degree") {
    // 1D: integral of x^a on [-1,1]
    for (int n = 1; n <= 8; ++n) {
        auto rule = gauss_rule(n);
        for (int a = 0; a <= rule.exact_degree; ++a) {
            double sum = 0.0;
            for (int q = 0; q < rule.n_points(); ++q)
                sum += rule.weights[static_cast<std::size_t>(q)] * std::pow(rule.point(q)[0], a);
            const double exact = (a % 2 == 0) ? 2.0 / (a + 1) : 0.0;
            CHECK(std::abs(sum - exact) <= 1e-13 * std::max(1.0, std::abs(exact)));
        }
    }
    // triangle: integral of x^a y^b = a! b! / (a+b+2)!
    auto factorial = [](int m) {
        double f = 1;
        for (int i = 2; i <= m; ++i) f *= i;
        return f;
    };
    for (int deg : {2, 3, 5, 8, 10}) {
        auto rule = triangle_rule(deg);
        for (int a = 0; a <= deg; ++a)
            for (int b = 0; a + b <= deg; ++b) {
                double sum = 0.0;
                for (int q = 0; q < rule.n_points(); ++q)
                    sum += rule.weights[static_cast<std::size_t>(q)] * std::pow(rule.point(q)[0], a) * std::pow(rule.point(q)[1], b);
                const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
                CHECK(std::abs(sum - exact) <= 1e-13 * std::max(1.0, std::abs(exact)));
            }
    }
    // weights sum to the reference measure
    CHECK(gauss_rule(4).weight_sum() == doctest::Approx(reference_measure(ElementKind::Interval)));
    CHECK(tensor_rule(3).weight_sum() == doctest::Approx(reference_measure(ElementKind::Rectangle)));
    CHECK(triangle_rule(6).weight_sum() == doctest::Approx(reference_measure(ElementKind::Triangle)));
}

TEST_SUITE_END();
