#include <doctest.h>

#include "vem/geometry.hpp"
#include "vem/quadrature.hpp"

#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace vem;

namespace {

double factorial(int n)
{
    return std::tgamma(n + 1.0);
}

double integrate(const QuadratureRule& r, const std::function<double(const Vec&)>& f)
{
    double s = 0.0;
    for (Index q = 0; q < r.size(); ++q) s += r.weights(q) * f(r.points.col(q));
    return s;
}

Mat hexagon()
{
    Mat P(2, 6);
    for (int i = 0; i < 6; ++i) {
        const double t = std::numbers::pi / 3.0 * i + 0.2;
        P.col(i) << 0.3 + (1.0 + 0.1 * i) * std::cos(t), -0.2 + 0.8 * std::sin(t);
    }
    return P;
}

} // namespace

TEST_CASE("gauss-jacobi rules integrate the weighted monomials exactly")
{
    for (int alpha = 0; alpha <= 2; ++alpha) {
        for (int n = 1; n <= 8; ++n) {
            const auto r = gauss_jacobi_segment(n, alpha);
            for (int m = 0; m <= 2 * n - 1; ++m) {
                double s = 0.0;
                for (Index q = 0; q < r.size(); ++q) s += r.weights(q) * std::pow(r.points(0, q), m);
                const double exact = factorial(m) * factorial(alpha) / factorial(m + alpha + 1);
                CHECK(s == doctest::Approx(exact).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("gauss-lobatto nodes include the endpoints and have the stated exactness")
{
    for (int k = 1; k <= 8; ++k) {
        const auto r = edge_gauss_lobatto(k);
        CHECK(r.size() == k + 1);
        CHECK(r.points(0, 0) == doctest::Approx(0.0));
        CHECK(r.points(0, k) == doctest::Approx(1.0));
        for (int m = 0; m <= 2 * k - 1; ++m) {
            double s = 0.0;
            for (Index q = 0; q < r.size(); ++q) s += r.weights(q) * std::pow(r.points(0, q), m);
            CHECK(s == doctest::Approx(1.0 / (m + 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("reference simplex rules")
{
    for (int order = 0; order <= 14; ++order) {
        const auto& t = reference_triangle_rule(order);
        CHECK(t.measure() == doctest::Approx(0.5).epsilon(1e-14));
        for (int a = 0; a <= order; ++a)
            for (int b = 0; a + b <= order; ++b) {
                const double s = integrate(t, [&](const Vec& x) { return std::pow(x(0), a) * std::pow(x(1), b); });
                CHECK(s == doctest::Approx(factorial(a) * factorial(b) / factorial(a + b + 2)).epsilon(1e-13));
            }
    }
    for (int order = 0; order <= 12; ++order) {
        const auto& t = reference_tetrahedron_rule(order);
        CHECK(t.measure() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
        for (int a = 0; a <= order; ++a)
            for (int b = 0; a + b <= order; ++b)
                for (int c = 0; a + b + c <= order; ++c) {
                    const double s = integrate(
                        t, [&](const Vec& x) { return std::pow(x(0), a) * std::pow(x(1), b) * std::pow(x(2), c); });
                    const double exact = factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3);
                    CHECK(s == doctest::Approx(exact).epsilon(1e-12));
                }
    }
}

TEST_CASE("unit square: int x^2 y^2 = 1/9")
{
    Mat sq(2, 4);
    sq << 0, 1, 1, 0, 0, 0, 1, 1;
    const auto r = polygon_rule(sq, 4);
    CHECK(integrate(r, [](const Vec& x) { return x(0) * x(0) * x(1) * x(1); }) ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("polygon rule matches the Green's theorem oracle")
{
    const Mat P = hexagon();
    for (int order = 0; order <= 12; ++order) {
        const auto r = polygon_rule(P, order);
        CHECK((r.weights.array() > 0).all());
        for (int a = 0; a <= order; ++a) {
            const int b = order - a;
            const double exact = oracle::green_monomial(P, a, b);
            const double got = integrate(r, [&](const Vec& x) { return std::pow(x(0), a) * std::pow(x(1), b); });
            CHECK(std::abs(got - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
        }
    }
    CHECK(polygon_rule(P, 3).measure() == doctest::Approx(polygon_geometry(P).measure).epsilon(1e-14));
}

TEST_CASE("polyhedron rule matches the divergence theorem oracle")
{
    // Skewed truncated pyramid over a pentagon.
    std::vector<Vec3> pts;
    for (int i = 0; i < 5; ++i) {
        const double t = 2.0 * std::numbers::pi * i / 5.0;
        pts.emplace_back(std::cos(t), 0.7 * std::sin(t), 0.0);
    }
    for (int i = 0; i < 5; ++i) pts.push_back(0.6 * pts[static_cast<std::size_t>(i)] + Vec3(0.2, 0.1, 1.0));
    std::vector<std::vector<int>> faces{{4, 3, 2, 1, 0}, {5, 6, 7, 8, 9}};
    for (int i = 0; i < 5; ++i) faces.push_back({i, (i + 1) % 5, 5 + (i + 1) % 5, 5 + i});
    Mat V(3, 10);
    for (int i = 0; i < 10; ++i) V.col(i) = pts[static_cast<std::size_t>(i)];

    for (int order = 0; order <= 8; ++order) {
        const auto r = polyhedron_rule(V, faces, order);
        CHECK((r.weights.array() > 0).all());
        for (int a = 0; a <= order; ++a)
            for (int b = 0; a + b <= order; ++b) {
                const int c = order - a - b;
                auto mono = [&](const Vec3& x) { return std::pow(x.x(), a) * std::pow(x.y(), b) * std::pow(x.z(), c); };
                const double exact = oracle::divergence_monomial(V, faces, a, b, c);
                const double got = integrate(r, [&](const Vec& x) { return mono(Vec3(x(0), x(1), x(2))); });
                CHECK(std::abs(got - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
            }
    }
}
