#include "vem/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace vem {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x)
{
    double p0 = 1.0, p1 = x;
    if (n == 0) return {1.0, 0.0};
    for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

std::pair<double, double> legendre_value_pair(int n, double x)
{
    // returns P_n(x), P_{n-1}(x)
    double p0 = 1.0, p1 = x;
    if (n == 0) return {1.0, 0.0};
    for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
    }
    return {p1, p0};
}

} // namespace

QuadratureRule gauss_legendre(int n)
{
    if (n < 1) throw SpecError("gauss_legendre: need at least one point");
    QuadratureRule r{Mat(1, n), Vec(n)};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const auto [p, dp] = legendre(n, x);
        (void)p;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.points(0, i) = -x;
        r.points(0, n - 1 - i) = x;
        r.weights(i) = w;
        r.weights(n - 1 - i) = w;
    }
    if (n % 2 == 1) r.points(0, n / 2) = 0.0;
    return r;
}

QuadratureRule segment_gauss(int order)
{
    const int n = std::max(1, (order + 2) / 2);
    QuadratureRule r = gauss_legendre(n);
    r.points = (r.points.array() + 1.0) * 0.5;
    r.weights *= 0.5;
    return r;
}

QuadratureRule gauss_lobatto(int k)
{
    if (k < 1) throw SpecError("gauss_lobatto: k must be >= 1");
    const int n = k + 1;
    QuadratureRule r{Mat(1, n), Vec(n)};
    r.points(0, 0) = -1.0;
    r.points(0, k) = 1.0;
    const double wend = 2.0 / (k * (k + 1.0));
    r.weights(0) = wend;
    r.weights(k) = wend;
    for (int i = 1; i < k; ++i) {
        // roots of P_k' by Newton, ascending order
        double x = -std::cos(std::numbers::pi * i / k);
        for (int it = 0; it < 100; ++it) {
            const auto [pk, pkm1] = legendre_value_pair(k, x);
            const double d1 = k * (pkm1 - x * pk) / (1.0 - x * x);
            const double d2 = (2.0 * x * d1 - k * (k + 1.0) * pk) / (1.0 - x * x);
            const double dx = d1 / d2;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const auto [pk, pkm1] = legendre_value_pair(k, x);
        (void)pkm1;
        r.points(0, i) = x;
        r.weights(i) = wend / (pk * pk);
    }
    // symmetrize to remove Newton round-off asymmetry
    for (int i = 1; i <= (k - 1) / 2; ++i) {
        const double x = 0.5 * (r.points(0, k - i) - r.points(0, i));
        const double w = 0.5 * (r.weights(i) + r.weights(k - i));
        r.points(0, i) = -x;
        r.points(0, k - i) = x;
        r.weights(i) = w;
        r.weights(k - i) = w;
    }
    if (k % 2 == 0) r.points(0, k / 2) = 0.0;
    return r;
}

QuadratureRule edge_gauss_lobatto(int k)
{
    QuadratureRule r = gauss_lobatto(k);
    r.points = (r.points.array() + 1.0) * 0.5;
    r.weights *= 0.5;
    return r;
}

QuadratureRule gauss_jacobi_segment(int n, int alpha)
{
    if (n < 1 || alpha < 0) throw SpecError("gauss_jacobi_segment: bad arguments");
    // Golub-Welsch on [-1, 1] with weight (1 - x)^alpha, then mapped to [0, 1].
    const double a = alpha;
    Mat T = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + a;
        T(k, k) = k == 0 ? -a / (a + 2.0) : -a * a / (s * (s + 2.0));
        if (k + 1 < n) {
            const double m = k + 1.0, t = 2.0 * m + a;
            const double b = std::sqrt(4.0 * m * (m + a) * m * (m + a) / (t * t * (t + 1.0) * (t - 1.0)));
            T(k, k + 1) = T(k + 1, k) = b;
        }
    }
    const Eigen::SelfAdjointEigenSolver<Mat> es(T);
    const double mu0 = std::pow(2.0, a + 1.0) / (a + 1.0); // int_{-1}^{1} (1 - x)^a
    QuadratureRule r{Mat(1, n), Vec(n)};
    for (int i = 0; i < n; ++i) {
        r.points(0, i) = 0.5 * (es.eigenvalues()(i) + 1.0);
        const double v0 = es.eigenvectors()(0, i);
        r.weights(i) = mu0 * v0 * v0 * std::pow(0.5, a + 1.0);
    }
    return r;
}

namespace {

QuadratureRule make_triangle_rule(int order)
{
    // Collapsed coordinates x = u, y = v (1 - u); the Jacobian (1 - u) is the
    // Gauss-Jacobi weight of the u rule.
    const int n = std::max(1, (order + 2) / 2);
    const QuadratureRule gu = gauss_jacobi_segment(n, 1), gv = gauss_jacobi_segment(n, 0);
    QuadratureRule r{Mat(2, n * n), Vec(n * n)};
    Index q = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j, ++q) {
            const double u = gu.points(0, i), v = gv.points(0, j);
            r.points(0, q) = u;
            r.points(1, q) = v * (1.0 - u);
            r.weights(q) = gu.weights(i) * gv.weights(j);
        }
    return r;
}

QuadratureRule make_tetrahedron_rule(int order)
{
    // x = u, y = v (1-u), z = w (1-u)(1-v); Jacobian (1-u)^2 (1-v)
    const int n = std::max(1, (order + 2) / 2);
    const QuadratureRule gu = gauss_jacobi_segment(n, 2), gv = gauss_jacobi_segment(n, 1),
                         gw = gauss_jacobi_segment(n, 0);
    QuadratureRule r{Mat(3, n * n * n), Vec(n * n * n)};
    Index q = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l, ++q) {
                const double u = gu.points(0, i), v = gv.points(0, j), w = gw.points(0, l);
                r.points(0, q) = u;
                r.points(1, q) = v * (1.0 - u);
                r.points(2, q) = w * (1.0 - u) * (1.0 - v);
                r.weights(q) = gu.weights(i) * gv.weights(j) * gw.weights(l);
            }
    return r;
}

template <class Make>
const QuadratureRule& cached_rule(std::map<int, std::unique_ptr<QuadratureRule>>& cache, std::mutex& mtx,
                                  int order, Make make)
{
    order = std::max(order, 0);
    std::lock_guard lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, std::make_unique<QuadratureRule>(make(order))).first;
    return *it->second;
}

} // namespace

const QuadratureRule& reference_triangle_rule(int order)
{
    static std::map<int, std::unique_ptr<QuadratureRule>> cache;
    static std::mutex mtx;
    return cached_rule(cache, mtx, order, make_triangle_rule);
}

const QuadratureRule& reference_tetrahedron_rule(int order)
{
    static std::map<int, std::unique_ptr<QuadratureRule>> cache;
    static std::mutex mtx;
    return cached_rule(cache, mtx, order, make_tetrahedron_rule);
}

QuadratureRule polygon_rule(const Mat& vertices, int order)
{
    const Index nv = vertices.cols();
    if (vertices.rows() != 2 || nv < 3) throw DegenerateElement("polygon_rule: need a 2D polygon with >= 3 vertices");
    const QuadratureRule& ref = reference_triangle_rule(order);
    const Index nq = ref.size();
    const Eigen::Vector2d c = vertices.col(0);
    QuadratureRule r{Mat(2, (nv - 2) * nq), Vec((nv - 2) * nq)};
    Index used = 0;
    for (Index i = 1; i + 1 < nv; ++i) {
        Eigen::Matrix2d J;
        J.col(0) = vertices.col(i) - c;
        J.col(1) = vertices.col(i + 1) - c;
        const double det = std::abs(J.determinant());
        if (det == 0.0) continue;
        r.points.middleCols(used, nq) = (J * ref.points).colwise() + c;
        r.weights.segment(used, nq) = ref.weights * det;
        used += nq;
    }
    r.points.conservativeResize(2, used);
    r.weights.conservativeResize(used);
    return r;
}

QuadratureRule polyhedron_rule(const Mat& vertices, const std::vector<std::vector<int>>& faces, int order)
{
    if (vertices.rows() != 3 || faces.size() < 4) throw DegenerateElement("polyhedron_rule: need a 3D polyhedron");
    const QuadratureRule& ref = reference_tetrahedron_rule(order);
    const Index nq = ref.size();
    // cone from one vertex over the fan triangulations of the faces not containing it
    const int apex = faces.front().front();
    Index ntet = 0;
    for (const auto& f : faces)
        if (std::find(f.begin(), f.end(), apex) == f.end()) ntet += static_cast<Index>(f.size()) - 2;
    const Vec3 c = vertices.col(apex);
    QuadratureRule r{Mat(3, ntet * nq), Vec(ntet * nq)};
    Index used = 0;
    for (const auto& f : faces) {
        if (std::find(f.begin(), f.end(), apex) != f.end()) continue;
        const Vec3 a = vertices.col(f[0]);
        for (std::size_t i = 1; i + 1 < f.size(); ++i) {
            Eigen::Matrix3d J;
            J.col(0) = a - c;
            J.col(1) = vertices.col(f[i]) - c;
            J.col(2) = vertices.col(f[i + 1]) - c;
            const double det = std::abs(J.determinant());
            if (det == 0.0) continue;
            r.points.middleCols(used, nq) = (J * ref.points).colwise() + c;
            r.weights.segment(used, nq) = ref.weights * det;
            used += nq;
        }
    }
    r.points.conservativeResize(3, used);
    r.weights.conservativeResize(used);
    return r;
}

} // namespace vem
