#pragma once

// Independent reference computations shared by the unit and acceptance tests.
// They only use 1D Gauss-Legendre rules and dense linear algebra.

#include "vem/local_vem.hpp"
#include "vem/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <vector>

namespace vem::oracle {

// (x^(a+1) - x0^(a+1)) / (a+1) in factored form, free of cancellation near x0.
inline double shifted_antiderivative(double x, double x0, int a)
{
    double s = 0.0;
    for (int i = 0; i <= a; ++i) s += std::pow(x, i) * std::pow(x0, a - i);
    return (x - x0) * s / (a + 1);
}

// int_P x^a y^b dA as the boundary integral of F y^b dy, where F is the
// antiderivative in x vanishing at the first vertex.
inline double green_monomial(const Mat& loop, int a, int b)
{
    const auto gl = gauss_legendre(12);
    const double x0 = loop(0, 0);
    double s = 0.0;
    const Index nv = loop.cols();
    for (Index i = 0; i < nv; ++i) {
        const Vec2 p0 = loop.col(i), p1 = loop.col((i + 1) % nv);
        for (Index q = 0; q < gl.size(); ++q) {
            const double t = 0.5 * (gl.points(0, q) + 1.0);
            const Vec2 x = p0 + t * (p1 - p0);
            s += 0.5 * gl.weights(q) * shifted_antiderivative(x.x(), x0, a) * std::pow(x.y(), b) * (p1.y() - p0.y());
        }
    }
    return s;
}

// Integral of g over a planar polygon in 3D by Green's theorem in the face
// plane: with u along the longest edge, v = n x u and
//   G(s, t) = int_0^t g(o + s u + tau v) dtau,
// the integral is -closed integral of G ds. G stays small on thin faces.
inline double face_integral(const std::vector<Vec3>& pts, const std::function<double(const Vec3&)>& g)
{
    const std::size_t nv = pts.size();
    Vec3 n = Vec3::Zero();
    for (std::size_t i = 0; i < nv; ++i) n += pts[i].cross(pts[(i + 1) % nv]);
    n.normalize();
    std::size_t longest = 0;
    for (std::size_t i = 1; i < nv; ++i)
        if ((pts[(i + 1) % nv] - pts[i]).norm() > (pts[(longest + 1) % nv] - pts[longest]).norm()) longest = i;
    const Vec3 o = pts[longest];
    const Vec3 u = (pts[(longest + 1) % nv] - o).normalized();
    const Vec3 v = n.cross(u);
    const auto gl = gauss_legendre(12);
    auto G = [&](double s, double t) {
        double acc = 0.0;
        for (Index q = 0; q < gl.size(); ++q) {
            const double tau = 0.5 * (gl.points(0, q) + 1.0) * t;
            acc += 0.5 * gl.weights(q) * g(o + s * u + tau * v);
        }
        return acc * t;
    };
    double total = 0.0;
    for (std::size_t i = 0; i < nv; ++i) {
        const Vec3 a = pts[i] - o, b = pts[(i + 1) % nv] - o;
        const double s0 = a.dot(u), t0 = a.dot(v), s1 = b.dot(u), t1 = b.dot(v);
        for (Index q = 0; q < gl.size(); ++q) {
            const double lam = 0.5 * (gl.points(0, q) + 1.0);
            total -= 0.5 * gl.weights(q) * G(s0 + lam * (s1 - s0), t0 + lam * (t1 - t0)) * (s1 - s0);
        }
    }
    return total;
}

// int_E f through the divergence theorem with the field e G, where e is the
// unit normal of the largest face, x0 a point of that face and
//   G(x) = int_0^t f(x - (t - s) e) ds,  t = (x - x0).e,
// so that div(e G) = f. Fluxes then scale like the volume even on slivers.
// Faces must be oriented outward.
inline double divergence_integral(const Mat& vertices, const std::vector<std::vector<int>>& faces,
                                  const std::function<double(const Vec3&)>& f)
{
    auto points = [&](const std::vector<int>& face) {
        std::vector<Vec3> fp;
        for (int v : face) fp.push_back(vertices.col(v));
        return fp;
    };
    auto area_normal = [](const std::vector<Vec3>& fp) {
        Vec3 n = Vec3::Zero();
        for (std::size_t i = 0; i < fp.size(); ++i) n += fp[i].cross(fp[(i + 1) % fp.size()]);
        return Vec3(0.5 * n);
    };
    Vec3 e = Vec3::Zero();
    Vec3 x0 = Vec3::Zero();
    for (const auto& face : faces) {
        const auto fp = points(face);
        const Vec3 an = area_normal(fp);
        if (an.norm() > e.norm()) {
            e = an;
            x0 = fp[0];
        }
    }
    e.normalize();
    const auto gl = gauss_legendre(12);
    auto G = [&](const Vec3& x) {
        const double t = (x - x0).dot(e);
        double acc = 0.0;
        for (Index q = 0; q < gl.size(); ++q) {
            const double sig = 0.5 * (gl.points(0, q) + 1.0);
            acc += 0.5 * gl.weights(q) * f(x - t * (1.0 - sig) * e);
        }
        return t * acc;
    };
    double total = 0.0;
    for (const auto& face : faces) {
        const auto fp = points(face);
        const double ne = area_normal(fp).normalized().dot(e);
        if (std::abs(ne) > 0.0) total += ne * face_integral(fp, G);
    }
    return total;
}

inline double divergence_monomial(const Mat& vertices, const std::vector<std::vector<int>>& faces, int a, int b, int c)
{
    return divergence_integral(vertices, faces, [&](const Vec3& x) {
        return std::pow(x.x(), a) * std::pow(x.y(), b) * std::pow(x.z(), c);
    });
}

inline Vec local_dofs(const LocalVem& lv, const Vec& global)
{
    Vec d(lv.ndof());
    for (Index i = 0; i < d.size(); ++i) d(i) = global(lv.dofs[static_cast<std::size_t>(i)]);
    return d;
}

// Weighted least-squares fit of samples by the first n basis functions.
inline Vec lsq_fit(const LocalVem& lv, const QuadratureRule& r, const Vec& samples, int n)
{
    const Mat V = lv.basis.eval(r.points).topRows(n).transpose();
    const Vec sw = r.weights.cwiseSqrt();
    return (sw.asDiagonal() * V).colPivHouseholderQr().solve(sw.asDiagonal() * samples);
}

} // namespace vem::oracle
