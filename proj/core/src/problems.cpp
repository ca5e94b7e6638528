#include "vem/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace vem {

namespace {

Problem quartic_2d(double eps)
{
    Problem p;
    p.id = "test1";
    p.dim = 2;
    const double c = 16.0 / std::pow(eps, 4);
    p.u = [=](const Vec& x) { return 1.1 + c * x(0) * (eps - x(0)) * x(1) * (eps - x(1)); };
    p.grad = [=](const Vec& x) {
        Vec g(2);
        g << c * (eps - 2 * x(0)) * x(1) * (eps - x(1)), c * x(0) * (eps - x(0)) * (eps - 2 * x(1));
        return g;
    };
    p.coeffs.diffusion = [](const Vec&) { return Mat(Mat::Identity(2, 2)); };
    p.coeffs.source = [=](const Vec& x) { return 2 * c * (x(0) * (eps - x(0)) + x(1) * (eps - x(1))); };
    return p;
}

Problem sextic_3d()
{
    Problem p;
    p.id = "test3";
    p.dim = 3;
    auto b = [](double t) { return t * (1 - t); };
    p.u = [=](const Vec& x) { return 1.7 + 64 * b(x(0)) * b(x(1)) * b(x(2)); };
    p.grad = [=](const Vec& x) {
        Vec g(3);
        g << 64 * (1 - 2 * x(0)) * b(x(1)) * b(x(2)), 64 * b(x(0)) * (1 - 2 * x(1)) * b(x(2)),
            64 * b(x(0)) * b(x(1)) * (1 - 2 * x(2));
        return g;
    };
    p.coeffs.diffusion = [](const Vec&) { return Mat(Mat::Identity(3, 3)); };
    p.coeffs.source = [=](const Vec& x) {
        return 128 * (b(x(1)) * b(x(2)) + b(x(0)) * b(x(2)) + b(x(0)) * b(x(1)));
    };
    return p;
}

// D = (1 + |x|^2) I - x x^T, u = prod sin(pi x_i), gamma = prod x_i;
// b = (x, -y) in 2D and (x, y, -2z) in 3D.
Problem variable_sine(int d)
{
    Problem p;
    p.id = d == 2 ? "test2" : "test4";
    p.dim = d;
    constexpr double pi = std::numbers::pi;
    auto diffusion = [d](const Vec& x) {
        Mat D = (1 + x.squaredNorm()) * Mat::Identity(d, d) - x * x.transpose();
        return D;
    };
    auto advection = [d](const Vec& x) {
        Vec b = x;
        b(d - 1) = -(d - 1) * x(d - 1);
        return b;
    };
    auto reaction = [](const Vec& x) { return x.prod(); };
    p.u = [=](const Vec& x) { return (pi * x.array()).sin().prod(); };
    p.grad = [=](const Vec& x) {
        const Eigen::ArrayXd s = (pi * x.array()).sin(), c = (pi * x.array()).cos();
        Vec g(d);
        for (int i = 0; i < d; ++i) {
            double v = pi * c(i);
            for (int j = 0; j < d; ++j)
                if (j != i) v *= s(j);
            g(i) = v;
        }
        return g;
    };
    auto grad = p.grad;
    auto u = p.u;
    p.coeffs.diffusion = diffusion;
    p.coeffs.advection = advection;
    p.coeffs.reaction = reaction;
    p.coeffs.source = [=](const Vec& x) {
        const Eigen::ArrayXd s = (pi * x.array()).sin(), c = (pi * x.array()).cos();
        Mat hess(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double v = i == j ? -pi * pi * s(i) : pi * pi * c(i) * c(j);
                for (int l = 0; l < d; ++l)
                    if (l != i && l != j) v *= s(l);
                hess(i, j) = v;
            }
        const Vec g = grad(x);
        // div(D grad u) = D : hess u + (div D) . grad u, with div D = (1 - d) x
        const double div = (diffusion(x).array() * hess.array()).sum() + (1 - d) * x.dot(g);
        return -div + advection(x).dot(g) + reaction(x) * u(x);
    };
    return p;
}

} // namespace

Problem make_problem(const std::string& id, double epsilon)
{
    std::string s = id;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "test1") {
        if (!(epsilon > 0)) throw ConfigError("test1 needs a positive epsilon");
        return quartic_2d(epsilon);
    }
    if (s == "test2") return variable_sine(2);
    if (s == "test3") return sextic_3d();
    if (s == "test4") return variable_sine(3);
    throw UnknownProblem("unknown problem '" + id + "'");
}

} // namespace vem
