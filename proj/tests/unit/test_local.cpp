#include <doctest.h>

#include "vem/generators.hpp"
#include "vem/geometry.hpp"
#include "vem/monomials.hpp"
#include "vem/multi_index.hpp"
#include "vem/system.hpp"

#include <Eigen/Eigenvalues>

#include "oracles.hpp"

using namespace vem;

namespace {

AdrCoefficients laplace(int d)
{
    AdrCoefficients c;
    c.diffusion = [d](const Vec&) { return Mat(Mat::Identity(d, d)); };
    c.source = [](const Vec&) { return 0.0; };
    return c;
}

using oracle::local_dofs;

QuadratureRule original_rule(const PolytopalMesh& m, int cell, int order)
{
    if (m.dimension == 2) return polygon_rule(cell_loop_points(m, cell), order);
    const auto lp = local_polyhedron(m, cell);
    return polyhedron_rule(lp.points, lp.faces, order);
}

void check_local(const PolytopalMesh& m, const char* approach, int k)
{
    CAPTURE(approach);
    CAPTURE(k);
    const int d = m.dimension;
    const Discretization disc = discretize(m, ApproachConfig::parse(approach), k);
    const MultiIndexMap map(d, k);
    const Vec center = Vec::Constant(d, 0.5);
    const Vec one = interpolate(disc, [](const Vec&) { return 1.0; });

    // Interpolants of all monomials of degree <= k.
    std::vector<Vec> mono;
    for (int a = 0; a < map.size(); ++a)
        mono.push_back(interpolate(disc, [&](const Vec& x) {
            Mat X = x;
            return eval_monomials(map, center, 1.0, X)(a, 0);
        }));

    for (std::size_t c = 0; c < disc.locals.size(); c += 5) {
        const LocalVem& lv = disc.locals[c];
        const LocalSystem ls = local_bilinear(lv, laplace(d));
        const double scale = ls.A.cwiseAbs().maxCoeff();
        CHECK((ls.A - ls.A.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
        CHECK((ls.A * local_dofs(lv, one)).cwiseAbs().maxCoeff() <= 1e-10 * scale);

        const Mat S = stabilization(lv, 1.0);
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.transpose()));
        CHECK(es.eigenvalues().minCoeff() >= -1e-10 * es.eigenvalues().maxCoeff());

        // Consistency: a_h(I p, I q) = int grad p . grad q for p, q in P_k.
        const QuadratureRule r = original_rule(m, lv.cell, 2 * k);
        Mat M(map.size(), lv.ndof());
        for (int a = 0; a < map.size(); ++a) M.row(a) = local_dofs(lv, mono[static_cast<std::size_t>(a)]).transpose();
        for (int a = 0; a < map.size(); ++a)
            CHECK((S * M.row(a).transpose()).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, S.cwiseAbs().maxCoeff()));
        const Mat Ah = M * ls.A * M.transpose();
        Mat Aex = Mat::Zero(map.size(), map.size());
        for (int j = 0; j < d; ++j) {
            const Mat Dj = eval_monomial_derivative(map, center, 1.0, r.points, j);
            Aex += Dj * r.weights.asDiagonal() * Dj.transpose();
        }
        CHECK((Ah - Aex).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, Aex.cwiseAbs().maxCoeff()));
    }
}

} // namespace

TEST_CASE("local Laplace matrix on polygons")
{
    GeneratorSpec spec;
    spec.family = Family::GPGM;
    const auto m = generate(spec);
    for (const char* a : {"Mon", "Ortho", "Inrt"})
        for (int k = 1; k <= 3; ++k) check_local(m, a, k);
}

TEST_CASE("local Laplace matrix on polyhedra")
{
    const auto m = make_rttm(2, 2, 2, 9, 0.3);
    for (const char* a : {"Mon", "Ortho", "Inrt-B", "Inrt-BF"})
        for (int k = 1; k <= 3; ++k) check_local(m, a, k);
}

TEST_CASE("reaction and advection terms are exact on polynomials of degree k-1")
{
    const auto m = make_square_grid(2, 2);
    const int k = 3;
    const Discretization disc = discretize(m, ApproachConfig::parse("Inrt"), k);
    AdrCoefficients c;
    c.diffusion = [](const Vec&) { return Mat(Mat::Zero(2, 2)); };
    c.reaction = [](const Vec&) { return 1.0; };
    c.source = [](const Vec& x) { return x(0); };
    const auto p = [](const Vec& x) { return 1.0 + x(0) * x(1); };
    const auto q = [](const Vec& x) { return x(0) - 2 * x(1); };
    const Vec ip = interpolate(disc, p), iq = interpolate(disc, q);
    double mass = 0.0, load = 0.0;
    for (const LocalVem& lv : disc.locals) {
        const LocalSystem ls = local_bilinear(lv, c);
        mass += local_dofs(lv, iq).dot(ls.A * local_dofs(lv, ip));
        load += local_dofs(lv, iq).dot(ls.rhs);
    }
    // int_0^1 int_0^1 (1 + xy)(x - 2y) = -1/2 + (1/6 - 2/6) = -2/3
    CHECK(mass == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    // int x (x - 2y) = 1/3 - 1/2
    CHECK(load == doctest::Approx(1.0 / 3.0 - 0.5).epsilon(1e-12));

    c.reaction = nullptr;
    c.advection = [](const Vec&) { Vec b(2); b << 1.0, 0.0; return b; };
    double adv = 0.0;
    for (const LocalVem& lv : disc.locals) adv += local_dofs(lv, iq).dot(local_bilinear(lv, c).A * local_dofs(lv, ip));
    // int y (x - 2y) = 1/4 - 2/3
    CHECK(adv == doctest::Approx(0.25 - 2.0 / 3.0).epsilon(1e-12));
}
