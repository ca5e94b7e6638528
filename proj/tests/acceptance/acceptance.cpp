// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit status
// when any of them fails. Tolerances are fixed here.

#include "vem/conditioning.hpp"
#include "vem/experiment.hpp"
#include "vem/generators.hpp"
#include "vem/geometry.hpp"
#include "vem/inertial_map.hpp"
#include "vem/monomials.hpp"
#include "vem/multi_index.hpp"
#include "vem/problems.hpp"
#include "vem/system.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace vem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

struct Check {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& why)
    {
        if (!ok) {
            if (!pass) detail << "; ";
            else detail.str("");
            detail << why;
            pass = false;
        }
    }
};

struct NamedMesh {
    std::string name;
    PolytopalMesh mesh;
};

NamedMesh named(Family f, int band_exp = 1, int resolution = 0)
{
    GeneratorSpec s;
    s.family = f;
    s.band_exp = band_exp;
    s.resolution = resolution;
    return {mesh_label(s), generate(s)};
}

std::vector<NamedMesh> all_families()
{
    std::vector<NamedMesh> out;
    for (int p = 1; p <= 3; ++p) out.push_back(named(Family::CSM, p));
    out.push_back(named(Family::RTRM));
    out.push_back(named(Family::GPGM));
    out.push_back(named(Family::HDHM));
    for (int p = 1; p <= 3; ++p) out.push_back(named(Family::CCM, p));
    out.push_back(named(Family::RTTM));
    out.push_back(named(Family::GPDM));
    return out;
}

ElementGeometry mapped_cell(const PolytopalMesh& m, int c)
{
    const AffineElementMap F = cell_map(m, c, true);
    if (m.dimension == 2) return polygon_geometry(F.pullback(cell_loop_points(m, c)));
    const LocalPolyhedron lp = local_polyhedron(m, c);
    return polyhedron_geometry(F.pullback(lp.points), lp.faces);
}

ElementGeometry mapped_face(const PolytopalMesh& m, int f)
{
    const FaceMap fm = build_face_map(m, f, true);
    return polygon_geometry(fm.map2d.pullback(face_points_2d(m, f, fm.frame)));
}

// 1. Inertial images are centred, of unit diameter and isotropic.
Check mapped_shape(const std::vector<NamedMesh>& meshes)
{
    Check ck;
    double worst_r = 0, worst_off = 0, worst_h = 0, worst_t = 0;
    for (const auto& [name, m] : meshes) {
        const auto t0 = Clock::now();
        auto visit = [&](const ElementGeometry& g) {
            const double r = std::abs(g.anisotropic_ratio - 1.0);
            const Mat off = g.mass - Mat(g.mass.diagonal().asDiagonal());
            const double o = off.cwiseAbs().maxCoeff() / g.mass.trace();
            const double h = std::abs(g.diameter - 1.0);
            worst_r = std::max(worst_r, r);
            worst_off = std::max(worst_off, o);
            worst_h = std::max(worst_h, h);
            ck.require(r <= 1e-10 && o <= 1e-12 && h <= 1e-12, name + " has a badly normalized element");
        };
        for (int c = 0; c < m.n_cells(); ++c) visit(mapped_cell(m, c));
        for (int f = 0; f < m.n_faces(); ++f) visit(mapped_face(m, f));
        const double t = seconds(t0);
        worst_t = std::max(worst_t, t);
        ck.require(t < 5.0, name + " took " + sci(t) + " s");
    }
    if (ck.pass)
        ck.detail << "max |r-1| " << sci(worst_r) << ", offdiag/trace " << sci(worst_off) << ", |h-1| "
                  << sci(worst_h) << ", slowest mesh " << sci(worst_t) << " s";
    return ck;
}

// 2. Measure of the inertial image of regular shapes.
Check reference_measures()
{
    Check ck;
    struct Row {
        NamedMesh mesh;
        double target, tol;
    };
    std::vector<Row> rows;
    rows.push_back({named(Family::CSM, 1), 0.5, 1e-9});
    rows.push_back({named(Family::RTRM), 0.433, 0.001});
    rows.push_back({named(Family::CCM, 3), 0.1925, 0.0005});
    rows.push_back({named(Family::RTTM), 0.1179, 0.0005});
    for (const auto& [nm, target, tol] : rows) {
        double lo = 1e300, hi = -1e300;
        for (int c = 0; c < nm.mesh.n_cells(); ++c) {
            const double v = mapped_cell(nm.mesh, c).measure;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        ck.require(std::abs(lo - target) <= tol && std::abs(hi - target) <= tol,
                   nm.name + " measures in [" + sci(lo) + ", " + sci(hi) + "]");
        ck.detail << (ck.detail.tellp() > 0 ? ", " : "") << nm.name << " " << lo;
    }
    return ck;
}

RunOptions no_cond_a()
{
    RunOptions o;
    o.compute_cond_a = false;
    o.timings = true;
    return o;
}

// 3. Polynomial solutions of degree k are reproduced.
Check patch_tests()
{
    Check ck;
    double worst = 0.0, slowest = 0.0;
    std::vector<NamedMesh> meshes;
    for (int p = 1; p <= 3; ++p) meshes.push_back(named(Family::CSM, p));
    meshes.push_back(named(Family::RTRM));
    meshes.push_back(named(Family::GPGM));
    meshes.push_back(named(Family::HDHM));
    for (const auto& [name, m] : meshes) {
        const double eps = name == "RTRM" ? GeneratorSpec{}.epsilon : 1.0;
        const Problem prob = make_problem("test1", eps);
        for (const char* a : {"Mon", "Ortho", "Inrt"}) {
            const auto t0 = Clock::now();
            const RunRow r = run_case(m, prob, ApproachConfig::parse(a), 4, no_cond_a());
            const double t = seconds(t0);
            slowest = std::max(slowest, t);
            const std::string tag = "test1 " + name + " " + a + " k=4";
            ck.require(r.status == "ok", tag + ": " + r.status);
            if (r.status != "ok") continue;
            worst = std::max({worst, r.err.l2, r.err.h1});
            ck.require(r.err.l2 <= 1e-8 && r.err.h1 <= 1e-8, tag + " errors " + sci(r.err.l2) + "/" + sci(r.err.h1));
            ck.require(t < 120.0, tag + " took " + sci(t) + " s");
        }
    }
    const NamedMesh rttm = named(Family::RTTM, 1, 3);
    ck.require(rttm.mesh.n_cells() <= 200, "RTTM patch mesh too large");
    const Problem t3 = make_problem("test3");
    double worst3 = 0.0;
    for (const char* a : {"Inrt-BF", "Ortho"}) {
        const auto t0 = Clock::now();
        const RunRow r = run_case(rttm.mesh, t3, ApproachConfig::parse(a), 6, no_cond_a());
        const double t = seconds(t0);
        slowest = std::max(slowest, t);
        const std::string tag = std::string("test3 RTTM(") + std::to_string(rttm.mesh.n_cells()) + ") " + a + " k=6";
        ck.require(r.status == "ok", tag + ": " + r.status);
        if (r.status != "ok") continue;
        worst3 = std::max({worst3, r.err.l2, r.err.h1});
        ck.require(r.err.l2 <= 1e-7 && r.err.h1 <= 1e-7, tag + " errors " + sci(r.err.l2) + "/" + sci(r.err.h1));
        ck.require(t < 120.0, tag + " took " + sci(t) + " s");
    }
    if (ck.pass)
        ck.detail << "test1 k=4 worst " << sci(worst) << ", test3 k=6 worst " << sci(worst3) << ", slowest case "
                  << sci(slowest) << " s";
    return ck;
}

// 4. Inertial conditioning does not see the CSM band width.
Check csm_invariance()
{
    Check ck;
    double worst = 0.0;
    const std::vector<PolytopalMesh> meshes{make_csm(1), make_csm(2), make_csm(3)};
    for (int k = 1; k <= 8; ++k) {
        std::vector<ProjectorConditions> pc;
        for (const auto& m : meshes) pc.push_back(projector_conditions(discretize(m, ApproachConfig::parse("Inrt"), k)));
        auto spread = [&](const std::function<double(const ProjectorConditions&)>& get, const char* what) {
            double lo = 1e300, hi = 0;
            for (const auto& c : pc) {
                lo = std::min(lo, get(c));
                hi = std::max(hi, get(c));
            }
            const double s = hi / lo - 1.0;
            worst = std::max(worst, s);
            ck.require(s <= 0.01, std::string(what) + " k=" + std::to_string(k) + " spread " + sci(s));
        };
        spread([](const ProjectorConditions& c) { return c.pinabla; }, "cond(Pi_nabla)");
        spread([](const ProjectorConditions& c) { return c.pi0km1; }, "cond(Pi0_k-1)");
        spread([](const ProjectorConditions& c) { return c.pi0x[0]; }, "cond(Pi0_x1)");
        spread([](const ProjectorConditions& c) { return c.pi0x[1]; }, "cond(Pi0_x2)");
    }
    if (ck.pass) ck.detail << "k=1..8, largest relative spread " << sci(worst);
    return ck;
}

// 5. The inertial basis is better conditioned than plain monomials on
// distorted meshes; the face-only variant stays close to monomials in 3D.
Check ordering()
{
    Check ck;
    std::ostringstream summary;
    auto pinabla = [](const PolytopalMesh& m, const char* a, int k) {
        return projector_conditions(discretize(m, ApproachConfig::parse(a), k));
    };
    // A numerically singular monomial G counts as infinitely ill-conditioned.
    auto mon_pinabla = [&](const PolytopalMesh& m, int k) {
        try {
            return pinabla(m, "Mon", k).pinabla;
        } catch (const SingularG&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    const NamedMesh csm3{"CSM3", make_csm(3)};
    const NamedMesh hdhm = named(Family::HDHM);
    for (const NamedMesh* nm : {&csm3, &hdhm}) {
        for (int k = 5; k <= 8; ++k) {
            const double mon = mon_pinabla(nm->mesh, k);
            const double inrt = pinabla(nm->mesh, "Inrt", k).pinabla;
            ck.require(inrt <= mon / 10.0, nm->name + " k=" + std::to_string(k) + " Inrt " + sci(inrt) + " vs Mon " +
                                               sci(mon));
            if (k == 5 || k == 8)
                summary << nm->name << " k=" << k << " Mon " << sci(mon) << " Inrt " << sci(inrt) << ", ";
        }
    }
    const PolytopalMesh ccm3 = make_ccm(3);
    for (int k = 4; k <= 7; ++k) {
        const auto mon = pinabla(ccm3, "Mon", k);
        const auto bf = pinabla(ccm3, "Inrt-BF", k);
        const auto f = pinabla(ccm3, "Inrt-F", k);
        const std::string tag = "CCM3 k=" + std::to_string(k);
        ck.require(bf.pinabla <= mon.pinabla / 10.0, tag + " Inrt-BF " + sci(bf.pinabla) + " vs Mon " + sci(mon.pinabla));
        auto close = [&](double a, double b, const char* what) {
            ck.require(a <= 10.0 * b && b <= 10.0 * a, tag + " Inrt-F " + what + " " + sci(a) + " vs Mon " + sci(b));
        };
        close(f.pinabla, mon.pinabla, "cond(Pi_nabla)");
        close(f.pi0km1, mon.pi0km1, "cond(Pi0_k-1)");
        for (int j = 0; j < 3; ++j) close(f.pi0x[static_cast<std::size_t>(j)], mon.pi0x[static_cast<std::size_t>(j)], "cond(Pi0_xj)");
        if (k == 4 || k == 7)
            summary << tag << " Mon " << sci(mon.pinabla) << " Inrt-BF " << sci(bf.pinabla) << " Inrt-F "
                    << sci(f.pinabla) << ", ";
    }
    if (ck.pass) {
        std::string s = summary.str();
        ck.detail << s.substr(0, s.size() - 2);
    }
    return ck;
}

// 6. Face projectors depend only on the face map.
Check face_equality(const std::vector<NamedMesh>& meshes)
{
    Check ck;
    double worst = 0.0;
    int count = 0;
    for (const auto& [name, m] : meshes) {
        if (m.dimension != 3) continue;
        ++count;
        for (int k = 1; k <= 4; ++k) {
            const auto bf = projector_conditions(discretize(m, ApproachConfig::parse("Inrt-BF"), k));
            const auto f = projector_conditions(discretize(m, ApproachConfig::parse("Inrt-F"), k));
            const double d1 = std::abs(bf.face_pinabla - f.face_pinabla) / f.face_pinabla;
            const double d2 = std::abs(bf.face_pi0 - f.face_pi0) / f.face_pi0;
            worst = std::max({worst, d1, d2});
            ck.require(d1 <= 1e-9 && d2 <= 1e-9, name + " k=" + std::to_string(k) + " differs by " + sci(std::max(d1, d2)));
        }
    }
    if (ck.pass) ck.detail << count << " meshes, k=1..4, max relative difference " << sci(worst);
    return ck;
}

// 7a. Projections of polynomials against a dense least-squares fit.
double projector_oracle(const PolytopalMesh& m, const char* approach, int k)
{
    const int d = m.dimension;
    const Discretization disc = discretize(m, ApproachConfig::parse(approach), k);
    const MultiIndexMap map(d, k);
    std::mt19937_64 rng(static_cast<unsigned>(k));
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Vec coef(map.size());
    for (Index i = 0; i < coef.size(); ++i) coef(i) = U(rng);
    const Vec center = Vec::Constant(d, 0.5);
    auto values = [&](const Mat& x) -> Vec { return eval_monomials(map, center, 1.0, x).transpose() * coef; };
    const Vec dofs = interpolate(disc, [&](const Vec& x) { return values(x)(0); });
    const int nk = poly_dim(d, k), nm1 = poly_dim(d, k - 1);
    double worst = 0.0;
    for (const LocalVem& lv : disc.locals) {
        const Vec loc = oracle::local_dofs(lv, dofs);
        const QuadratureRule r = lv.rule(2 * k + 2);
        const Mat X = lv.frame.to_physical(r.points);
        const Vec exact = values(X);
        const Mat Q = lv.basis.eval(r.points);
        auto diff = [&](const Vec& c, const Vec& samples, int n, double scale) {
            const Mat V = Q.topRows(n).transpose();
            return (V * c - V * oracle::lsq_fit(lv, r, samples, n)).cwiseAbs().maxCoeff() / scale;
        };
        const double s = exact.cwiseAbs().maxCoeff();
        worst = std::max(worst, diff(lv.proj.pinabla * loc, exact, nk, s));
        worst = std::max(worst, diff(lv.proj.pi0k * loc, exact, nk, s));
        worst = std::max(worst, diff(lv.proj.pi0km1 * loc, exact, nm1, s));
        Mat G(d, X.cols());
        for (int j = 0; j < d; ++j)
            G.row(j) = (eval_monomial_derivative(map, center, 1.0, X, j).transpose() * coef).transpose();
        const Mat gxi = lv.frame.J.transpose() * G;
        const double gs = gxi.cwiseAbs().maxCoeff();
        for (int j = 0; j < d; ++j)
            worst = std::max(worst, diff(lv.proj.pi0d[static_cast<std::size_t>(j)] * loc, gxi.row(j).transpose(), nm1, gs));
    }
    return worst;
}

// 7b. Cell quadrature of raw monomials against the Green/divergence oracle.
double quadrature_oracle(const PolytopalMesh& m, int order, int stride)
{
    double worst = 0.0;
    for (int c = 0; c < m.n_cells(); c += stride) {
        if (m.dimension == 2) {
            const Mat P = cell_loop_points(m, c);
            const QuadratureRule r = polygon_rule(P, order);
            for (int a = 0; a <= order; ++a) {
                const int b = order - a;
                double got = 0.0;
                for (Index q = 0; q < r.size(); ++q)
                    got += r.weights(q) * std::pow(r.points(0, q), a) * std::pow(r.points(1, q), b);
                const double ex = oracle::green_monomial(P, a, b);
                worst = std::max(worst, std::abs(got - ex) / std::abs(ex));
            }
        } else {
            const LocalPolyhedron lp = local_polyhedron(m, c);
            const QuadratureRule r = polyhedron_rule(lp.points, lp.faces, order);
            for (int a = 0; a <= order; ++a)
                for (int b = 0; a + b <= order; ++b) {
                    const int cc = order - a - b;
                    double got = 0.0;
                    for (Index q = 0; q < r.size(); ++q)
                        got += r.weights(q) * std::pow(r.points(0, q), a) * std::pow(r.points(1, q), b) *
                               std::pow(r.points(2, q), cc);
                    const double ex = oracle::divergence_monomial(lp.points, lp.faces, a, b, cc);
                    worst = std::max(worst, std::abs(got - ex) / std::abs(ex));
                }
        }
    }
    return worst;
}

// 7c. Sparse LU against dense LU on small systems.
double solve_oracle(const PolytopalMesh& m, const Problem& p, const char* approach, int k, int* n_free)
{
    const Discretization disc = discretize(m, ApproachConfig::parse(approach), k);
    const GlobalSystem sys = assemble(disc, p.coeffs, p.u);
    *n_free = sys.n_free();
    const Vec xs = solve(sys.A, sys.rhs);
    const Vec xd = Mat(sys.A).fullPivLu().solve(sys.rhs);
    return (xs - xd).cwiseAbs().maxCoeff() / xd.cwiseAbs().maxCoeff();
}

Check oracles()
{
    Check ck;
    const NamedMesh gpgm = named(Family::GPGM), gpdm = named(Family::GPDM), csm1 = named(Family::CSM, 1),
                    csm3 = named(Family::CSM, 3);
    double proj = 0.0;
    auto project = [&](const NamedMesh& nm, const char* a, int k) {
        const double e = projector_oracle(nm.mesh, a, k);
        proj = std::max(proj, e);
        ck.require(e <= 1e-9, "projector " + nm.name + " " + a + " k=" + std::to_string(k) + " off by " + sci(e));
    };
    for (int k = 1; k <= 4; ++k) {
        project(gpgm, "Ortho", k);
        project(gpgm, "Inrt", k);
        project(csm3, "Inrt", k);
        project(csm1, "Mon", k);
    }
    for (int k = 1; k <= 3; ++k) {
        project(gpdm, "Ortho", k);
        project(gpdm, "Inrt-BF", k);
    }
    const NamedMesh cubes{"cube grid", make_cube_grid(3, 3, 3)};
    for (int k = 1; k <= 3; ++k) {
        project(cubes, "Mon", k);
        project(cubes, "Inrt-F", k);
    }

    double quad = 0.0;
    for (int order : {2, 5, 8}) {
        quad = std::max(quad, quadrature_oracle(gpgm.mesh, order, 1));
        quad = std::max(quad, quadrature_oracle(named(Family::HDHM).mesh, order, 97));
        quad = std::max(quad, quadrature_oracle(gpdm.mesh, order, 7));
    }
    ck.require(quad <= 1e-12, "quadrature off by " + sci(quad));

    double sol = 0.0;
    int systems = 0;
    const Problem t2 = make_problem("test2"), t4 = make_problem("test4");
    struct Case {
        const PolytopalMesh* mesh;
        const Problem* prob;
        const char* approach;
        int k;
    };
    const PolytopalMesh rttm = make_rttm(2, 2, 2, 5, 0.3);
    const PolytopalMesh sq = make_square_grid(6, 6);
    for (const Case& c : {Case{&gpgm.mesh, &t2, "Mon", 1}, Case{&gpgm.mesh, &t2, "Inrt", 2}, Case{&sq, &t2, "Ortho", 3},
                          Case{&sq, &t2, "Inrt", 4}, Case{&rttm, &t4, "Inrt-BF", 2}, Case{&rttm, &t4, "Ortho", 1}}) {
        int n = 0;
        const double e = solve_oracle(*c.mesh, *c.prob, c.approach, c.k, &n);
        if (n > 500) continue;
        ++systems;
        sol = std::max(sol, e);
        ck.require(e <= 1e-10, std::string("solve ") + c.approach + " off by " + sci(e));
    }
    ck.require(systems >= 4, "too few systems below 500 DOFs");
    if (ck.pass)
        ck.detail << "projectors " << sci(proj) << ", quadrature " << sci(quad) << ", sparse vs dense " << sci(sol)
                  << " (" << systems << " systems)";
    return ck;
}

// 8. Smooth solution, uniform improvement with the degree.
Check convergence()
{
    Check ck;
    const auto t0 = Clock::now();
    const PolytopalMesh m = make_csm(1);
    const Problem p = make_problem("test2");
    std::vector<double> err;
    for (int k = 1; k <= 6; ++k) {
        const RunRow r = run_case(m, p, ApproachConfig::parse("Inrt"), k, no_cond_a());
        ck.require(r.status == "ok", "k=" + std::to_string(k) + ": " + r.status);
        err.push_back(r.has_errors ? r.err.l2 : 1e300);
    }
    for (int k = 2; k <= 4; ++k)
        ck.require(err[static_cast<std::size_t>(k - 1)] < err[static_cast<std::size_t>(k - 2)],
                   "u_err not decreasing at k=" + std::to_string(k));
    ck.require(err[5] <= 1e-6, "k=6 u_err " + sci(err[5]));
    const double t = seconds(t0);
    ck.require(t < 60.0, "took " + sci(t) + " s");
    if (ck.pass) {
        ck.detail << "u_err";
        for (double e : err) ck.detail << " " << sci(e);
        ck.detail << " (" << sci(t) << " s)";
    }
    return ck;
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<Check()> run;
    };
    std::vector<NamedMesh> meshes;
    const std::vector<Criterion> criteria{
        {"mapped-shape exactness", [&] { return mapped_shape(meshes); }},
        {"reference element measures", reference_measures},
        {"patch tests", patch_tests},
        {"CSM invariance", csm_invariance},
        {"conditioning ordering", ordering},
        {"face-condition equality", [&] { return face_equality(meshes); }},
        {"oracle equivalences", oracles},
        {"convergence sanity", convergence},
    };
    meshes = all_families();

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Check ck;
        try {
            ck = criteria[i].run();
        } catch (const std::exception& e) {
            ck.pass = false;
            ck.detail.str("");
            ck.detail << error_kind(e) << ": " << e.what();
        }
        failed += ck.pass ? 0 : 1;
        std::printf("%s  %zu %s: %s [%.1f s]\n", ck.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                    ck.detail.str().c_str(), seconds(t0));
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
