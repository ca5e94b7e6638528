#include "vem/system.hpp"

#include "vem/geometry.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <sstream>

namespace vem {

Discretization discretize(const PolytopalMesh& mesh, const ApproachConfig& config, int k)
{
    config.check(mesh.dimension);
    Discretization disc;
    disc.mesh = &mesh;
    disc.config = config;
    disc.k = k;
    disc.maps = select_maps(mesh, config);
    disc.dofmap = DofMap(mesh, k);
    if (mesh.dimension == 3) disc.faces = build_face_data(mesh, disc.maps, config, k);
    disc.locals.reserve(static_cast<std::size_t>(mesh.n_cells()));
    for (int c = 0; c < mesh.n_cells(); ++c)
        disc.locals.push_back(build_local(mesh, c, disc.maps.cells[static_cast<std::size_t>(c)], config, k, disc.dofmap,
                                          mesh.dimension == 3 ? &disc.faces : nullptr));
    return disc;
}

Vec interpolate(const Discretization& disc, const ScalarField& u)
{
    const PolytopalMesh& mesh = *disc.mesh;
    const DofMap& dm = disc.dofmap;
    const int k = disc.k;
    Vec out = Vec::Zero(dm.total);
    for (int v = 0; v < mesh.n_vertices(); ++v) out(v) = u(mesh.point(v));
    const QuadratureRule gl = edge_gauss_lobatto(k);
    for (int e = 0; e < mesh.n_edges(); ++e) {
        const Vec a = mesh.point(mesh.edges[static_cast<std::size_t>(e)][0]);
        const Vec b = mesh.point(mesh.edges[static_cast<std::size_t>(e)][1]);
        for (int j = 1; j < k; ++j) out(dm.edge_offset + e * dm.per_edge + j - 1) = u(a + gl.points(0, j) * (b - a));
    }
    if (dm.per_face > 0) {
        for (int f = 0; f < mesh.n_faces(); ++f) {
            const FaceData& fd = disc.faces[static_cast<std::size_t>(f)];
            const QuadratureRule r = polygon_rule(fd.loop, 2 * k + 4);
            const Mat X = (fd.J * r.points).colwise() + fd.origin;
            const Mat Q = fd.basis.eval(r.points).topRows(dm.per_face);
            Vec w(r.size());
            for (Index q = 0; q < r.size(); ++q) w(q) = r.weights(q) * u(X.col(q));
            out.segment(dm.face_offset + f * dm.per_face, dm.per_face) = Q * w / r.weights.sum();
        }
    }
    if (dm.per_cell > 0) {
        for (const LocalVem& lv : disc.locals) {
            const QuadratureRule r = lv.rule(2 * k + 4);
            const Mat X = lv.frame.to_physical(r.points);
            const Mat Q = lv.basis.eval(r.points).topRows(dm.per_cell);
            Vec w(r.size());
            for (Index q = 0; q < r.size(); ++q) w(q) = r.weights(q) * u(X.col(q));
            out.segment(dm.cell_offset + lv.cell * dm.per_cell, dm.per_cell) = Q * w / r.weights.sum();
        }
    }
    return out;
}

Vec GlobalSystem::expand(const Vec& reduced) const
{
    Vec full = boundary_values;
    for (int i = 0; i < n_free(); ++i) full(free_dofs[static_cast<std::size_t>(i)]) = reduced(i);
    return full;
}

std::vector<bool> boundary_mask(const PolytopalMesh& mesh, const DofMap& dm)
{
    std::vector<bool> mask(static_cast<std::size_t>(dm.total), false);
    for (int v = 0; v < mesh.n_vertices(); ++v)
        if (mesh.boundary_vertex[static_cast<std::size_t>(v)]) mask[static_cast<std::size_t>(v)] = true;
    for (int e = 0; e < mesh.n_edges(); ++e)
        if (mesh.boundary_edge[static_cast<std::size_t>(e)])
            for (int j = 0; j < dm.per_edge; ++j) mask[static_cast<std::size_t>(dm.edge_offset + e * dm.per_edge + j)] = true;
    if (mesh.dimension == 3)
        for (int f = 0; f < mesh.n_faces(); ++f)
            if (mesh.boundary_face[static_cast<std::size_t>(f)])
                for (int a = 0; a < dm.per_face; ++a)
                    mask[static_cast<std::size_t>(dm.face_offset + f * dm.per_face + a)] = true;
    return mask;
}

GlobalSystem assemble(const Discretization& disc, const AdrCoefficients& coeffs, const ScalarField& dirichlet)
{
    const PolytopalMesh& mesh = *disc.mesh;
    const int n = disc.dofmap.total;
    GlobalSystem sys;
    sys.n_total = n;
    const std::vector<bool> mask = boundary_mask(mesh, disc.dofmap);
    sys.free_index.assign(static_cast<std::size_t>(n), -1);
    for (int g = 0; g < n; ++g)
        if (!mask[static_cast<std::size_t>(g)]) {
            sys.free_index[static_cast<std::size_t>(g)] = static_cast<int>(sys.free_dofs.size());
            sys.free_dofs.push_back(g);
        }
    const Vec full_bc = interpolate(disc, dirichlet);
    sys.boundary_values = Vec::Zero(n);
    for (int g = 0; g < n; ++g)
        if (mask[static_cast<std::size_t>(g)]) sys.boundary_values(g) = full_bc(g);

    const int nf = sys.n_free();
    sys.rhs = Vec::Zero(nf);
    std::vector<Eigen::Triplet<double>> trip;
    for (const LocalVem& lv : disc.locals) {
        const LocalSystem ls = local_bilinear(lv, coeffs);
        const Index m = lv.ndof();
        for (Index i = 0; i < m; ++i) {
            const int ri = sys.free_index[static_cast<std::size_t>(lv.dofs[static_cast<std::size_t>(i)])];
            if (ri < 0) continue;
            sys.rhs(ri) += ls.rhs(i);
            for (Index j = 0; j < m; ++j) {
                const int gj = lv.dofs[static_cast<std::size_t>(j)];
                const int rj = sys.free_index[static_cast<std::size_t>(gj)];
                if (rj >= 0)
                    trip.emplace_back(ri, rj, ls.A(i, j));
                else
                    sys.rhs(ri) -= ls.A(i, j) * sys.boundary_values(gj);
            }
        }
    }
    sys.A.resize(nf, nf);
    sys.A.setFromTriplets(trip.begin(), trip.end());
    sys.A.makeCompressed();
    return sys;
}

namespace {

double sparse_inf_norm(const SparseMatrix& A)
{
    Vec rows = Vec::Zero(A.rows());
    for (int c = 0; c < A.outerSize(); ++c)
        for (SparseMatrix::InnerIterator it(A, c); it; ++it) rows(it.row()) += std::abs(it.value());
    return rows.size() ? rows.maxCoeff() : 0.0;
}

} // namespace

Vec solve(const SparseMatrix& A, const Vec& b)
{
    if (A.rows() == 0) return Vec();
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) {
        std::ostringstream os;
        os << "sparse factorization failed: " << lu.lastErrorMessage();
        throw SingularSystem(os.str());
    }
    Vec x = lu.solve(b);
    if (lu.info() != Eigen::Success || !x.allFinite()) throw SingularSystem("sparse solve produced no finite solution");
    const double res = (A * x - b).lpNorm<Eigen::Infinity>();
    const double scale = sparse_inf_norm(A) * x.lpNorm<Eigen::Infinity>() + b.lpNorm<Eigen::Infinity>();
    if (res > 1e-10 * scale) {
        std::ostringstream os;
        os << "residual check failed: " << res << " > 1e-10 * " << scale;
        throw SingularSystem(os.str());
    }
    return x;
}

ErrorNorms compute_errors(const Discretization& disc, const Vec& dofs, const ScalarField& u, const VectorField& grad)
{
    const PolytopalMesh& mesh = *disc.mesh;
    const int k = disc.k, d = mesh.dimension;
    const int nm1 = poly_dim(d, k - 1);
    double num0 = 0, num1 = 0, den0 = 0, den1 = 0;
    for (const LocalVem& lv : disc.locals) {
        Vec loc(lv.ndof());
        for (Index i = 0; i < loc.size(); ++i) loc(i) = dofs(lv.dofs[static_cast<std::size_t>(i)]);
        const Vec c0 = lv.proj.pi0k * loc;
        Mat cg(nm1, d);
        for (int j = 0; j < d; ++j) cg.col(j) = lv.proj.pi0d[static_cast<std::size_t>(j)] * loc;

        const QuadratureRule r = lv.rule(2 * k + 6);
        const Mat X = lv.frame.to_physical(r.points);
        const Mat Q = lv.basis.eval(r.points);
        const Vec uh = Q.transpose() * c0;
        const Mat gxi = Q.topRows(nm1).transpose() * cg; // nq x d, gradient in xi
        for (Index q = 0; q < r.size(); ++q) {
            const Vec x = X.col(q);
            const double w = r.weights(q) * lv.frame.abs_det;
            const double e0 = u(x) - uh(q);
            const Vec gh = lv.frame.Jinv.transpose() * gxi.row(q).transpose();
            num0 += w * e0 * e0;
            num1 += w * (grad(x) - gh).squaredNorm();
        }

        QuadratureRule ro;
        if (d == 2) {
            ro = polygon_rule(cell_loop_points(mesh, lv.cell), 2 * k + 6);
        } else {
            const LocalPolyhedron lp = local_polyhedron(mesh, lv.cell);
            ro = polyhedron_rule(lp.points, lp.faces, 2 * k + 6);
        }
        for (Index q = 0; q < ro.size(); ++q) {
            const Vec x = ro.points.col(q);
            const double uv = u(x);
            den0 += ro.weights(q) * uv * uv;
            den1 += ro.weights(q) * grad(x).squaredNorm();
        }
    }
    ErrorNorms e;
    e.l2 = den0 > 0 ? std::sqrt(num0 / den0) : std::sqrt(num0);
    e.h1 = den1 > 0 ? std::sqrt(num1 / den1) : std::sqrt(num1);
    return e;
}

} // namespace vem
