#include "vem/projectors.hpp"

#include "vem/monomials.hpp"

#include <Eigen/LU>

#include <cmath>

namespace vem {

Mat equilibrated_solve(const Mat& A, const Mat& B)
{
    const Index n = A.rows();
    Vec r(n), c(n);
    for (Index i = 0; i < n; ++i) {
        const double m = A.row(i).cwiseAbs().maxCoeff();
        r(i) = m > 0 ? 1.0 / m : 1.0;
    }
    const Mat Ar = r.asDiagonal() * A;
    for (Index j = 0; j < n; ++j) {
        const double m = Ar.col(j).cwiseAbs().maxCoeff();
        c(j) = m > 0 ? 1.0 / m : 1.0;
    }
    const Mat As = Ar * c.asDiagonal();
    Eigen::FullPivLU<Mat> lu(As);
    lu.setThreshold(1e-15);
    if (!lu.isInvertible())
        throw SingularG("projector system is numerically singular (rank " + std::to_string(lu.rank()) + " of " +
                        std::to_string(n) + ")");
    return c.asDiagonal() * lu.solve(r.asDiagonal() * B);
}

namespace {

Mat spd_solve(const Mat& H, const Mat& R)
{
    const Vec s = H.diagonal().cwiseSqrt().cwiseInverse();
    const Mat Hs = s.asDiagonal() * H * s.asDiagonal();
    Eigen::LDLT<Mat> ldlt(Hs);
    return s.asDiagonal() * ldlt.solve(s.asDiagonal() * R);
}

} // namespace

Projectors compute_projectors(const BasisRep& basis, int k, const QuadratureRule& volume, const BoundaryTrace& bd, Mat D)
{
    const int dim = basis.dim;
    const int n = poly_dim(dim, k), nm1 = poly_dim(dim, k - 1), nm2 = poly_dim(dim, k - 2);
    const int ndof = static_cast<int>(bd.trace.cols());
    const int ioff = ndof - nm2;
    const Mat& C = basis.coeffs;

    Projectors p;
    p.dim = dim;
    p.k = k;
    p.ndof = ndof;
    p.measure = volume.weights.sum();
    p.boundary_measure = bd.weights.sum();

    const Mat Q = basis.eval(volume.points);
    const Mat Qw = Q * volume.weights.asDiagonal();
    p.H = Qw * Q.transpose();
    p.H = 0.5 * (p.H + p.H.transpose());
    Mat G = Mat::Zero(n, n);
    for (int j = 0; j < dim; ++j) {
        const Mat dQ = basis.eval_derivative(volume.points, j);
        G += dQ * volume.weights.asDiagonal() * dQ.transpose();
    }

    // boundary values of the basis and its normal derivative
    const Mat Qb = basis.eval(bd.points);
    Mat dnQb = Mat::Zero(n, bd.points.cols());
    for (int j = 0; j < dim; ++j)
        dnQb += basis.eval_derivative(bd.points, j) * bd.normals.row(j).asDiagonal();
    const Mat Tw = bd.weights.asDiagonal() * bd.trace; // nq x ndof

    Mat B = dnQb * Tw;
    Mat Csub_inv;
    if (nm2 > 0) {
        Csub_inv = C.topLeftCorner(nm2, nm2).triangularView<Eigen::Lower>().solve(Mat::Identity(nm2, nm2));
        const Mat lap = monomial_laplacian(dim, k, basis.h);
        const Mat lambda = C * lap.transpose() * Csub_inv; // Delta q_i = sum_g lambda(i,g) q_g
        B.middleCols(ioff, nm2) -= p.measure * lambda;
    }
    // P0 row
    if (k == 1) {
        G.row(0) = Qb * bd.weights / p.boundary_measure;
        B.row(0) = bd.weights.transpose() * bd.trace / p.boundary_measure;
    } else {
        G.row(0) = Q * volume.weights / p.measure;
        B.row(0).setZero();
        B(0, ioff) = 1.0 / C(0, 0);
    }
    p.G = G;
    p.B = B;
    p.pinabla = equilibrated_solve(G, B);

    // D interior rows: (1/|E|) int q_j q_a
    for (int a = 0; a < nm2; ++a) D.row(ioff + a) = p.H.row(a) / p.measure;
    p.D = std::move(D);

    // L2 projections through the enhancement property
    Mat R(n, ndof);
    R.topRows(nm2).setZero();
    for (int a = 0; a < nm2; ++a) R(a, ioff + a) = p.measure;
    R.bottomRows(n - nm2) = (p.H * p.pinabla).bottomRows(n - nm2);
    p.pi0k = spd_solve(p.H, R);
    const Mat Hm1 = p.H.topLeftCorner(nm1, nm1);
    p.pi0km1 = spd_solve(Hm1, R.topRows(nm1));

    p.pi0d.resize(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) {
        Mat E = Qb.topRows(nm1) * bd.normals.row(j).asDiagonal() * Tw;
        if (nm2 > 0) {
            const Mat grad = monomial_gradient(dim, k - 1, j, basis.h); // n_{k-2} x n_{k-1}
            const Mat delta = C.topLeftCorner(nm1, nm1) * grad.transpose() * Csub_inv;
            E.middleCols(ioff, nm2) -= p.measure * delta;
        }
        p.pi0d[static_cast<std::size_t>(j)] = spd_solve(Hm1, E);
    }
    return p;
}

int polygon_ndof(int nv, int k)
{
    return nv * k + poly_dim(2, k - 2);
}

Mat polygon_nodes(const Mat& loop, int k)
{
    const Index nv = loop.cols();
    const QuadratureRule gl = edge_gauss_lobatto(k);
    Mat X(2, nv * k);
    X.leftCols(nv) = loop;
    for (Index i = 0; i < nv; ++i) {
        const Vec a = loop.col(i), b = loop.col((i + 1) % nv);
        for (int j = 1; j < k; ++j) X.col(nv + i * (k - 1) + (j - 1)) = a + gl.points(0, j) * (b - a);
    }
    return X;
}

BoundaryTrace polygon_trace(const Mat& loop, int k)
{
    const Index nv = loop.cols();
    const int ndof = polygon_ndof(static_cast<int>(nv), k);
    const QuadratureRule gl = edge_gauss_lobatto(k);
    double area2 = 0.0;
    for (Index i = 0; i < nv; ++i) {
        const Index j = (i + 1) % nv;
        area2 += loop(0, i) * loop(1, j) - loop(1, i) * loop(0, j);
    }
    const double orient = area2 > 0 ? 1.0 : -1.0;
    BoundaryTrace bd;
    const Index nq = nv * (k + 1);
    bd.points.resize(2, nq);
    bd.weights.resize(nq);
    bd.normals.resize(2, nq);
    bd.trace = Mat::Zero(nq, ndof);
    for (Index i = 0; i < nv; ++i) {
        const Vec2 a = loop.col(i), b = loop.col((i + 1) % nv);
        const Vec2 t = b - a;
        const double len = t.norm();
        const Vec2 nrm = orient * Vec2(t(1), -t(0)) / len;
        for (int j = 0; j <= k; ++j) {
            const Index q = i * (k + 1) + j;
            bd.points.col(q) = a + gl.points(0, j) * t;
            bd.weights(q) = len * gl.weights(j);
            bd.normals.col(q) = nrm;
            Index dof;
            if (j == 0) dof = i;
            else if (j == k) dof = (i + 1) % nv;
            else dof = nv + i * (k - 1) + (j - 1);
            bd.trace(q, dof) = 1.0;
        }
    }
    return bd;
}

Projectors polygon_projectors(const Mat& loop, const BasisRep& basis, int k)
{
    const int nv = static_cast<int>(loop.cols());
    const int ndof = polygon_ndof(nv, k);
    const QuadratureRule vol = polygon_rule(loop, 2 * k);
    const BoundaryTrace bd = polygon_trace(loop, k);
    Mat D(ndof, basis.size());
    const Mat X = polygon_nodes(loop, k);
    D.topRows(X.cols()) = basis.eval(X).transpose();
    return compute_projectors(basis, k, vol, bd, std::move(D));
}

} // namespace vem
