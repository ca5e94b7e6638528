#include "vem/basis.hpp"

#include "vem/monomials.hpp"

#include <cmath>

namespace vem {

bool BasisRep::is_monomial() const
{
    return coeffs.isIdentity(0.0);
}

Mat BasisRep::eval(const Mat& points) const
{
    const Mat m = eval_monomials(index_map(), center, h, points);
    if (is_monomial()) return m;
    return coeffs * m;
}

Mat BasisRep::eval_derivative(const Mat& points, int j) const
{
    const Mat m = eval_monomial_derivative(index_map(), center, h, points, j);
    if (is_monomial()) return m;
    return coeffs * m;
}

BasisRep monomial_basis(int dim, int k, const Vec& center, double h)
{
    const int n = poly_dim(dim, k);
    return BasisRep{dim, k, center, h, Mat::Identity(n, n)};
}

BasisRep orthonormalize(int dim, int k, const Vec& center, double h, const QuadratureRule& rule)
{
    const MultiIndexMap map(dim, k);
    const int n = map.size();
    const Mat m = eval_monomials(map, center, h, rule.points);
    const Vec sw = rule.weights.array().sqrt();
    // rows: sampled functions weighted by sqrt(w), so the inner product is a dot product
    Mat V = m.array().rowwise() * sw.transpose().array();
    Mat C = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i) {
        const double initial = V.row(i).norm();
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < i; ++j) {
                const double r = V.row(i).dot(V.row(j));
                V.row(i) -= r * V.row(j);
                C.row(i) -= r * C.row(j);
            }
        const double nrm = V.row(i).norm();
        if (!(nrm >= 1e-14 * initial) || nrm == 0.0)
            throw NumericalBreakdown("orthonormalize: pivot norm " + std::to_string(nrm) + " at basis function " +
                                     std::to_string(i));
        V.row(i) /= nrm;
        C.row(i) /= nrm;
    }
    // C is lower triangular up to round-off in the upper part; clean it
    C.triangularView<Eigen::StrictlyUpper>().setZero();
    return BasisRep{dim, k, center, h, C};
}

} // namespace vem
