#pragma once

#include "vem/common.hpp"
#include "vem/multi_index.hpp"
#include "vem/quadrature.hpp"

namespace vem {

/// Polynomial basis q = C m of degree <= k, where m are the scaled monomials
/// ((x - center)/h)^alpha. C is lower triangular; the identity for plain
/// monomials.
struct BasisRep {
    int dim = 2;
    int degree = 0;
    Vec center;
    double h = 1.0;
    Mat coeffs;

    MultiIndexMap index_map() const { return MultiIndexMap(dim, degree); }
    int size() const { return static_cast<int>(coeffs.rows()); }
    bool is_monomial() const;

    /// Values at points (dim x np): size() x np.
    Mat eval(const Mat& points) const;
    /// d/dx_j of every basis function at points.
    Mat eval_derivative(const Mat& points, int j) const;
};

BasisRep monomial_basis(int dim, int k, const Vec& center, double h);

/// Orthonormalize the scaled monomials with respect to the discrete inner
/// product sum_q w_q a(x_q) b(x_q) given by `rule` (modified Gram-Schmidt,
/// two passes). Throws NumericalBreakdown when a pivot norm falls below
/// 1e-14 times the norm of the monomial being orthogonalized.
BasisRep orthonormalize(int dim, int k, const Vec& center, double h, const QuadratureRule& rule);

} // namespace vem
