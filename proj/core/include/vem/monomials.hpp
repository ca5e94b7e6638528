#pragma once

#include "vem/common.hpp"
#include "vem/multi_index.hpp"

#include <Eigen/Sparse>

namespace vem {

using SpMat = Eigen::SparseMatrix<double>;

/// Values of the scaled monomials ((x - center)/h)^alpha.
/// `points` is dim x np; the result is n_k x np (row = monomial, column = point).
Mat eval_monomials(const MultiIndexMap& map, const Vec& center, double h, const Mat& points);

/// Derivative of every scaled monomial with respect to x_j at `points`.
Mat eval_monomial_derivative(const MultiIndexMap& map, const Vec& center, double h, const Mat& points,
                             int j);

/// Sparse map expressing d m_b / d x_j in the scaled monomials of degree k-1:
///   d m_b / d x_j = sum_c G(c, b) m_c,   G is n_{k-1} x n_k,
/// with G(c, b) = alpha_j / h for c = alpha - e_j.
SpMat monomial_gradient(int dim, int k, int j, double h);

/// Sparse map expressing the Laplacian of every scaled monomial of degree <= k
/// in the scaled monomials of degree k-2 (n_{k-2} x n_k).
SpMat monomial_laplacian(int dim, int k, double h);

} // namespace vem
