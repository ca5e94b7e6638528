#pragma once

#include "vem/common.hpp"

#include <vector>

namespace vem {

/// Points (dim x n) and positive weights; the weights sum to the measure of
/// the integration region.
struct QuadratureRule {
    Mat points;
    Vec weights;

    int dim() const { return static_cast<int>(points.rows()); }
    Index size() const { return weights.size(); }
    double measure() const { return weights.sum(); }
};

/// n-point Gauss-Legendre rule on [-1, 1] (exact to degree 2n-1).
QuadratureRule gauss_legendre(int n);

/// Gauss-Legendre rule on [0, 1] exact for polynomials of degree <= order.
QuadratureRule segment_gauss(int order);

/// (k+1)-point Gauss-Lobatto rule on [-1, 1]: both endpoints plus the k-1
/// roots of P_k'. Exact to degree 2k-1.
QuadratureRule gauss_lobatto(int k);

/// Gauss-Lobatto nodes and weights mapped to [0, 1] (weights sum to 1),
/// nodes ascending.
QuadratureRule edge_gauss_lobatto(int k);

/// n-point Gauss-Jacobi rule on [0, 1] for the weight (1 - u)^alpha.
QuadratureRule gauss_jacobi_segment(int n, int alpha);
/// Collapsed-coordinate Gauss rules on the reference triangle
/// {(0,0),(1,0),(0,1)} and tetrahedron {0, e1, e2, e3}, exact to `order`.
const QuadratureRule& reference_triangle_rule(int order);
const QuadratureRule& reference_tetrahedron_rule(int order);

/// Rule on a convex polygon (vertices 2 x nv, any orientation), built from
/// the fan of triangles at the first vertex.
QuadratureRule polygon_rule(const Mat& vertices, int order);

/// Rule on a convex polyhedron: cone from the first vertex of the first face
/// over the fan triangulations of the remaining faces.
QuadratureRule polyhedron_rule(const Mat& vertices, const std::vector<std::vector<int>>& faces, int order);

} // namespace vem
