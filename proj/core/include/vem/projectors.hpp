#pragma once

#include "vem/basis.hpp"
#include "vem/common.hpp"
#include "vem/quadrature.hpp"

#include <vector>

namespace vem {

/// Boundary quadrature of a local element together with the trace of every
/// local basis function at the quadrature points: trace(q, i) is the value
/// of phi_i (or of a polynomial with the same moments up to degree k) there.
struct BoundaryTrace {
    Mat points;  // dim x nq
    Vec weights; // includes the boundary measure
    Mat normals; // dim x nq, outward unit normals
    Mat trace;   // nq x ndof
};

/// Projection matrices of one element, all expressed in `basis` and in the
/// element's reference coordinates xi.
struct Projectors {
    int dim = 2;
    int k = 1;
    int ndof = 0;
    double measure = 0.0;
    double boundary_measure = 0.0;
    Mat G, B, D, H;
    Mat pinabla; // n_k x ndof
    Mat pi0k;    // n_k x ndof
    Mat pi0km1;  // n_{k-1} x ndof
    std::vector<Mat> pi0d; // n_{k-1} x ndof: projection of d/dxi_j
};

/// Core of the projector construction for a d-dimensional element whose
/// interior moment DOFs are the last n_{k-2} local DOFs. `D` must arrive with
/// every non-interior row filled; interior rows are completed here.
/// Throws SingularG when the equilibrated G is numerically rank deficient.
Projectors compute_projectors(const BasisRep& basis, int k, const QuadratureRule& volume, const BoundaryTrace& boundary,
                              Mat D);

/// Local DOF layout of a polygon: vertex values in loop order, then for edge
/// i (loop vertex i to i+1) its k-1 internal Gauss-Lobatto values in loop
/// direction, then n_{k-2} interior moments.
int polygon_ndof(int nv, int k);

/// Positions of the nodal (vertex and edge) DOFs in local order.
Mat polygon_nodes(const Mat& loop, int k);

/// Boundary trace of a polygon: Gauss-Lobatto nodes of each edge, which are
/// exact for all boundary integrals needed at degree k.
BoundaryTrace polygon_trace(const Mat& loop, int k);

/// Projectors of a polygon given in reference coordinates.
Projectors polygon_projectors(const Mat& loop, const BasisRep& basis, int k);

/// Solve A X = B after row/column equilibration; SingularG on rank loss.
Mat equilibrated_solve(const Mat& A, const Mat& B);

} // namespace vem
