#pragma once

#include "vem/local_vem.hpp"

#include <Eigen/Sparse>

#include <functional>
#include <vector>

namespace vem {

using SparseMatrix = Eigen::SparseMatrix<double>;

using ScalarField = std::function<double(const Vec&)>;
using VectorField = std::function<Vec(const Vec&)>;

/// All element-local data of one (mesh, approach, k) combination.
struct Discretization {
    const PolytopalMesh* mesh = nullptr;
    ApproachConfig config;
    int k = 1;
    MeshMaps maps;
    DofMap dofmap;
    std::vector<FaceData> faces; // 3D only
    std::vector<LocalVem> locals;
};

Discretization discretize(const PolytopalMesh& mesh, const ApproachConfig& config, int k);

/// DOF vector (global numbering) of the virtual interpolant of u.
Vec interpolate(const Discretization& disc, const ScalarField& u);

/// Dirichlet-reduced global system. `free_index[g]` is the reduced row of
/// global DOF g, or -1 on the boundary.
struct GlobalSystem {
    SparseMatrix A;
    Vec rhs;
    std::vector<int> free_index;
    std::vector<int> free_dofs;
    Vec boundary_values; // full length, zero on free DOFs
    int n_total = 0;

    int n_free() const { return static_cast<int>(free_dofs.size()); }
    /// Full DOF vector from a reduced solution.
    Vec expand(const Vec& reduced) const;
};

/// Boundary-DOF mask of the mesh for the given DOF layout.
std::vector<bool> boundary_mask(const PolytopalMesh& mesh, const DofMap& dofmap);

GlobalSystem assemble(const Discretization& disc, const AdrCoefficients& coeffs, const ScalarField& dirichlet);

/// Sparse LU solve with a residual check
/// ||A u - b|| <= 1e-10 (||A|| ||u|| + ||b||) in the max norm.
Vec solve(const SparseMatrix& A, const Vec& b);

struct ErrorNorms {
    double l2 = 0.0; // ||u - Pi0_k u_h|| / ||u||
    double h1 = 0.0; // ||grad u - Pi0_{k-1} grad u_h|| / ||grad u||
};

/// Relative errors; numerators on the reference elements (order 2k+6),
/// denominators on the original elements.
ErrorNorms compute_errors(const Discretization& disc, const Vec& dofs, const ScalarField& u, const VectorField& grad);

} // namespace vem
