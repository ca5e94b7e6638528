#pragma once

#include "vem/basis.hpp"
#include "vem/inertial_map.hpp"
#include "vem/mesh.hpp"
#include "vem/projectors.hpp"

#include <functional>
#include <vector>

namespace vem {

/// Reference coordinates of a (mapped) element: x = origin + J xi, where
/// xi = (xhat - c)/h with c, h the centroid and diameter of the mapped
/// element, so the scaled monomials of the mapped element are plain powers
/// of xi.
struct ReferenceFrame {
    Vec origin;
    Mat J;
    Mat Jinv;        // square frames only
    double abs_det = 1.0;
    double hhat = 1.0;   // diameter of the mapped element
    double h_orig = 1.0; // diameter of the original element

    Mat to_physical(const Mat& xi) const { return (J * xi).colwise() + origin; }
};

/// Global numbering: vertices, edge nodes, face moments (3D), cell moments.
struct DofMap {
    int dim = 2;
    int k = 1;
    int edge_offset = 0;
    int face_offset = 0;
    int cell_offset = 0;
    int total = 0;
    int per_edge = 0;
    int per_face = 0;
    int per_cell = 0;

    DofMap() = default;
    DofMap(const PolytopalMesh& mesh, int k);
    /// Local-to-global indices of a cell, in the local DOF order.
    std::vector<int> cell_dofs(const PolytopalMesh& mesh, int cell) const;
};

/// Face data shared by the two cells of a 3D face: x = origin + J eta.
struct FaceData {
    Vec3 origin;
    Eigen::Matrix<double, 3, 2> J;
    double area_scale = 1.0; // physical area per unit eta-area
    double hhat = 1.0;
    Mat loop;                // face loop in eta (stored loop order)
    BasisRep basis;
    Projectors proj;
};

std::vector<FaceData> build_face_data(const PolytopalMesh& mesh, const MeshMaps& maps, const ApproachConfig& config,
                                      int k);

/// Element-local VEM data.
struct LocalVem {
    int cell = -1;
    int dim = 2;
    int k = 1;
    ReferenceFrame frame;
    Mat ref_vertices;                     // element vertices in xi
    std::vector<std::vector<int>> faces;  // 3D: face loops into ref_vertices
    BasisRep basis;
    Projectors proj;
    std::vector<int> dofs;                // global indices

    int ndof() const { return proj.ndof; }
    /// Matrix of the projection of d/dxhat_j onto P_{k-1}.
    Mat pi0x(int j) const { return proj.pi0d[static_cast<std::size_t>(j)] / frame.hhat; }
    QuadratureRule rule(int order) const;
};

ReferenceFrame reference_frame(const PolytopalMesh& mesh, int cell, const AffineElementMap& map);

/// Build bases and projectors of one cell. `faces` is required in 3D.
LocalVem build_local(const PolytopalMesh& mesh, int cell, const AffineElementMap& map, const ApproachConfig& config,
                     int k, const DofMap& dofmap, const std::vector<FaceData>* faces = nullptr);

/// Coefficients of -div(D grad u) + b.grad u + gamma u = f.
struct AdrCoefficients {
    std::function<Mat(const Vec&)> diffusion;
    std::function<Vec(const Vec&)> advection;   // may be empty
    std::function<double(const Vec&)> reaction; // may be empty
    std::function<double(const Vec&)> source;
};

/// dofi-dofi stabilization c * h_E^{d-2} (I - D Pi)^T (I - D Pi).
Mat stabilization(const LocalVem& lv, double c);

struct LocalSystem {
    Mat A;   // A(i, j) = a_h(phi_j, phi_i)
    Vec rhs;
    double stab_constant = 0.0;
};

/// Local matrix and load vector; quadrature of order 2k + 2 in xi.
LocalSystem local_bilinear(const LocalVem& lv, const AdrCoefficients& coeffs);

} // namespace vem
