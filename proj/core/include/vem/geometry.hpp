#pragma once

#include "vem/common.hpp"
#include "vem/mesh.hpp"

#include <vector>

namespace vem {

/// Exact geometric quantities of a polygon or polyhedron.
struct ElementGeometry {
    int dim = 2;
    double measure = 0.0;
    Vec centroid;
    double diameter = 0.0;
    Mat mass;    // H = int (x - c)(x - c)^T
    Mat inertia; // T, built from H
    double anisotropic_ratio = 1.0;
    double edge_ratio = 1.0; // polygons
    double face_ratio = 1.0; // polyhedra
};

/// Max pairwise distance between the columns of `points`.
double diameter(const Mat& points);

/// Inertia tensor from the mass matrix: T = trace(H) I - H in 3D, and the
/// swapped form T11 = H22, T22 = H11, T12 = -H12 in 2D.
Mat inertia_from_mass(const Mat& H);

/// Ratio of extreme eigenvalues of a symmetric positive definite matrix.
double eigen_ratio(const Mat& S);

/// Geometry of a polygon given by its vertex loop (2 x nv, either orientation).
ElementGeometry polygon_geometry(const Mat& loop);

/// Geometry of a polyhedron: vertex coordinates (3 x nv) and face loops
/// indexing its columns (any orientation).
ElementGeometry polyhedron_geometry(const Mat& vertices, const std::vector<std::vector<int>>& faces);

/// Twice the signed area of a 2D loop.
double signed_area2(const Mat& loop);

/// Vertex coordinates of a 2D cell loop (2 x nv).
Mat cell_loop_points(const PolytopalMesh& mesh, int cell);

/// Local description of a 3D cell: its sorted vertices' coordinates and face
/// loops re-indexed into them, oriented outward.
struct LocalPolyhedron {
    std::vector<int> vertex_ids;
    Mat points;
    std::vector<std::vector<int>> faces;
};
LocalPolyhedron local_polyhedron(const PolytopalMesh& mesh, int cell);

ElementGeometry compute_geometry(const PolytopalMesh& mesh, int cell);

/// Orthonormal in-plane frame of a 3D face: x = origin + axes * y, with the
/// first axis along the face edge of lowest global index (from its lower to
/// its higher vertex) and `normal` = right-hand normal of the stored loop.
struct FaceFrame {
    Vec3 origin;
    Eigen::Matrix<double, 3, 2> axes;
    Vec3 normal;
};
FaceFrame face_frame(const PolytopalMesh& mesh, int face);

/// Face loop in frame coordinates (2 x nv), in stored loop order.
Mat face_points_2d(const PolytopalMesh& mesh, int face, const FaceFrame& frame);

/// Geometry of a face, computed in its frame.
ElementGeometry face_geometry(const PolytopalMesh& mesh, int face);

/// Check positive measure, convexity (1e-10 h_E) and face planarity
/// (1e-12 diameter). Throws DegenerateElement, NonConvexElement, NonPlanarFace.
void validate_geometry(const PolytopalMesh& mesh);

} // namespace vem
