#pragma once

#include "vem/common.hpp"
#include "vem/geometry.hpp"
#include "vem/mesh.hpp"

#include <string>
#include <vector>

namespace vem {

/// x = translation + linear * xhat.
struct AffineElementMap {
    Vec translation;
    Mat linear;
    Mat inverse;
    double abs_det = 1.0;
    bool inertial = false;

    static AffineElementMap identity(int dim);
    static AffineElementMap from(const Vec& translation, const Mat& linear, bool inertial);

    int dim() const { return static_cast<int>(translation.size()); }
    Mat apply(const Mat& xhat) const;
    Mat pullback(const Mat& x) const;
};

/// Eigen-decomposition of a symmetric matrix with deterministic conventions:
/// eigenvalues descending, each eigenvector's largest-magnitude component
/// positive, and clusters (|l_i - l_j| <= 1e-12 l_max) replaced by an
/// orthonormal basis obtained from the coordinate axes.
struct SortedEigen {
    Vec values;
    Mat vectors;
};
SortedEigen sorted_eigen(const Mat& S);

/// Inertial map of a polygon (vertex loop 2 x nv) or of a polyhedron
/// (vertices 3 x nv plus face loops). The mapped element pullback(vertices)
/// has centroid 0, diameter 1 and an isotropic diagonal mass matrix.
AffineElementMap build_inertial_map(const Mat& loop);
AffineElementMap build_inertial_map(const Mat& vertices, const std::vector<std::vector<int>>& faces);

/// Map of a 3D face: in-plane frame plus a 2D map acting on frame
/// coordinates, x = frame.origin + frame.axes * map2d.apply(yhat).
struct FaceMap {
    FaceFrame frame;
    AffineElementMap map2d;
};
FaceMap build_face_map(const PolytopalMesh& mesh, int face, bool inertial);

enum class BasisKind { Mon, Ortho, Inrt };
enum class Variant { None, B, F, BF };

struct ApproachConfig {
    BasisKind kind = BasisKind::Mon;
    Variant variant = Variant::None;

    /// "Mon", "Ortho", "Inrt", "Inrt-B", "Inrt-F", "Inrt-BF" (case-insensitive).
    static ApproachConfig parse(const std::string& name);
    std::string name() const;
    /// Throws ConfigError when the variant does not fit the dimension.
    void check(int dim) const;

    bool cell_inertial(int dim) const;
    bool face_inertial() const;
    bool orthonormal() const { return kind == BasisKind::Ortho; }
};

/// Maps selected for one approach on a whole mesh. Face maps depend on the
/// face only, so both owners of a face read the same entry.
struct MeshMaps {
    std::vector<AffineElementMap> cells;
    std::vector<FaceMap> faces; // 3D only
};
MeshMaps select_maps(const PolytopalMesh& mesh, const ApproachConfig& config);
AffineElementMap cell_map(const PolytopalMesh& mesh, int cell, bool inertial);

} // namespace vem
