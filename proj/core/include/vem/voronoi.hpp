#pragma once

#include "vem/common.hpp"

#include <unordered_map>
#include <vector>

namespace vem {

/// Convex polyhedron with local vertex ids; face loops are oriented outward.
struct ConvexPolyhedron {
    std::vector<Vec3> points;
    std::vector<std::vector<int>> faces;

    static ConvexPolyhedron box(const Vec3& lo, const Vec3& hi);
    Vec3 vertex_average() const;
};

/// Split a convex polyhedron (faces given as loops of ids into `points`) by
/// the plane n.x = c. Vertices with |n.x - c| <= tol count as on the plane.
/// Crossing vertices are appended to `points`, shared through `edge_cache`
/// (keyed by the sorted pair of end ids) so that neighbouring cells split
/// by the same plane reuse them. Returns the face loops of the parts with
/// n.x <= c and n.x >= c; a part is empty when the cell lies on one side.
struct PlaneSplit {
    std::vector<std::vector<int>> below;
    std::vector<std::vector<int>> above;
};
PlaneSplit split_by_plane(std::vector<Vec3>& points, const std::vector<std::vector<int>>& faces, const Vec3& n,
                          double c, double tol, std::unordered_map<long long, int>& edge_cache);

/// Keep the part of a convex polygon (counter-clockwise) with n.x <= c.
std::vector<Vec2> clip_polygon(const std::vector<Vec2>& poly, const Vec2& n, double c);

/// Voronoi cells of `seeds` restricted to the box [lo, hi]; cells are
/// counter-clockwise polygons in 2D and outward-oriented polyhedra in 3D.
std::vector<std::vector<Vec2>> voronoi_2d(const std::vector<Vec2>& seeds, const Vec2& lo, const Vec2& hi);
std::vector<ConvexPolyhedron> voronoi_3d(const std::vector<Vec3>& seeds, const Vec3& lo, const Vec3& hi);

/// Merges points closer than `tol` (in max norm) into a single index.
class PointMerger {
public:
    PointMerger(int dim, double tol) : dim_(dim), tol_(tol) {}
    int insert(const Vec& p);
    Mat points() const;
    int size() const { return static_cast<int>(pts_.size()); }

private:
    int dim_;
    double tol_;
    std::vector<Vec> pts_;
    std::unordered_map<long long, std::vector<int>> buckets_;
    long long key(const Eigen::Vector3i& c) const;
};

} // namespace vem
