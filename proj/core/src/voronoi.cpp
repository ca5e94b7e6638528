#include "vem/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vem {

ConvexPolyhedron ConvexPolyhedron::box(const Vec3& lo, const Vec3& hi)
{
    ConvexPolyhedron p;
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i)
                p.points.emplace_back(i ? hi(0) : lo(0), j ? hi(1) : lo(1), k ? hi(2) : lo(2));
    // vertex id = i + 2j + 4k
    p.faces = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
    return p;
}

Vec3 ConvexPolyhedron::vertex_average() const
{
    std::vector<char> used(points.size(), 0);
    Vec3 s = Vec3::Zero();
    int n = 0;
    for (const auto& f : faces)
        for (int v : f)
            if (!used[static_cast<std::size_t>(v)]) {
                used[static_cast<std::size_t>(v)] = 1;
                s += points[static_cast<std::size_t>(v)];
                ++n;
            }
    return s / std::max(n, 1);
}

namespace {

long long edge_key(int a, int b)
{
    if (a > b) std::swap(a, b);
    return (static_cast<long long>(a) << 32) | static_cast<long long>(static_cast<unsigned>(b));
}

// Order points lying in the plane with normal n counter-clockwise about n.
std::vector<int> sort_around(const std::vector<Vec3>& pts, std::vector<int> ids, const Vec3& n)
{
    Vec3 c = Vec3::Zero();
    for (int v : ids) c += pts[static_cast<std::size_t>(v)];
    c /= static_cast<double>(ids.size());
    const Vec3 u = n.unitOrthogonal();
    const Vec3 w = n.normalized().cross(u);
    std::vector<std::pair<double, int>> key;
    for (int v : ids) {
        const Vec3 r = pts[static_cast<std::size_t>(v)] - c;
        key.emplace_back(std::atan2(r.dot(w), r.dot(u)), v);
    }
    std::sort(key.begin(), key.end());
    std::vector<int> out;
    for (const auto& kv : key) out.push_back(kv.second);
    return out;
}

} // namespace

PlaneSplit split_by_plane(std::vector<Vec3>& points, const std::vector<std::vector<int>>& faces, const Vec3& n,
                          double c, double tol, std::unordered_map<long long, int>& edge_cache)
{
    std::unordered_map<int, int> side;
    bool has_neg = false, has_pos = false;
    for (const auto& f : faces)
        for (int v : f) {
            if (side.count(v)) continue;
            const double d = n.dot(points[static_cast<std::size_t>(v)]) - c;
            const int s = std::abs(d) <= tol ? 0 : (d < 0 ? -1 : 1);
            side[v] = s;
            has_neg |= s < 0;
            has_pos |= s > 0;
        }
    PlaneSplit out;
    if (!has_pos) {
        out.below = faces;
        return out;
    }
    if (!has_neg) {
        out.above = faces;
        return out;
    }
    auto crossing = [&](int a, int b) {
        const long long key = edge_key(a, b);
        auto it = edge_cache.find(key);
        if (it != edge_cache.end()) return it->second;
        const int lo = std::min(a, b), hi = std::max(a, b);
        const Vec3 pa = points[static_cast<std::size_t>(lo)], pb = points[static_cast<std::size_t>(hi)];
        const double da = n.dot(pa) - c, db = n.dot(pb) - c;
        const double t = da / (da - db);
        points.push_back(pa + t * (pb - pa));
        const int id = static_cast<int>(points.size()) - 1;
        edge_cache.emplace(key, id);
        return id;
    };
    std::vector<int> on_plane;
    for (const auto& [v, s] : side)
        if (s == 0) on_plane.push_back(v);
    for (const auto& f : faces) {
        std::vector<int> B, A;
        bool fneg = false, fpos = false;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const int a = f[i], b = f[(i + 1) % f.size()];
            const int sa = side[a], sb = side[b];
            fneg |= sa < 0;
            fpos |= sa > 0;
            if (sa <= 0) B.push_back(a);
            if (sa >= 0) A.push_back(a);
            if (sa * sb < 0) {
                const int x = crossing(a, b);
                B.push_back(x);
                A.push_back(x);
                on_plane.push_back(x);
            }
        }
        if (fneg && B.size() >= 3) out.below.push_back(std::move(B));
        if (fpos && A.size() >= 3) out.above.push_back(std::move(A));
    }
    std::sort(on_plane.begin(), on_plane.end());
    on_plane.erase(std::unique(on_plane.begin(), on_plane.end()), on_plane.end());
    if (on_plane.size() >= 3) {
        std::vector<int> cap = sort_around(points, on_plane, n);
        out.below.push_back(cap);
        std::reverse(cap.begin(), cap.end());
        out.above.push_back(cap);
    }
    return out;
}

std::vector<Vec2> clip_polygon(const std::vector<Vec2>& poly, const Vec2& n, double c)
{
    std::vector<Vec2> out;
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % m];
        const double da = n.dot(a) - c, db = n.dot(b) - c;
        if (da <= 0) out.push_back(a);
        if ((da < 0 && db > 0) || (da > 0 && db < 0)) out.push_back(a + da / (da - db) * (b - a));
    }
    return out;
}

namespace {

// Uniform bucket grid over the seeds, visited in rings of growing radius.
template <int D>
struct SeedGrid {
    using P = Eigen::Matrix<double, D, 1>;
    P lo;
    double cs;
    std::array<int, 3> dims{1, 1, 1};
    std::vector<std::vector<int>> cells;

    SeedGrid(const std::vector<P>& seeds, const P& lo_, const P& hi)
        : lo(lo_)
    {
        const P ext = hi - lo;
        const double vol = ext.prod();
        cs = std::pow(vol / std::max<double>(1.0, static_cast<double>(seeds.size())), 1.0 / D);
        std::size_t total = 1;
        for (int d = 0; d < D; ++d) {
            dims[static_cast<std::size_t>(d)] = std::max(1, static_cast<int>(std::ceil(ext(d) / cs)));
            total *= static_cast<std::size_t>(dims[static_cast<std::size_t>(d)]);
        }
        cells.resize(total);
        for (std::size_t i = 0; i < seeds.size(); ++i) cells[index(cell_of(seeds[i]))].push_back(static_cast<int>(i));
    }
    std::array<int, 3> cell_of(const P& p) const
    {
        std::array<int, 3> c{0, 0, 0};
        for (int d = 0; d < D; ++d)
            c[static_cast<std::size_t>(d)] =
                std::clamp(static_cast<int>(std::floor((p(d) - lo(d)) / cs)), 0, dims[static_cast<std::size_t>(d)] - 1);
        return c;
    }
    std::size_t index(const std::array<int, 3>& c) const
    {
        return static_cast<std::size_t>(c[0] + dims[0] * (c[1] + dims[1] * c[2]));
    }
    int max_ring() const { return *std::max_element(dims.begin(), dims.end()); }
    // seeds in cells at Chebyshev distance exactly r from c
    std::vector<int> ring(const std::array<int, 3>& c, int r) const
    {
        std::vector<int> out;
        const int rz = D == 3 ? r : 0;
        for (int k = c[2] - rz; k <= c[2] + rz; ++k)
            for (int j = c[1] - r; j <= c[1] + r; ++j)
                for (int i = c[0] - r; i <= c[0] + r; ++i) {
                    const int cheb = std::max({std::abs(i - c[0]), std::abs(j - c[1]), std::abs(k - c[2])});
                    if (cheb != r) continue;
                    if (i < 0 || j < 0 || k < 0 || i >= dims[0] || j >= dims[1] || k >= dims[2]) continue;
                    const auto& b = cells[index({i, j, k})];
                    out.insert(out.end(), b.begin(), b.end());
                }
        return out;
    }
};

} // namespace

std::vector<std::vector<Vec2>> voronoi_2d(const std::vector<Vec2>& seeds, const Vec2& lo, const Vec2& hi)
{
    SeedGrid<2> grid(seeds, lo, hi);
    std::vector<std::vector<Vec2>> out(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const Vec2 s = seeds[i];
        std::vector<Vec2> poly{{lo(0), lo(1)}, {hi(0), lo(1)}, {hi(0), hi(1)}, {lo(0), hi(1)}};
        const auto c = grid.cell_of(s);
        for (int r = 0; r <= grid.max_ring(); ++r) {
            auto cand = grid.ring(c, r);
            std::sort(cand.begin(), cand.end(), [&](int a, int b) {
                const double da = (seeds[static_cast<std::size_t>(a)] - s).squaredNorm();
                const double db = (seeds[static_cast<std::size_t>(b)] - s).squaredNorm();
                return da < db || (da == db && a < b);
            });
            for (int j : cand) {
                if (static_cast<std::size_t>(j) == i) continue;
                const Vec2 t = seeds[static_cast<std::size_t>(j)];
                const Vec2 n = t - s;
                poly = clip_polygon(poly, n, n.dot(0.5 * (s + t)));
            }
            double R = 0.0;
            for (const auto& p : poly) R = std::max(R, (p - s).norm());
            if (r * grid.cs >= 2.0 * R) break;
        }
        out[i] = std::move(poly);
    }
    return out;
}

std::vector<ConvexPolyhedron> voronoi_3d(const std::vector<Vec3>& seeds, const Vec3& lo, const Vec3& hi)
{
    SeedGrid<3> grid(seeds, lo, hi);
    const double tol = 1e-13 * (hi - lo).norm();
    std::vector<ConvexPolyhedron> out(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const Vec3 s = seeds[i];
        ConvexPolyhedron poly = ConvexPolyhedron::box(lo, hi);
        const auto c = grid.cell_of(s);
        for (int r = 0; r <= grid.max_ring(); ++r) {
            auto cand = grid.ring(c, r);
            std::sort(cand.begin(), cand.end(), [&](int a, int b) {
                const double da = (seeds[static_cast<std::size_t>(a)] - s).squaredNorm();
                const double db = (seeds[static_cast<std::size_t>(b)] - s).squaredNorm();
                return da < db || (da == db && a < b);
            });
            for (int j : cand) {
                if (static_cast<std::size_t>(j) == i) continue;
                const Vec3 t = seeds[static_cast<std::size_t>(j)];
                const Vec3 n = (t - s).normalized();
                std::unordered_map<long long, int> cache;
                PlaneSplit sp = split_by_plane(poly.points, poly.faces, n, n.dot(0.5 * (s + t)), tol, cache);
                // compact the vertex list
                std::vector<int> remap(poly.points.size(), -1);
                ConvexPolyhedron next;
                for (auto& f : sp.below)
                    for (int& v : f) {
                        if (remap[static_cast<std::size_t>(v)] < 0) {
                            remap[static_cast<std::size_t>(v)] = static_cast<int>(next.points.size());
                            next.points.push_back(poly.points[static_cast<std::size_t>(v)]);
                        }
                        v = remap[static_cast<std::size_t>(v)];
                    }
                next.faces = std::move(sp.below);
                poly = std::move(next);
            }
            double R = 0.0;
            for (const auto& p : poly.points) R = std::max(R, (p - s).norm());
            if (r * grid.cs >= 2.0 * R) break;
        }
        out[i] = std::move(poly);
    }
    return out;
}

long long PointMerger::key(const Eigen::Vector3i& c) const
{
    return (static_cast<long long>(c(0)) * 73856093LL) ^ (static_cast<long long>(c(1)) * 19349663LL) ^
           (static_cast<long long>(c(2)) * 83492791LL);
}

int PointMerger::insert(const Vec& p)
{
    const double bs = 4.0 * tol_;
    Eigen::Vector3i c = Eigen::Vector3i::Zero();
    for (int d = 0; d < dim_; ++d) c(d) = static_cast<int>(std::floor(p(d) / bs));
    const int rz = dim_ == 3 ? 1 : 0;
    for (int dz = -rz; dz <= rz; ++dz)
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                auto it = buckets_.find(key(c + Eigen::Vector3i(dx, dy, dz)));
                if (it == buckets_.end()) continue;
                for (int id : it->second)
                    if ((pts_[static_cast<std::size_t>(id)] - p).cwiseAbs().maxCoeff() <= tol_) return id;
            }
    pts_.push_back(p);
    const int id = static_cast<int>(pts_.size()) - 1;
    buckets_[key(c)].push_back(id);
    return id;
}

Mat PointMerger::points() const
{
    Mat P(dim_, static_cast<Index>(pts_.size()));
    for (std::size_t i = 0; i < pts_.size(); ++i) P.col(static_cast<Index>(i)) = pts_[i];
    return P;
}

} // namespace vem
