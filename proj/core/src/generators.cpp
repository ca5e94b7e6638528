#include "vem/generators.hpp"

#include "vem/geometry.hpp"
#include "vem/voronoi.hpp"

#include <algorithm>
#include <cctype>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace vem {

namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace

Family parse_family(const std::string& name)
{
    const std::string n = lower(name);
    if (n == "hdhm") return Family::HDHM;
    if (n == "rtrm") return Family::RTRM;
    if (n == "gpgm") return Family::GPGM;
    if (n == "csm") return Family::CSM;
    if (n == "rttm") return Family::RTTM;
    if (n == "gpdm") return Family::GPDM;
    if (n == "ccm") return Family::CCM;
    if (n == "square" || n == "squares") return Family::SquareGrid;
    if (n == "cube" || n == "cubes") return Family::CubeGrid;
    throw SpecError("unknown mesh family '" + name + "'");
}

std::string family_name(Family f)
{
    switch (f) {
    case Family::HDHM: return "HDHM";
    case Family::RTRM: return "RTRM";
    case Family::GPGM: return "GPGM";
    case Family::CSM: return "CSM";
    case Family::RTTM: return "RTTM";
    case Family::GPDM: return "GPDM";
    case Family::CCM: return "CCM";
    case Family::SquareGrid: return "SQUARE";
    case Family::CubeGrid: return "CUBE";
    }
    return "?";
}

int family_dimension(Family f)
{
    switch (f) {
    case Family::RTTM:
    case Family::GPDM:
    case Family::CCM:
    case Family::CubeGrid: return 3;
    default: return 2;
    }
}

std::string mesh_label(const GeneratorSpec& spec)
{
    std::string s = family_name(spec.family);
    if (spec.family == Family::CSM || spec.family == Family::CCM) s += std::to_string(spec.band_exp);
    return s;
}

namespace {

PolytopalMesh tensor_quads(const std::vector<double>& xs, const std::vector<double>& ys)
{
    const int nx = static_cast<int>(xs.size()) - 1, ny = static_cast<int>(ys.size()) - 1;
    Mat V(2, (nx + 1) * (ny + 1));
    auto id = [&](int i, int j) { return i + (nx + 1) * j; };
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) V.col(id(i, j)) << xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)];
    std::vector<std::vector<int>> cells;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    return make_polygonal_mesh(std::move(V), std::move(cells));
}

PolytopalMesh tensor_hexes(const std::vector<double>& xs, const std::vector<double>& ys, const std::vector<double>& zs)
{
    const int nx = static_cast<int>(xs.size()) - 1, ny = static_cast<int>(ys.size()) - 1,
              nz = static_cast<int>(zs.size()) - 1;
    Mat V(3, (nx + 1) * (ny + 1) * (nz + 1));
    auto id = [&](int i, int j, int k) { return i + (nx + 1) * (j + (ny + 1) * k); };
    for (int k = 0; k <= nz; ++k)
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i <= nx; ++i)
                V.col(id(i, j, k)) << xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)], zs[static_cast<std::size_t>(k)];
    const ConvexPolyhedron ref = ConvexPolyhedron::box(Vec3::Zero(), Vec3::Ones());
    std::vector<std::vector<std::vector<int>>> cells;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                int c[8];
                for (int b = 0; b < 8; ++b) c[b] = id(i + (b & 1), j + ((b >> 1) & 1), k + ((b >> 2) & 1));
                std::vector<std::vector<int>> faces;
                for (const auto& f : ref.faces) {
                    std::vector<int> loop;
                    for (int v : f) loop.push_back(c[v]);
                    faces.push_back(loop);
                }
                cells.push_back(std::move(faces));
            }
    return make_polyhedral_mesh(std::move(V), cells);
}

std::vector<double> uniform(int n, double a = 0.0, double b = 1.0)
{
    std::vector<double> x(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) x[static_cast<std::size_t>(i)] = a + (b - a) * i / n;
    return x;
}

std::vector<std::vector<int>> tet_faces(const Mat& V, int a, int b, int c, int d)
{
    Eigen::Matrix3d J;
    J.col(0) = V.col(b) - V.col(a);
    J.col(1) = V.col(c) - V.col(a);
    J.col(2) = V.col(d) - V.col(a);
    if (J.determinant() < 0) std::swap(b, c);
    return {{a, c, b}, {a, b, d}, {a, d, c}, {b, c, d}};
}

// Merge a polygon soup given by coordinates into a mesh.
PolytopalMesh polygon_soup(const std::vector<std::vector<Vec2>>& polys, double tol)
{
    PointMerger pm(2, tol);
    std::vector<std::vector<int>> loops;
    for (const auto& poly : polys) {
        std::vector<int> loop;
        for (const auto& p : poly) {
            const int id = pm.insert(p);
            if (loop.empty() || loop.back() != id) loop.push_back(id);
        }
        while (loop.size() > 1 && loop.front() == loop.back()) loop.pop_back();
        if (loop.size() >= 3) loops.push_back(std::move(loop));
    }
    return make_polygonal_mesh(pm.points(), std::move(loops));
}

// Remove vertices not referenced by any cell and renumber.
void compact_soup(std::vector<Vec3>& pts, std::vector<std::vector<std::vector<int>>>& cells)
{
    std::vector<int> remap(pts.size(), -1);
    std::vector<Vec3> out;
    for (auto& c : cells)
        for (auto& f : c)
            for (int& v : f) {
                if (remap[static_cast<std::size_t>(v)] < 0) {
                    remap[static_cast<std::size_t>(v)] = static_cast<int>(out.size());
                    out.push_back(pts[static_cast<std::size_t>(v)]);
                }
                v = remap[static_cast<std::size_t>(v)];
            }
    pts = std::move(out);
}

Mat to_mat(const std::vector<Vec3>& pts)
{
    Mat V(3, static_cast<Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) V.col(static_cast<Index>(i)) = pts[i];
    return V;
}

double cross2(const Vec2& a, const Vec2& b) { return a(0) * b(1) - a(1) * b(0); }

} // namespace

PolytopalMesh make_square_grid(int nx, int ny, double lx, double ly)
{
    if (nx < 1 || ny < 1) throw SpecError("grid resolution must be positive");
    return tensor_quads(uniform(nx, 0.0, lx), uniform(ny, 0.0, ly));
}

PolytopalMesh make_cube_grid(int nx, int ny, int nz)
{
    if (nx < 1 || ny < 1 || nz < 1) throw SpecError("grid resolution must be positive");
    return tensor_hexes(uniform(nx), uniform(ny), uniform(nz));
}

PolytopalMesh make_csm(int p)
{
    if (p < 1 || p > 3) throw SpecError("CSM band exponent must be 1, 2 or 3");
    std::vector<double> ys;
    for (int j = 0; j <= 10; ++j) {
        ys.push_back(j / 10.0);
        if (j == 4) ys.push_back(0.4 + std::pow(10.0, -1 - p));
    }
    return tensor_quads(uniform(10), ys);
}

PolytopalMesh make_ccm(int p)
{
    if (p < 1 || p > 3) throw SpecError("CCM band exponent must be 1, 2 or 3");
    std::vector<double> xs;
    for (int i = 0; i <= 5; ++i) {
        xs.push_back(i / 5.0);
        if (i == 2) xs.push_back(0.4 + 0.2 * std::pow(10.0, -p));
    }
    return tensor_hexes(xs, uniform(5), uniform(5));
}

PolytopalMesh make_rtrm(double eps, int n)
{
    if (!(eps > 0.0)) throw SpecError("RTRM domain edge must be positive");
    if (n < 1) throw SpecError("RTRM resolution must be positive");
    Mat V(2, (n + 1) * (n + 1));
    auto id = [&](int i, int j) { return i + (n + 1) * j; };
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) V.col(id(i, j)) << eps * i / n, eps * j / n;
    std::vector<std::vector<int>> cells;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            cells.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    return make_polygonal_mesh(std::move(V), std::move(cells));
}

PolytopalMesh make_rttm(int nx, int ny, int nz, std::uint64_t seed, double jitter)
{
    if (nx < 1 || ny < 1 || nz < 1) throw SpecError("RTTM resolution must be positive");
    if (jitter < 0 || jitter >= 0.5) throw SpecError("RTTM jitter must lie in [0, 0.5)");
    Mat V(3, (nx + 1) * (ny + 1) * (nz + 1));
    auto id = [&](int i, int j, int k) { return i + (nx + 1) * (j + (ny + 1) * k); };
    for (int k = 0; k <= nz; ++k)
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i <= nx; ++i) V.col(id(i, j, k)) << static_cast<double>(i) / nx, static_cast<double>(j) / ny,
                                               static_cast<double>(k) / nz;
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<std::array<int, 4>> tets;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                for (const auto& p : perms) {
                    int c[3] = {i, j, k};
                    std::array<int, 4> ids;
                    ids[0] = id(c[0], c[1], c[2]);
                    for (int s = 0; s < 3; ++s) {
                        ++c[p[s]];
                        ids[static_cast<std::size_t>(s) + 1] = id(c[0], c[1], c[2]);
                    }
                    tets.push_back(ids);
                }

    if (jitter > 0) {
        // random moves of interior vertices that keep every incident
        // tetrahedron's orientation and at least 10% of its volume
        auto volume = [&](const std::array<int, 4>& t) {
            Eigen::Matrix3d J;
            for (int s = 0; s < 3; ++s) J.col(s) = V.col(t[static_cast<std::size_t>(s) + 1]) - V.col(t[0]);
            return J.determinant();
        };
        std::vector<std::vector<std::size_t>> vtets(static_cast<std::size_t>(V.cols()));
        std::vector<double> vol0(tets.size());
        for (std::size_t t = 0; t < tets.size(); ++t) {
            vol0[t] = volume(tets[t]);
            for (int v : tets[t]) vtets[static_cast<std::size_t>(v)].push_back(t);
        }
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        const Vec3 h(1.0 / nx, 1.0 / ny, 1.0 / nz);
        for (int k = 1; k < nz; ++k)
            for (int j = 1; j < ny; ++j)
                for (int i = 1; i < nx; ++i) {
                    const int v = id(i, j, k);
                    const Vec3 d(U(rng), U(rng), U(rng));
                    const Vec3 old = V.col(v);
                    V.col(v) = old + jitter * d.cwiseProduct(h);
                    for (std::size_t t : vtets[static_cast<std::size_t>(v)])
                        if (volume(tets[t]) / vol0[t] < 0.1) {
                            V.col(v) = old;
                            break;
                        }
                }
    }
    std::vector<std::vector<std::vector<int>>> cells;
    for (const auto& t : tets) cells.push_back(tet_faces(V, t[0], t[1], t[2], t[3]));
    return make_polyhedral_mesh(std::move(V), cells);
}

PolytopalMesh make_hdhm(int nx, int ny, std::uint64_t seed)
{
    if (nx < 2 || ny < 2) throw SpecError("HDHM resolution must be at least 2");
    std::vector<Vec2> seeds;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) seeds.emplace_back((i + 0.25 + 0.5 * (j % 2)) / nx, (j + 0.5) / ny);
    PolytopalMesh m = polygon_soup(voronoi_2d(seeds, Vec2(0, 0), Vec2(1, 1)), 1e-10);

    // smooth global distortion; its Jacobian 1 + 2 pi a sin(2 pi (x + y))
    // nearly degenerates along two diagonal bands
    const double amp = 0.15;
    for (int v = 0; v < m.n_vertices(); ++v) {
        const double x = m.vertices(0, v), y = m.vertices(1, v);
        const double s = amp * std::sin(2 * std::numbers::pi * x) * std::sin(2 * std::numbers::pi * y);
        m.vertices(0, v) = x + s;
        m.vertices(1, v) = y + s;
    }

    // convexity-preserving random perturbation of interior vertices
    std::vector<std::vector<int>> vcells(static_cast<std::size_t>(m.n_vertices()));
    for (int c = 0; c < m.n_cells(); ++c)
        for (int v : m.cells[static_cast<std::size_t>(c)].vertices) vcells[static_cast<std::size_t>(v)].push_back(c);
    std::vector<std::vector<int>> vnbrs(static_cast<std::size_t>(m.n_vertices()));
    for (const auto& e : m.edges) {
        vnbrs[static_cast<std::size_t>(e[0])].push_back(e[1]);
        vnbrs[static_cast<std::size_t>(e[1])].push_back(e[0]);
    }
    auto convex_ok = [&](int c) {
        const auto& loop = m.cells[static_cast<std::size_t>(c)].vertices;
        const std::size_t n = loop.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = m.vertices.col(loop[(i + n - 1) % n]);
            const Vec2 b = m.vertices.col(loop[i]);
            const Vec2 d = m.vertices.col(loop[(i + 1) % n]);
            const Vec2 e1 = b - a, e2 = d - b;
            if (cross2(e1, e2) < 1e-2 * e1.norm() * e2.norm()) return false;
        }
        return true;
    };
    // moves may not push a cell past these shape bounds (unless it already was)
    const double max_aniso = 600.0, max_edge_ratio = 20.0;
    auto shape = [&](int c) {
        const ElementGeometry g = polygon_geometry(cell_loop_points(m, c));
        return std::max(g.anisotropic_ratio / max_aniso, g.edge_ratio / max_edge_ratio);
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const int passes = 4;
    std::vector<double> before;
    for (int pass = 0; pass < passes; ++pass)
        for (int v = 0; v < m.n_vertices(); ++v) {
            const double r1 = U(rng), r2 = U(rng);
            if (m.boundary_vertex[static_cast<std::size_t>(v)]) continue;
            double L = INFINITY;
            for (int w : vnbrs[static_cast<std::size_t>(v)]) L = std::min(L, (m.vertices.col(w) - m.vertices.col(v)).norm());
            const double rad = 0.45 * L * std::sqrt(r1), th = 2.0 * std::numbers::pi * r2;
            const auto& inc = vcells[static_cast<std::size_t>(v)];
            before.clear();
            for (int c : inc) before.push_back(shape(c));
            const Vec2 old = m.vertices.col(v);
            m.vertices.col(v) = old + rad * Vec2(std::cos(th), std::sin(th));
            bool ok = true;
            for (std::size_t i = 0; i < inc.size() && ok; ++i)
                ok = convex_ok(inc[i]) && shape(inc[i]) <= std::max(1.0, before[i]);
            if (!ok) m.vertices.col(v) = old;
        }
    return m;
}

PolytopalMesh make_gpgm(int n_seeds, int n_cuts, std::uint64_t seed)
{
    if (n_seeds < 2 || n_cuts < 0) throw SpecError("invalid GPGM parameters");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<Vec2> seeds;
    for (int i = 0; i < n_seeds; ++i) {
        const double x = U(rng), y = U(rng);
        seeds.emplace_back(x, y);
    }
    const PolytopalMesh base = polygon_soup(voronoi_2d(seeds, Vec2(0, 0), Vec2(1, 1)), 1e-10);
    std::vector<Vec2> pts;
    for (int v = 0; v < base.n_vertices(); ++v) pts.push_back(base.vertices.col(v));
    std::vector<std::vector<int>> loops;
    for (const auto& c : base.cells) loops.push_back(c.vertices);

    // Insert x between a and b in the loop (other than `skip`) holding the
    // directed edge b -> a; this creates a hanging node in that neighbour.
    auto insert_in_neighbour = [&](std::size_t skip, int a, int b, int x) {
        for (std::size_t c = 0; c < loops.size(); ++c) {
            if (c == skip) continue;
            auto& l = loops[c];
            for (std::size_t i = 0; i < l.size(); ++i)
                if (l[i] == b && l[(i + 1) % l.size()] == a) {
                    l.insert(l.begin() + static_cast<std::ptrdiff_t>(i) + 1, x);
                    return;
                }
        }
    };
    auto loop_points = [&](const std::vector<int>& l) {
        Mat P(2, static_cast<Index>(l.size()));
        for (std::size_t i = 0; i < l.size(); ++i) P.col(static_cast<Index>(i)) = pts[static_cast<std::size_t>(l[i])];
        return P;
    };
    // Cut cell c by the line through p with normal n; false if the line
    // passes too close to a vertex, misses the cell or leaves a piece
    // smaller than min_area.
    const double min_area = 1e-6;
    auto cut = [&](std::size_t c, const Vec2& p, const Vec2& n) {
        const auto l = loops[c];
        const double h = diameter(loop_points(l));
        std::vector<double> d;
        for (int v : l) d.push_back(n.dot(pts[static_cast<std::size_t>(v)] - p));
        for (double x : d)
            if (std::abs(x) < 1e-5 * h) return false;
        std::vector<std::size_t> cross;
        for (std::size_t i = 0; i < l.size(); ++i)
            if ((d[i] < 0) != (d[(i + 1) % l.size()] < 0)) cross.push_back(i);
        if (cross.size() != 2) return false;
        Vec2 xp[2];
        for (int s = 0; s < 2; ++s) {
            const std::size_t i = cross[static_cast<std::size_t>(s)], j = (i + 1) % l.size();
            const Vec2 a = pts[static_cast<std::size_t>(l[i])], b = pts[static_cast<std::size_t>(l[j])];
            xp[s] = a + d[i] / (d[i] - d[j]) * (b - a);
        }
        // area of the piece on the negative side, by the shoelace formula
        const std::size_t i0 = cross[0], i1 = cross[1];
        std::vector<Vec2> piece{xp[0]};
        for (std::size_t i = i0 + 1; i <= i1; ++i) piece.push_back(pts[static_cast<std::size_t>(l[i])]);
        piece.push_back(xp[1]);
        double a2 = 0;
        for (std::size_t i = 0; i < piece.size(); ++i) {
            const Vec2& p0 = piece[i];
            const Vec2& p1 = piece[(i + 1) % piece.size()];
            a2 += p0(0) * p1(1) - p0(1) * p1(0);
        }
        const double total = std::abs(signed_area2(loop_points(l)));
        if (std::min(std::abs(a2), total - std::abs(a2)) < 2 * min_area) return false;
        int xs[2];
        for (int s = 0; s < 2; ++s) {
            const std::size_t i = cross[static_cast<std::size_t>(s)], j = (i + 1) % l.size();
            pts.push_back(xp[s]);
            xs[s] = static_cast<int>(pts.size()) - 1;
            insert_in_neighbour(c, l[i], l[j], xs[s]);
        }
        std::vector<int> A, B;
        A.push_back(xs[0]);
        for (std::size_t i = i0 + 1; i <= i1; ++i) A.push_back(l[i]);
        A.push_back(xs[1]);
        B.push_back(xs[1]);
        for (std::size_t i = i1 + 1; i < l.size() + i0 + 1; ++i) B.push_back(l[i % l.size()]);
        B.push_back(xs[0]);
        loops[c] = A;
        loops.push_back(B);
        return true;
    };

    int done = 0, attempts = 0;
    while (done < n_cuts && attempts < 100 * (n_cuts + 1)) {
        ++attempts;
        const std::size_t c = static_cast<std::size_t>(U(rng) * static_cast<double>(loops.size())) % loops.size();
        const auto& l = loops[c];
        const double kind = U(rng);
        bool ok = false;
        if (kind < 0.5) {
            // straight cut through a random interior point
            const Mat P = loop_points(l);
            const Vec2 ctr = P.rowwise().mean();
            const double s = U(rng), th = std::numbers::pi * U(rng);
            const Vec2 p = ctr + 0.5 * s * (P.col(0) - ctr);
            ok = cut(c, p, Vec2(std::cos(th), std::sin(th)));
        } else {
            // cut off a small corner, leaving hanging nodes on the neighbours
            const std::size_t n = l.size();
            const std::size_t i = static_cast<std::size_t>(U(rng) * static_cast<double>(n)) % n;
            const Vec2 v = pts[static_cast<std::size_t>(l[i])];
            const Vec2 u = pts[static_cast<std::size_t>(l[(i + n - 1) % n])];
            const Vec2 w = pts[static_cast<std::size_t>(l[(i + 1) % n])];
            const double t = std::pow(10.0, -1.0 - 1.2 * U(rng));
            const double t1 = t * (1.0 + U(rng)), t2 = t * (1.0 + U(rng));
            const Vec2 p1 = v + t1 * (u - v), p2 = v + t2 * (w - v);
            const Vec2 dir = p2 - p1;
            ok = cut(c, p1 + 0.5 * dir, Vec2(-dir(1), dir(0)).normalized());
        }
        if (ok) ++done;
    }
    Mat V(2, static_cast<Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) V.col(static_cast<Index>(i)) = pts[i];
    return make_polygonal_mesh(std::move(V), std::move(loops));
}

PolytopalMesh make_gpdm(int n_seeds, int n_cuts, std::uint64_t seed)
{
    if (n_seeds < 2 || n_cuts < 0) throw SpecError("invalid GPDM parameters");
    for (int attempt = 0; attempt < 16; ++attempt) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt) * 7919u);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        std::vector<Vec3> seeds;
        for (int i = 0; i < n_seeds; ++i) {
            const double x = U(rng), y = U(rng), z = U(rng);
            seeds.emplace_back(x, y, z);
        }
        const auto vor = voronoi_3d(seeds, Vec3::Zero(), Vec3::Ones());
        PointMerger pm(3, 1e-10);
        std::vector<std::vector<std::vector<int>>> cells;
        for (const auto& poly : vor) {
            std::vector<std::vector<int>> faces;
            for (const auto& f : poly.faces) {
                std::vector<int> loop;
                for (int v : f) {
                    const int id = pm.insert(poly.points[static_cast<std::size_t>(v)]);
                    if (loop.empty() || loop.back() != id) loop.push_back(id);
                }
                while (loop.size() > 1 && loop.front() == loop.back()) loop.pop_back();
                if (loop.size() >= 3) faces.push_back(std::move(loop));
            }
            cells.push_back(std::move(faces));
        }
        std::vector<Vec3> pts;
        for (int v = 0; v < pm.size(); ++v) pts.push_back(pm.points().col(v));

        // global plane cuts: every crossed cell is split, producing aligned faces
        int done = 0, tries = 0;
        while (done < n_cuts && tries < 200) {
            ++tries;
            const double a = 2.0 * std::numbers::pi * U(rng), b = std::acos(2.0 * U(rng) - 1.0);
            const Vec3 n(std::sin(b) * std::cos(a), std::sin(b) * std::sin(a), std::cos(b));
            const Vec3 p(0.2 + 0.6 * U(rng), 0.2 + 0.6 * U(rng), 0.2 + 0.6 * U(rng));
            const double c = n.dot(p);
            bool near = false;
            for (const auto& q : pts)
                if (std::abs(n.dot(q) - c) < 1e-3) near = true;
            if (near) continue;
            std::unordered_map<long long, int> cache;
            std::vector<std::vector<std::vector<int>>> next;
            for (const auto& cell : cells) {
                PlaneSplit sp = split_by_plane(pts, cell, n, c, 0.0, cache);
                if (!sp.below.empty()) next.push_back(std::move(sp.below));
                if (!sp.above.empty()) next.push_back(std::move(sp.above));
            }
            cells = std::move(next);
            ++done;
        }
        compact_soup(pts, cells);
        try {
            PolytopalMesh m = make_polyhedral_mesh(to_mat(pts), cells);
            validate_geometry(m);
            return m;
        } catch (const Error&) {
            continue; // degenerate Voronoi configuration; retry with derived seed
        }
    }
    throw SpecError("GPDM generation failed for this seed");
}

PolytopalMesh generate(const GeneratorSpec& spec)
{
    const int r = spec.resolution;
    switch (spec.family) {
    case Family::CSM: return make_csm(spec.band_exp);
    case Family::CCM: return make_ccm(spec.band_exp);
    case Family::RTRM: return make_rtrm(spec.epsilon, r > 0 ? r : 9);
    case Family::RTTM: return r > 0 ? make_rttm(r, r, r, spec.seed, 0.35) : make_rttm(5, 5, 4, spec.seed, 0.35);
    case Family::HDHM: return r > 0 ? make_hdhm(r, r + r / 7, spec.seed) : make_hdhm(70, 80, spec.seed);
    case Family::GPGM: return make_gpgm(r > 0 ? r : 50, r > 0 ? (3 * r) / 5 : 30, spec.seed);
    case Family::GPDM: return make_gpdm(r > 0 ? r : 180, 3, spec.seed);
    case Family::SquareGrid: return make_square_grid(r > 0 ? r : 4, r > 0 ? r : 4);
    case Family::CubeGrid: return make_cube_grid(r > 0 ? r : 3, r > 0 ? r : 3, r > 0 ? r : 3);
    }
    throw SpecError("unsupported family");
}

} // namespace vem
