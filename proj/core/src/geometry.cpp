#include "vem/geometry.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace vem {

double diameter(const Mat& points)
{
    double d2 = 0.0;
    for (Index i = 0; i < points.cols(); ++i)
        for (Index j = i + 1; j < points.cols(); ++j)
            d2 = std::max(d2, (points.col(i) - points.col(j)).squaredNorm());
    return std::sqrt(d2);
}

Mat inertia_from_mass(const Mat& H)
{
    if (H.rows() == 2) {
        Mat T(2, 2);
        T << H(1, 1), -H(0, 1), -H(1, 0), H(0, 0);
        return T;
    }
    return H.trace() * Mat::Identity(H.rows(), H.cols()) - H;
}

double eigen_ratio(const Mat& S)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(S, Eigen::EigenvaluesOnly);
    const Vec& ev = es.eigenvalues();
    return ev(ev.size() - 1) / ev(0);
}

double signed_area2(const Mat& loop)
{
    double a = 0.0;
    const Index n = loop.cols();
    for (Index i = 0; i < n; ++i) {
        const Index j = (i + 1) % n;
        a += loop(0, i) * loop(1, j) - loop(1, i) * loop(0, j);
    }
    return a;
}

namespace {

// Accumulate zeroth, first and second moments of a simplex given by its
// vertices relative to a reference point.
void add_simplex(const Mat& S, double& m0, Vec& m1, Mat& m2)
{
    const int d = static_cast<int>(S.rows());
    Mat J = S.rightCols(d).colwise() - S.col(0);
    const double vol = std::abs(J.determinant()) / (d == 2 ? 2.0 : 6.0);
    const Vec s = S.rowwise().sum();
    m0 += vol;
    m1 += vol * s / (d + 1.0);
    const double c = (d == 2) ? 12.0 : 20.0;
    m2 += vol / c * (S * S.transpose() + s * s.transpose());
}

void finish(ElementGeometry& g, double m0, const Vec& m1, const Mat& m2, const Vec& ref)
{
    g.measure = m0;
    const Vec cbar = m1 / m0;
    g.centroid = ref + cbar;
    g.mass = m2 - m0 * cbar * cbar.transpose();
    g.mass = 0.5 * (g.mass + g.mass.transpose());
    g.inertia = inertia_from_mass(g.mass);
    g.anisotropic_ratio = m0 > 0.0 ? eigen_ratio(g.mass) : 0.0;
}

double polygon_edge_ratio(const Mat& loop)
{
    double lo = INFINITY, hi = 0.0;
    for (Index i = 0; i < loop.cols(); ++i) {
        const double l = (loop.col((i + 1) % loop.cols()) - loop.col(i)).norm();
        lo = std::min(lo, l);
        hi = std::max(hi, l);
    }
    return hi / lo;
}

} // namespace

ElementGeometry polygon_geometry(const Mat& loop)
{
    ElementGeometry g;
    g.dim = 2;
    const Vec ref = loop.rowwise().mean();
    const Mat rel = loop.colwise() - ref;
    double m0 = 0.0;
    Vec m1 = Vec::Zero(2);
    Mat m2 = Mat::Zero(2, 2);
    Mat S(2, 3);
    S.col(0).setZero();
    for (Index i = 0; i < loop.cols(); ++i) {
        S.col(1) = rel.col(i);
        S.col(2) = rel.col((i + 1) % loop.cols());
        add_simplex(S, m0, m1, m2);
    }
    finish(g, m0, m1, m2, ref);
    g.diameter = diameter(loop);
    g.edge_ratio = polygon_edge_ratio(loop);
    return g;
}

ElementGeometry polyhedron_geometry(const Mat& vertices, const std::vector<std::vector<int>>& faces)
{
    ElementGeometry g;
    g.dim = 3;
    const Vec ref = vertices.rowwise().mean();
    const Mat rel = vertices.colwise() - ref;
    double m0 = 0.0;
    Vec m1 = Vec::Zero(3);
    Mat m2 = Mat::Zero(3, 3);
    Mat S(3, 4);
    S.col(0).setZero();
    double amin = INFINITY, amax = 0.0;
    for (const auto& f : faces) {
        Vec3 fc = Vec3::Zero();
        for (int v : f) fc += rel.col(v);
        fc /= static_cast<double>(f.size());
        S.col(1) = fc;
        Vec3 newell = Vec3::Zero();
        for (std::size_t i = 0; i < f.size(); ++i) {
            const Vec3 a = rel.col(f[i]);
            const Vec3 b = rel.col(f[(i + 1) % f.size()]);
            S.col(2) = a;
            S.col(3) = b;
            add_simplex(S, m0, m1, m2);
            newell += (a - fc).cross(b - fc);
        }
        const double area = 0.5 * newell.norm();
        amin = std::min(amin, area);
        amax = std::max(amax, area);
    }
    finish(g, m0, m1, m2, ref);
    g.diameter = diameter(vertices);
    g.face_ratio = amax / amin;
    return g;
}

Mat cell_loop_points(const PolytopalMesh& mesh, int cell)
{
    const auto& loop = mesh.cells[static_cast<std::size_t>(cell)].vertices;
    Mat P(2, static_cast<Index>(loop.size()));
    for (std::size_t i = 0; i < loop.size(); ++i) P.col(static_cast<Index>(i)) = mesh.vertices.col(loop[i]);
    return P;
}

LocalPolyhedron local_polyhedron(const PolytopalMesh& mesh, int cell)
{
    const Cell& c = mesh.cells[static_cast<std::size_t>(cell)];
    LocalPolyhedron lp;
    lp.vertex_ids = c.vertices;
    lp.points.resize(3, static_cast<Index>(c.vertices.size()));
    for (std::size_t i = 0; i < c.vertices.size(); ++i) lp.points.col(static_cast<Index>(i)) = mesh.vertices.col(c.vertices[i]);
    for (std::size_t i = 0; i < c.faces.size(); ++i) {
        std::vector<int> loop;
        for (int v : mesh.faces[static_cast<std::size_t>(c.faces[i])].loop)
            loop.push_back(static_cast<int>(std::lower_bound(c.vertices.begin(), c.vertices.end(), v) - c.vertices.begin()));
        if (c.orientations[i] < 0) std::reverse(loop.begin(), loop.end());
        lp.faces.push_back(std::move(loop));
    }
    return lp;
}

ElementGeometry compute_geometry(const PolytopalMesh& mesh, int cell)
{
    if (mesh.dimension == 2) return polygon_geometry(cell_loop_points(mesh, cell));
    const LocalPolyhedron lp = local_polyhedron(mesh, cell);
    return polyhedron_geometry(lp.points, lp.faces);
}

namespace {

Vec3 newell_normal(const PolytopalMesh& mesh, const std::vector<int>& loop)
{
    Vec3 c = Vec3::Zero();
    for (int v : loop) c += mesh.vertices.col(v);
    c /= static_cast<double>(loop.size());
    Vec3 n = Vec3::Zero();
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Vec3 a = mesh.vertices.col(loop[i]) - c;
        const Vec3 b = mesh.vertices.col(loop[(i + 1) % loop.size()]) - c;
        n += a.cross(b);
    }
    return n;
}

} // namespace

FaceFrame face_frame(const PolytopalMesh& mesh, int face)
{
    const auto& loop = mesh.faces[static_cast<std::size_t>(face)].loop;
    const auto& fedges = mesh.face_edges[static_cast<std::size_t>(face)];
    Vec3 n = newell_normal(mesh, loop);
    const double nn = n.norm();
    if (!(nn > 0.0)) throw DegenerateElement("face " + std::to_string(face) + " has zero area");
    n /= nn;
    const int e = *std::min_element(fedges.begin(), fedges.end());
    const auto& ed = mesh.edges[static_cast<std::size_t>(e)];
    Vec3 t = mesh.vertices.col(ed[1]) - mesh.vertices.col(ed[0]);
    t -= t.dot(n) * n;
    t.normalize();
    FaceFrame fr;
    fr.axes.col(0) = t;
    fr.axes.col(1) = n.cross(t);
    fr.normal = n;
    Vec3 avg = Vec3::Zero();
    for (int v : loop) avg += mesh.vertices.col(v);
    avg /= static_cast<double>(loop.size());
    fr.origin = avg;
    const Mat P = face_points_2d(mesh, face, fr);
    const ElementGeometry g = polygon_geometry(P);
    fr.origin = avg + fr.axes * g.centroid;
    return fr;
}

Mat face_points_2d(const PolytopalMesh& mesh, int face, const FaceFrame& frame)
{
    const auto& loop = mesh.faces[static_cast<std::size_t>(face)].loop;
    Mat P(2, static_cast<Index>(loop.size()));
    for (std::size_t i = 0; i < loop.size(); ++i)
        P.col(static_cast<Index>(i)) = frame.axes.transpose() * (mesh.vertices.col(loop[i]) - frame.origin);
    return P;
}

ElementGeometry face_geometry(const PolytopalMesh& mesh, int face)
{
    const FaceFrame fr = face_frame(mesh, face);
    return polygon_geometry(face_points_2d(mesh, face, fr));
}

void validate_geometry(const PolytopalMesh& mesh)
{
    if (mesh.dimension == 2) {
        for (int c = 0; c < mesh.n_cells(); ++c) {
            const Mat P = cell_loop_points(mesh, c);
            const ElementGeometry g = polygon_geometry(P);
            if (!(g.measure > 1e-14 * g.diameter * g.diameter))
                throw DegenerateElement("cell " + std::to_string(c) + " has (near) zero area");
            const double orient = signed_area2(P) > 0 ? 1.0 : -1.0;
            for (Index i = 0; i < P.cols(); ++i) {
                const Vec2 a = P.col(i), b = P.col((i + 1) % P.cols());
                const Vec2 t = (b - a).normalized();
                for (Index j = 0; j < P.cols(); ++j) {
                    const Vec2 r = P.col(j) - a;
                    if (orient * (t(0) * r(1) - t(1) * r(0)) < -1e-10 * g.diameter)
                        throw NonConvexElement("cell " + std::to_string(c) + " is not convex");
                }
            }
        }
        return;
    }
    for (int f = 0; f < mesh.n_faces(); ++f) {
        const auto& loop = mesh.faces[static_cast<std::size_t>(f)].loop;
        Vec3 n = newell_normal(mesh, loop);
        if (!(n.norm() > 0.0)) throw DegenerateElement("face " + std::to_string(f) + " has zero area");
        n.normalize();
        Vec3 avg = Vec3::Zero();
        Mat P(3, static_cast<Index>(loop.size()));
        for (std::size_t i = 0; i < loop.size(); ++i) {
            P.col(static_cast<Index>(i)) = mesh.vertices.col(loop[i]);
            avg += mesh.vertices.col(loop[i]);
        }
        avg /= static_cast<double>(loop.size());
        const double h = diameter(P);
        for (Index i = 0; i < P.cols(); ++i)
            if (std::abs((P.col(i) - avg).dot(n)) > 1e-12 * h)
                throw NonPlanarFace("face " + std::to_string(f) + " is not planar");
    }
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const LocalPolyhedron lp = local_polyhedron(mesh, c);
        const ElementGeometry g = polyhedron_geometry(lp.points, lp.faces);
        const double h = g.diameter;
        if (!(g.measure > 1e-14 * h * h * h))
            throw DegenerateElement("cell " + std::to_string(c) + " has (near) zero volume");
        const Cell& cell = mesh.cells[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < cell.faces.size(); ++i) {
            const auto& loop = mesh.faces[static_cast<std::size_t>(cell.faces[i])].loop;
            Vec3 n = newell_normal(mesh, loop).normalized() * cell.orientations[i];
            Vec3 avg = Vec3::Zero();
            for (int v : loop) avg += mesh.vertices.col(v);
            avg /= static_cast<double>(loop.size());
            if ((g.centroid - avg).dot(n) >= 0.0)
                throw TopologyError("cell " + std::to_string(c) + ": face " + std::to_string(cell.faces[i]) +
                                    " is not oriented outward");
            for (Index j = 0; j < lp.points.cols(); ++j)
                if ((lp.points.col(j) - avg).dot(n) > 1e-10 * h)
                    throw NonConvexElement("cell " + std::to_string(c) + " is not convex");
        }
    }
}

} // namespace vem
