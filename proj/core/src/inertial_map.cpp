#include "vem/inertial_map.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

namespace vem {

AffineElementMap AffineElementMap::identity(int dim)
{
    return from(Vec::Zero(dim), Mat::Identity(dim, dim), false);
}

AffineElementMap AffineElementMap::from(const Vec& translation, const Mat& linear, bool inertial)
{
    AffineElementMap m;
    m.translation = translation;
    m.linear = linear;
    m.inverse = linear.inverse();
    m.abs_det = std::abs(linear.determinant());
    m.inertial = inertial;
    return m;
}

Mat AffineElementMap::apply(const Mat& xhat) const
{
    return (linear * xhat).colwise() + translation;
}

Mat AffineElementMap::pullback(const Mat& x) const
{
    return inverse * (x.colwise() - translation);
}

namespace {

void fix_sign(Eigen::Ref<Vec> v)
{
    Index imax = 0;
    for (Index i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
    if (v(imax) < 0) v = -v;
}

} // namespace

SortedEigen sorted_eigen(const Mat& S)
{
    const Index d = S.rows();
    Eigen::SelfAdjointEigenSolver<Mat> es(S);
    SortedEigen out;
    out.values.resize(d);
    out.vectors.resize(d, d);
    for (Index i = 0; i < d; ++i) {
        out.values(i) = es.eigenvalues()(d - 1 - i);
        out.vectors.col(i) = es.eigenvectors().col(d - 1 - i);
    }
    const double lmax = out.values(0);
    Index s = 0;
    while (s < d) {
        Index e = s + 1;
        while (e < d && out.values(e - 1) - out.values(e) <= 1e-12 * std::abs(lmax)) ++e;
        if (e - s > 1) {
            const Mat Vc = out.vectors.middleCols(s, e - s);
            const Mat P = Vc * Vc.transpose();
            std::vector<Vec> chosen;
            std::vector<char> used(static_cast<std::size_t>(d), 0);
            for (Index c = 0; c < e - s; ++c) {
                Index best = -1;
                double bn = -1.0;
                Vec bw;
                for (Index a = 0; a < d; ++a) {
                    if (used[static_cast<std::size_t>(a)]) continue;
                    Vec w = P.col(a);
                    for (const auto& q : chosen) w -= q.dot(w) * q;
                    if (w.norm() > bn + 1e-12) {
                        bn = w.norm();
                        best = a;
                        bw = w;
                    }
                }
                used[static_cast<std::size_t>(best)] = 1;
                chosen.push_back(bw / bn);
            }
            for (Index c = 0; c < e - s; ++c) out.vectors.col(s + c) = chosen[static_cast<std::size_t>(c)];
        }
        s = e;
    }
    for (Index i = 0; i < d; ++i) fix_sign(out.vectors.col(i));
    return out;
}

namespace {

using GeometryFn = std::function<ElementGeometry(const Mat&)>;

// B = sqrt(l_max) Lambda^{-1/2} Q^T of the mass matrix H.
Mat isotropizing_matrix(const Mat& H)
{
    const SortedEigen se = sorted_eigen(H);
    const double lmax = se.values(0);
    const double lmin = se.values(se.values.size() - 1);
    if (!(lmin >= 1e-14 * lmax) || !(lmax > 0.0))
        throw SingularMassMatrix("mass matrix is numerically singular (eigenvalue ratio " + std::to_string(lmin / lmax) + ")");
    const Vec scale = (lmax / se.values.array()).sqrt();
    return scale.asDiagonal() * se.vectors.transpose();
}

// Symmetric variant, close to the identity for an almost isotropic element.
Mat symmetric_isotropizing_matrix(const Mat& H)
{
    const SortedEigen se = sorted_eigen(H);
    const double lmax = se.values(0);
    const double lmin = se.values(se.values.size() - 1);
    if (!(lmin >= 1e-14 * lmax) || !(lmax > 0.0)) throw SingularMassMatrix("mass matrix is numerically singular");
    const Vec scale = (lmax / se.values.array()).sqrt();
    return se.vectors * scale.asDiagonal() * se.vectors.transpose();
}

AffineElementMap inertial_chain(const Mat& X, const GeometryFn& geometry)
{
    const int d = static_cast<int>(X.rows());
    const ElementGeometry g = geometry(X);
    const double hE = g.diameter;
    if (!(g.measure > 0.0) || !(hE > 0.0)) throw DegenerateElement("inertial map of a degenerate element");
    // 1) rescale: x~ = (x - x_E)/h_E (the translation only recentres the data)
    const Mat P1 = (X.colwise() - g.centroid) / hE;
    const ElementGeometry g1 = geometry(P1);
    // 2) x_breve = B (x~ - x~_c)
    const Mat B = isotropizing_matrix(g1.mass);
    const Mat P2 = B * (P1.colwise() - g1.centroid);
    // 3) divide by the new diameter
    const double h2 = diameter(P2);
    Mat M = B / (hE * h2);                       // xhat = M (x - t)
    Vec t = g.centroid + hE * g1.centroid;
    Mat P3 = P2 / h2;
    // one refinement pass removes round-off left by strongly anisotropic input
    const ElementGeometry g3 = geometry(P3);
    const Mat R = symmetric_isotropizing_matrix(g3.mass);
    const Mat P4 = R * (P3.colwise() - g3.centroid);
    const double h4 = diameter(P4);
    t += M.inverse() * g3.centroid;
    M = (R * M) / h4;
    (void)d;
    return AffineElementMap::from(t, M.inverse(), true);
}

} // namespace

AffineElementMap build_inertial_map(const Mat& loop)
{
    if (loop.rows() != 2) throw DegenerateElement("polygon map needs 2D coordinates");
    return inertial_chain(loop, [](const Mat& P) { return polygon_geometry(P); });
}

AffineElementMap build_inertial_map(const Mat& vertices, const std::vector<std::vector<int>>& faces)
{
    if (vertices.rows() != 3) throw DegenerateElement("polyhedron map needs 3D coordinates");
    return inertial_chain(vertices, [&faces](const Mat& P) { return polyhedron_geometry(P, faces); });
}

FaceMap build_face_map(const PolytopalMesh& mesh, int face, bool inertial)
{
    FaceMap fm;
    fm.frame = face_frame(mesh, face);
    fm.map2d = inertial ? build_inertial_map(face_points_2d(mesh, face, fm.frame)) : AffineElementMap::identity(2);
    return fm;
}

ApproachConfig ApproachConfig::parse(const std::string& name)
{
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    ApproachConfig c;
    if (n == "mon") c.kind = BasisKind::Mon;
    else if (n == "ortho") c.kind = BasisKind::Ortho;
    else if (n == "inrt") c.kind = BasisKind::Inrt;
    else if (n == "inrt-b") { c.kind = BasisKind::Inrt; c.variant = Variant::B; }
    else if (n == "inrt-f") { c.kind = BasisKind::Inrt; c.variant = Variant::F; }
    else if (n == "inrt-bf" || n == "inrt-b-f") { c.kind = BasisKind::Inrt; c.variant = Variant::BF; }
    else throw ConfigError("unknown approach '" + name + "'");
    return c;
}

std::string ApproachConfig::name() const
{
    switch (kind) {
    case BasisKind::Mon: return "Mon";
    case BasisKind::Ortho: return "Ortho";
    case BasisKind::Inrt:
        switch (variant) {
        case Variant::None: return "Inrt";
        case Variant::B: return "Inrt-B";
        case Variant::F: return "Inrt-F";
        case Variant::BF: return "Inrt-BF";
        }
    }
    return "?";
}

void ApproachConfig::check(int dim) const
{
    if (variant != Variant::None && (dim != 3 || kind != BasisKind::Inrt))
        throw ConfigError("approach " + name() + " is only available in 3D");
    if (dim == 3 && kind == BasisKind::Inrt && variant == Variant::None)
        throw ConfigError("3D inertial approach needs a variant: Inrt-B, Inrt-F or Inrt-BF");
}

bool ApproachConfig::cell_inertial(int dim) const
{
    if (kind != BasisKind::Inrt) return false;
    if (dim == 2) return true;
    return variant == Variant::B || variant == Variant::BF;
}

bool ApproachConfig::face_inertial() const
{
    return kind == BasisKind::Inrt && (variant == Variant::F || variant == Variant::BF);
}

AffineElementMap cell_map(const PolytopalMesh& mesh, int cell, bool inertial)
{
    if (!inertial) return AffineElementMap::identity(mesh.dimension);
    if (mesh.dimension == 2) return build_inertial_map(cell_loop_points(mesh, cell));
    const LocalPolyhedron lp = local_polyhedron(mesh, cell);
    return build_inertial_map(lp.points, lp.faces);
}

MeshMaps select_maps(const PolytopalMesh& mesh, const ApproachConfig& config)
{
    config.check(mesh.dimension);
    MeshMaps maps;
    const bool ci = config.cell_inertial(mesh.dimension);
    maps.cells.reserve(static_cast<std::size_t>(mesh.n_cells()));
    for (int c = 0; c < mesh.n_cells(); ++c) maps.cells.push_back(cell_map(mesh, c, ci));
    if (mesh.dimension == 3) {
        const bool fi = config.face_inertial();
        maps.faces.reserve(static_cast<std::size_t>(mesh.n_faces()));
        for (int f = 0; f < mesh.n_faces(); ++f) maps.faces.push_back(build_face_map(mesh, f, fi));
    }
    return maps;
}

} // namespace vem
