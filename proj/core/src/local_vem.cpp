#include "vem/local_vem.hpp"

#include "vem/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace vem {

DofMap::DofMap(const PolytopalMesh& mesh, int k_)
    : dim(mesh.dimension), k(k_)
{
    if (k < 1) throw ConfigError("polynomial degree must be >= 1");
    per_edge = k - 1;
    per_face = dim == 3 ? poly_dim(2, k - 2) : 0;
    per_cell = poly_dim(dim, k - 2);
    edge_offset = mesh.n_vertices();
    face_offset = edge_offset + mesh.n_edges() * per_edge;
    cell_offset = face_offset + (dim == 3 ? mesh.n_faces() * per_face : 0);
    total = cell_offset + mesh.n_cells() * per_cell;
}

std::vector<int> DofMap::cell_dofs(const PolytopalMesh& mesh, int cell) const
{
    const Cell& c = mesh.cells[static_cast<std::size_t>(cell)];
    const auto& cedges = mesh.cell_edges[static_cast<std::size_t>(cell)];
    std::vector<int> g;
    for (int v : c.vertices) g.push_back(v);
    if (dim == 2) {
        const std::size_t nv = c.vertices.size();
        for (std::size_t i = 0; i < nv; ++i) {
            const int e = cedges[i];
            const bool forward = mesh.edges[static_cast<std::size_t>(e)][0] == c.vertices[i];
            for (int j = 0; j < per_edge; ++j)
                g.push_back(edge_offset + e * per_edge + (forward ? j : per_edge - 1 - j));
        }
    } else {
        for (int e : cedges)
            for (int j = 0; j < per_edge; ++j) g.push_back(edge_offset + e * per_edge + j);
        for (int f : c.faces)
            for (int a = 0; a < per_face; ++a) g.push_back(face_offset + f * per_face + a);
    }
    for (int a = 0; a < per_cell; ++a) g.push_back(cell_offset + cell * per_cell + a);
    return g;
}

std::vector<FaceData> build_face_data(const PolytopalMesh& mesh, const MeshMaps& maps, const ApproachConfig& config,
                                      int k)
{
    std::vector<FaceData> out;
    if (mesh.dimension != 3) return out;
    out.resize(static_cast<std::size_t>(mesh.n_faces()));
    for (int f = 0; f < mesh.n_faces(); ++f) {
        const FaceMap& fm = maps.faces[static_cast<std::size_t>(f)];
        const Mat Y = face_points_2d(mesh, f, fm.frame);
        const Mat Yhat = fm.map2d.pullback(Y);
        const ElementGeometry g = polygon_geometry(Yhat);
        const Mat J2 = g.diameter * fm.map2d.linear;
        const Vec o2 = fm.map2d.apply(g.centroid);
        FaceData& fd = out[static_cast<std::size_t>(f)];
        fd.loop = J2.inverse() * (Y.colwise() - o2);
        fd.origin = fm.frame.origin + fm.frame.axes * o2;
        fd.J = fm.frame.axes * J2;
        fd.area_scale = std::abs(J2.determinant());
        fd.hhat = g.diameter;
        if (config.orthonormal()) {
            QuadratureRule r = polygon_rule(fd.loop, 2 * k);
            r.weights /= r.weights.sum();
            fd.basis = orthonormalize(2, k, Vec::Zero(2), 1.0, r);
        } else {
            fd.basis = monomial_basis(2, k, Vec::Zero(2), 1.0);
        }
        fd.proj = polygon_projectors(fd.loop, fd.basis, k);
    }
    return out;
}

ReferenceFrame reference_frame(const PolytopalMesh& mesh, int cell, const AffineElementMap& map)
{
    ReferenceFrame fr;
    ElementGeometry g;
    Mat X;
    if (mesh.dimension == 2) {
        X = cell_loop_points(mesh, cell);
        g = polygon_geometry(map.pullback(X));
    } else {
        const LocalPolyhedron lp = local_polyhedron(mesh, cell);
        X = lp.points;
        g = polyhedron_geometry(map.pullback(X), lp.faces);
    }
    fr.hhat = g.diameter;
    fr.origin = map.apply(g.centroid);
    fr.J = g.diameter * map.linear;
    fr.Jinv = fr.J.inverse();
    fr.abs_det = std::abs(fr.J.determinant());
    fr.h_orig = diameter(X);
    return fr;
}

QuadratureRule LocalVem::rule(int order) const
{
    if (dim == 2) return polygon_rule(ref_vertices, order);
    return polyhedron_rule(ref_vertices, faces, order);
}

namespace {

BasisRep cell_basis(const LocalVem& lv, const ApproachConfig& config, int k)
{
    if (!config.orthonormal()) return monomial_basis(lv.dim, k, Vec::Zero(lv.dim), 1.0);
    QuadratureRule r = lv.rule(2 * k);
    r.weights /= r.weights.sum();
    return orthonormalize(lv.dim, k, Vec::Zero(lv.dim), 1.0, r);
}

} // namespace

LocalVem build_local(const PolytopalMesh& mesh, int cell, const AffineElementMap& map, const ApproachConfig& config,
                     int k, const DofMap& dofmap, const std::vector<FaceData>* faces)
{
    LocalVem lv;
    lv.cell = cell;
    lv.dim = mesh.dimension;
    lv.k = k;
    lv.frame = reference_frame(mesh, cell, map);
    lv.dofs = dofmap.cell_dofs(mesh, cell);

    if (mesh.dimension == 2) {
        lv.ref_vertices = lv.frame.Jinv * (cell_loop_points(mesh, cell).colwise() - lv.frame.origin);
        lv.basis = cell_basis(lv, config, k);
        lv.proj = polygon_projectors(lv.ref_vertices, lv.basis, k);
        return lv;
    }

    if (!faces) throw ConfigError("3D projectors need face data");
    const LocalPolyhedron lp = local_polyhedron(mesh, cell);
    lv.ref_vertices = lv.frame.Jinv * (lp.points.colwise() - lv.frame.origin);
    lv.faces = lp.faces;
    lv.basis = cell_basis(lv, config, k);

    const Cell& c = mesh.cells[static_cast<std::size_t>(cell)];
    const auto& cedges = mesh.cell_edges[static_cast<std::size_t>(cell)];
    const int nv = static_cast<int>(c.vertices.size());
    const int ne = static_cast<int>(cedges.size());
    const int nfc = static_cast<int>(c.faces.size());
    const int pe = k - 1, pf = poly_dim(2, k - 2), pc = poly_dim(3, k - 2);
    const int ndof = nv + ne * pe + nfc * pf + pc;
    const int n = poly_dim(3, k);

    // nodal DOF positions
    const QuadratureRule gl = edge_gauss_lobatto(k);
    Mat nodes(3, nv + ne * pe);
    nodes.leftCols(nv) = lv.ref_vertices;
    auto vpos = [&](int v) {
        return static_cast<int>(std::lower_bound(c.vertices.begin(), c.vertices.end(), v) - c.vertices.begin());
    };
    for (int i = 0; i < ne; ++i) {
        const auto& ed = mesh.edges[static_cast<std::size_t>(cedges[static_cast<std::size_t>(i)])];
        const Vec a = lv.ref_vertices.col(vpos(ed[0])), b = lv.ref_vertices.col(vpos(ed[1]));
        for (int j = 1; j < k; ++j) nodes.col(nv + i * pe + (j - 1)) = a + gl.points(0, j) * (b - a);
    }
    Mat D = Mat::Zero(ndof, n);
    D.topRows(nodes.cols()) = lv.basis.eval(nodes).transpose();

    const Vec3 inner = lv.ref_vertices.rowwise().mean();
    std::vector<Mat> fpts, fnrm, ftrace;
    std::vector<Vec> fw;
    Index nq_total = 0;
    for (int i = 0; i < nfc; ++i) {
        const int f = c.faces[static_cast<std::size_t>(i)];
        const FaceData& fd = (*faces)[static_cast<std::size_t>(f)];
        const auto& loop = mesh.faces[static_cast<std::size_t>(f)].loop;
        const auto& fedges = mesh.face_edges[static_cast<std::size_t>(f)];
        const int fnv = static_cast<int>(loop.size());

        // face-local DOF -> cell-local DOF
        std::vector<int> to_cell(static_cast<std::size_t>(fd.proj.ndof));
        for (int a = 0; a < fnv; ++a) to_cell[static_cast<std::size_t>(a)] = vpos(loop[static_cast<std::size_t>(a)]);
        for (int a = 0; a < fnv; ++a) {
            const int e = fedges[static_cast<std::size_t>(a)];
            const int p = static_cast<int>(std::lower_bound(cedges.begin(), cedges.end(), e) - cedges.begin());
            const bool forward = mesh.edges[static_cast<std::size_t>(e)][0] == loop[static_cast<std::size_t>(a)];
            for (int j = 0; j < pe; ++j)
                to_cell[static_cast<std::size_t>(fnv + a * pe + j)] = nv + p * pe + (forward ? j : pe - 1 - j);
        }
        for (int a = 0; a < pf; ++a) to_cell[static_cast<std::size_t>(fnv * k + a)] = nv + ne * pe + i * pf + a;

        // eta -> xi affine map
        const Mat M = lv.frame.Jinv * fd.J;
        const Vec a0 = lv.frame.Jinv * (fd.origin - lv.frame.origin);
        Vec3 nrm = Vec3(M.col(0)).cross(Vec3(M.col(1)));
        const double s = nrm.norm();
        nrm /= s;
        const QuadratureRule fr = polygon_rule(fd.loop, 2 * k);
        const Mat xi = (M * fr.points).colwise() + a0;
        if (nrm.dot(xi.col(0) - inner) < 0) nrm = -nrm;

        const Mat Vf = fd.basis.eval(fr.points);                        // nf x nq
        const Mat W = Vf.transpose() * fd.proj.pi0k;                   // nq x ndof_f
        Mat T = Mat::Zero(fr.points.cols(), ndof);
        for (std::size_t a = 0; a < to_cell.size(); ++a) T.col(to_cell[a]) += W.col(static_cast<Index>(a));

        // face moment rows of D
        if (pf > 0) {
            const double area = fr.weights.sum();
            const Mat Qc = lv.basis.eval(xi);
            D.middleRows(nv + ne * pe + i * pf, pf) =
                Vf.topRows(pf) * fr.weights.asDiagonal() * Qc.transpose() / area;
        }
        fpts.push_back(xi);
        fw.push_back(fr.weights * s);
        fnrm.push_back(nrm.replicate(1, fr.points.cols()));
        ftrace.push_back(std::move(T));
        nq_total += fr.points.cols();
    }
    BoundaryTrace bd;
    bd.points.resize(3, nq_total);
    bd.weights.resize(nq_total);
    bd.normals.resize(3, nq_total);
    bd.trace.resize(nq_total, ndof);
    Index off = 0;
    for (std::size_t i = 0; i < fpts.size(); ++i) {
        const Index m = fpts[i].cols();
        bd.points.middleCols(off, m) = fpts[i];
        bd.weights.segment(off, m) = fw[i];
        bd.normals.middleCols(off, m) = fnrm[i];
        bd.trace.middleRows(off, m) = ftrace[i];
        off += m;
    }
    lv.proj = compute_projectors(lv.basis, k, lv.rule(2 * k), bd, std::move(D));
    return lv;
}

Mat stabilization(const LocalVem& lv, double c)
{
    const Index n = lv.ndof();
    const Mat R = Mat::Identity(n, n) - lv.proj.D * lv.proj.pinabla;
    return c * std::pow(lv.frame.h_orig, lv.dim - 2) * (R.transpose() * R);
}

LocalSystem local_bilinear(const LocalVem& lv, const AdrCoefficients& coeffs)
{
    const int d = lv.dim, k = lv.k;
    const int nm1 = poly_dim(d, k - 1);
    const QuadratureRule r = lv.rule(2 * k + 2);
    const Index nq = r.size();
    const Mat X = lv.frame.to_physical(r.points);
    const Mat Qm1 = lv.basis.eval(r.points).topRows(nm1);

    // pointwise coefficient weights in xi
    Mat Kw(nq, d * (d + 1) / 2), bw(nq, d);
    Vec rw(nq), fw(nq);
    Mat Kmean = Mat::Zero(d, d);
    for (Index q = 0; q < nq; ++q) {
        const Vec x = X.col(q);
        const double w = r.weights(q);
        const Mat K = lv.frame.abs_det * lv.frame.Jinv * coeffs.diffusion(x) * lv.frame.Jinv.transpose();
        Kmean += w * K;
        for (int a = 0, c = 0; a < d; ++a)
            for (int b = a; b < d; ++b, ++c) Kw(q, c) = w * 0.5 * (K(a, b) + K(b, a));
        if (coeffs.advection) bw.row(q) = (w * lv.frame.abs_det * lv.frame.Jinv * coeffs.advection(x)).transpose();
        rw(q) = coeffs.reaction ? w * lv.frame.abs_det * coeffs.reaction(x) : 0.0;
        fw(q) = coeffs.source ? w * lv.frame.abs_det * coeffs.source(x) : 0.0;
    }
    Kmean /= r.weights.sum();

    // weighted Gram matrices of P_{k-1}: int c q_i q_j
    const auto gram = [&](const auto& c) { return Mat(Qm1 * c.asDiagonal() * Qm1.transpose()); };
    const auto& pd = lv.proj.pi0d;
    const Mat& P = lv.proj.pi0km1;
    const Index n = lv.ndof();
    LocalSystem ls;
    ls.A = Mat::Zero(n, n);
    for (int a = 0, c = 0; a < d; ++a)
        for (int b = a; b < d; ++b, ++c) {
            const Mat M = gram(Kw.col(c));
            const Mat T = pd[static_cast<std::size_t>(a)].transpose() * M * pd[static_cast<std::size_t>(b)];
            ls.A += T;
            if (b != a) ls.A += T.transpose();
        }
    if (coeffs.advection)
        for (int a = 0; a < d; ++a) ls.A += P.transpose() * gram(bw.col(a)) * pd[static_cast<std::size_t>(a)];
    if (coeffs.reaction) ls.A += P.transpose() * gram(rw) * P;
    // C_D h_E^{d-2} equals trace(mean K_xi)/d
    ls.stab_constant = Kmean.trace() / (d * std::pow(lv.frame.h_orig, d - 2));
    ls.A += stabilization(lv, ls.stab_constant);
    ls.rhs = P.transpose() * (Qm1 * fw);
    return ls;
}

} // namespace vem
