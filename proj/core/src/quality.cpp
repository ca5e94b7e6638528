#include "vem/quality.hpp"

#include "vem/geometry.hpp"
#include "vem/inertial_map.hpp"

#include <algorithm>
#include <limits>

namespace vem {

namespace {

struct Accumulator {
    Stat s{std::numeric_limits<double>::infinity(), 0.0, -std::numeric_limits<double>::infinity()};
    int n = 0;
    void add(double v)
    {
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
        s.avg += v;
        ++n;
    }
    Stat get() const
    {
        Stat r = s;
        if (n) r.avg /= n;
        else r = Stat{};
        return r;
    }
};

struct RowAccumulator {
    Accumulator measure, diameter, aniso, ratio;
    void add(const ElementGeometry& g, double ratio_value)
    {
        measure.add(g.measure);
        diameter.add(g.diameter);
        aniso.add(g.anisotropic_ratio);
        ratio.add(ratio_value);
    }
    QualityRow get() const { return {measure.get(), diameter.get(), aniso.get(), ratio.get()}; }
};

} // namespace

MeshQuality mesh_quality(const PolytopalMesh& mesh)
{
    MeshQuality q;
    q.dim = mesh.dimension;
    q.n_cells = mesh.n_cells();
    RowAccumulator orig, mapped;
    double nv = 0;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        nv += static_cast<double>(mesh.cells[static_cast<std::size_t>(c)].vertices.size());
        const AffineElementMap map = cell_map(mesh, c, true);
        if (mesh.dimension == 2) {
            const Mat X = cell_loop_points(mesh, c);
            const ElementGeometry g = polygon_geometry(X), gh = polygon_geometry(map.pullback(X));
            orig.add(g, g.edge_ratio);
            mapped.add(gh, gh.edge_ratio);
        } else {
            const LocalPolyhedron lp = local_polyhedron(mesh, c);
            const ElementGeometry g = polyhedron_geometry(lp.points, lp.faces);
            const ElementGeometry gh = polyhedron_geometry(map.pullback(lp.points), lp.faces);
            orig.add(g, g.face_ratio);
            mapped.add(gh, gh.face_ratio);
        }
    }
    q.avg_vertices = q.n_cells ? nv / q.n_cells : 0.0;
    q.cells = orig.get();
    q.mapped_cells = mapped.get();
    if (mesh.dimension == 3) {
        RowAccumulator forig, fmapped;
        double fv = 0;
        q.n_faces = mesh.n_faces();
        for (int f = 0; f < mesh.n_faces(); ++f) {
            fv += static_cast<double>(mesh.faces[static_cast<std::size_t>(f)].loop.size());
            const FaceMap fm = build_face_map(mesh, f, true);
            const Mat Y = face_points_2d(mesh, f, fm.frame);
            const ElementGeometry g = polygon_geometry(Y), gh = polygon_geometry(fm.map2d.pullback(Y));
            forig.add(g, g.edge_ratio);
            fmapped.add(gh, gh.edge_ratio);
        }
        q.avg_face_vertices = q.n_faces ? fv / q.n_faces : 0.0;
        q.faces = forig.get();
        q.mapped_faces = fmapped.get();
    }
    return q;
}

} // namespace vem
