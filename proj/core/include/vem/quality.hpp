#pragma once

#include "vem/mesh.hpp"

namespace vem {

struct Stat {
    double min = 0.0;
    double avg = 0.0;
    double max = 0.0;
};

/// Measure, diameter, anisotropic ratio and edge ratio (polygons) or face
/// ratio (polyhedra) over a set of elements.
struct QualityRow {
    Stat measure, diameter, anisotropic, ratio;
};

/// Table-style statistics of the original elements and of their inertial
/// images; in 3D also of the faces (as polygons in their planes).
struct MeshQuality {
    int dim = 2;
    int n_cells = 0;
    double avg_vertices = 0.0;
    QualityRow cells, mapped_cells;
    int n_faces = 0;
    double avg_face_vertices = 0.0;
    QualityRow faces, mapped_faces;
};

MeshQuality mesh_quality(const PolytopalMesh& mesh);

} // namespace vem
