#pragma once

#include "vem/common.hpp"

#include <array>
#include <vector>

namespace vem {

/// Polygonal face of a 3D mesh, stored once; `loop` is an ordered vertex loop.
struct Face {
    std::vector<int> loop;
};

/// A mesh cell. In 2D `vertices` is the counter-clockwise vertex loop and
/// `faces`/`orientations` are empty. In 3D the cell is the set `faces`; an
/// orientation of +1 means the right-hand normal of the face loop points out
/// of the cell. `vertices` then holds the sorted set of cell vertices.
struct Cell {
    std::vector<int> vertices;
    std::vector<int> faces;
    std::vector<int> orientations;
};

/// Conforming polytopal mesh in 2D or 3D. The primary data (vertices, edges,
/// faces, cells) is what the mesh file stores; everything else is derived by
/// `finalize()` and must not be edited by hand.
struct PolytopalMesh {
    int dimension = 2;
    Mat vertices; // dimension x n_vertices
    std::vector<std::array<int, 2>> edges; // v0 < v1
    std::vector<Face> faces;               // 3D only
    std::vector<Cell> cells;

    // derived
    std::vector<std::vector<int>> cell_edges;  // 2D: edge i joins loop vertices i, i+1; 3D: sorted
    std::vector<std::vector<int>> face_edges;  // 3D: edge i joins loop vertices i, i+1
    std::vector<std::vector<int>> edge_cells;
    std::vector<std::vector<int>> face_cells;
    std::vector<char> boundary_vertex;
    std::vector<char> boundary_edge;
    std::vector<char> boundary_face;

    int n_vertices() const { return static_cast<int>(vertices.cols()); }
    int n_edges() const { return static_cast<int>(edges.size()); }
    int n_faces() const { return static_cast<int>(faces.size()); }
    int n_cells() const { return static_cast<int>(cells.size()); }

    Vec point(int v) const { return vertices.col(v); }

    /// Index of the edge joining a and b, or -1.
    int find_edge(int a, int b) const;

    /// Derive edges (when `edges` is empty), incidence and boundary flags.
    /// Throws TopologyError when an edge (2D) or face (3D) is shared by more
    /// than two cells, or when a listed edge is not used by any cell.
    void finalize();

private:
    std::vector<std::vector<std::pair<int, int>>> edge_lookup_; // per min vertex: (max vertex, edge)
    void build_edge_lookup();
};

/// Build a 2D mesh from vertex coordinates (2 x nv) and cell loops. Loops are
/// re-oriented counter-clockwise.
PolytopalMesh make_polygonal_mesh(Mat vertices, std::vector<std::vector<int>> cell_loops);

/// Build a 3D mesh from vertex coordinates (3 x nv) and, per cell, its face
/// loops oriented with outward normals. Faces shared by two cells are merged.
PolytopalMesh make_polyhedral_mesh(Mat vertices, const std::vector<std::vector<std::vector<int>>>& cell_faces);

} // namespace vem
