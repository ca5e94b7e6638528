#include "vem/mesh.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace vem {

void PolytopalMesh::build_edge_lookup()
{
    edge_lookup_.assign(static_cast<std::size_t>(n_vertices()), {});
    for (int e = 0; e < n_edges(); ++e) {
        const auto& ed = edges[static_cast<std::size_t>(e)];
        edge_lookup_[static_cast<std::size_t>(ed[0])].emplace_back(ed[1], e);
    }
}

int PolytopalMesh::find_edge(int a, int b) const
{
    if (a > b) std::swap(a, b);
    if (a < 0 || static_cast<std::size_t>(a) >= edge_lookup_.size()) return -1;
    for (const auto& [other, e] : edge_lookup_[static_cast<std::size_t>(a)])
        if (other == b) return e;
    return -1;
}

namespace {

void check_vertex(const PolytopalMesh& m, int v)
{
    if (v < 0 || v >= m.n_vertices())
        throw TopologyError("vertex index " + std::to_string(v) + " out of range");
}

// Collect the edges of a vertex loop (in loop order), creating missing ones.
std::vector<int> loop_edges(PolytopalMesh& m, const std::vector<int>& loop, bool create,
                            std::map<std::pair<int, int>, int>& index)
{
    std::vector<int> out;
    out.reserve(loop.size());
    for (std::size_t i = 0; i < loop.size(); ++i) {
        int a = loop[i], b = loop[(i + 1) % loop.size()];
        check_vertex(m, a);
        if (a == b) throw TopologyError("repeated consecutive vertex in loop");
        if (a > b) std::swap(a, b);
        auto it = index.find({a, b});
        if (it == index.end()) {
            if (!create) throw TopologyError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") missing from edge list");
            it = index.emplace(std::make_pair(a, b), m.n_edges()).first;
            m.edges.push_back({a, b});
        }
        out.push_back(it->second);
    }
    return out;
}

} // namespace

void PolytopalMesh::finalize()
{
    if (dimension != 2 && dimension != 3) throw TopologyError("dimension must be 2 or 3");
    if (vertices.rows() != dimension) throw TopologyError("vertex coordinates do not match dimension");
    const bool create = edges.empty();
    std::map<std::pair<int, int>, int> index;
    for (int e = 0; e < n_edges(); ++e) {
        auto& ed = edges[static_cast<std::size_t>(e)];
        check_vertex(*this, ed[0]);
        check_vertex(*this, ed[1]);
        if (ed[0] > ed[1]) std::swap(ed[0], ed[1]);
        if (ed[0] == ed[1] || !index.emplace(std::make_pair(ed[0], ed[1]), e).second)
            throw TopologyError("degenerate or duplicate edge " + std::to_string(e));
    }

    cell_edges.assign(cells.size(), {});
    face_edges.clear();
    edge_cells.clear();
    face_cells.clear();

    if (dimension == 2) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c].vertices.size() < 3) throw TopologyError("cell " + std::to_string(c) + " has fewer than 3 vertices");
            cell_edges[c] = loop_edges(*this, cells[c].vertices, create, index);
        }
        edge_cells.assign(edges.size(), {});
        for (std::size_t c = 0; c < cells.size(); ++c)
            for (int e : cell_edges[c]) edge_cells[static_cast<std::size_t>(e)].push_back(static_cast<int>(c));
        boundary_edge.assign(edges.size(), 0);
        boundary_vertex.assign(static_cast<std::size_t>(n_vertices()), 0);
        boundary_face.clear();
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto n = edge_cells[e].size();
            if (n == 0) throw TopologyError("edge " + std::to_string(e) + " is not used by any cell");
            if (n > 2) throw TopologyError("edge " + std::to_string(e) + " is shared by " + std::to_string(n) + " cells");
            if (n == 1) {
                boundary_edge[e] = 1;
                boundary_vertex[static_cast<std::size_t>(edges[e][0])] = 1;
                boundary_vertex[static_cast<std::size_t>(edges[e][1])] = 1;
            }
        }
    } else {
        face_edges.assign(faces.size(), {});
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (faces[f].loop.size() < 3) throw TopologyError("face " + std::to_string(f) + " has fewer than 3 vertices");
            face_edges[f] = loop_edges(*this, faces[f].loop, create, index);
        }
        face_cells.assign(faces.size(), {});
        for (std::size_t c = 0; c < cells.size(); ++c) {
            auto& cell = cells[c];
            if (cell.faces.size() < 4) throw TopologyError("cell " + std::to_string(c) + " has fewer than 4 faces");
            if (cell.orientations.size() != cell.faces.size())
                throw TopologyError("cell " + std::to_string(c) + ": orientation count differs from face count");
            std::set<int> verts, eds;
            for (std::size_t i = 0; i < cell.faces.size(); ++i) {
                const int f = cell.faces[i];
                if (f < 0 || f >= n_faces()) throw TopologyError("face index out of range in cell " + std::to_string(c));
                if (cell.orientations[i] != 1 && cell.orientations[i] != -1)
                    throw TopologyError("orientation must be +1 or -1 in cell " + std::to_string(c));
                face_cells[static_cast<std::size_t>(f)].push_back(static_cast<int>(c));
                for (int v : faces[static_cast<std::size_t>(f)].loop) verts.insert(v);
                for (int e : face_edges[static_cast<std::size_t>(f)]) eds.insert(e);
            }
            cell.vertices.assign(verts.begin(), verts.end());
            cell_edges[c].assign(eds.begin(), eds.end());
        }
        edge_cells.assign(edges.size(), {});
        for (std::size_t c = 0; c < cells.size(); ++c)
            for (int e : cell_edges[c]) edge_cells[static_cast<std::size_t>(e)].push_back(static_cast<int>(c));
        boundary_face.assign(faces.size(), 0);
        boundary_edge.assign(edges.size(), 0);
        boundary_vertex.assign(static_cast<std::size_t>(n_vertices()), 0);
        for (std::size_t f = 0; f < faces.size(); ++f) {
            const auto n = face_cells[f].size();
            if (n == 0) throw TopologyError("face " + std::to_string(f) + " is not used by any cell");
            if (n > 2) throw TopologyError("face " + std::to_string(f) + " is shared by " + std::to_string(n) + " cells");
            if (n == 2) {
                // the two owners must see opposite orientations
                int o0 = 0, o1 = 0;
                const auto& c0 = cells[static_cast<std::size_t>(face_cells[f][0])];
                const auto& c1 = cells[static_cast<std::size_t>(face_cells[f][1])];
                for (std::size_t i = 0; i < c0.faces.size(); ++i) if (c0.faces[i] == static_cast<int>(f)) o0 = c0.orientations[i];
                for (std::size_t i = 0; i < c1.faces.size(); ++i) if (c1.faces[i] == static_cast<int>(f)) o1 = c1.orientations[i];
                if (o0 == o1) throw TopologyError("interior face " + std::to_string(f) + " has equal orientation in both cells");
            }
            if (n == 1) {
                boundary_face[f] = 1;
                for (int v : faces[f].loop) boundary_vertex[static_cast<std::size_t>(v)] = 1;
                for (int e : face_edges[f]) boundary_edge[static_cast<std::size_t>(e)] = 1;
            }
        }
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (edge_cells[e].empty()) throw TopologyError("edge " + std::to_string(e) + " is not used by any face");
    }
    build_edge_lookup();
}

PolytopalMesh make_polygonal_mesh(Mat vertices, std::vector<std::vector<int>> cell_loops)
{
    PolytopalMesh m;
    m.dimension = 2;
    m.vertices = std::move(vertices);
    m.cells.reserve(cell_loops.size());
    for (auto& loop : cell_loops) {
        double area2 = 0.0;
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const auto a = m.vertices.col(loop[i]);
            const auto b = m.vertices.col(loop[(i + 1) % loop.size()]);
            area2 += a(0) * b(1) - a(1) * b(0);
        }
        if (area2 < 0.0) std::reverse(loop.begin(), loop.end());
        m.cells.push_back(Cell{std::move(loop), {}, {}});
    }
    m.finalize();
    return m;
}

PolytopalMesh make_polyhedral_mesh(Mat vertices, const std::vector<std::vector<std::vector<int>>>& cell_faces)
{
    PolytopalMesh m;
    m.dimension = 3;
    m.vertices = std::move(vertices);
    std::map<std::vector<int>, int> known;
    for (const auto& faces : cell_faces) {
        Cell cell;
        for (const auto& loop : faces) {
            std::vector<int> key = loop;
            std::sort(key.begin(), key.end());
            auto it = known.find(key);
            if (it == known.end()) {
                known.emplace(key, m.n_faces());
                cell.faces.push_back(m.n_faces());
                cell.orientations.push_back(1);
                m.faces.push_back(Face{loop});
            } else {
                const auto& stored = m.faces[static_cast<std::size_t>(it->second)].loop;
                // the second owner must traverse the loop in reverse
                const auto pos = std::find(stored.begin(), stored.end(), loop[0]) - stored.begin();
                const std::size_t n = stored.size();
                const int next_in_stored = stored[(static_cast<std::size_t>(pos) + 1) % n];
                cell.faces.push_back(it->second);
                cell.orientations.push_back(next_in_stored == loop[1] ? 1 : -1);
            }
        }
        m.cells.push_back(std::move(cell));
    }
    m.finalize();
    return m;
}

} // namespace vem
