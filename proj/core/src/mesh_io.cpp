#include "vem/mesh_io.hpp"

#include "vem/geometry.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

namespace vem {

using nlohmann::json;

namespace {

int line_of_offset(const std::string& text, std::size_t pos)
{
    pos = std::min(pos, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

// Line of entry i of a top-level array, assuming the one-entity-per-line layout;
// falls back to the line of the key itself.
struct Locator {
    const std::string& text;
    int line(const std::string& section, std::size_t i = 0, bool entry = true) const
    {
        const auto pos = text.find("\"" + section + "\"");
        if (pos == std::string::npos) return 1;
        const int l = line_of_offset(text, pos);
        const auto eol = text.find('\n', pos);
        const bool opens = eol != std::string::npos && text.substr(pos, eol - pos).find('[') != std::string::npos &&
                           text.substr(pos, eol - pos).find(']') == std::string::npos;
        return (entry && opens) ? l + 1 + static_cast<int>(i) : l;
    }
};

std::vector<int> int_list(const json& j, const Locator& loc, const std::string& section, std::size_t i,
                          const std::string& field)
{
    if (!j.is_array()) throw ParseError("expected an integer array", loc.line(section, i), field);
    std::vector<int> out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw ParseError("expected integer", loc.line(section, i), field);
        out.push_back(x.get<int>());
    }
    return out;
}

const json& member(const json& obj, const char* key, const Locator& loc, const std::string& section, std::size_t i)
{
    if (!obj.is_object() || !obj.contains(key))
        throw ParseError(std::string("missing field '") + key + "'", loc.line(section, i), key);
    return obj.at(key);
}

} // namespace

PolytopalMesh read_mesh(std::istream& in)
{
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), line_of_offset(text, e.byte), "");
    }
    const Locator loc{text};
    if (!doc.is_object()) throw ParseError("top level must be an object", 1, "");

    PolytopalMesh m;
    const json& dim = member(doc, "dimension", loc, "dimension", 0);
    if (!dim.is_number_integer() || (dim.get<int>() != 2 && dim.get<int>() != 3))
        throw ParseError("dimension must be 2 or 3", loc.line("dimension", 0, false), "dimension");
    m.dimension = dim.get<int>();

    const json& verts = member(doc, "vertices", loc, "vertices", 0);
    if (!verts.is_array()) throw ParseError("vertices must be an array", loc.line("vertices", 0, false), "vertices");
    m.vertices.resize(m.dimension, static_cast<Index>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const json& v = verts[i];
        if (!v.is_array() || v.size() != static_cast<std::size_t>(m.dimension))
            throw ParseError("vertex must have " + std::to_string(m.dimension) + " coordinates", loc.line("vertices", i), "vertices");
        for (int d = 0; d < m.dimension; ++d) {
            if (!v[static_cast<std::size_t>(d)].is_number())
                throw ParseError("coordinate must be a number", loc.line("vertices", i), "vertices");
            m.vertices(d, static_cast<Index>(i)) = v[static_cast<std::size_t>(d)].get<double>();
        }
    }

    if (doc.contains("edges")) {
        const json& edges = doc["edges"];
        if (!edges.is_array()) throw ParseError("edges must be an array", loc.line("edges", 0, false), "edges");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto e = int_list(edges[i], loc, "edges", i, "edges");
            if (e.size() != 2) throw ParseError("edge must have two vertices", loc.line("edges", i), "edges");
            m.edges.push_back({e[0], e[1]});
        }
    }

    if (m.dimension == 3) {
        const json& faces = member(doc, "faces", loc, "faces", 0);
        if (!faces.is_array()) throw ParseError("faces must be an array", loc.line("faces", 0, false), "faces");
        for (std::size_t i = 0; i < faces.size(); ++i)
            m.faces.push_back(Face{int_list(member(faces[i], "loop", loc, "faces", i), loc, "faces", i, "loop")});
    }

    const json& cells = member(doc, "cells", loc, "cells", 0);
    if (!cells.is_array()) throw ParseError("cells must be an array", loc.line("cells", 0, false), "cells");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        Cell c;
        if (m.dimension == 2) {
            c.vertices = int_list(member(cells[i], "vertices", loc, "cells", i), loc, "cells", i, "vertices");
            Mat P(2, static_cast<Index>(c.vertices.size()));
            for (std::size_t a = 0; a < c.vertices.size(); ++a) {
                const int v = c.vertices[a];
                if (v < 0 || v >= m.n_vertices()) throw ParseError("vertex index out of range", loc.line("cells", i), "vertices");
                P.col(static_cast<Index>(a)) = m.vertices.col(v);
            }
            if (signed_area2(P) < 0.0) std::reverse(c.vertices.begin(), c.vertices.end());
        } else {
            c.faces = int_list(member(cells[i], "faces", loc, "cells", i), loc, "cells", i, "faces");
            c.orientations = int_list(member(cells[i], "orientations", loc, "cells", i), loc, "cells", i, "orientations");
        }
        m.cells.push_back(std::move(c));
    }

    m.finalize();

    if (doc.contains("boundary")) {
        const json& b = doc["boundary"];
        auto check = [&](const char* key, const std::vector<char>& flags) {
            if (!b.contains(key)) return;
            auto ids = int_list(b[key], loc, "boundary", 0, key);
            std::sort(ids.begin(), ids.end());
            std::vector<int> expected;
            for (std::size_t i = 0; i < flags.size(); ++i)
                if (flags[i]) expected.push_back(static_cast<int>(i));
            if (ids != expected)
                throw TopologyError(std::string("boundary ") + key + " do not match the mesh topology");
        };
        check("vertices", m.boundary_vertex);
        check("edges", m.boundary_edge);
        if (m.dimension == 3) check("faces", m.boundary_face);
    }

    validate_geometry(m);
    return m;
}

PolytopalMesh load_mesh(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open mesh file '" + path + "'");
    return read_mesh(in);
}

namespace {

template <class Range>
std::string id_list(const Range& flags)
{
    json a = json::array();
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i]) a.push_back(static_cast<int>(i));
    return a.dump();
}

template <class Items, class Fn>
void write_array(std::ostream& out, const char* key, const Items& items, Fn fn, bool last = false)
{
    out << "  \"" << key << "\": [";
    if (items.empty()) {
        out << "]" << (last ? "" : ",") << "\n";
        return;
    }
    out << "\n";
    for (std::size_t i = 0; i < items.size(); ++i)
        out << "    " << fn(items[i], i) << (i + 1 < items.size() ? "," : "") << "\n";
    out << "  ]" << (last ? "" : ",") << "\n";
}

} // namespace

void write_mesh(const PolytopalMesh& mesh, std::ostream& out)
{
    out << "{\n  \"dimension\": " << mesh.dimension << ",\n";
    std::vector<int> vids(static_cast<std::size_t>(mesh.n_vertices()));
    write_array(out, "vertices", vids, [&](int, std::size_t i) {
        json v = json::array();
        for (int d = 0; d < mesh.dimension; ++d) v.push_back(mesh.vertices(d, static_cast<Index>(i)));
        return v.dump();
    });
    write_array(out, "edges", mesh.edges, [](const std::array<int, 2>& e, std::size_t) { return json(e).dump(); });
    if (mesh.dimension == 3)
        write_array(out, "faces", mesh.faces, [](const Face& f, std::size_t) { return json{{"loop", f.loop}}.dump(); });
    write_array(out, "cells", mesh.cells, [&](const Cell& c, std::size_t) {
        if (mesh.dimension == 2) return json{{"vertices", c.vertices}}.dump();
        return json{{"faces", c.faces}, {"orientations", c.orientations}}.dump();
    });
    out << "  \"boundary\": {\n";
    out << "    \"vertices\": " << id_list(mesh.boundary_vertex) << ",\n";
    out << "    \"edges\": " << id_list(mesh.boundary_edge);
    if (mesh.dimension == 3) out << ",\n    \"faces\": " << id_list(mesh.boundary_face);
    out << "\n  }\n}\n";
}

void save_mesh(const PolytopalMesh& mesh, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot write mesh file '" + path + "'");
    write_mesh(mesh, out);
    if (!out) throw Error("error while writing '" + path + "'");
}

} // namespace vem
