#pragma once

#include "vem/mesh.hpp"

#include <iosfwd>
#include <string>

namespace vem {

/// Read a mesh document (see README for the format). Throws ParseError with
/// line/field context, TopologyError, and the geometry validation errors.
PolytopalMesh read_mesh(std::istream& in);
PolytopalMesh load_mesh(const std::string& path);

/// Write one entity per line; coordinates round-trip bit-exactly.
void write_mesh(const PolytopalMesh& mesh, std::ostream& out);
void save_mesh(const PolytopalMesh& mesh, const std::string& path);

} // namespace vem
