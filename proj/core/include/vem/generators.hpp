#pragma once

#include "vem/mesh.hpp"

#include <cstdint>
#include <string>

namespace vem {

enum class Family { HDHM, RTRM, GPGM, CSM, RTTM, GPDM, CCM, SquareGrid, CubeGrid };

Family parse_family(const std::string& name); // case-insensitive; throws SpecError
std::string family_name(Family f);
int family_dimension(Family f);

/// Parameters of a generated mesh. `resolution` <= 0 selects the family
/// default (see README).
struct GeneratorSpec {
    Family family = Family::CSM;
    int band_exp = 1;       // CSM / CCM
    double epsilon = 1e-5;  // RTRM domain edge
    int resolution = 0;
    std::uint64_t seed = 42;
};

/// Deterministic: equal specs give bit-identical meshes.
PolytopalMesh generate(const GeneratorSpec& spec);

/// Short label such as "CSM1" or "RTRM".
std::string mesh_label(const GeneratorSpec& spec);

PolytopalMesh make_square_grid(int nx, int ny, double lx = 1.0, double ly = 1.0);
PolytopalMesh make_cube_grid(int nx, int ny, int nz);
PolytopalMesh make_csm(int p);
PolytopalMesh make_ccm(int p);
PolytopalMesh make_rtrm(double eps, int n);
/// Kuhn subdivision of an nx x ny x nz box grid; interior vertices moved
/// by up to jitter * (box size) per coordinate.
PolytopalMesh make_rttm(int nx, int ny, int nz, std::uint64_t seed = 0, double jitter = 0.0);
PolytopalMesh make_hdhm(int nx, int ny, std::uint64_t seed);
PolytopalMesh make_gpgm(int n_seeds, int n_cuts, std::uint64_t seed);
PolytopalMesh make_gpdm(int n_seeds, int n_cuts, std::uint64_t seed);

} // namespace vem
