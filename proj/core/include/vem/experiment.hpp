#pragma once

#include "vem/conditioning.hpp"
#include "vem/generators.hpp"
#include "vem/problems.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vem {

/// Batch configuration: flat key-value file, JSON or a TOML subset
/// (`key = value` lines, strings, numbers, booleans, flat arrays).
struct ExperimentConfig {
    std::string name;                      // output file stem; defaults to the mesh label
    std::optional<GeneratorSpec> generator; // either a generator ...
    std::string mesh_file;                  // ... or a mesh file
    std::string problem = "test1";
    double problem_epsilon = 1.0;
    std::vector<std::string> approaches{"Mon", "Ortho", "Inrt"};
    int k_min = 1;
    int k_max = 4;
    int cond_a_cap = 3000;
    bool compute_cond_a = true;
    bool timings = true;

    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::string& path);
    /// Throws ConfigError for out-of-range degrees or mismatched approaches.
    void validate(int dim) const;
};

/// One (approach, k) record of a run.
struct RunRow {
    std::string mesh;
    std::string family;
    std::string approach;
    int k = 1;
    int dim = 2;
    bool has_conditions = false;
    ProjectorConditions cond;
    bool has_cond_a = false;
    MatrixCondition cond_a;
    bool has_errors = false;
    ErrorNorms err;
    double assemble_s = 0.0;
    double solve_s = 0.0;
    std::string status = "ok";
};

struct RunOptions {
    int cond_a_cap = 3000;
    bool compute_cond_a = true;
    bool timings = true;
};

/// Run one case; module errors are caught and stored in `status`.
RunRow run_case(const PolytopalMesh& mesh, const Problem& problem, const ApproachConfig& approach, int k,
                const RunOptions& options);

/// Full sweep of a config on a mesh.
std::vector<RunRow> run_sweep(const ExperimentConfig& config, const PolytopalMesh& mesh, const std::string& mesh_name,
                              const std::string& family);

void write_csv(std::ostream& os, const std::vector<RunRow>& rows, int dim);
void write_json(std::ostream& os, const std::vector<RunRow>& rows, int dim, const std::string& problem);

/// Build or load the mesh, run the sweep and write <out_dir>/<name>.csv and
/// <name>.json. Returns the rows.
std::vector<RunRow> run_experiment(const ExperimentConfig& config, const std::string& out_dir);

/// Short name of the error class of an exception thrown by the library.
std::string error_kind(const std::exception& e);

} // namespace vem
