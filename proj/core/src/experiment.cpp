#include "vem/experiment.hpp"

#include "vem/mesh_io.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace vem {

using nlohmann::json;

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Strip a trailing comment that is not inside a string.
std::string strip_comment(const std::string& s)
{
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

json toml_scalar(const std::string& raw, int line)
{
    const std::string v = trim(raw);
    if (v.empty()) throw ConfigError("empty value on line " + std::to_string(line));
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"') throw ConfigError("unterminated string on line " + std::to_string(line));
        return v.substr(1, v.size() - 2);
    }
    if (v == "true") return true;
    if (v == "false") return false;
    try {
        std::size_t used = 0;
        if (v.find_first_of(".eE") == std::string::npos) {
            const long long i = std::stoll(v, &used);
            if (used == v.size()) return i;
        } else {
            const double d = std::stod(v, &used);
            if (used == v.size()) return d;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("cannot parse value '" + v + "' on line " + std::to_string(line));
}

json parse_toml_subset(const std::string& text)
{
    json out = json::object();
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        const std::string s = trim(strip_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') throw ConfigError("tables are not supported (line " + std::to_string(line) + ")");
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value' on line " + std::to_string(line));
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key on line " + std::to_string(line));
        if (!val.empty() && val.front() == '[') {
            if (val.back() != ']') throw ConfigError("unterminated array on line " + std::to_string(line));
            json arr = json::array();
            std::string item;
            bool in_str = false;
            for (char ch : val.substr(1, val.size() - 2)) {
                if (ch == '"') in_str = !in_str;
                if (ch == ',' && !in_str) {
                    if (!trim(item).empty()) arr.push_back(toml_scalar(item, line));
                    item.clear();
                } else {
                    item += ch;
                }
            }
            if (!trim(item).empty()) arr.push_back(toml_scalar(item, line));
            out[key] = arr;
        } else {
            out[key] = toml_scalar(val, line);
        }
    }
    return out;
}

template <class T>
T get(const json& j, const char* key, T fallback)
{
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("bad type for key '") + key + "'");
    }
}

std::string fmt(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9e", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text)
{
    const std::string t = trim(text);
    json j;
    if (!t.empty() && t.front() == '{') {
        try {
            j = json::parse(t);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("invalid JSON config: ") + e.what());
        }
    } else {
        j = parse_toml_subset(text);
    }
    static const std::set<std::string> known{"name",       "mesh_family", "band_exp",   "epsilon",        "resolution",
                                             "seed",       "mesh_file",   "problem",    "problem_epsilon", "approaches",
                                             "k_min",      "k_max",       "k",          "cond_a_cap",     "compute_cond_a",
                                             "timings"};
    for (const auto& item : j.items())
        if (!known.count(item.key())) throw ConfigError("unknown config key '" + item.key() + "'");

    ExperimentConfig c;
    c.name = get<std::string>(j, "name", "");
    c.mesh_file = get<std::string>(j, "mesh_file", "");
    if (j.contains("mesh_family")) {
        if (!c.mesh_file.empty()) throw ConfigError("give either mesh_family or mesh_file, not both");
        GeneratorSpec g;
        try {
            g.family = parse_family(get<std::string>(j, "mesh_family", ""));
        } catch (const SpecError& e) {
            throw ConfigError(e.what());
        }
        g.band_exp = get<int>(j, "band_exp", g.band_exp);
        g.epsilon = get<double>(j, "epsilon", g.epsilon);
        g.resolution = get<int>(j, "resolution", g.resolution);
        g.seed = get<std::uint64_t>(j, "seed", g.seed);
        c.generator = g;
    } else if (c.mesh_file.empty()) {
        throw ConfigError("config needs mesh_family or mesh_file");
    }
    c.problem = get<std::string>(j, "problem", c.problem);
    const bool rtrm = c.generator && c.generator->family == Family::RTRM;
    c.problem_epsilon = get<double>(j, "problem_epsilon", rtrm ? c.generator->epsilon : 1.0);
    if (j.contains("approaches")) {
        const json& a = j.at("approaches");
        c.approaches.clear();
        if (a.is_string()) {
            std::istringstream is(a.get<std::string>());
            std::string tok;
            while (std::getline(is, tok, ','))
                if (!trim(tok).empty()) c.approaches.push_back(trim(tok));
        } else {
            c.approaches = get<std::vector<std::string>>(j, "approaches", {});
        }
        if (c.approaches.empty()) throw ConfigError("empty approaches list");
        for (const auto& s : c.approaches) (void)ApproachConfig::parse(s);
    }
    if (j.contains("k")) {
        const json& k = j.at("k");
        if (k.is_array() && k.size() == 2) {
            c.k_min = k[0].get<int>();
            c.k_max = k[1].get<int>();
        } else if (k.is_number_integer()) {
            c.k_min = c.k_max = k.get<int>();
        } else {
            throw ConfigError("k must be an integer or a [min, max] pair");
        }
    }
    c.k_min = get<int>(j, "k_min", c.k_min);
    c.k_max = get<int>(j, "k_max", c.k_max);
    c.cond_a_cap = get<int>(j, "cond_a_cap", c.cond_a_cap);
    c.compute_cond_a = get<bool>(j, "compute_cond_a", c.compute_cond_a);
    c.timings = get<bool>(j, "timings", c.timings);
    if (c.k_min < 1 || c.k_max < c.k_min) throw ConfigError("invalid k range");
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void ExperimentConfig::validate(int dim) const
{
    const int kmax = dim == 2 ? 10 : 7;
    if (k_min < 1 || k_max > kmax || k_max < k_min)
        throw ConfigError("k range must lie in [1, " + std::to_string(kmax) + "] for " + std::to_string(dim) + "D meshes");
    for (const auto& a : approaches) ApproachConfig::parse(a).check(dim);
}

std::string error_kind(const std::exception& e)
{
    if (dynamic_cast<const DegenerateElement*>(&e)) return "DegenerateElement";
    if (dynamic_cast<const NonPlanarFace*>(&e)) return "NonPlanarFace";
    if (dynamic_cast<const NonConvexElement*>(&e)) return "NonConvexElement";
    if (dynamic_cast<const TopologyError*>(&e)) return "TopologyError";
    if (dynamic_cast<const SpecError*>(&e)) return "SpecError";
    if (dynamic_cast<const SingularMassMatrix*>(&e)) return "SingularMassMatrix";
    if (dynamic_cast<const NumericalBreakdown*>(&e)) return "NumericalBreakdown";
    if (dynamic_cast<const SingularG*>(&e)) return "SingularG";
    if (dynamic_cast<const SingularSystem*>(&e)) return "SingularSystem";
    if (dynamic_cast<const UnknownProblem*>(&e)) return "UnknownProblem";
    if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    return "Error";
}

RunRow run_case(const PolytopalMesh& mesh, const Problem& problem, const ApproachConfig& approach, int k,
                const RunOptions& options)
{
    RunRow row;
    row.approach = approach.name();
    row.k = k;
    row.dim = mesh.dimension;
    try {
        if (problem.dim != mesh.dimension) throw ConfigError("problem and mesh dimensions differ");
        const auto t0 = std::chrono::steady_clock::now();
        const Discretization disc = discretize(mesh, approach, k);
        GlobalSystem sys = assemble(disc, problem.coeffs, problem.u);
        row.assemble_s = seconds_since(t0);

        row.cond = projector_conditions(disc);
        row.has_conditions = true;

        const auto t1 = std::chrono::steady_clock::now();
        const Vec x = solve(sys.A, sys.rhs);
        row.solve_s = seconds_since(t1);
        row.err = compute_errors(disc, sys.expand(x), problem.u, problem.grad);
        row.has_errors = true;

        if (options.compute_cond_a) {
            row.cond_a = matrix_condition(sys.A, options.cond_a_cap);
            row.has_cond_a = true;
        }
    } catch (const std::exception& e) {
        row.status = error_kind(e) + ": " + e.what();
    }
    if (!options.timings) row.assemble_s = row.solve_s = 0.0;
    return row;
}

std::vector<RunRow> run_sweep(const ExperimentConfig& config, const PolytopalMesh& mesh, const std::string& mesh_name,
                              const std::string& family)
{
    config.validate(mesh.dimension);
    const Problem problem = make_problem(config.problem, config.problem_epsilon);
    RunOptions opt{config.cond_a_cap, config.compute_cond_a, config.timings};
    std::vector<RunRow> rows;
    for (const auto& name : config.approaches) {
        const ApproachConfig ac = ApproachConfig::parse(name);
        for (int k = config.k_min; k <= config.k_max; ++k) {
            RunRow r = run_case(mesh, problem, ac, k, opt);
            r.mesh = mesh_name;
            r.family = family;
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

} // namespace

void write_csv(std::ostream& os, const std::vector<RunRow>& rows, int dim)
{
    os << "# cond_A: Dirichlet-reduced system matrix; cond_A_exact_flag 0 marks a power-iteration estimate\n";
    os << "mesh,family,approach,k,cond_pinabla,cond_pi0km1";
    for (int j = 1; j <= dim; ++j) os << ",cond_pi0x" << j;
    os << ",cond_face_pinabla,cond_face_pi0,cond_A,cond_A_exact_flag,err_l2,err_h1,assemble_s,solve_s,status\n";
    for (const RunRow& r : rows) {
        os << csv_field(r.mesh) << ',' << csv_field(r.family) << ',' << r.approach << ',' << r.k;
        const auto opt = [&](bool has, double v) { os << ',' << (has ? fmt(v) : ""); };
        opt(r.has_conditions, r.cond.pinabla);
        opt(r.has_conditions, r.cond.pi0km1);
        for (int j = 0; j < dim; ++j)
            opt(r.has_conditions && j < static_cast<int>(r.cond.pi0x.size()),
                j < static_cast<int>(r.cond.pi0x.size()) ? r.cond.pi0x[static_cast<std::size_t>(j)] : 0.0);
        opt(r.has_conditions && dim == 3, r.cond.face_pinabla);
        opt(r.has_conditions && dim == 3, r.cond.face_pi0);
        opt(r.has_cond_a, r.cond_a.value);
        os << ',' << (r.has_cond_a ? (r.cond_a.exact ? "1" : "0") : "");
        opt(r.has_errors, r.err.l2);
        opt(r.has_errors, r.err.h1);
        os << ',' << fmt(r.assemble_s) << ',' << fmt(r.solve_s) << ',' << csv_field(r.status) << '\n';
    }
}

void write_json(std::ostream& os, const std::vector<RunRow>& rows, int dim, const std::string& problem)
{
    json j;
    j["problem"] = problem;
    j["dimension"] = dim;
    j["cond_A_convention"] = "Dirichlet-reduced system matrix";
    json runs = json::object();
    for (const RunRow& r : rows) {
        j["mesh"] = r.mesh;
        j["family"] = r.family;
        json e;
        e["k"] = r.k;
        e["status"] = r.status;
        if (r.has_conditions) {
            json c;
            c["pinabla"] = r.cond.pinabla;
            c["pi0km1"] = r.cond.pi0km1;
            c["pi0x"] = r.cond.pi0x;
            if (dim == 3) {
                c["face_pinabla"] = r.cond.face_pinabla;
                c["face_pi0"] = r.cond.face_pi0;
            }
            e["conditions"] = c;
        }
        if (r.has_cond_a) e["cond_A"] = {{"value", r.cond_a.value}, {"exact", r.cond_a.exact}};
        if (r.has_errors) e["errors"] = {{"l2", r.err.l2}, {"h1", r.err.h1}};
        e["times"] = {{"assemble_s", r.assemble_s}, {"solve_s", r.solve_s}};
        runs[r.approach].push_back(e);
    }
    j["runs"] = runs;
    os << j.dump(2) << '\n';
}

std::vector<RunRow> run_experiment(const ExperimentConfig& config, const std::string& out_dir)
{
    PolytopalMesh mesh;
    std::string label, family;
    if (config.generator) {
        mesh = generate(*config.generator);
        label = mesh_label(*config.generator);
        family = family_name(config.generator->family);
    } else {
        mesh = load_mesh(config.mesh_file);
        label = std::filesystem::path(config.mesh_file).stem().string();
        family = "file";
    }
    const std::string stem = config.name.empty() ? label : config.name;
    const std::vector<RunRow> rows = run_sweep(config, mesh, label, family);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path base = std::filesystem::path(out_dir) / stem;
    std::ofstream csv(base.string() + ".csv");
    if (!csv) throw ConfigError("cannot write '" + base.string() + ".csv'");
    write_csv(csv, rows, mesh.dimension);
    std::ofstream js(base.string() + ".json");
    if (!js) throw ConfigError("cannot write '" + base.string() + ".json'");
    write_json(js, rows, mesh.dimension, config.problem);
    return rows;
}

} // namespace vem
