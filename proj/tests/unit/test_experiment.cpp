#include <doctest.h>

#include "vem/experiment.hpp"
#include "vem/generators.hpp"
#include "vem/problems.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace vem;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("TOML subset config")
{
    const auto c = ExperimentConfig::parse("# sweep\n"
                                           "name = \"csm-test\"\n"
                                           "mesh_family = \"csm\"\n"
                                           "band_exp = 2\n"
                                           "problem = \"test2\"\n"
                                           "approaches = [\"Mon\", \"Inrt\"]  # two\n"
                                           "k = [1, 3]\n"
                                           "compute_cond_a = false\n");
    CHECK(c.name == "csm-test");
    REQUIRE(c.generator.has_value());
    CHECK(c.generator->family == Family::CSM);
    CHECK(c.generator->band_exp == 2);
    CHECK(c.problem == "test2");
    CHECK(c.approaches == std::vector<std::string>{"Mon", "Inrt"});
    CHECK(c.k_min == 1);
    CHECK(c.k_max == 3);
    CHECK_FALSE(c.compute_cond_a);
}

TEST_CASE("JSON config and validation")
{
    const auto c = ExperimentConfig::parse(R"({"mesh_family": "ccm", "band_exp": 1, "problem": "test4",
                                              "approaches": ["Inrt-BF", "Inrt-F"], "k_min": 2, "k_max": 3})");
    CHECK(c.generator->family == Family::CCM);
    CHECK(c.k_min == 2);
    CHECK_NOTHROW(c.validate(3));
    CHECK_THROWS_AS(c.validate(2), ConfigError);

    CHECK_THROWS_AS(ExperimentConfig::parse("mesh_family = \"csm\"\nbogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("mesh_family = \"csm\"\nk_max = \"x\"\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("mesh_family = \"csm\"\nk = 11\n").validate(2), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("mesh_family = \"ccm\"\nk = 8\n").validate(3), ConfigError);
}

TEST_CASE("failures are recorded per row")
{
    const auto m = make_csm(1);
    const Problem p = make_problem("test2");
    const RunRow r = run_case(m, p, ApproachConfig::parse("Inrt-BF"), 2, RunOptions{});
    CHECK(r.status.rfind("ConfigError: ", 0) == 0);
    CHECK_FALSE(r.has_errors);
    std::ostringstream os;
    write_csv(os, {r}, 2);
    CHECK(os.str().find(",,,,") != std::string::npos);

    const RunRow ok = run_case(m, p, ApproachConfig::parse("Inrt"), 2, RunOptions{});
    CHECK(ok.status == "ok");
    CHECK(ok.has_errors);
    CHECK(ok.cond_a.exact);
}

TEST_CASE("reruns without timings are byte identical")
{
    const auto dir = std::filesystem::temp_directory_path() / "vem_experiment_test";
    std::filesystem::remove_all(dir);
    const auto c = ExperimentConfig::parse("name = \"rerun\"\nmesh_family = \"gpgm\"\nproblem = \"test2\"\n"
                                           "k = [1, 2]\ntimings = false\n");
    const auto rows = run_experiment(c, (dir / "a").string());
    run_experiment(c, (dir / "b").string());
    CHECK(rows.size() == 6);
    for (const char* f : {"rerun.csv", "rerun.json"}) {
        const std::string a = slurp(dir / "a" / f);
        CHECK_FALSE(a.empty());
        CHECK(a == slurp(dir / "b" / f));
    }
    const std::string csv = slurp(dir / "a" / "rerun.csv");
    CHECK(csv.find("mesh,family,approach,k,cond_pinabla,cond_pi0km1,cond_pi0x1,cond_pi0x2,cond_face_pinabla") !=
          std::string::npos);
    std::filesystem::remove_all(dir);
}
