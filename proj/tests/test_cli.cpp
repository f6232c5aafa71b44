#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kModels = S3V_MODELS_DIR;
const std::string kVerify = S3V_VERIFY_BIN;

int run(const std::string& args) {
    std::string cmd = "\"" + kVerify + "\" " + args + " > /dev/null 2>&1";
    int st = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(st));
    return WEXITSTATUS(st);
}

fs::path scratch(const std::string& name) {
    fs::path d = fs::temp_directory_path() / "s3v_cli_test";
    fs::create_directories(d);
    return d / name;
}

nlohmann::json read_json(const fs::path& p) {
    std::ifstream is(p);
    REQUIRE(is.good());
    return nlohmann::json::parse(is);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("default run writes a passing report with the documented shape") {
    fs::path rep = scratch("default.json");
    CHECK(run("--report " + rep.string()) == 0);
    auto j = read_json(rep);
    CHECK(j["tool"] == "verify");
    CHECK(j["config"]["suites"] == nlohmann::json({"formal", "paths"}));
    CHECK(j["config"]["cutoff"] == 8);
    CHECK(j["config"]["mode"] == "exact");
    CHECK(j["summary"]["status"] == "pass");
    CHECK(j["summary"]["failed"] == 0);
    CHECK(j["summary"]["total"] == j["checks"].size());
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("suite"));
        CHECK(c.contains("name"));
        CHECK(c["status"] == "pass");
        CHECK(c["duration"].is_null());
        CHECK(c["detail"].contains("message"));
        CHECK(c["detail"].contains("locator"));
    }
}

TEST_CASE("exact reports are byte-stable across runs") {
    fs::path a = scratch("a.json"), b = scratch("b.json");
    std::string base = "--model " + kModels + "/abelian_n4.json --suites moore-seiberg,jacobi,s3 --cutoff 4 ";
    CHECK(run(base + "--report " + a.string()) == 0);
    CHECK(run(base + "--report " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("timings fill durations") {
    fs::path rep = scratch("timed.json");
    CHECK(run("--suites paths --timings --report " + rep.string()) == 0);
    for (const auto& c : read_json(rep)["checks"]) CHECK(c["duration"].is_number());
}

TEST_CASE("float mode passes on an abelian model") {
    CHECK(run("--model " + kModels + "/abelian_n4.json --mode float --suites branches,moore-seiberg,jacobi") == 0);
}

TEST_CASE("a perturbed model exits 1 and names the perturbed quadruple") {
    fs::path rep = scratch("perturbed.json");
    CHECK(run("--model " + kModels + "/abelian_n4_perturbed.json --report " + rep.string()) == 1);
    auto j = read_json(rep);
    CHECK(j["summary"]["status"] == "fail");
    bool hexagon_at_target = false;
    for (const auto& c : j["checks"])
        if (c["status"] == "fail" && c["name"].get<std::string>().rfind("hexagon", 0) == 0 &&
            c["detail"]["locator"].value("quadruple", "") == "(1,2,3,2)")
            hexagon_at_target = true;
    CHECK(hexagon_at_target);
}

TEST_CASE("schema problems exit 2") {
    CHECK(run("--model " + kModels + "/does_not_exist.json") == 2);
    CHECK(run("--suites s3") == 2);
    CHECK(run("--suites nonsense") == 2);
    CHECK(run("--cutoff 0") == 2);
    CHECK(run("--path-params 1,2,3") == 2);
    CHECK(run("--mode symbolic") == 2);
    fs::path bad = scratch("bad_model.json");
    std::ofstream(bad) << R"({"name":"x","colors":3,"unknown_key":1})";
    CHECK(run("--model " + bad.string()) == 2);
}

TEST_CASE("path dump writes both curves") {
    fs::path dir = scratch("paths");
    fs::remove_all(dir);
    CHECK(run("--suites paths --dump-paths " + dir.string()) == 0);
    CHECK(fs::exists(dir / "gamma.csv"));
    CHECK(fs::exists(dir / "sigma.csv"));
}
