#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "htheta/jobio.hpp"

using namespace htheta;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path workdir() {
    fs::path p = fs::temp_directory_path() / "htheta_cli_test";
    fs::create_directories(p);
    return p;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

int run(const std::string& args) {
    std::string cmd = std::string(CLI_BIN_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

json read_json(const fs::path& p) {
    std::ifstream in(p);
    json j;
    in >> j;
    return j;
}

const char* node_job = R"({
  "field": "rational",
  "variables": ["x", "y"],
  "f": "x*y",
  "modules": {
    "M": {"presentation": [["x"]]},
    "N": {"mf": {"A": [["y"]], "B": [["x"]]}}
  },
  "pairs": [["M", "N"], ["M", "M"]]
})";

}  // namespace

TEST_CASE("theta command on the node job") {
    auto dir = workdir();
    write_file(dir / "node.json", node_job);
    auto out = dir / "theta_out.json";
    int code = run("theta " + (dir / "node.json").string() + " -o " + out.string());
    CHECK(code == 0);
    json j = read_json(out);
    REQUIRE(j.at("pairs").size() == 2);
    CHECK(j["pairs"][0]["theta"] == 1);
    CHECK(j["pairs"][0]["M"] == "M");
    CHECK(j["pairs"][0]["N"] == "N");
    CHECK(j["pairs"][1]["theta"] == -1);
    CHECK(j["pairs"][0]["periodicity_verified"] == true);

    // Reports round-trip through the JSON layer.
    ThetaReport rt = theta_report_from_json(j["pairs"][0]);
    CHECK(theta_report_to_json(rt) == theta_report_to_json(theta_report_from_json(
                                          theta_report_to_json(rt))));
    CHECK(rt.value == 1);
    CHECK(rt.even_length == 1);
}

TEST_CASE("assume-stable-at window agrees with the factorization route") {
    auto dir = workdir();
    write_file(dir / "node2.json", node_job);
    auto out = dir / "window_out.json";
    int code = run("theta " + (dir / "node2.json").string() + " --assume-stable-at 4 -o " +
                   out.string());
    CHECK(code == 0);
    json j = read_json(out);
    CHECK(j["pairs"][0]["theta"] == 1);
    CHECK(j["pairs"][1]["theta"] == -1);
    CHECK(j["pairs"][0]["periodicity_verified"] == true);
}

TEST_CASE("exit code 1 on malformed input") {
    auto dir = workdir();
    write_file(dir / "bad_poly.json", R"({
      "field": "rational", "variables": ["x", "y"], "f": "x*",
      "modules": {"M": {"presentation": [["x"]]}}, "pairs": [["M", "M"]]
    })");
    CHECK(run("theta " + (dir / "bad_poly.json").string()) == 1);

    write_file(dir / "bad_json.json", "{ not json");
    CHECK(run("theta " + (dir / "bad_json.json").string()) == 1);

    write_file(dir / "bad_var.json", R"({
      "field": "rational", "variables": ["x", "y"], "f": "x*q",
      "modules": {}, "pairs": []
    })");
    CHECK(run("theta " + (dir / "bad_var.json").string()) == 1);

    CHECK(run("theta /nonexistent/job.json") == 1);
}

TEST_CASE("exit code 2 on hypothesis failure") {
    auto dir = workdir();
    write_file(dir / "nonisolated.json", R"({
      "field": "rational", "variables": ["x", "y"], "f": "x^2*y",
      "modules": {"M": {"presentation": [["x"]]}}, "pairs": [["M", "M"]]
    })");
    CHECK(run("theta " + (dir / "nonisolated.json").string()) == 2);
}

TEST_CASE("sing command") {
    auto dir = workdir();
    auto out = dir / "sing_out.json";
    int code = run("sing \"x^3 - y^2\" --vars x,y -o " + out.string());
    CHECK(code == 0);
    json j = read_json(out);
    CHECK(j["isolated"] == true);
    CHECK(j["milnor"] == 2);
    CHECK(j["dim"] == 1);
    CHECK(j["parity"] == "odd");

    code = run("sing \"x^2 + y*z\" --vars x,y,z -o " + out.string());
    CHECK(code == 0);
    j = read_json(out);
    CHECK(j["isolated"] == true);
    CHECK(j["milnor"] == 1);
    CHECK(j["parity"] == "even");
    CHECK(j["vanishing_predicted"] == true);

    code = run("sing \"x^2*y\" --vars x,y -o " + out.string());
    CHECK(code == 0);
    j = read_json(out);
    CHECK(j["isolated"] == false);
    CHECK(j["milnor"] == "infinite");

    CHECK(run("sing \"x*\" --vars x,y") == 1);
}

TEST_CASE("mf-verify command with deep checks") {
    auto dir = workdir();
    write_file(dir / "quadric.json", R"({
      "field": "rational", "variables": ["x", "y", "z", "w"], "f": "x*y - z*w",
      "modules": {
        "M": {"mf": {"A": [["x", "z"], ["w", "y"]], "B": [["y", "-z"], ["-w", "x"]]}}
      },
      "pairs": []
    })");
    auto out = dir / "mf_out.json";
    int code = run("mf-verify " + (dir / "quadric.json").string() + " --deep -o " +
                   out.string());
    CHECK(code == 0);
    json j = read_json(out);
    REQUIRE(j["factorizations"].size() == 1);
    CHECK(j["factorizations"][0]["valid"] == true);
    CHECK(j["factorizations"][0]["deep"]["star_scaffold"] == true);
    CHECK(j["factorizations"][0]["deep"]["mirror_rows_exact"] == true);

    write_file(dir / "notmf.json", R"({
      "field": "rational", "variables": ["x", "y"], "f": "x*y",
      "modules": {"M": {"mf": {"A": [["x"]], "B": [["x"]]}}}, "pairs": []
    })");
    CHECK(run("mf-verify " + (dir / "notmf.json").string()) == 1);
}

TEST_CASE("resolve command prints differentials and stabilization") {
    auto dir = workdir();
    write_file(dir / "node.json", node_job);
    auto out = dir / "resolve_out.json";
    int code =
        run("resolve " + (dir / "node.json").string() + " --module M -o " + out.string());
    CHECK(code == 0);
    json j = read_json(out);
    CHECK(j["stabilization"]["index"] == 0);
    CHECK(j["stabilization"]["A"] == json::array({json::array({"x"})}));
    CHECK(j["stabilization"]["B"] == json::array({json::array({"y"})}));
    REQUIRE(j["differentials"].size() >= 2);
    CHECK(j["differentials"][0] == json::array({json::array({"x"})}));
    CHECK(j["differentials"][1] == json::array({json::array({"y"})}));
}

TEST_CASE("experiment command writes CSV and a stable hash") {
    auto dir = workdir();
    auto csv = dir / "sweep.csv";
    auto summary_cmd = std::string(CLI_BIN_PATH) + " experiment --families node -o " +
                       csv.string() + " --audit 2 --seed 7 > " +
                       (dir / "summary.json").string() + " 2>/dev/null";
    int status = std::system(summary_cmd.c_str());
    CHECK(WEXITSTATUS(status) == 0);
    json summary = read_json(dir / "summary.json");
    CHECK(summary["records"] == 4);
    CHECK(summary["audits"]["biadditivity_pass"] == 2);
    CHECK(summary["audits"]["symmetry_pass"] == 2);
    std::string hash1 = summary["determinism_hash"].get<std::string>();

    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "family,n,field,pair,theta,len_even,len_odd,stab_index,predicted_vanishing,"
          "millis");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);

    // Second run: identical determinism hash.
    status = std::system(summary_cmd.c_str());
    CHECK(WEXITSTATUS(status) == 0);
    json summary2 = read_json(dir / "summary.json");
    CHECK(summary2["determinism_hash"].get<std::string>() == hash1);
}

TEST_CASE("experiment accepts custom family configs") {
    auto dir = workdir();
    write_file(dir / "custom.json", R"({
      "families": [{
        "label": "node_again",
        "variables": ["x", "y"],
        "f": "x*y",
        "mfs": [{"A": [["x"]], "B": [["y"]]}]
      }]
    })");
    auto csv = dir / "custom.csv";
    CHECK(run("experiment --config " + (dir / "custom.json").string() + " -o " +
              csv.string()) == 0);
    std::ifstream in(csv);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(row.rfind("node_again,", 0) == 0);
}

TEST_CASE("unknown subcommand or family fails cleanly") {
    CHECK(run("frobnicate") != 0);
    CHECK(run("experiment --families not_a_family") == 1);
}
