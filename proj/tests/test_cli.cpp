#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
    nlohmann::json doc;
};

Run run(const std::string& args) {
    std::string cmd = std::string(QSYM_BINARY) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf{};
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (!r.out.empty()) r.doc = nlohmann::json::parse(r.out);
    return r;
}

std::string write_file(const std::string& name, const std::string& content) {
    std::string path = std::string(TEST_SCRATCH_DIR) + "/" + name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("analyze") {
    auto loops = write_file("loops4.txt", "vertices 4\nedge 1 1\nedge 2 2\nedge 3 3\nedge 4 4\n");
    auto r = run("analyze " + loops);
    CHECK(r.code == 0);
    CHECK(r.doc["spectral"]["rho"] == 1.0);
    CHECK(r.doc["spectral"]["critical_beta"] == 0.0);
    CHECK(r.doc["spectral"]["kms_exists_at_critical"] == true);
    CHECK(r.doc["spectral"]["eigenspace_dimension"] == 4);
    CHECK(r.doc["is_disjoint_loops"] == true);
    CHECK(r.doc["is_connected"] == false);
    CHECK(r.doc["request"]["subcommand"] == "analyze");

    auto sink = write_file("sink.txt", "vertices 2\nedge 1 2\n");
    auto s = run("analyze " + sink);
    CHECK(s.code == 3);
    CHECK(s.doc["has_sink"] == true);
    CHECK(s.doc["error"]["code"] == 3);

    auto upper = write_file("upper.json", R"({"vertices": 2, "adjacency": [[1, 1], [0, 1]]})");
    auto u = run("analyze " + upper);
    CHECK(u.code == 0);
    CHECK(u.doc["spectral"]["perron_exact"] == nlohmann::json({"1", "0"}));
    CHECK(u.doc["spectral"]["warnings"] == nlohmann::json({"weight not strictly positive"}));

    CHECK(run("analyze " + write_file("bad.txt", "vertices x\n")).code == 2);
    CHECK(run("analyze /nonexistent/file").code == 2);
}

TEST_CASE("kms-check") {
    auto upper = write_file("upper2.json", R"({"vertices": 2, "adjacency": [[1, 1], [0, 1]]})");
    auto ok = run("kms-check " + upper + " --weights 1,0");
    CHECK(ok.code == 0);
    CHECK(ok.doc["invariant"] == true);
    auto no = run("kms-check " + upper + " --weights 1/2,1/2");
    CHECK(no.doc["subinvariant"] == false);
    CHECK(run("kms-check " + upper + " --weights 1/2,1/3").code == 2);
}

TEST_CASE("classify") {
    auto r = run("classify -n 3 --weights 1/3,1/3,1/3");
    CHECK(r.code == 0);
    CHECK(r.doc["partition"] == nlohmann::json({3}));
    CHECK(r.doc["symmetry"] == "C(S¹) ≀ S₃⁺");
    auto t = run("classify -n 3 --weights 1/2,1/4,1/4");
    CHECK(t.doc["symmetry"] == "(C(S¹) ≀ S₂⁺) ⋆ C(S¹)");
    CHECK(t.doc["blocks"][0]["value"] == "1/4");
    CHECK(t.doc["blocks"][0]["vertices"] == nlohmann::json({2, 3}));
    CHECK(t.doc["factor_count"] == 2);
    CHECK(run("--ascii classify --weights 1/2,1/4,1/4").doc["symmetry"] == "(C(S^1) wr S_2^+) * C(S^1)");
    CHECK(run("classify -n 2 --weights 1,0").code == 4);
    CHECK(run("classify --weights 0.3,0.3000000006,0.3000000012,0.0999999982").code == 5);
    CHECK(run("classify --weights 0.25,0.25,0.5").doc["mode"] == "float");
    CHECK(run("classify --weights 0.25,0.25,0.5 --exact-decimal").doc["mode"] == "exact");
    CHECK(run("classify --weights 0.25,0.25,0.5 --mode exact").code == 2);
    CHECK(run("classify -n 4 --weights 1/2,1/2").code == 2);
    CHECK(run("classify --weights 1/2,x").code == 2);
}

TEST_CASE("symmetry") {
    auto r = run("symmetry 2,1");
    CHECK(r.doc["symmetry"] == "(C(S¹) ≀ S₂⁺) ⋆ C(S¹)");
    CHECK(run("symmetry 2,0").code == 2);
}

TEST_CASE("verify-action") {
    auto r = run("verify-action -n 4 --weights 1/4,1/4,1/4,1/4 --seed 7");
    CHECK(r.code == 0);
    CHECK(r.doc["pass"] == true);
    CHECK(r.doc["model"] == "two_projection");
    CHECK(r.doc["d"] == 2);
    CHECK(r.doc["seed"] == 7);
    CHECK(r.doc["noncommutativity"].get<double>() > 0.0);
    auto forced = run("verify-action -n 2 --weights 1/3,2/3 --force-single-block");
    CHECK(forced.code == 6);
    CHECK(forced.doc["pass"] == false);
    CHECK(forced.doc["witness"]["deviation"].get<double>() >= 1e-3);
    auto one = run("verify-action -n 1 --weights 1");
    CHECK(one.code == 0);
    CHECK(one.doc["symmetry"] == "C(S¹)");
    CHECK(run("verify-action --weights 1/2,1/2,0").code == 4);
    CHECK(run("verify-action --weights 1/4,1/4,1/4,1/4 --d 3").code == 2);
}

TEST_CASE("partitions") {
    CHECK(run("partitions 4").doc["count"] == 5);
    CHECK(run("partitions 1").doc["count"] == 1);
    auto ten = run("partitions 10");
    CHECK(ten.doc["count"] == 42);
    CHECK(ten.doc["partitions"].size() == 42);
    CHECK(run("partitions 0").code == 2);
    CHECK(run("partitions abc").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("output is deterministic and the seed can come from the environment") {
    const std::string args = "verify-action --weights 1/5,1/5,1/5,1/5,1/5 --trials 20";
    CHECK(run(args + " --seed 9").out == run(args + " --seed 9").out);
    auto env = run(args);
    CHECK(env.doc["seed"] == 1);
    std::string cmd = "env QSYM_SEED=9 " + std::string(QSYM_BINARY) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    pclose(pipe);
    auto doc = nlohmann::json::parse(out);
    CHECK(doc["seed"] == 9);
    CHECK(doc["checks"] == run(args + " --seed 9").doc["checks"]);
    auto pretty = run("--pretty partitions 3");
    CHECK(pretty.out.find("\n  ") != std::string::npos);
}
