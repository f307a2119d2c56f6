#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#ifndef EISEN_CLI
#error "EISEN_CLI must name the command-line binary"
#endif

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(EISEN_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string path = std::string("cli_test_") + name + ".json";
    std::ofstream(path) << body;
    return path;
}

using nlohmann::json;

}  // namespace

TEST_CASE("sigma subcommand") {
    const auto r = run("sigma --lambda 3 --ell 3 --method both");
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["sigma"] == "3");
    CHECK(j["equal"] == true);
    CHECK(run("sigma --lambda 2,1,1 --ell 2 --method formula").code == 0);
    CHECK(run("sigma --lambda 0 --ell 2").code == 2);
    CHECK(run("sigma --lambda x --ell 2").code == 2);
}

TEST_CASE("classify X^9 + 3") {
    const auto path = write_temp("x9", R"({"p":3,"f":1,"degree":9,"coeffs":[[0],[0],[0],[0],[0],[0],[0],[0],[3]]})");
    const auto r = run("classify --input " + path);
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["cyclic"] == false);
    CHECK(j["first_failed"] == 1);
    const auto full = json::parse(run("classify --json --input " + path).out);
    CHECK(full["checker"]["conditions"].size() == 7);
}

TEST_CASE("invalid input exits with 2") {
    CHECK(run("classify --input /nonexistent.json").code == 2);
    CHECK(run("classify --input " + write_temp("bad", "{not json")).code == 2);
    const auto not_eis = write_temp("ne", R"({"p":3,"degree":9,"coeffs":[[0],[0],[0],[0],[0],[0],[0],[0],[9]]})");
    CHECK(run("classify --input " + not_eis).code == 2);
    const auto short_doc = write_temp("short", R"({"p":3,"degree":9,"coeffs":[[3]]})");
    CHECK(run("classify --input " + short_doc).code == 2);
    const auto neg = write_temp("neg", R"({"p":3,"degree":9,"coeffs":[[0],[0],[0],[0],[0],[0],[0],[0],[-3]]})");
    CHECK(run("classify --input " + neg).code == 2);
    CHECK(run("gen --p 4").code == 2);
    CHECK(run("verify --p 3 --targets nope --samples 1").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("big coordinates as decimal strings") {
    // 3 + 729 * 10^12 reduces to 3 modulo 3^6.
    const auto path = write_temp(
        "str", R"({"p":3,"degree":9,"coeffs":[["0"],[0],[0],[0],[0],[0],[0],[0],["729000000000003"]]})");
    const auto r = run("oracle --input " + path);
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["report"]["quotient_order"] == "1");
}

TEST_CASE("gen then classify round-trips") {
    const auto g = run("gen --p 3 --f 2 --target cyclic --seed 5");
    REQUIRE(g.code == 0);
    CHECK(g.out == run("gen --p 3 --f 2 --target cyclic --seed 5").out);
    const auto path = write_temp("gen", g.out);
    CHECK(json::parse(run("classify --input " + path).out)["cyclic"] == true);
    CHECK(json::parse(run("oracle --input " + path).out)["report"]["invariant_factors"] == json::array({"9"}));
}

TEST_CASE("verify is deterministic and agrees") {
    const auto a = run("verify --p 3 --f 1 --degree p2 --samples 50 --seed 7");
    CHECK(a.code == 0);
    const auto j = json::parse(a.out);
    CHECK(j["agreement"]["agree"] == 50);
    CHECK(j["agreement"]["total"] == 50);
    CHECK(run("verify --p 3 --f 1 --degree p2 --samples 50 --seed 7 --serial").out == a.out);
}
