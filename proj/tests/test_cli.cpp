#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string &args)
{
    const std::string cmd = std::string(SLOPES_CLI) + " " + args + " 2>&1";
    Run r;
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe))
        r.out += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string &name)
{
    return std::string(SLOPES_DATA) + "/" + name;
}

} // namespace

TEST_CASE("certify writes a certificate with no survivors")
{
    const std::string path = "cli_s1t3.json";
    const auto r = run("certify --s 1 --t 3 --delta 6 --json " + path);
    CHECK(r.code == 0);
    std::ifstream in(path);
    REQUIRE(in);
    const auto j = nlohmann::json::parse(in);
    CHECK(j["survivors"] == 0);
    CHECK(j["params"]["s"] == 1);
    CHECK(j["constraint_log"].is_array());
}

TEST_CASE("certificates on stdout agree across worker counts apart from timing")
{
    const auto a = run("certify --s 1 --t 3 --delta 6 --json - --workers 1");
    const auto b = run("certify --s 1 --t 3 --delta 6 --json - --workers 2");
    CHECK(a.code == 0);
    auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
    CHECK(ja.contains("elapsed_ms"));
    ja.erase("elapsed_ms");
    jb.erase("elapsed_ms");
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("counting mode covers s, t <= 2")
{
    const auto r = run("certify --s 2 --t 2 --delta 9 --mode count --s-polarity neutral --t-polarity neutral");
    CHECK(r.code == 0);
}

TEST_CASE("exit codes")
{
    CHECK(run("certify --s 9 --t 9 --delta 6").code == 2);
    CHECK(run("").code == 64);
    CHECK(run("certify --s 1 --t 3").code == 64);
    CHECK(run("certify --s 1 --t 3 --delta 6 --mode guess").code == 64);
    CHECK(run("certify --s 3 --t 3 --delta 5").code == 64);
    CHECK(run("lemma nonsense").code == 64);
    CHECK(run("lemma euler --input " + data("missing.graph")).code == 64);
}

TEST_CASE("scale caps come from the environment")
{
    CHECK(run("certify --s 1 --t 3 --delta 6").code == 0);
    const std::string cmd = "env SLOPES_MAX_T=2 " + std::string(SLOPES_CLI) + " certify --s 1 --t 3 --delta 6 >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("perm prints sigma and its cycles")
{
    const auto r = run("perm --n 4 --alpha 1 --epsilon 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("(1 4)(2 3)") != std::string::npos);
}

TEST_CASE("klein reports q and the distance to mu0")
{
    const auto r = run("klein --m 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("q=1") != std::string::npos);
    CHECK(r.out.find("2") != std::string::npos);
    const auto none = run("klein --m 3");
    CHECK(none.code == 0);
    CHECK(run("klein --scan 100").code == 0);
}

TEST_CASE("single checkers on the graph corpus")
{
    CHECK(run("lemma reduced-torus --input " + data("three_loops.graph")).code == 0);
    CHECK(run("lemma euler --input " + data("square.graph")).code == 0);
    CHECK(run("lemma euler --input " + data("sphere_loop.graph")).code == 1);
    CHECK(run("lemma parity --input " + data("bad_parity.graph")).code == 64);
    const auto s = run("lemma s-cycles --input " + data("s_cycles.graph"));
    CHECK(s.code == 0);
    CHECK(s.out.find("4 S-cycle faces") != std::string::npos);
}

TEST_CASE("numeric checkers")
{
    CHECK(run("lemma negative-size --t 3 --size 4").code == 0);
    CHECK(run("lemma negative-size --t 3 --size 5").code == 1);
    CHECK(run("lemma size-regularity --t 3 --delta 6").code == 0);
    CHECK(run("lemma jn1 --u-order 1 2 3 4 5 6 --v-order 4 5 6 1 2 3").code == 0);
    CHECK(run("lemma jn1 --u-order 1 2 3 4 5 6 --v-order 1 3 2 4 5 6").code == 1);
    CHECK(run("lemma longitude-distance --d 1 --q 2").code == 0);
}

TEST_CASE("verify-all on a subset writes a summary")
{
    const auto r = run("verify-all --criteria 3 4 7 --json cli_verify.json");
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS [3]") != std::string::npos);
    std::ifstream in("cli_verify.json");
    REQUIRE(in);
    const auto j = nlohmann::json::parse(in);
    CHECK(j.dump().find("\"passed\"") != std::string::npos);
}
