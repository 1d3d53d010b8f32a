#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "mackeylab/json_io.hpp"

using namespace mackeylab;

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cmd(const std::string& cmd) {
    FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

RunResult run(const std::string& args) {
    return run_cmd(std::string("\"") + MACKEYLAB_BIN + "\" " + args);
}

std::string golden(const std::string& name) {
    std::ifstream in(std::string(MACKEYLAB_GOLDEN_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = "/tmp/" + name;
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
    return path;
}

}  // namespace

TEST_CASE("version and help exit cleanly") {
    RunResult v = run("--version");
    CHECK(v.code == 0);
    CHECK(v.out.find("mackeylab") != std::string::npos);
    CHECK(run("--help").code == 0);
}

TEST_CASE("marks output is byte stable") {
    RunResult r1 = run("marks cyclic:4");
    RunResult r2 = run("marks --group cyclic:4");
    CHECK(r1.code == 0);
    CHECK(r1.out == golden("marks_cyclic4.txt"));
    CHECK(r2.out == r1.out);
}

TEST_CASE("marks row of the half orbit") {
    RunResult r = run("marks cyclic:4 --json");
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("classes") == Json::array({"e", "C2", "C4"}));
    CHECK(j.at("marks").at(1) == Json::array({2, 2, 0}));
}

TEST_CASE("idempotent output is byte stable") {
    RunResult r = run("zhat idem -p 2 -l 1 -N 5");
    CHECK(r.code == 0);
    CHECK(r.out == "1 - 1/3*e3 - 1/5*e5\n");
    CHECK(r.out == golden("idem_p2_l1_N5.txt"));
}

TEST_CASE("homology table is byte stable across thread counts") {
    std::string g = golden("dbh_N6_deg1.txt");
    for (const char* env : {"OMP_NUM_THREADS=1", "OMP_NUM_THREADS=4"}) {
        RunResult r = run_cmd(std::string(env) + " \"" + MACKEYLAB_BIN + "\" dbh -N 6 --deg 1");
        CHECK(r.code == 0);
        CHECK(r.out == g);
    }
}

TEST_CASE("class product and tate examples") {
    RunResult mul = run("zhat mul \"e2*e3\" -N 10");
    CHECK(mul.code == 0);
    CHECK(mul.out == "e6\n");
    RunResult t = run("tate --n 2 --module trivZ");
    CHECK(t.code == 0);
    CHECK(t.out == "even: Z/2\nodd: 0\n");
}

TEST_CASE("witt json output round trips") {
    RunResult r = run("zhat mul \"2*e4 - 1/2\" --json");
    REQUIRE(r.code == 0);
    WittElement w = witt_from_json(Json::parse(r.out));
    WittElement direct = witt_eval("2*e4 - 1/2");
    CHECK(w == direct);
}

TEST_CASE("mackey json output round trips") {
    auto ctx = std::make_shared<GroupContext>(make_context(make_sym(3)));
    MackeyFunctor a = burnside_mackey(ctx, CoeffRing::Z());
    std::string path = write_temp("mackeylab_cli_s3.json", mackey_to_json(a).dump());

    RunResult chk = run("mackey check " + path);
    CHECK(chk.code == 0);
    CHECK(chk.out == "pass\n");

    RunResult phi = run("mackey phi " + path + " --class C3 --json");
    REQUIRE(phi.code == 0);
    MackeyFunctor parsed = mackey_from_json(Json::parse(phi.out));
    MackeyFunctor direct = geometric_fixed_points(a, ctx->class_by_label("C3"));
    CHECK(mackey_literal_equal(parsed, direct));
}

TEST_CASE("exit codes separate domain errors from bad input") {
    auto ctx = std::make_shared<GroupContext>(make_context(make_sym(3)));
    MackeyFunctor a = burnside_mackey(ctx, CoeffRing::Z());
    std::string path = write_temp("mackeylab_cli_s3.json", mackey_to_json(a).dump());

    RunResult nonnormal = run("mackey phi " + path + " --class C2");
    CHECK(nonnormal.code == 1);
    CHECK(Json::parse(nonnormal.out).at("error") == "domain");

    CHECK(run("zhat mul \"foo\"").code == 2);
    CHECK(run("glue --n 6 --l 4 -N 12").code == 2);
    CHECK(run("mackey check /tmp/does_not_exist_mackeylab.json").code == 2);
    CHECK(run("marks nosuchgroup:3").code == 2);
}
