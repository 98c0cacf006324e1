#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <nilgeo/io.hpp>
#include <nilgeo/nilgeo.hpp>

using namespace nilgeo;
using Catch::Approx;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    std::string cmd = std::string(NILGEO_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult res;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string data_path(const std::string& name) {
    return std::string(NILGEO_DATA_DIR) + "/" + name;
}

std::vector<Json> json_lines(const std::string& text) {
    std::vector<Json> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) out.push_back(Json::parse(line));
    return out;
}

} // namespace

TEST_CASE("analyze reports and exit codes", "[cli]") {
    CmdResult res = run_cli("analyze " + data_path("h3.json") + " --json");
    REQUIRE(res.exit_code == 0);
    Json doc = Json::parse(res.out);
    REQUIRE(doc["scalar"].get<std::string>() == "-1/2");

    NilAlgebra A = load_algebra_file(data_path("h3.json"));
    REQUIRE(doc == analyze_to_json(A));

    CmdResult text = run_cli("analyze " + data_path("abelian.json"));
    REQUIRE(text.exit_code == 0);
    REQUIRE(text.out.find("flat:      true") != std::string::npos);

    REQUIRE(run_cli("analyze " + data_path("bad.json")).exit_code == 2);
    REQUIRE(run_cli("analyze " + data_path("no-such-file.json")).exit_code == 2);
    REQUIRE(run_cli("").exit_code == 2);
}

TEST_CASE("geodesic sampling agrees across methods", "[cli]") {
    std::string base = "geodesic " + data_path("n4flat.json") + " --v0 \"1,1,1,0\" --t 2 ";
    CmdResult closed = run_cli(base + "--method closed --samples 9");
    CmdResult rk4 = run_cli(base + "--method rk4 --steps 20000 --samples 9");
    REQUIRE(closed.exit_code == 0);
    REQUIRE(rk4.exit_code == 0);
    auto cl = json_lines(closed.out), rk = json_lines(rk4.out);
    REQUIRE(cl.size() == 9);
    REQUIRE(rk.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) {
        REQUIRE(cl[i]["t"].get<double>() == Approx(rk[i]["t"].get<double>()).margin(1e-12));
        for (std::size_t k = 0; k < 4; ++k)
            REQUIRE(cl[i]["log"][k].get<double>() ==
                    Approx(rk[i]["log"][k].get<double>()).margin(1e-8));
    }

    // u-components pick up the quadratic term; v-components stay linear
    Json last = cl.back();
    REQUIRE(last["log"][0].get<double>() == Approx(2.0).margin(1e-12));
    REQUIRE(last["log"][1].get<double>() == Approx(2.0).margin(1e-12));
}

TEST_CASE("geodesic central velocity gives a straight line", "[cli]") {
    CmdResult res =
        run_cli("geodesic " + data_path("h3.json") + " --v0 \"1,0,0\" --t 3 --samples 4");
    REQUIRE(res.exit_code == 0);
    for (const Json& line : json_lines(res.out)) {
        double t = line["t"].get<double>();
        REQUIRE(line["log"][0].get<double>() == Approx(t).margin(1e-12));
        REQUIRE(line["log"][1].get<double>() == Approx(0.0).margin(1e-12));
        REQUIRE(line["log"][2].get<double>() == Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("geodesic method errors", "[cli]") {
    REQUIRE(run_cli("geodesic " + data_path("h3.json") + " --v0 \"1,0\" --t 1").exit_code == 2);
    REQUIRE(run_cli("geodesic " + data_path("h3.json") + " --v0 \"1,0,0\" --t 1 --method warp")
                .exit_code == 2);
    // csgf needs a nondegenerate center; n4flat has a null one
    REQUIRE(run_cli("geodesic " + data_path("n4flat.json") +
                    " --v0 \"1,0,0,0\" --t 1 --method csgf")
                .exit_code == 3);
    CmdResult csgf =
        run_cli("geodesic " + data_path("h3.json") + " --v0 \"1/2,1,0\" --t 2 --method csgf");
    CmdResult quad =
        run_cli("geodesic " + data_path("h3.json") + " --v0 \"1/2,1,0\" --t 2 --method closed");
    REQUIRE(csgf.exit_code == 0);
    auto a = json_lines(csgf.out), b = json_lines(quad.out);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < 3; ++k)
            REQUIRE(a[i]["log"][k].get<double>() ==
                    Approx(b[i]["log"][k].get<double>()).margin(1e-9));
}

TEST_CASE("periods over a lattice", "[cli]") {
    CmdResult res =
        run_cli("periods " + data_path("n4flat.json") + " " + data_path("lattice_n4flat.json") +
                " --json");
    REQUIRE(res.exit_code == 0);
    Json recs = Json::parse(res.out);
    REQUIRE(recs.size() == 3);
    for (int g : {0, 1}) {
        REQUIRE(recs[g]["kind"].get<std::string>() == "flat_exact");
        REQUIRE(recs[g]["omega_sq"].get<std::string>() == "2");
        REQUIRE(recs[g]["causal"].get<std::string>() == "timelike");
    }
    REQUIRE(recs[2]["causal"].get<std::string>() == "null");
    REQUIRE_FALSE(recs[2].contains("omega"));
    REQUIRE(recs[2].contains("status"));
}

TEST_CASE("flat torus spectrum", "[cli]") {
    CmdResult res = run_cli("spectrum " + data_path("torus_z2.json") + " --bound 2 --json");
    REQUIRE(res.exit_code == 0);
    Json spec = Json::parse(res.out);
    REQUIRE(spec.size() == 3);
    REQUIRE(spec[0]["omega_sq"].get<std::string>() == "1");
    REQUIRE(spec[0]["multiplicity"].get<int>() == 4);
    REQUIRE(spec[1]["omega_sq"].get<std::string>() == "3");
    REQUIRE(spec[1]["multiplicity"].get<int>() == 8);
    REQUIRE(spec[2]["omega_sq"].get<std::string>() == "4");
    REQUIRE(spec[2]["multiplicity"].get<int>() == 4);
    // the lattice file for periods has no gram block
    REQUIRE(run_cli("spectrum " + data_path("lattice_n4flat.json") + " --bound 2").exit_code == 2);
}

TEST_CASE("isometric automorphism checks", "[cli]") {
    CmdResult pass =
        run_cli("check-iso " + data_path("h3null.json") + " " + data_path("map_h3null.json"));
    REQUIRE(pass.exit_code == 0);
    REQUIRE(pass.out.find("verdict:           true") != std::string::npos);

    CmdResult fail = run_cli("check-iso " + data_path("h3.json") + " " +
                             data_path("map_h3_swap.json") + " --json");
    REQUIRE(fail.exit_code == 1);
    Json doc = Json::parse(fail.out);
    REQUIRE(doc["metric_preserving"].get<bool>());
    REQUIRE_FALSE(doc["automorphism"].get<bool>());
}

TEST_CASE("construct-ph emits a loadable algebra document", "[cli]") {
    CmdResult res = run_cli("construct-ph " + data_path("seed_hq.json"));
    REQUIRE(res.exit_code == 0);
    NilAlgebra A = load_algebra(Json::parse(res.out));
    NilAlgebra H = make_hq(1, 1, 1);
    REQUIRE(A.dim() == 7);
    REQUIRE(A.gram() == H.gram());
    Decomposition D = witt_decompose(A, true);
    REQUIRE(ph_type_check(A, D).is_ph);

    REQUIRE(run_cli("construct-ph " + data_path("map_h3_swap.json")).exit_code == 2);
}

TEST_CASE("verify-paper gate", "[cli]") {
    CmdResult all = run_cli("verify-paper");
    REQUIRE(all.exit_code == 0);
    REQUIRE(all.out.find("0 failures") != std::string::npos);

    REQUIRE(run_cli("verify-paper --filter hq").exit_code == 0);
    REQUIRE(run_cli("verify-paper --self-test-corrupt").exit_code == 1);
    REQUIRE(run_cli("verify-paper --filter no-such-fixture").exit_code == 2);
}
