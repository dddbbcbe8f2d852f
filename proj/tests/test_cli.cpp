#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef AMVER_BIN
#error "AMVER_BIN must be defined"
#endif
#ifndef TEST_DATA_DIR
#error "TEST_DATA_DIR must be defined"
#endif

namespace {

const std::string kBin = AMVER_BIN;
const std::string kData = TEST_DATA_DIR;

int run_cmd(const std::string& args) {
    int status = std::system((kBin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("exit code contract") {
    CHECK(run_cmd("verify heisenberg --samples 10") == 0);
    CHECK(run_cmd("verify heisenberg --samples 10 --tolerance 1e-18") == 1);
    CHECK(run_cmd("verify no_such_target --samples 10") == 2);
    CHECK(run_cmd("verify heisenberg --samples 5") == 2);
    CHECK(run_cmd("frobnicate heisenberg") == 2);
    CHECK(run_cmd("verify") == 2);
}

TEST_CASE("malformed and invalid spec files exit 2") {
    const std::string bad = "/tmp/amver_bad_spec.json";
    std::ofstream(bad) << "{ not json";
    CHECK(run_cmd("verify " + bad) == 2);
    std::ofstream(bad) << R"({"schema":"amver-bundle/1","name":"x",
        "factors":[{"zoo":"flat_torus2"}],"b":[[1,2],[0,1]],"a":[[1],[1]],
        "potentials":[["0","x"],["0","x"]]})";
    CHECK(run_cmd("verify " + bad) == 2);
}

TEST_CASE("classify prints labels") {
    CHECK(run_cmd("classify heisenberg --samples 10") == 0);
    CHECK(run_cmd("classify perturbed_flat --samples 10") == 0);
}

TEST_CASE("report is written and byte-identical across runs") {
    const std::string out1 = "/tmp/amver_report_1.json";
    const std::string out2 = "/tmp/amver_report_2.json";
    CHECK(run_cmd("report heisenberg --samples 10 --seed 7 --output " + out1) == 0);
    CHECK(run_cmd("report heisenberg --samples 10 --seed 7 --output " + out2) == 0);
    std::string a = slurp(out1), b = slurp(out2);
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(a.find("amver-report/1") != std::string::npos);
}

TEST_CASE("spec file target through the CLI") {
    CHECK(run_cmd("verify " + kData + "/heisenberg.json --samples 10") == 0);
}
