#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(UAVSIM_BIN) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string grep_value(const fs::path& p, const std::string& key) {
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
    }
    return "";
}

// coarse overrides so CLI runs stay quick
const std::string kFast =
    " --set radio.user_resolution_m=46 --set radio.max_order=1";

}  // namespace

TEST_CASE("cli: trace produces maps, summary and manifest") {
    fs::path out = "cli_trace_out";
    fs::remove_all(out);
    REQUIRE(run("trace --scenario " UAVSIM_SCENARIO_DIR "/af_obiab.json" +
                kFast + " --out " + out.string()) == 0);
    CHECK(fs::exists(out / "ground_map.csv"));
    CHECK(fs::exists(out / "ground_map_f1.pgm"));
    CHECK(fs::exists(out / "ground_map_f2.pgm"));
    CHECK(fs::exists(out / "summary.txt"));
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(grep_value(out / "summary.txt", "coverage_union") != "");
}

TEST_CASE("cli: manifest alone reproduces the run byte for byte") {
    fs::path a = "cli_manifest_a", b = "cli_manifest_b";
    fs::remove_all(a);
    fs::remove_all(b);
    REQUIRE(run("trace --scenario " UAVSIM_SCENARIO_DIR "/af_obiab.json" +
                kFast + " --out " + a.string()) == 0);
    REQUIRE(run("trace --scenario " + (a / "manifest.json").string() +
                " --out " + b.string()) == 0);
    CHECK(slurp(a / "ground_map.csv") == slurp(b / "ground_map.csv"));
    CHECK(slurp(a / "summary.txt") == slurp(b / "summary.txt"));
}

TEST_CASE("cli: validation failures exit 1") {
    CHECK(run("trace --scenario /nonexistent.json --out cli_err_out") == 1);

    // a scenario with no transmitters fails validation
    fs::path bad = "cli_bad_scenario.json";
    std::ofstream f(bad);
    f << R"({"scene": {"generator": {"area_x_m": 400, "area_y_m": 400,
          "block_x_m": 90, "block_y_m": 90, "street_w_m": 20,
          "h_min_m": 60, "h_max_m": 90}},
          "bands": [{"id": "f1", "frequency_ghz": 30}],
          "transmitters": []})";
    f.close();
    CHECK(run("trace --scenario " + bad.string() + " --out cli_err_out") == 1);
    fs::remove(bad);
}

TEST_CASE("cli: compare of a run against itself is unity gain, zero delta") {
    fs::path out = "cli_selfcmp_run", cmp = "cli_selfcmp_out";
    fs::remove_all(out);
    fs::remove_all(cmp);
    REQUIRE(run("trace --scenario " UAVSIM_SCENARIO_DIR "/af_obiab.json" +
                kFast + " --out " + out.string()) == 0);
    REQUIRE(run("compare --scenario " UAVSIM_SCENARIO_DIR "/af_obiab.json" +
                kFast + " --before " + out.string() + " --after " +
                out.string() + " --out " + cmp.string()) == 0);
    CHECK(grep_value(cmp / "compare.txt", "coverage_gain") == "1.000000");
    CHECK(grep_value(cmp / "compare.txt", "cell_center_delta_db") ==
          "0.000000");
}

TEST_CASE("cli: overrides win and are recorded in the manifest") {
    fs::path out = "cli_override_out";
    fs::remove_all(out);
    REQUIRE(run("trace --scenario " UAVSIM_SCENARIO_DIR "/af_obiab.json" +
                kFast + " --set radio.noise_figure_db=9 --out " +
                out.string()) == 0);
    std::string manifest = slurp(out / "manifest.json");
    CHECK(manifest.find("\"noise_figure_db\": 9") != std::string::npos);
}

TEST_CASE("cli: power-table emits the two-column csv") {
    fs::path out = "cli_pt_out";
    fs::remove_all(out);
    REQUIRE(run("power-table --scenario " UAVSIM_SCENARIO_DIR
                "/af_obiab.json --set radio.max_order=1 --out " +
                out.string()) == 0);
    std::ifstream in(out / "power_table.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "sinr_db,tx_power_dbm");
    int rows = 0;
    std::string line;
    double prev_sinr = -1e18, prev_dbm = -1e18;
    while (std::getline(in, line)) {
        auto comma = line.find(',');
        double sinr = std::stod(line.substr(0, comma));
        CHECK(sinr > prev_sinr);
        prev_sinr = sinr;
        std::string dbm_s = line.substr(comma + 1);
        if (dbm_s != "-inf") {
            double dbm = std::stod(dbm_s);
            CHECK(dbm > prev_dbm);
            prev_dbm = dbm;
        }
        ++rows;
    }
    CHECK(rows > 3);
}
