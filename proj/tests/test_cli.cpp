// End-to-end tests of the command-line tool: spawns the real binary and
// inspects exit codes and machine-readable output.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "emqm/constants.hpp"
#include "emqm/energy_terms.hpp"
#include "emqm/hydrogen.hpp"

#include "approx_rel.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(EMQM_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) res.out.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

TEST_CASE("levels --nmax 2: four fine-structure rows, quoted 2p splitting") {
    const RunResult res = run_cli("levels --nmax 2");
    REQUIRE(res.exit_code == 0);
    const json out = json::parse(res.out);
    CHECK(out["command"] == "levels");
    REQUIRE(out["rows"].size() == 4);
    CHECK(out["rows"][0]["term"] == "1s_{1/2}");
    CHECK(out["rows"][1]["term"] == "2s_{1/2}");
    CHECK(out["rows"][2]["term"] == "2p_{1/2}");
    CHECK(out["rows"][3]["term"] == "2p_{3/2}");

    const double split = out["rows"][3]["E_total_J"].get<double>() -
                         out["rows"][2]["E_total_J"].get<double>();
    CHECK(split == rel(7.259023470408092e-24, 1e-6));
    CHECK(out.contains("constants_fingerprint"));
}

TEST_CASE("levels --nmax 1: single row at the Bohr ground level") {
    const RunResult res = run_cli("levels --nmax 1");
    REQUIRE(res.exit_code == 0);
    const json out = json::parse(res.out);
    REQUIRE(out["rows"].size() == 1);
    const auto d = emqm::derive(emqm::default_constants());
    CHECK(out["rows"][0]["E_total_J"].get<double>() ==
          rel(emqm::hydrogen::bohr_level(1, d), 1e-14));
}

TEST_CASE("levels: csv and json carry identical numeric values") {
    const RunResult jres = run_cli("levels --nmax 2");
    const RunResult cres = run_cli("levels --nmax 2 --output csv");
    REQUIRE(jres.exit_code == 0);
    REQUIRE(cres.exit_code == 0);
    const json out = json::parse(jres.out);
    const auto rows = parse_csv(cres.out);
    REQUIRE(rows.size() == 5);  // header + 4 rows
    // E_total_J is column 4 in the csv layout
    for (int r = 0; r < 4; ++r) {
        const double csv_value = std::stod(rows[r + 1][4]);
        const double json_value = out["rows"][r]["E_total_J"].get<double>();
        CHECK(csv_value == json_value);
    }
}

TEST_CASE("levels: nonzero B switches to the uncoupled (m_l, m_s) table") {
    const RunResult res = run_cli("levels --nmax 2 --bfield 1.0");
    REQUIRE(res.exit_code == 0);
    const json out = json::parse(res.out);
    // 1s: 2 spin rows; 2s: 2; 2p: 3 m_l x 2 m_s = 6
    REQUIRE(out["rows"].size() == 10);
    double split = 0.0;
    for (const auto& row : out["rows"])
        if (row["term"] == "2p" && row["m_s"].get<double>() == 0.5) {
            if (row["m_l"].get<int>() == 1) split += row["E_total_J"].get<double>();
            if (row["m_l"].get<int>() == -1) split -= row["E_total_J"].get<double>();
        }
    const auto c = emqm::default_constants();
    CHECK(split ==
          rel(2.0 * emqm::terms::zeeman_orbital(1, 1, 1.0, c), 1e-10));
}

TEST_CASE("transition 2p 1s: Lyman-alpha within 0.02% of 1215.6699 A") {
    const RunResult res = run_cli("transition 2p 1s");
    REQUIRE(res.exit_code == 0);
    const json out = json::parse(res.out);
    CHECK(out["wavelength_angstrom"].get<double>() ==
          doctest::Approx(1215.6699).epsilon(2e-4));
}

TEST_CASE("transition: j-resolved doublet wavelengths differ by ~5.4e-3 A") {
    const RunResult hi = run_cli("transition 2p3/2 1s1/2");
    const RunResult lo = run_cli("transition 2p1/2 1s1/2");
    REQUIRE(hi.exit_code == 0);
    REQUIRE(lo.exit_code == 0);
    const double whi = json::parse(hi.out)["wavelength_angstrom"].get<double>();
    const double wlo = json::parse(lo.out)["wavelength_angstrom"].get<double>();
    // the j = 3/2 state sits higher, so its line is shorter
    CHECK(wlo - whi == rel(5.407e-3, 0.02));
}

TEST_CASE("transition rejects identical levels") {
    const RunResult res = run_cli("transition 2p3/2 2p3/2");
    CHECK(res.exit_code == 1);
}

TEST_CASE("constants echo: defaults and overrides with provenance") {
    const RunResult res = run_cli("constants");
    REQUIRE(res.exit_code == 0);
    const json out = json::parse(res.out);
    CHECK(out["derived"]["alpha"].get<double>() ==
          rel(7.2973525693e-3, 1e-10));
    CHECK(out["provenance"]["m_p"] == "default");

    const auto c = emqm::default_constants();
    char body[128];
    std::snprintf(body, sizeof(body), "m_p = %.17g\n", c.m_e);
    const std::string path = "/tmp/emqm_cli_override.txt";
    std::ofstream(path) << body;
    const RunResult ores = run_cli("constants --constants " + path);
    REQUIRE(ores.exit_code == 0);
    const json oout = json::parse(ores.out);
    CHECK(oout["provenance"]["m_p"] == "override");
    CHECK(oout["derived"]["m_r"].get<double>() == rel(c.m_e / 2.0, 1e-14));

    std::ofstream("/tmp/emqm_cli_bad.txt") << "nonsense without equals\n";
    CHECK(run_cli("constants --constants /tmp/emqm_cli_bad.txt").exit_code == 1);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("levels --no-such-flag").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("levels --output yaml").exit_code == 2);
}

TEST_CASE("stark manifolds appear when an external E field is requested") {
    const RunResult res = run_cli("levels --nmax 2 --efield 1e5");
    REQUIRE(res.exit_code == 0);
    const json out = json::parse(res.out);
    REQUIRE(out.contains("stark_manifolds"));
    const auto& manifolds = out["stark_manifolds"];
    REQUIRE(manifolds.size() == 2);
    const auto cset = emqm::default_constants();
    const auto d = emqm::derive(cset);
    const double expected = 3.0 * std::abs(cset.e_charge) * d.a0 * 1e5;
    const auto& shifts = manifolds[1]["shifts_J"];
    REQUIRE(shifts.size() == 4);
    CHECK(shifts[0].get<double>() == rel(-expected, 1e-8));
    CHECK(shifts[3].get<double>() == rel(expected, 1e-8));
}
