#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qrsim/scenario.hpp"

using namespace qrsim;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({
  "name": "minimal",
  "cold": {"preset": "magnon", "temperature": 1.0},
  "hot": {"preset": "hot_cubic", "temperature": 5.0}
})";

std::string csv_of(const RunResult& r)
{
    std::ostringstream out;
    write_csv(out, r);
    return out.str();
}

std::string first_lines(const std::string& s, int n)
{
    std::istringstream in(s);
    std::string line, out;
    for (int i = 0; i < n && std::getline(in, line); ++i) out += line + "\n";
    return out;
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / "qrsim_tests";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary) << text;
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string("\"") + QRSIM_CLI + "\" " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

} // namespace

TEST_SUITE("scenario") {

TEST_CASE("minimal scenario gets every default")
{
    const auto s = parse_scenario(kMinimal);
    Scenario expected;
    expected.name = "minimal";
    expected.cold = make_bath(BathPreset::Magnon, 1.0);
    expected.hot = make_bath(BathPreset::HotCubic, 5.0);
    CHECK(s == expected);
    CHECK(s.modulation.truncation == kDefaultTruncation);
    CHECK(s.run.kind == RunKind::Steady);
    CHECK(s.run.steady.rate_model == RateModelKind::TwoBand);
    CHECK(s.output.format == OutputFormat::Csv);
}

TEST_CASE("validation errors name the field")
{
    auto expect_path = [](const std::string& text, const std::string& path) {
        try {
            parse_scenario(text);
            FAIL("expected a validation error for " << path);
        } catch (const ValidationError& e) {
            CHECK(e.path() == path);
        }
    };
    expect_path(R"({"name":"x","modulation":{"tau":-1},"cold":{},"hot":{}})", "modulation.tau");
    expect_path(R"({"name":"x","cold":{"gamma":-1},"hot":{}})", "cold.gamma");
    expect_path(R"({"name":"x","cold":{"colour":1},"hot":{}})", "cold.colour");
    expect_path(R"({"name":"x","cold":{},"hot":{},"extra":1})", "extra");
    expect_path(R"({"name":"x","cold":{},"hot":{"label":"cold"}})", "hot.label");
    expect_path(R"({"name":"x","cold":{},"hot":{},"run":{"kind":"sweep","parameter":"cold.nope","values":[1]}})",
                "run.parameter");
    expect_path(R"({"name":"x","cold":{},"hot":{},"run":{"kind":"sweep","parameter":"cold.gamma","values":[]}})",
                "run.values");
    expect_path(R"({"name":"x","cold":{},"hot":{},"run":{"kind":"cooling","t_max":-2}})", "run.t_max");
    expect_path(R"({"name":"x","modulation":{"kind":"unmodulated"},"cold":{},"hot":{}})", "run.rate_model");
}

TEST_CASE("parse errors report line and column")
{
    try {
        parse_scenario("{\n  \"name\": \"x\",\n  \"cold\": ,\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() >= 11);
    }
}

TEST_CASE("sweep over cold.gamma expands to three points")
{
    const auto s = parse_scenario(R"({
      "name": "g", "cold": {"preset": "acoustic_phonon", "temperature": 0.05},
      "hot": {"preset": "hot_cubic", "temperature": 0.5},
      "run": {"kind": "sweep", "parameter": "cold.gamma", "values": [0, 0.75, 1],
              "inner": {"kind": "cooling", "t_max": 2}}})");
    REQUIRE(s.run.sweep.has_value());
    const auto pts = expand_points(s);
    REQUIRE(pts.size() == 3);
    const double gammas[] = {0.0, 0.75, 1.0};
    for (int i = 0; i < 3; ++i) {
        Scenario manual;
        manual.name = "g";
        manual.cold = make_bath(BathPreset::AcousticPhonon, 0.05);
        manual.cold.gamma = gammas[i];
        manual.hot = make_bath(BathPreset::HotCubic, 0.5);
        manual.run.kind = RunKind::Cooling;
        manual.run.cooling.t_max = 2.0;
        CHECK(pts[i] == manual);
    }
}

TEST_CASE("round trip through JSON")
{
    for (const auto* file : {"fig2.json", "steady_qr.json", "boundary_sweep.json"}) {
        const auto s = load_scenario(std::string(QRSIM_SCENARIOS) + "/" + file);
        CHECK(scenario_from_json(scenario_to_json(s)) == s);
        CHECK(parse_scenario(scenario_to_json(s).dump()) == s);
    }
    Scenario s;
    s.name = "sampled";
    s.modulation.kind = WaveformKind::Sampled;
    s.modulation.frequency_samples = {1.0, 1.5, 1.0, 0.5, 1.0};
    s.run.steady.rate_model = RateModelKind::Floquet;
    s.run.steady.options.negative_sidebands = NegativeSidebands::Include;
    s.hot.label = BathLabel::Hot;
    s.cold.cutoff_shape = CutoffShape::Exponential;
    s.output = {OutputFormat::Json, "out.json"};
    CHECK(scenario_from_json(scenario_to_json(s)) == s);
}

TEST_CASE("config hash ignores key order and output")
{
    const auto a = parse_scenario(R"({"name":"h","cold":{"gamma":0.5,"temperature":1},"hot":{"temperature":2}})");
    const auto b = parse_scenario(
        R"({"hot":{"temperature":2},"output":{"path":"x.csv"},"cold":{"temperature":1,"gamma":0.5},"name":"h"})");
    CHECK(config_hash(a) == config_hash(b));
    auto c = a;
    c.cold.gamma = 0.6;
    CHECK(config_hash(a) != config_hash(c));
    CHECK(config_hash(a).size() == 16);
}

TEST_CASE("steady run at the boundary does not cool")
{
    auto s = parse_scenario(kMinimal);
    s.modulation.omega0 = 10.0;
    const double db = cooling_boundary_delta(10.0, 1.0, 5.0);
    s.modulation.tau = std::numbers::pi / db;
    s.cold.omega_cut = 5.0;
    s.hot.omega_cut = 100.0;
    const auto r = run_scenario(s, 1);
    REQUIRE(r.records.size() == 1);
    REQUIRE(r.records[0].steady.has_value());
    const auto& rep = *r.records[0].steady;
    CHECK_FALSE(rep.cooling);
    CHECK(std::abs(rep.cold_current) <= kZeroCurrentTolerance * rep.current_scale);
}

TEST_CASE("delta sweep brackets the analytic boundary")
{
    const auto s = load_scenario(std::string(QRSIM_SCENARIOS) + "/boundary_sweep.json");
    const auto r = run_scenario(s, 2);
    const double db = cooling_boundary_delta(10.0, 1.0, 5.0);
    REQUIRE(r.records.size() == s.run.sweep->values.size());
    int changes = 0;
    for (std::size_t i = 1; i < r.records.size(); ++i) {
        REQUIRE(r.records[i].ok());
        const double ja = r.records[i - 1].steady->cold_current;
        const double jb = r.records[i].steady->cold_current;
        if ((ja > 0.0) == (jb > 0.0)) continue;
        ++changes;
        const double da = std::numbers::pi / *r.records[i - 1].swept_value;
        const double dbb = std::numbers::pi / *r.records[i].swept_value;
        CHECK(std::min(da, dbb) < db);
        CHECK(std::max(da, dbb) > db);
    }
    CHECK(changes == 1);
}

TEST_CASE("failed points keep their place and error")
{
    auto s = load_scenario(std::string(QRSIM_SCENARIOS) + "/boundary_sweep.json");
    s.run.sweep->values = {0.5, -1.0, 0.45};
    const auto r = run_scenario(s, 3);
    REQUIRE(r.records.size() == 3);
    CHECK(r.records[0].ok());
    CHECK_FALSE(r.records[1].ok());
    CHECK(r.records[1].error.find("modulation.tau") != std::string::npos);
    CHECK(r.records[2].ok());
    const auto csv = csv_of(r);
    CHECK(csv.find("\n1,-1,nan,nan,nan,nan,error\n") != std::string::npos);
}

TEST_CASE("CSV columns per run kind")
{
    const auto steady = run_scenario(load_scenario(std::string(QRSIM_SCENARIOS) + "/steady_qr.json"), 1);
    const auto lines = first_lines(csv_of(steady), 2);
    CHECK(lines.rfind("# scenario=steady_qr version=", 0) == 0);
    CHECK(lines.find("\npoint_id,S_ss,J_C,J_H,sigma,cooling\n") != std::string::npos);

    const auto sweep = run_scenario(load_scenario(std::string(QRSIM_SCENARIOS) + "/boundary_sweep.json"), 1);
    CHECK(first_lines(csv_of(sweep), 2).find("\npoint_id,modulation.tau,S_ss,J_C,J_H,sigma,cooling\n")
          != std::string::npos);

    auto cool = parse_scenario(kMinimal);
    cool.run.kind = RunKind::Cooling;
    cool.cold.temperature = 0.05;
    cool.hot.temperature = 0.5;
    cool.hot.omega_cut = 100.0;
    cool.hot.prefactor = 1e3;
    cool.modulation.omega0 = 2.0;
    cool.run.cooling.t_max = 0.05;
    const auto traj = run_scenario(cool, 1);
    CHECK(first_lines(csv_of(traj), 2).find("\nt,T_C,delta,J_C,c_V\n") != std::string::npos);
    REQUIRE(traj.records[0].cooling.has_value());
    CHECK(traj.records[0].cooling->samples.size() > 2);
}

TEST_CASE("JSON output carries 17 significant digits")
{
    const auto r = run_scenario(load_scenario(std::string(QRSIM_SCENARIOS) + "/steady_qr.json"), 1);
    std::ostringstream out;
    write_json(out, r);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["records"].size() == 1);
    CHECK(j["records"][0]["steady"]["J_C"].get<double>() == r.records[0].steady->cold_current);
    CHECK(out.str().find("\"omega0\": 10,") != std::string::npos);
}

TEST_CASE("results are independent of the thread count")
{
    const auto s = load_scenario(std::string(QRSIM_SCENARIOS) + "/boundary_sweep.json");
    CHECK(csv_of(run_scenario(s, 1)) == csv_of(run_scenario(s, 4)));
}

}

TEST_SUITE("cli") {

TEST_CASE("exit codes")
{
    const std::string scen = std::string(QRSIM_SCENARIOS);
    CHECK(run_cli("validate --scenario " + scen + "/fig2.json") == 0);
    CHECK(run_cli("bogus") == 1);
    CHECK(run_cli("steady") == 1);
    CHECK(run_cli("steady --scenario /nonexistent.json") == 1);
    CHECK(run_cli("steady --scenario " + scen + "/fig2.json") == 1);
    CHECK(run_cli("steady --scenario " + scen + "/steady_qr.json --format xml") == 1);

    const auto bad = scratch("bad_tau.json");
    write_file(bad, R"({"name":"x","modulation":{"tau":-1},"cold":{},"hot":{}})");
    CHECK(run_cli("validate --scenario " + bad.string()) == 2);
    const auto broken = scratch("broken.json");
    write_file(broken, "{ \"name\": ");
    CHECK(run_cli("steady --scenario " + broken.string()) == 2);

    const auto fail = scratch("fail.json");
    write_file(fail, R"({"name":"f","modulation":{"omega0":1,"tau":0.1},"cold":{},"hot":{"temperature":1}})");
    CHECK(run_cli("steady --scenario " + fail.string() + " --out " + scratch("fail.csv").string()) == 3);
}

TEST_CASE("steady run writes CSV and JSON")
{
    const std::string scen = std::string(QRSIM_SCENARIOS);
    const auto csv = scratch("qr.csv");
    const auto json = scratch("qr.json");
    REQUIRE(run_cli("steady --scenario " + scen + "/steady_qr.json --out " + csv.string()) == 0);
    REQUIRE(run_cli("steady --scenario " + scen + "/steady_qr.json --format json --out " + json.string()) == 0);
    const auto text = read_file(csv);
    CHECK(text.find("point_id,S_ss,J_C,J_H,sigma,cooling") != std::string::npos);
    CHECK(text.find(",true\n") != std::string::npos);
    const auto j = nlohmann::json::parse(read_file(json));
    CHECK(j["scenario"] == "steady_qr");
    CHECK(j["records"][0]["steady"]["cooling"] == true);
}

TEST_CASE("thread count from the environment")
{
    const std::string scen = std::string(QRSIM_SCENARIOS);
    const auto a = scratch("env_a.csv");
    const auto b = scratch("env_b.csv");
    REQUIRE(run_cli("sweep --scenario " + scen + "/boundary_sweep.json --out " + a.string()) == 0);
    REQUIRE(run_cli("sweep --scenario " + scen + "/boundary_sweep.json --threads 3 --seed 9 --out " + b.string()) == 0);
    CHECK(read_file(a) == read_file(b));
    CHECK(std::system(("QRSIM_THREADS=zero \"" + std::string(QRSIM_CLI) + "\" sweep --scenario " + scen
                       + "/boundary_sweep.json >/dev/null 2>&1").c_str()) != 0);
}

}
