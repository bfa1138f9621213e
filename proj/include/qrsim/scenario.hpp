#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qrsim/baths.hpp"
#include "qrsim/cooling.hpp"
#include "qrsim/errors.hpp"
#include "qrsim/floquet.hpp"
#include "qrsim/rates.hpp"
#include "qrsim/steady.hpp"

namespace qrsim {

inline constexpr std::string_view kVersion = "0.1.0";

class ParseError : public InvalidInput {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : InvalidInput(what), line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Validation failure tied to a field path such as "modulation.tau".
class ValidationError : public InvalidInput {
public:
    ValidationError(const std::string& path, const std::string& constraint)
        : InvalidInput(path + ": " + constraint), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

enum class RunKind { Steady, Cooling };
enum class RateModelKind { TwoBand, Floquet };
enum class OutputFormat { Csv, Json };

struct SteadyRun {
    RateModelKind rate_model{RateModelKind::TwoBand};
    RateOptions options{};

    bool operator==(const SteadyRun& o) const
    {
        return rate_model == o.rate_model && options.tail_tolerance == o.options.tail_tolerance
            && options.negative_sidebands == o.options.negative_sidebands;
    }
};

// The cold bath temperature of the scenario is T_C(0).
struct CoolingRun {
    double floor_temperature{1e-6};
    double t_max{1.0};
    DeltaPolicy delta_policy{};
    double rel_tol{1e-8};
    double abs_tol{0.0};

    bool operator==(const CoolingRun&) const = default;
};

struct SweepSpec {
    std::string parameter;  // dotted path into the scenario, e.g. "cold.gamma"
    std::vector<double> values;

    bool operator==(const SweepSpec&) const = default;
};

struct RunSpec {
    RunKind kind{RunKind::Steady};
    std::optional<SweepSpec> sweep;
    SteadyRun steady{};
    CoolingRun cooling{};

    bool operator==(const RunSpec&) const = default;
};

struct OutputSpec {
    OutputFormat format{OutputFormat::Csv};
    std::string path;

    bool operator==(const OutputSpec&) const = default;
};

struct Scenario {
    std::string name;
    ModulationScheme modulation;
    BathSpec cold;
    BathSpec hot;
    RunSpec run;
    OutputSpec output;

    bool operator==(const Scenario&) const = default;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

// FNV-1a over the canonical (key-sorted) JSON of everything but `output`.
std::string config_hash(const Scenario& s);

// Single-point scenarios, one per sweep value (or the scenario itself).
std::vector<Scenario> expand_points(const Scenario& s);

CoolingConfig cooling_config(const Scenario& s);

struct PointRecord {
    std::size_t id{0};
    std::optional<double> swept_value;
    nlohmann::json inputs;
    std::optional<SteadyStateReport> steady;
    std::optional<CoolingTrajectory> cooling;
    std::optional<ScalingFit> fit;
    std::string error;
    bool numerical_failure{false};  // false: the point itself was invalid

    bool ok() const { return error.empty(); }
};

struct RunResult {
    std::string scenario;
    std::string version{kVersion};
    std::string config_hash;
    RunKind kind{RunKind::Steady};
    std::string parameter;
    std::vector<PointRecord> records;
};

// Points run concurrently on up to `threads` workers (<= 0: OpenMP default);
// records keep the order of the sweep values.
RunResult run_scenario(const Scenario& s, int threads = 0);

void write_csv(std::ostream& out, const RunResult& result);
void write_json(std::ostream& out, const RunResult& result);

std::string_view to_string(RunKind kind);
std::string_view to_string(OutputFormat format);

} // namespace qrsim
