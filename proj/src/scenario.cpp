#include "qrsim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <sstream>

#include "qrsim/kernels.hpp"

namespace qrsim {

using nlohmann::json;

namespace {

template <typename E>
struct Names {
    E value;
    const char* name;
};

constexpr Names<WaveformKind> kWaveforms[] = {{WaveformKind::PiFlip, "pi_flip"},
                                              {WaveformKind::Unmodulated, "unmodulated"},
                                              {WaveformKind::Sampled, "sampled"}};
constexpr Names<CutoffShape> kCutoffs[] = {{CutoffShape::Hard, "hard"},
                                           {CutoffShape::Exponential, "exponential"}};
constexpr Names<BathLabel> kLabels[] = {{BathLabel::Cold, "cold"}, {BathLabel::Hot, "hot"}};
constexpr Names<BathPreset> kPresets[] = {{BathPreset::AcousticPhonon, "acoustic_phonon"},
                                          {BathPreset::Fracton, "fracton"},
                                          {BathPreset::Magnon, "magnon"},
                                          {BathPreset::HotCubic, "hot_cubic"}};
constexpr Names<RateModelKind> kRateModels[] = {{RateModelKind::TwoBand, "two_band"},
                                                {RateModelKind::Floquet, "floquet"}};
constexpr Names<NegativeSidebands> kNegative[] = {{NegativeSidebands::Exclude, "exclude"},
                                                  {NegativeSidebands::Include, "include"}};
constexpr Names<DeltaPolicyKind> kPolicies[] = {{DeltaPolicyKind::Optimized, "optimized"},
                                                {DeltaPolicyKind::FixedOffset, "fixed_offset"},
                                                {DeltaPolicyKind::Constant, "constant"}};
constexpr Names<OutputFormat> kFormats[] = {{OutputFormat::Csv, "csv"},
                                            {OutputFormat::Json, "json"}};

template <typename E, std::size_t N>
const char* name_of(const Names<E> (&table)[N], E value)
{
    for (const auto& n : table) {
        if (n.value == value) return n.name;
    }
    return "?";
}

std::string join(const std::string& prefix, const std::string& key)
{
    return prefix.empty() ? key : prefix + "." + key;
}

void require_object(const json& j, const std::string& path)
{
    if (!j.is_object()) throw ValidationError(path.empty() ? "<root>" : path, "must be an object");
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> keys)
{
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* allowed : keys) known = known || k == allowed;
        if (!known) throw ValidationError(join(path, k), "unknown key");
    }
}

double number(const json& j, const std::string& path, const char* key, double fallback)
{
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number()) throw ValidationError(join(path, key), "must be a number");
    return v.get<double>();
}

int integer(const json& j, const std::string& path, const char* key, int fallback)
{
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ValidationError(join(path, key), "must be an integer");
    return v.get<int>();
}

std::string text(const json& j, const std::string& path, const char* key, std::string fallback)
{
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_string()) throw ValidationError(join(path, key), "must be a string");
    return v.get<std::string>();
}

template <typename E, std::size_t N>
E choice(const json& j, const std::string& path, const char* key, const Names<E> (&table)[N],
         E fallback)
{
    if (!j.contains(key)) return fallback;
    const auto s = text(j, path, key, "");
    for (const auto& n : table) {
        if (s == n.name) return n.value;
    }
    std::string allowed;
    for (const auto& n : table) allowed += std::string(allowed.empty() ? "" : ", ") + n.name;
    throw ValidationError(join(path, key), "must be one of " + allowed);
}

void check(bool ok, const std::string& path, const char* constraint)
{
    if (!ok) throw ValidationError(path, constraint);
}

ModulationScheme modulation_from(const json& j)
{
    const std::string p = "modulation";
    require_object(j, p);
    reject_unknown(j, p, {"omega0", "tau", "kind", "truncation", "frequency_samples"});
    ModulationScheme m;
    m.omega0 = number(j, p, "omega0", m.omega0);
    m.tau = number(j, p, "tau", m.tau);
    m.kind = choice(j, p, "kind", kWaveforms, m.kind);
    m.truncation = integer(j, p, "truncation", m.truncation);
    if (j.contains("frequency_samples")) {
        const auto& a = j.at("frequency_samples");
        check(a.is_array(), p + ".frequency_samples", "must be an array of numbers");
        for (const auto& v : a) {
            check(v.is_number(), p + ".frequency_samples", "must be an array of numbers");
            m.frequency_samples.push_back(v.get<double>());
        }
    }
    check(std::isfinite(m.omega0) && m.omega0 > 0.0, p + ".omega0", "must be > 0");
    check(std::isfinite(m.tau) && m.tau > 0.0, p + ".tau", "must be > 0");
    check(m.truncation >= 1, p + ".truncation", "must be >= 1");
    check(m.kind == WaveformKind::Sampled || m.frequency_samples.empty(),
          p + ".frequency_samples", "only allowed with kind \"sampled\"");
    try {
        m.validate();
    } catch (const InvalidInput& e) {
        throw ValidationError(p + ".frequency_samples", e.what());
    }
    return m;
}

BathSpec bath_from(const json& j, const std::string& p, BathLabel label)
{
    require_object(j, p);
    reject_unknown(j, p, {"preset", "label", "gamma", "dim", "prefactor", "omega_cut",
                          "cutoff_shape", "temperature"});
    BathSpec b;
    if (j.contains("preset")) {
        b = make_bath(choice(j, p, "preset", kPresets, BathPreset::AcousticPhonon), 0.0);
    }
    b.label = choice(j, p, "label", kLabels, label);
    check(b.label == label, p + ".label", label == BathLabel::Cold ? "must be \"cold\"" : "must be \"hot\"");
    b.gamma = number(j, p, "gamma", b.gamma);
    b.dim = number(j, p, "dim", b.dim);
    b.prefactor = number(j, p, "prefactor", b.prefactor);
    b.omega_cut = number(j, p, "omega_cut", b.omega_cut);
    b.cutoff_shape = choice(j, p, "cutoff_shape", kCutoffs, b.cutoff_shape);
    b.temperature = number(j, p, "temperature", b.temperature);
    check(std::isfinite(b.gamma) && b.gamma >= 0.0, p + ".gamma", "must be >= 0");
    check(std::isfinite(b.dim) && b.dim > 0.0, p + ".dim", "must be > 0");
    check(std::isfinite(b.prefactor) && b.prefactor > 0.0, p + ".prefactor", "must be > 0");
    check(std::isfinite(b.omega_cut) && b.omega_cut > 0.0, p + ".omega_cut", "must be > 0");
    check(std::isfinite(b.temperature) && b.temperature >= 0.0, p + ".temperature", "must be >= 0");
    return b;
}

RunKind inner_from(const json& j, const std::string& p, RunSpec& run)
{
    require_object(j, p);
    const auto kind = text(j, p, "kind", "steady");
    if (kind == "steady") {
        reject_unknown(j, p, {"kind", "rate_model", "negative_sidebands", "tail_tolerance"});
        run.steady.rate_model = choice(j, p, "rate_model", kRateModels, run.steady.rate_model);
        run.steady.options.negative_sidebands =
            choice(j, p, "negative_sidebands", kNegative, run.steady.options.negative_sidebands);
        run.steady.options.tail_tolerance =
            number(j, p, "tail_tolerance", run.steady.options.tail_tolerance);
        const double tol = run.steady.options.tail_tolerance;
        check(tol > 0.0 && tol < 1.0, p + ".tail_tolerance", "must lie in (0, 1)");
        return RunKind::Steady;
    }
    if (kind == "cooling") {
        reject_unknown(j, p, {"kind", "floor_temperature", "t_max", "delta_policy", "rel_tol",
                              "abs_tol"});
        auto& c = run.cooling;
        c.floor_temperature = number(j, p, "floor_temperature", c.floor_temperature);
        c.t_max = number(j, p, "t_max", c.t_max);
        c.rel_tol = number(j, p, "rel_tol", c.rel_tol);
        c.abs_tol = number(j, p, "abs_tol", c.abs_tol);
        if (j.contains("delta_policy")) {
            const auto dp = p + ".delta_policy";
            const auto& d = j.at("delta_policy");
            require_object(d, dp);
            reject_unknown(d, dp, {"kind", "value"});
            c.delta_policy.kind = choice(d, dp, "kind", kPolicies, c.delta_policy.kind);
            c.delta_policy.value = number(d, dp, "value", c.delta_policy.value);
            check(c.delta_policy.kind == DeltaPolicyKind::Optimized || c.delta_policy.value > 0.0,
                  dp + ".value", "must be > 0");
        }
        check(c.floor_temperature > 0.0, p + ".floor_temperature", "must be > 0");
        check(c.t_max > 0.0 && std::isfinite(c.t_max), p + ".t_max", "must be > 0");
        check(c.rel_tol > 0.0, p + ".rel_tol", "must be > 0");
        check(c.abs_tol >= 0.0, p + ".abs_tol", "must be >= 0");
        return RunKind::Cooling;
    }
    throw ValidationError(p + ".kind", "must be \"steady\" or \"cooling\"");
}

RunSpec run_from(const json& j)
{
    const std::string p = "run";
    require_object(j, p);
    RunSpec run;
    if (text(j, p, "kind", "steady") == "sweep") {
        reject_unknown(j, p, {"kind", "parameter", "values", "inner"});
        SweepSpec sw;
        check(j.contains("parameter"), p + ".parameter", "is required");
        sw.parameter = text(j, p, "parameter", "");
        check(j.contains("values") && j.at("values").is_array(), p + ".values",
              "must be an array of numbers");
        for (const auto& v : j.at("values")) {
            check(v.is_number(), p + ".values", "must be an array of numbers");
            sw.values.push_back(v.get<double>());
        }
        check(!sw.values.empty(), p + ".values", "must be non-empty");
        run.kind = inner_from(j.contains("inner") ? j.at("inner") : json::object(), p + ".inner", run);
        run.sweep = std::move(sw);
        return run;
    }
    run.kind = inner_from(j, p, run);
    return run;
}

json bath_json(const BathSpec& b)
{
    return {{"label", name_of(kLabels, b.label)},
            {"gamma", b.gamma},
            {"dim", b.dim},
            {"prefactor", b.prefactor},
            {"omega_cut", b.omega_cut},
            {"cutoff_shape", name_of(kCutoffs, b.cutoff_shape)},
            {"temperature", b.temperature}};
}

json inner_json(const RunSpec& r)
{
    if (r.kind == RunKind::Steady) {
        return {{"kind", "steady"},
                {"rate_model", name_of(kRateModels, r.steady.rate_model)},
                {"negative_sidebands", name_of(kNegative, r.steady.options.negative_sidebands)},
                {"tail_tolerance", r.steady.options.tail_tolerance}};
    }
    const auto& c = r.cooling;
    return {{"kind", "cooling"},
            {"floor_temperature", c.floor_temperature},
            {"t_max", c.t_max},
            {"delta_policy",
             {{"kind", name_of(kPolicies, c.delta_policy.kind)}, {"value", c.delta_policy.value}}},
            {"rel_tol", c.rel_tol},
            {"abs_tol", c.abs_tol}};
}

// Cross-section constraints, checked after every section parsed.
void validate_scenario(const Scenario& s)
{
    const bool sweeping = s.run.sweep.has_value();
    const std::string rp = sweeping ? "run.inner" : "run";
    if (s.run.kind == RunKind::Steady && s.run.steady.rate_model == RateModelKind::TwoBand) {
        check(s.modulation.kind == WaveformKind::PiFlip, rp + ".rate_model",
              "two_band requires a pi_flip modulation");
    }
    if (s.run.kind == RunKind::Cooling) {
        check(s.hot.temperature > 0.0, "hot.temperature", "must be > 0 for a cooling run");
        check(s.cold.temperature > s.run.cooling.floor_temperature, "cold.temperature",
              "must exceed the floor temperature");
        const auto& dp = s.run.cooling.delta_policy;
        check(dp.kind != DeltaPolicyKind::Constant || dp.value < s.modulation.omega0,
              rp + ".delta_policy.value", "constant delta must be below modulation.omega0");
    }
}

// Locates the numeric field addressed by a dotted path.
json* resolve(json& root, const std::string& path)
{
    json* node = &root;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const auto key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty() || !node->is_object() || !node->contains(key)) return nullptr;
        node = &(*node)[key];
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return node->is_number() ? node : nullptr;
}

// Scenario JSON with the sweep removed, as evaluated at each point.
json point_template(const Scenario& s)
{
    auto j = scenario_to_json(s);
    j["run"] = inner_json(s.run);
    return j;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

PointRecord run_point(std::size_t id, std::optional<double> value, const json& inputs)
{
    PointRecord rec;
    rec.id = id;
    rec.swept_value = value;
    rec.inputs = inputs;
    rec.inputs.erase("output");
    Scenario p;
    try {
        p = scenario_from_json(inputs);
    } catch (const InvalidInput& e) {
        rec.error = e.what();
        return rec;
    }
    rec.numerical_failure = true;
    if (p.run.kind == RunKind::Steady) {
        kernels::SteadyPoint pt{p.modulation, p.cold, p.hot, p.run.steady.options,
                                p.run.steady.rate_model == RateModelKind::TwoBand, false};
        auto out = kernels::evaluate_steady(pt);
        rec.steady = std::move(out.report);
        rec.error = std::move(out.error);
        return rec;
    }
    try {
        rec.cooling = integrate_cooling(cooling_config(p));
    } catch (const StiffnessError& e) {
        rec.cooling = e.partial();
        rec.error = e.what();
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    if (rec.cooling) {
        try {
            rec.fit = fit_trajectory(*rec.cooling);
        } catch (const InvalidInput&) {
        }
    }
    return rec;
}

std::string csv_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void dump(std::ostream& out, const json& j, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            if (!first) out << ",\n";
            first = false;
            out << pad << json(k).dump() << ": ";
            dump(out, v, indent + 2);
        }
        out << "\n" << close << "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out << "[]";
            return;
        }
        out << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out << ",\n";
            out << pad;
            dump(out, j[i], indent + 2);
        }
        out << "\n" << close << "]";
        return;
    }
    case json::value_t::number_float: {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            out << "null";
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
        return;
    }
    default:
        out << j.dump();
    }
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json report_json(const SteadyStateReport& r)
{
    json channels = json::array();
    for (const auto& c : r.channels) {
        channels.push_back({{"bath", c.bath},
                            {"label", name_of(kLabels, c.label)},
                            {"m", c.m},
                            {"omega", c.omega},
                            {"polarization_flow", c.polarization_flow},
                            {"heat", c.heat}});
    }
    return {{"S_ss", r.polarization},
            {"J_C", r.cold_current},
            {"J_H", r.hot_current},
            {"work_rate", r.work_rate},
            {"sigma", number_or_null(r.entropy_production)},
            {"cooling", r.cooling},
            {"current_scale", r.current_scale},
            {"channels", channels}};
}

json trajectory_json(const CoolingTrajectory& t)
{
    json samples = json::array();
    for (const auto& s : t.samples) {
        samples.push_back({{"t", s.t},
                           {"T_C", s.temperature},
                           {"delta", s.delta},
                           {"J_C", s.cold_current},
                           {"c_V", number_or_null(s.heat_capacity)}});
    }
    const bool floor = t.status == CoolingStatus::ReachedFloor;
    return {{"status", std::string(to_string(t.status))},
            {"floor_time", floor ? json(t.floor_time) : json(nullptr)},
            {"zero_time", floor ? number_or_null(t.zero_time) : json(nullptr)},
            {"zero_time_extrapolated", t.zero_time_extrapolated},
            {"error_estimate", t.error_estimate},
            {"rejected_steps", t.rejected_steps},
            {"samples", samples}};
}

} // namespace

std::string_view to_string(RunKind kind) { return kind == RunKind::Steady ? "steady" : "cooling"; }

std::string_view to_string(OutputFormat format) { return name_of(kFormats, format); }

Scenario scenario_from_json(const json& j)
{
    require_object(j, "");
    reject_unknown(j, "", {"name", "modulation", "cold", "hot", "run", "output"});
    Scenario s;
    check(j.contains("name"), "name", "is required");
    s.name = text(j, "", "name", "");
    check(!s.name.empty(), "name", "must be non-empty");
    s.modulation = modulation_from(j.contains("modulation") ? j.at("modulation") : json::object());
    check(j.contains("cold"), "cold", "is required");
    check(j.contains("hot"), "hot", "is required");
    s.cold = bath_from(j.at("cold"), "cold", BathLabel::Cold);
    s.hot = bath_from(j.at("hot"), "hot", BathLabel::Hot);
    s.run = run_from(j.contains("run") ? j.at("run") : json::object());
    if (j.contains("output")) {
        const auto& o = j.at("output");
        require_object(o, "output");
        reject_unknown(o, "output", {"format", "path"});
        s.output.format = choice(o, "output", "format", kFormats, s.output.format);
        s.output.path = text(o, "output", "path", "");
    }
    validate_scenario(s);
    if (s.run.sweep) {
        auto point = point_template(s);
        check(resolve(point, s.run.sweep->parameter) != nullptr, "run.parameter",
              "must address an existing numeric field");
    }
    return s;
}

json scenario_to_json(const Scenario& s)
{
    json mod = {{"omega0", s.modulation.omega0},
                {"tau", s.modulation.tau},
                {"kind", name_of(kWaveforms, s.modulation.kind)},
                {"truncation", s.modulation.truncation}};
    if (s.modulation.kind == WaveformKind::Sampled) {
        mod["frequency_samples"] = s.modulation.frequency_samples;
    }
    json run = inner_json(s.run);
    if (s.run.sweep) {
        run = {{"kind", "sweep"},
               {"parameter", s.run.sweep->parameter},
               {"values", s.run.sweep->values},
               {"inner", run}};
    }
    return {{"name", s.name},
            {"modulation", mod},
            {"cold", bath_json(s.cold)},
            {"hot", bath_json(s.hot)},
            {"run", run},
            {"output", {{"format", name_of(kFormats, s.output.format)}, {"path", s.output.path}}}};
}

Scenario parse_scenario(std::string_view text)
{
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("parse error at line " + std::to_string(line) + ", column "
                             + std::to_string(col) + ": " + e.what(),
                         line, col);
    }
    return scenario_from_json(j);
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string config_hash(const Scenario& s)
{
    auto j = scenario_to_json(s);
    j.erase("output");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return hex64(h);
}

std::vector<Scenario> expand_points(const Scenario& s)
{
    if (!s.run.sweep) return {s};
    std::vector<Scenario> out;
    const auto base = point_template(s);
    for (double v : s.run.sweep->values) {
        auto j = base;
        *resolve(j, s.run.sweep->parameter) = v;
        out.push_back(scenario_from_json(j));
    }
    return out;
}

CoolingConfig cooling_config(const Scenario& s)
{
    CoolingConfig c;
    c.cold = s.cold;
    c.hot = s.hot;
    c.omega0 = s.modulation.omega0;
    c.initial_temperature = s.cold.temperature;
    c.floor_temperature = s.run.cooling.floor_temperature;
    c.t_max = s.run.cooling.t_max;
    c.delta_policy = s.run.cooling.delta_policy;
    c.rel_tol = s.run.cooling.rel_tol;
    c.abs_tol = s.run.cooling.abs_tol;
    return c;
}

RunResult run_scenario(const Scenario& s, int threads)
{
    RunResult result;
    result.scenario = s.name;
    result.config_hash = config_hash(s);
    result.kind = s.run.kind;

    const auto base = point_template(s);
    std::vector<json> inputs;
    std::vector<std::optional<double>> values;
    if (s.run.sweep) {
        result.parameter = s.run.sweep->parameter;
        for (double v : s.run.sweep->values) {
            auto j = base;
            *resolve(j, s.run.sweep->parameter) = v;
            inputs.push_back(std::move(j));
            values.emplace_back(v);
        }
    } else {
        inputs.push_back(base);
        values.emplace_back();
    }

    result.records.resize(inputs.size());
    const auto n = static_cast<long>(inputs.size());
    const int workers = threads > 0 ? threads : kernels::thread_count();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (long i = 0; i < n; ++i) {
        result.records[i] = run_point(static_cast<std::size_t>(i), values[i], inputs[i]);
    }
    return result;
}

void write_csv(std::ostream& out, const RunResult& r)
{
    out << "# scenario=" << r.scenario << " version=" << r.version
        << " config_hash=" << r.config_hash << "\n";
    const bool sweep = !r.parameter.empty();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (r.kind == RunKind::Steady) {
        out << "point_id";
        if (sweep) out << "," << r.parameter;
        out << ",S_ss,J_C,J_H,sigma,cooling\n";
        for (const auto& rec : r.records) {
            out << rec.id;
            if (sweep) out << "," << csv_number(*rec.swept_value);
            if (rec.steady) {
                const auto& s = *rec.steady;
                out << "," << csv_number(s.polarization) << "," << csv_number(s.cold_current) << ","
                    << csv_number(s.hot_current) << "," << csv_number(s.entropy_production) << ","
                    << (s.cooling ? "true" : "false") << "\n";
            } else {
                out << ",nan,nan,nan,nan,error\n";
            }
        }
        return;
    }
    if (sweep) out << "point_id," << r.parameter << ",";
    out << "t,T_C,delta,J_C,c_V\n";
    for (const auto& rec : r.records) {
        const std::string prefix =
            sweep ? std::to_string(rec.id) + "," + csv_number(*rec.swept_value) + "," : "";
        if (!rec.cooling || rec.cooling->samples.empty()) {
            out << prefix << "nan,nan,nan,nan,nan\n";
            continue;
        }
        for (const auto& smp : rec.cooling->samples) {
            out << prefix << csv_number(smp.t) << "," << csv_number(smp.temperature) << ","
                << csv_number(smp.delta) << "," << csv_number(smp.cold_current) << ","
                << csv_number(std::isfinite(smp.heat_capacity) ? smp.heat_capacity : nan) << "\n";
        }
    }
}

void write_json(std::ostream& out, const RunResult& r)
{
    json records = json::array();
    for (const auto& rec : r.records) {
        json j = {{"point_id", rec.id},
                  {"swept_value", rec.swept_value ? json(*rec.swept_value) : json(nullptr)},
                  {"inputs", rec.inputs},
                  {"error", rec.ok() ? json(nullptr) : json(rec.error)}};
        if (rec.steady) j["steady"] = report_json(*rec.steady);
        if (rec.cooling) j["cooling"] = trajectory_json(*rec.cooling);
        if (rec.fit) {
            j["fit"] = {{"gamma_eff", rec.fit->gamma_eff},
                        {"prefactor", rec.fit->prefactor},
                        {"r_squared", rec.fit->r_squared},
                        {"slope_stderr", rec.fit->slope_stderr},
                        {"samples", rec.fit->samples},
                        {"decades", rec.fit->decades}};
        }
        records.push_back(std::move(j));
    }
    const json doc = {{"scenario", r.scenario},
                      {"version", r.version},
                      {"config_hash", r.config_hash},
                      {"kind", std::string(to_string(r.kind))},
                      {"parameter", r.parameter.empty() ? json(nullptr) : json(r.parameter)},
                      {"records", records}};
    dump(out, doc, 0);
    out << "\n";
}

} // namespace qrsim
