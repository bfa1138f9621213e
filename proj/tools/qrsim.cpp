#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qrsim/kernels.hpp"
#include "qrsim/scenario.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kNumerical = 3 };

struct Options {
    std::string scenario;
    std::string out;
    std::string format;
    int threads{0};
    std::optional<unsigned long> seed;
};

int env_threads()
{
    const char* v = std::getenv("QRSIM_THREADS");
    if (!v || !*v) return 0;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    return (*end == '\0' && n > 0) ? static_cast<int>(n) : -1;
}

int execute(const std::string& command, const Options& opt)
{
    qrsim::Scenario s;
    try {
        s = qrsim::load_scenario(opt.scenario);
    } catch (const qrsim::InvalidInput& e) {
        std::cerr << "qrsim: " << e.what() << "\n";
        return kValidation;
    }

    if (command == "validate") {
        std::cout << "ok " << s.name << " kind=" << (s.run.sweep ? "sweep" : qrsim::to_string(s.run.kind))
                  << " points=" << (s.run.sweep ? s.run.sweep->values.size() : 1)
                  << " config_hash=" << qrsim::config_hash(s) << "\n";
        return kOk;
    }

    const bool match = command == "sweep" ? s.run.sweep.has_value()
                     : !s.run.sweep && s.run.kind == (command == "steady" ? qrsim::RunKind::Steady
                                                                           : qrsim::RunKind::Cooling);
    if (!match) {
        std::cerr << "qrsim: scenario '" << s.name << "' is not a " << command << " run\n";
        return kUsage;
    }

    int threads = opt.threads;
    if (threads <= 0) {
        threads = env_threads();
        if (threads < 0) {
            std::cerr << "qrsim: QRSIM_THREADS must be a positive integer\n";
            return kUsage;
        }
    }
    if (threads > 0) qrsim::kernels::set_thread_count(threads);

    auto format = s.output.format;
    if (!opt.format.empty()) format = opt.format == "json" ? qrsim::OutputFormat::Json : qrsim::OutputFormat::Csv;
    const std::string path = !opt.out.empty() ? opt.out : s.output.path;

    const auto result = qrsim::run_scenario(s, threads);

    std::ofstream file;
    if (!path.empty() && path != "-") {
        file.open(path, std::ios::binary);
        if (!file) {
            std::cerr << "qrsim: cannot write '" << path << "'\n";
            return kUsage;
        }
    }
    std::ostream& out = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
    if (format == qrsim::OutputFormat::Json) {
        qrsim::write_json(out, result);
    } else {
        qrsim::write_csv(out, result);
    }
    out.flush();

    int code = kOk;
    for (const auto& rec : result.records) {
        if (rec.ok()) continue;
        std::cerr << "qrsim: point " << rec.id << ": " << rec.error << "\n";
        code = std::max(code, rec.numerical_failure ? int(kNumerical) : int(kValidation));
    }
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Phase-flip quantum refrigerator simulator"};
    app.set_version_flag("--version", std::string(qrsim::kVersion));
    app.require_subcommand(1, 1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool runs) {
        sub->add_option("--scenario", opt.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
        if (!runs) return;
        sub->add_option("--out", opt.out, "Output path (default: scenario output.path, else stdout)");
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--threads", opt.threads, "Worker threads (fallback: QRSIM_THREADS)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "Seed reserved for randomized suites");
    };
    add_common(app.add_subcommand("steady", "Steady-state heat currents"), true);
    add_common(app.add_subcommand("cool", "Cooling trajectory of the cold bath"), true);
    add_common(app.add_subcommand("sweep", "Parameter sweep of a steady or cooling run"), true);
    add_common(app.add_subcommand("validate", "Load and validate a scenario"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        if (rc == 0) return kOk;
        // a missing scenario file is a usage problem, not a scenario problem
        return kUsage;
    }

    const auto* sub = app.get_subcommands().front();
    try {
        return execute(sub->get_name(), opt);
    } catch (const qrsim::InvalidInput& e) {
        std::cerr << "qrsim: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "qrsim: " << e.what() << "\n";
        return kNumerical;
    }
}
