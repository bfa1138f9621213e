#pragma once

// Data-parallel kernels. Every kernel has a serial reference path selected by
// Execution::Serial; the parallel path distributes independent points over
// OpenMP threads and writes results by index, so both paths agree bit for bit.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrsim/baths.hpp"
#include "qrsim/floquet.hpp"
#include "qrsim/rates.hpp"
#include "qrsim/steady.hpp"

namespace qrsim::kernels {

enum class Execution { Serial, Parallel };

// Two-band cold current at each lower-sideband offset omega0 - Delta.
std::vector<double> scan_cold_current(const TwoBandInputs& base, std::span<const double> offsets,
                                      Execution exec = Execution::Serial);

struct SteadyPoint {
    ModulationScheme modulation;
    BathSpec cold;
    BathSpec hot;
    RateOptions options{};
    bool two_band{false};       // dominant-sideband rates instead of the full spectrum
    bool with_lindblad{false};  // also solve the Lindblad-Floquet steady state
};

struct SteadyOutcome {
    std::optional<SteadyStateReport> report;
    std::optional<SteadyStateReport> lindblad;
    std::string error;
};

SteadyOutcome evaluate_steady(const SteadyPoint& point);

std::vector<SteadyOutcome> steady_batch(std::span<const SteadyPoint> points,
                                        Execution exec = Execution::Serial);

// Average of R_e(t), R_g(t) over one modulation period starting at t_start,
// sampled on `samples` uniform points.
InstantRates period_averaged_rates(const ModulationScheme& mod, const BathSpec& bath,
                                   double t_start, int samples,
                                   Execution exec = Execution::Serial);

void set_thread_count(int threads);
int thread_count();

} // namespace qrsim::kernels
