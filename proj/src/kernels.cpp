#include "qrsim/kernels.hpp"

#include <algorithm>
#include <exception>

#include <omp.h>

namespace qrsim::kernels {

std::vector<double> scan_cold_current(const TwoBandInputs& base, std::span<const double> offsets,
                                      Execution exec)
{
    std::vector<double> out(offsets.size());
    const auto n = static_cast<long>(offsets.size());
    if (exec == Execution::Serial) {
        for (long i = 0; i < n; ++i) out[i] = two_band_cold_current_at_offset(base, offsets[i]);
        return out;
    }
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) out[i] = two_band_cold_current_at_offset(base, offsets[i]);
    return out;
}

SteadyOutcome evaluate_steady(const SteadyPoint& point)
{
    SteadyOutcome out;
    try {
        const std::vector<BathSpec> baths{point.cold, point.hot};
        if (point.two_band) {
            const double delta = dominant_shift(point.modulation);
            const auto spec = harmonic_spectrum(point.modulation);
            const double weight = std::max(spec.weight(1), spec.weight(-1));
            out.report = solve_steady_state(
                two_band_rates(point.modulation.omega0, delta, point.cold, point.hot, weight));
        } else {
            const auto spec = harmonic_spectrum(point.modulation);
            out.report = solve_steady_state(
                averaged_rates(spec, point.modulation.omega0, baths, point.options));
            if (point.with_lindblad) {
                out.lindblad =
                    lindblad_floquet_steady(spec, point.modulation.omega0, baths, point.options);
            }
        }
        if (point.cold.temperature > 0.0 && point.hot.temperature > 0.0) {
            out.report->entropy_production = entropy_production(
                *out.report, point.cold.temperature, point.hot.temperature);
        }
    } catch (const std::exception& e) {
        out.report.reset();
        out.lindblad.reset();
        out.error = e.what();
    }
    return out;
}

std::vector<SteadyOutcome> steady_batch(std::span<const SteadyPoint> points, Execution exec)
{
    std::vector<SteadyOutcome> out(points.size());
    const auto n = static_cast<long>(points.size());
    if (exec == Execution::Serial) {
        for (long i = 0; i < n; ++i) out[i] = evaluate_steady(points[i]);
        return out;
    }
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) out[i] = evaluate_steady(points[i]);
    return out;
}

InstantRates period_averaged_rates(const ModulationScheme& mod, const BathSpec& bath,
                                   double t_start, int samples, Execution exec)
{
    const double period = mod.period();
    std::vector<InstantRates> values(static_cast<std::size_t>(samples));
    std::vector<std::exception_ptr> errors(values.size());
    auto eval = [&](long j) {
        try {
            values[j] = time_dependent_rates(mod, bath, t_start + period * double(j) / samples);
        } catch (...) {
            errors[j] = std::current_exception();
        }
    };
    if (exec == Execution::Serial) {
        for (long j = 0; j < samples; ++j) eval(j);
    } else {
#pragma omp parallel for schedule(dynamic)
        for (long j = 0; j < samples; ++j) eval(j);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    // fixed summation order keeps the result independent of the thread count
    InstantRates avg;
    for (const auto& v : values) {
        avg.emission += v.emission;
        avg.absorption += v.absorption;
    }
    avg.emission /= samples;
    avg.absorption /= samples;
    return avg;
}

void set_thread_count(int threads)
{
    if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

} // namespace qrsim::kernels
