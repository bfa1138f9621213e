#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qrsim/baths.hpp"
#include "qrsim/errors.hpp"
#include "qrsim/rates.hpp"

namespace qrsim {

enum class DeltaPolicyKind { Optimized, FixedOffset, Constant };

// Optimized: maximize the cold current at every evaluation.
// FixedOffset: omega0 - Delta = value * T_C.
// Constant: Delta = value.
struct DeltaPolicy {
    DeltaPolicyKind kind{DeltaPolicyKind::Optimized};
    double value{0.0};

    bool operator==(const DeltaPolicy&) const = default;
};

struct CoolingConfig {
    BathSpec cold;
    BathSpec hot;
    double omega0{1.0};
    double initial_temperature{0.1};
    double floor_temperature{1e-6};
    double t_max{1.0};
    DeltaPolicy delta_policy{};
    double rel_tol{1e-8};
    double abs_tol{0.0};  // 0: 1e-3 * floor_temperature
    double sideband_weight{kPiFlipSidebandWeight};

    void validate() const;
    bool operator==(const CoolingConfig&) const = default;
};

struct CoolingSample {
    double t{0.0};
    double temperature{0.0};
    double delta{0.0};
    double cold_current{0.0};
    double heat_capacity{0.0};

    double rate() const { return -cold_current / heat_capacity; }
};

enum class CoolingStatus { ReachedFloor, TimedOut, StalledNonCooling };

std::string_view to_string(CoolingStatus status);

struct ScalingFit {
    double gamma_eff{0.0};
    double log_prefactor{0.0};
    double prefactor{0.0};  // A_eff in dT/dt = -A T^gamma
    double r_squared{0.0};
    double slope_stderr{0.0};
    std::size_t samples{0};
    double decades{0.0};
};

struct CoolingTrajectory {
    std::vector<CoolingSample> samples;
    CoolingStatus status{CoolingStatus::TimedOut};
    double floor_time{0.0};    // time T_floor was reached (ReachedFloor only)
    double zero_time{0.0};     // floor_time plus the power-law extrapolation to T = 0
    bool zero_time_extrapolated{false};
    double error_estimate{0.0};  // accumulated local error estimates
    std::size_t rejected_steps{0};
};

struct DeltaOptimum {
    double delta{0.0};
    double cold_current{0.0};
};

class NotCoolable : public Error {
public:
    NotCoolable(const std::string& what, DeltaOptimum least_negative)
        : Error(what), least_negative_(least_negative) {}
    const DeltaOptimum& least_negative() const noexcept { return least_negative_; }

private:
    DeltaOptimum least_negative_;
};

class StiffnessError : public Error {
public:
    StiffnessError(const std::string& what, CoolingTrajectory partial)
        : Error(what), partial_(std::move(partial)) {}
    const CoolingTrajectory& partial() const noexcept { return partial_; }

private:
    CoolingTrajectory partial_;
};

inline constexpr int kDeltaScanPoints = 128;

// Delta maximizing the two-band cold current at cold temperature T_C; grid
// scan over log(omega0 - Delta) followed by golden-section refinement.
DeltaOptimum optimize_delta(double cold_temperature, double omega0, const BathSpec& cold,
                            const BathSpec& hot, double sideband_weight = kPiFlipSidebandWeight);

// Scan interval of omega0 - Delta used by optimize_delta.
std::pair<double, double> offset_scan_range(double cold_temperature, double omega0,
                                            const BathSpec& cold);

struct CoolingRate {
    double dTdt{0.0};
    double delta{0.0};
    double cold_current{0.0};
    double heat_capacity{1.0};
};

// Cooling law as a function of T_C; may throw NotCoolable.
using RateModel = std::function<CoolingRate(double)>;

struct IntegratorOptions {
    double initial_temperature{1.0};
    double floor_temperature{1e-6};
    double t_max{1.0};
    double rel_tol{1e-8};
    double abs_tol{1e-12};
    double max_relative_change{1e-2};  // quasi-static cap on |dT|/T per step
    int max_halvings{60};
    std::size_t max_steps{1'000'000};
};

CoolingTrajectory integrate_trajectory(const RateModel& model, const IntegratorOptions& options);

RateModel cooling_rate_model(const CoolingConfig& config);

// dT/dt = -A T^gamma.
RateModel power_law_model(double prefactor, double gamma);

CoolingTrajectory integrate_cooling(const CoolingConfig& config);

// Least-squares fit of log(-dT/dt) against log T over (T, dT/dt) pairs.
ScalingFit fit_scaling_exponent(std::span<const std::pair<double, double>> samples);

// Fit over the trajectory samples with T_C inside [t_lo, t_hi].
ScalingFit fit_trajectory(const CoolingTrajectory& trajectory, double t_lo = 0.0,
                          double t_hi = 1e300);

struct LineFit {
    double slope{0.0};
    double intercept{0.0};
    double r_squared{0.0};
    double slope_stderr{0.0};
};

LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

} // namespace qrsim
