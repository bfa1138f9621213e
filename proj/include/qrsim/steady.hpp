#pragma once

#include <span>
#include <vector>

#include "qrsim/baths.hpp"
#include "qrsim/floquet.hpp"
#include "qrsim/rates.hpp"

namespace qrsim {

// S = (rho_ee - rho_gg) / 2, |S| <= 1/2.
struct QubitState {
    double polarization{0.0};
};

struct ChannelCurrent {
    std::size_t bath{0};
    BathLabel label{BathLabel::Cold};
    int m{0};
    double omega{0.0};
    double polarization_flow{0.0};  // dS_m^b/dt
    double heat{0.0};               // omega * dS_m^b/dt, heat drawn from bath b
};

// Heat currents are counted as heat extracted from the bath: cold_current > 0
// is refrigeration. Their sum is minus the power fed in by the modulation.
struct SteadyStateReport {
    double polarization{0.0};
    double cold_current{0.0};
    double hot_current{0.0};
    double work_rate{0.0};           // -(cold_current + hot_current)
    double entropy_production{0.0};  // NaN when a bath sits at T = 0
    bool cooling{false};
    double current_scale{0.0};       // max_channel |omega| (R_e + R_g)
    std::vector<ChannelCurrent> channels;
};

// Currents below this fraction of current_scale count as zero.
inline constexpr double kZeroCurrentTolerance = 1e-10;

QubitState steady_polarization(const RateTable& table);

SteadyStateReport heat_currents(const RateTable& table, const QubitState& state, double omega0,
                                double delta);

// -(J_C/T_C + J_H/T_H); throws InvariantViolation when negative beyond roundoff.
double entropy_production(const SteadyStateReport& report, double cold_temperature,
                          double hot_temperature);

// Convenience pipeline: steady_polarization -> heat_currents.
SteadyStateReport solve_steady_state(const RateTable& table);

// Closed forms in the dominant-sideband limit. `weight` is the sideband weight
// P_{+-1}; every expression carries the 2 pi P prefactor of the averaged rates.
struct TwoBandInputs {
    double omega0{0.0};
    double delta{0.0};
    BathSpec cold;
    BathSpec hot;
    double weight{kPiFlipSidebandWeight};
};

// Cold current with the hot coupling dominating: (w0-D) 2piP G_0^C [n^C - n^H] / [2 n^H + 1].
double two_band_cold_current(const TwoBandInputs& in);
// Same, parameterized by the lower-sideband frequency x = omega0 - Delta
// (upper sideband at 2 omega0 - x); avoids cancellation for x << omega0.
double two_band_cold_current_at_offset(const TwoBandInputs& in, double offset);
// Quasi-steady polarization with both sideband channels.
double two_band_polarization(const TwoBandInputs& in);
// Cold polarization flow with both sideband channels.
double two_band_polarization_flow(const TwoBandInputs& in);
// Cold polarization flow for wide spectra: four cross terms over the common
// denominator K.
double wide_band_polarization_flow(const TwoBandInputs& in);

// Delta at which (w0 + D)/T_H = (w0 - D)/T_C.
double cooling_boundary_delta(double omega0, double cold_temperature, double hot_temperature);

// Steady state from the Floquet-expanded Lindblad generator: the 4x4 Liouvillian
// is assembled channel by channel and its kernel solved numerically.
SteadyStateReport lindblad_floquet_steady(const HarmonicSpectrum& spec, double omega0,
                                          std::span<const BathSpec> baths,
                                          const RateOptions& options = {});

// Closed-form population ratio rho_ee/rho_gg of the Lindblad steady state.
double lindblad_population_ratio(const HarmonicSpectrum& spec, double omega0,
                                 std::span<const BathSpec> baths,
                                 const RateOptions& options = {});

} // namespace qrsim
