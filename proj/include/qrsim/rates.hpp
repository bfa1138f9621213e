#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qrsim/baths.hpp"
#include "qrsim/floquet.hpp"

namespace qrsim {

// How sidebands with omega0 + m*delta <= 0 are treated.
enum class NegativeSidebands {
    Exclude,  // dropped; their weight is reported as excluded_mass
    Include,  // kept with G_T evaluated at the negative frequency (KMS extension)
};

struct RateOptions {
    double tail_tolerance{1e-2};
    NegativeSidebands negative_sidebands{NegativeSidebands::Exclude};
};

// One (bath, harmonic) channel of the averaged rate equation.
struct RateEntry {
    std::size_t bath{0};
    BathLabel label{BathLabel::Cold};
    double temperature{0.0};
    int m{0};
    double omega{0.0};       // omega0 + m*delta
    double weight{0.0};      // P_m
    double emission{0.0};    // 2 pi P_m G_T(omega):  e -> g
    double absorption{0.0};  // 2 pi P_m G_T(-omega): g -> e
};

struct RateTable {
    double omega0{0.0};
    double delta{0.0};
    std::vector<RateEntry> entries;
    double total_emission{0.0};    // R_e
    double total_absorption{0.0};  // R_g
    double excluded_mass{0.0};

    double emission(BathLabel label) const;
    double absorption(BathLabel label) const;
};

RateTable averaged_rates(const HarmonicSpectrum& spec, double omega0,
                         std::span<const BathSpec> baths, const RateOptions& options = {});

// Dominant-sideband limit: the cold bath only at omega0 - delta and the hot bath
// only at omega0 + delta, each with weight `sideband_weight` (pi-flip: (2/pi)^2).
RateTable two_band_rates(double omega0, double delta, const BathSpec& cold,
                         const BathSpec& hot, double sideband_weight);
RateTable two_band_rates(double omega0, double delta, const BathSpec& cold,
                         const BathSpec& hot);

inline constexpr double kPiFlipSidebandWeight = 4.0 / (3.14159265358979323846 * 3.14159265358979323846);

struct InstantRates {
    double emission{0.0};    // R_e(t)
    double absorption{0.0};  // R_g(t)
};

// Non-Markovian rates at time t from the double harmonic sum with the
// sin(a t)/a and sin^2(a t/2)/a kernels integrated against G_T. Values may be
// transiently negative.
InstantRates time_dependent_rates(const ModulationScheme& mod, const BathSpec& bath, double t);

} // namespace qrsim
