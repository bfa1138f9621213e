#pragma once

#include <string_view>

namespace qrsim {

enum class BathLabel { Cold, Hot };
enum class CutoffShape { Hard, Exponential };

// Power-law bosonic bath: |g(w)|^2 ~ w^gamma, mode density rho(w) ~ w^(dim-1),
// so G_0(w) = prefactor * w^(gamma + dim - 1) * cutoff(w). Units: k_B = hbar = 1.
struct BathSpec {
    BathLabel label{BathLabel::Cold};
    double gamma{1.0};
    double dim{3.0};
    double prefactor{1.0};
    double omega_cut{1.0};
    CutoffShape cutoff_shape{CutoffShape::Hard};
    double temperature{0.0};

    double spectral_exponent() const { return gamma + dim - 1.0; }
    void validate() const;

    bool operator==(const BathSpec&) const = default;
};

enum class BathPreset { AcousticPhonon, Fracton, Magnon, HotCubic };

inline constexpr double kFractonGamma = 0.75;

BathSpec make_bath(BathPreset preset, double temperature, double omega_cut = 1.0,
                   double prefactor = 1.0);

// Bose-Einstein occupancy 1/(exp(w/T) - 1); zero at T = 0. Requires w > 0.
double occupancy(double omega, double temperature);

// Temperature-independent part G_0(w), w > 0.
double bare_spectrum(const BathSpec& bath, double omega);

// G_T(w) = G_0(w) (n(w) + 1) for w > 0 and its KMS extension
// G_T(-|w|) = exp(-|w|/T) G_T(|w|) for w < 0 (zero at T = 0).
double coupling_spectrum(const BathSpec& bath, double omega);

// Heat capacity per volume d/dT int_0^omega_cut w rho(w) n(w) dw, rho(w) = w^(dim-1).
double heat_capacity(const BathSpec& bath, double temperature);

// Inverse spectral width of the bath, used as its memory time.
double memory_time(const BathSpec& bath);

// Upper integration limit beyond which G_0 is negligible (Exponential) or zero (Hard).
double spectral_support(const BathSpec& bath);

struct SeparationReport {
    double cold_upper_to_hot_upper{0.0};  // G^C(w0+D) / G^H(w0+D)
    double hot_lower_to_hot_upper{0.0};   // G^H(w0-D) / G^H(w0+D)
    double cold_lower_to_hot_upper{0.0};  // G^C(w0-D) / G^H(w0+D)
    bool cold_cutoff_below_upper{false};  // omega_cut^C < w0 + D
    double threshold{1e-2};
    bool two_band{false};
};

SeparationReport validate_separation(const BathSpec& cold, const BathSpec& hot, double omega0,
                                     double delta, double threshold = 1e-2);

std::string_view to_string(BathPreset preset);
std::string_view to_string(CutoffShape shape);
std::string_view to_string(BathLabel label);

} // namespace qrsim
