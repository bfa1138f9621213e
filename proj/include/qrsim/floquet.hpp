#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace qrsim {

enum class WaveformKind { PiFlip, Unmodulated, Sampled };

// Periodic modulation of the qubit frequency around its mean omega0.
//
// PiFlip: the phase factor flips sign every `tau`, so its true period is 2*tau.
// Sampled: `frequency_samples` holds nu(t) on a uniform grid t_j = j*tau/N,
// j = 0..N, covering exactly one period `tau` (first and last sample equal).
struct ModulationScheme {
    double omega0{1.0};
    double tau{1.0};
    WaveformKind kind{WaveformKind::PiFlip};
    int truncation{51};
    std::vector<double> frequency_samples;

    // Period of the phase factor.
    double period() const;
    // Throws InvalidInput on a malformed scheme.
    void validate() const;

    bool operator==(const ModulationScheme&) const = default;
};

struct Harmonic {
    int m{0};
    double weight{0.0};
    std::complex<double> amplitude{};
};

// Sidebands at omega0 + m*delta with weights P_m = |eps_m|^2.
struct HarmonicSpectrum {
    double delta{0.0};
    std::vector<Harmonic> entries;
    double tail_mass{0.0};

    double weight(int m) const;
    double retained_mass() const;
    int max_index() const;
};

inline constexpr int kDefaultTruncation = 51;

HarmonicSpectrum harmonic_spectrum(const ModulationScheme& mod);

// Offset of the dominant sideband pair: pi/tau for PiFlip, 0 when unmodulated.
double dominant_shift(const ModulationScheme& mod);

// Fourier coefficients eps_m = (1/P) int_0^P eps(t) exp(-i m (2pi/P) t) dt,
// m = -max_m..max_m, of a periodic phase factor, by composite Gauss-Legendre
// refined until no coefficient moves by more than `tol`. `breakpoints` marks
// discontinuities of eps inside (0, P).
std::vector<std::complex<double>> phase_factor_coefficients(
    const std::function<std::complex<double>(double)>& eps, double period,
    std::span<const double> breakpoints, int max_m, double tol = 1e-10);

// Sum of the analytic pi-flip weights 4/(m^2 pi^2) over odd |m| <= max_m.
double pi_flip_partial_mass(int max_m);

} // namespace qrsim
