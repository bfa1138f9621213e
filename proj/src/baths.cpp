#include "qrsim/baths.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "qrsim/errors.hpp"
#include "qrsim/quadrature.hpp"

namespace qrsim {

namespace {

constexpr double kOverflowArg = 700.0;
// exp(-w/omega_cut) support is truncated at this many cutoffs
constexpr double kExponentialSupport = 60.0;

double ratio(double num, double den)
{
    if (den > 0.0) return num / den;
    return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

} // namespace

void BathSpec::validate() const
{
    if (!(std::isfinite(prefactor) && prefactor > 0.0)) {
        throw InvalidInput("prefactor must be > 0");
    }
    if (!(std::isfinite(omega_cut) && omega_cut > 0.0)) {
        throw InvalidInput("omega_cut must be > 0");
    }
    if (!(std::isfinite(gamma) && gamma >= 0.0)) throw InvalidInput("gamma must be >= 0");
    if (!(std::isfinite(dim) && dim > 0.0)) throw InvalidInput("dim must be > 0");
    if (!(std::isfinite(temperature) && temperature >= 0.0)) {
        throw InvalidInput("temperature must be >= 0");
    }
}

BathSpec make_bath(BathPreset preset, double temperature, double omega_cut, double prefactor)
{
    BathSpec b;
    b.temperature = temperature;
    b.omega_cut = omega_cut;
    b.prefactor = prefactor;
    b.dim = 3.0;
    b.cutoff_shape = CutoffShape::Hard;
    switch (preset) {
    case BathPreset::AcousticPhonon:
        b.gamma = 1.0;
        break;
    case BathPreset::Fracton:
        b.gamma = kFractonGamma;
        break;
    case BathPreset::Magnon:
        b.gamma = 0.0;
        break;
    case BathPreset::HotCubic:
        b.label = BathLabel::Hot;
        b.gamma = 1.0;
        break;
    }
    b.validate();
    return b;
}

double occupancy(double omega, double temperature)
{
    if (!(omega > 0.0)) throw InvalidInput("occupancy: omega must be > 0");
    if (temperature < 0.0) throw InvalidInput("occupancy: temperature must be >= 0");
    if (temperature == 0.0) return 0.0;
    const double x = omega / temperature;
    if (x > kOverflowArg) return std::exp(-x);
    return 1.0 / std::expm1(x);
}

double bare_spectrum(const BathSpec& bath, double omega)
{
    if (!(omega > 0.0)) throw InvalidInput("bare_spectrum: omega must be > 0");
    double cut = 1.0;
    if (bath.cutoff_shape == CutoffShape::Hard) {
        if (omega > bath.omega_cut) return 0.0;
    } else {
        cut = std::exp(-omega / bath.omega_cut);
    }
    return bath.prefactor * std::pow(omega, bath.spectral_exponent()) * cut;
}

double coupling_spectrum(const BathSpec& bath, double omega)
{
    if (omega == 0.0 || !std::isfinite(omega)) {
        throw InvalidInput("coupling_spectrum: defined only for finite omega != 0");
    }
    if (omega > 0.0) {
        return bare_spectrum(bath, omega) * (occupancy(omega, bath.temperature) + 1.0);
    }
    if (bath.temperature == 0.0) return 0.0;
    // exp(-w/T) (n + 1) = n
    return bare_spectrum(bath, -omega) * occupancy(-omega, bath.temperature);
}

double heat_capacity(const BathSpec& bath, double temperature)
{
    if (!(std::isfinite(temperature) && temperature > 0.0)) {
        throw InvalidInput("heat_capacity: temperature must be > 0");
    }
    const double d = bath.dim;
    // u = w/T:  c_V = T^d int_0^{w_cut/T} u^(d+1) e^u / (e^u - 1)^2 du
    const double upper = std::min(bath.omega_cut / temperature, kOverflowArg);
    auto integrand = [d](double u) {
        if (u <= 0.0) return 0.0;
        const double s = std::sinh(0.5 * u);
        return std::pow(u, d + 1.0) / (4.0 * s * s);
    };
    const std::array<double, 4> breaks{1.0, 10.0, 50.0, 200.0};
    const auto r = quad::integrate(integrand, 0.0, upper, breaks, 1e-12);
    return std::pow(temperature, d) * r.value;
}

double memory_time(const BathSpec& bath) { return 1.0 / bath.omega_cut; }

double spectral_support(const BathSpec& bath)
{
    return bath.cutoff_shape == CutoffShape::Hard ? bath.omega_cut
                                                  : kExponentialSupport * bath.omega_cut;
}

SeparationReport validate_separation(const BathSpec& cold, const BathSpec& hot, double omega0,
                                     double delta, double threshold)
{
    if (!(omega0 > delta && delta > 0.0)) {
        throw InvalidInput("validate_separation requires omega0 > delta > 0");
    }
    const double upper = omega0 + delta;
    const double lower = omega0 - delta;
    const double hot_upper = coupling_spectrum(hot, upper);

    SeparationReport r;
    r.threshold = threshold;
    r.cold_upper_to_hot_upper = ratio(coupling_spectrum(cold, upper), hot_upper);
    r.hot_lower_to_hot_upper = ratio(coupling_spectrum(hot, lower), hot_upper);
    r.cold_lower_to_hot_upper = ratio(coupling_spectrum(cold, lower), hot_upper);
    r.cold_cutoff_below_upper = cold.omega_cut < upper;
    r.two_band = r.cold_upper_to_hot_upper < threshold && r.hot_lower_to_hot_upper < threshold
        && r.cold_lower_to_hot_upper < threshold && r.cold_cutoff_below_upper;
    return r;
}

std::string_view to_string(BathPreset preset)
{
    switch (preset) {
    case BathPreset::AcousticPhonon: return "acoustic_phonon";
    case BathPreset::Fracton: return "fracton";
    case BathPreset::Magnon: return "magnon";
    case BathPreset::HotCubic: return "hot_cubic";
    }
    return "?";
}

std::string_view to_string(CutoffShape shape)
{
    return shape == CutoffShape::Hard ? "hard" : "exponential";
}

std::string_view to_string(BathLabel label) { return label == BathLabel::Cold ? "cold" : "hot"; }

} // namespace qrsim
