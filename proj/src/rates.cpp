#include "qrsim/rates.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "qrsim/errors.hpp"
#include "qrsim/quadrature.hpp"

namespace qrsim {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void add_entry(RateTable& table, RateEntry e)
{
    table.total_emission += e.emission;
    table.total_absorption += e.absorption;
    table.entries.push_back(e);
}

double sinc(double x)
{
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// (exp(i a t) - 1) / (i a)
cplx kernel(double a, double t)
{
    const double s = sinc(0.5 * a * t);
    return {t * sinc(a * t), 0.5 * a * t * t * s * s};
}

} // namespace

double RateTable::emission(BathLabel label) const
{
    double s = 0.0;
    for (const auto& e : entries) {
        if (e.label == label) s += e.emission;
    }
    return s;
}

double RateTable::absorption(BathLabel label) const
{
    double s = 0.0;
    for (const auto& e : entries) {
        if (e.label == label) s += e.absorption;
    }
    return s;
}

RateTable averaged_rates(const HarmonicSpectrum& spec, double omega0,
                         std::span<const BathSpec> baths, const RateOptions& options)
{
    if (!(std::isfinite(omega0) && omega0 > 0.0)) {
        throw InvalidInput("averaged_rates: omega0 must be > 0");
    }
    if (spec.tail_mass > options.tail_tolerance) {
        throw AccuracyError("harmonic spectrum tail mass above tolerance", spec.tail_mass,
                            options.tail_tolerance);
    }
    for (const auto& b : baths) b.validate();

    RateTable table;
    table.omega0 = omega0;
    table.delta = spec.delta;
    for (const auto& h : spec.entries) {
        if (h.weight == 0.0) continue;
        const double omega = omega0 + h.m * spec.delta;
        const bool drop = omega == 0.0
            || (omega < 0.0 && options.negative_sidebands == NegativeSidebands::Exclude);
        if (drop) {
            table.excluded_mass += h.weight;
            continue;
        }
        for (std::size_t b = 0; b < baths.size(); ++b) {
            RateEntry e;
            e.bath = b;
            e.label = baths[b].label;
            e.temperature = baths[b].temperature;
            e.m = h.m;
            e.omega = omega;
            e.weight = h.weight;
            e.emission = kTwoPi * h.weight * coupling_spectrum(baths[b], omega);
            e.absorption = kTwoPi * h.weight * coupling_spectrum(baths[b], -omega);
            add_entry(table, e);
        }
    }
    return table;
}

RateTable two_band_rates(double omega0, double delta, const BathSpec& cold, const BathSpec& hot,
                         double sideband_weight)
{
    if (!(omega0 > delta && delta > 0.0)) {
        throw InvalidInput("two_band_rates requires omega0 > delta > 0");
    }
    cold.validate();
    hot.validate();
    RateTable table;
    table.omega0 = omega0;
    table.delta = delta;

    auto channel = [&](std::size_t index, const BathSpec& bath, int m) {
        RateEntry e;
        e.bath = index;
        e.label = bath.label;
        e.temperature = bath.temperature;
        e.m = m;
        e.omega = omega0 + m * delta;
        e.weight = sideband_weight;
        e.emission = kTwoPi * sideband_weight * coupling_spectrum(bath, e.omega);
        e.absorption = kTwoPi * sideband_weight * coupling_spectrum(bath, -e.omega);
        add_entry(table, e);
    };
    channel(0, cold, -1);
    channel(1, hot, +1);
    return table;
}

RateTable two_band_rates(double omega0, double delta, const BathSpec& cold, const BathSpec& hot)
{
    return two_band_rates(omega0, delta, cold, hot, kPiFlipSidebandWeight);
}

InstantRates time_dependent_rates(const ModulationScheme& mod, const BathSpec& bath, double t)
{
    if (!(std::isfinite(t) && t >= 0.0)) {
        throw InvalidInput("time_dependent_rates: t must be >= 0");
    }
    bath.validate();
    if (t == 0.0) return {};

    const auto spec = harmonic_spectrum(mod);
    const double w0 = mod.omega0;
    const double support = spectral_support(bath);
    const double lower = bath.temperature > 0.0 ? -support : 0.0;

    auto G = [&](double w) { return w == 0.0 ? 0.0 : coupling_spectrum(bath, w); };

    double g_max = 0.0;
    for (int i = 1; i <= 256; ++i) {
        const double w = support * i / 256.0;
        g_max = std::max({g_max, G(w), G(-w)});
    }
    const double abs_tol = 1e-10 * t * (support - lower) * std::max(g_max, 1e-300);

    // breakpoints: spectrum edges plus a grid resolving the kernel oscillation
    std::vector<double> grid{0.0, bath.omega_cut, -bath.omega_cut};
    const double spacing = std::max(std::numbers::pi / t, (support - lower) / 2000.0);
    for (double w = lower + spacing; w < support; w += spacing) grid.push_back(w);

    auto integral = [&](double peak, bool emission) {
        std::vector<double> breaks = grid;
        for (double k : {-2.0, -1.0, 0.0, 1.0, 2.0}) breaks.push_back(peak + k * std::numbers::pi / t);
        auto part = [&](bool imag) {
            return quad::integrate(
                       [&](double w) {
                           const double a = emission ? peak - w : w - peak;
                           const cplx k = kernel(a, t);
                           return G(w) * (imag ? k.imag() : k.real());
                       },
                       lower, support, breaks, 1e-9, abs_tol)
                .value;
        };
        return cplx{part(false), part(true)};
    };

    cplx eps_t{};
    for (const auto& h : spec.entries) {
        eps_t += h.amplitude * std::polar(1.0, h.m * spec.delta * t);
    }

    cplx sum_e{};
    cplx sum_g{};
    for (const auto& h : spec.entries) {
        if (h.weight == 0.0) continue;
        const double wl = h.m * spec.delta;
        const cplx pre = std::conj(h.amplitude) * std::polar(1.0, -wl * t);
        sum_e += pre * integral(w0 + wl, true);
        sum_g += pre * integral(-(w0 + wl), false);
    }
    return {2.0 * (eps_t * sum_e).real(), 2.0 * (eps_t * sum_g).real()};
}

} // namespace qrsim
