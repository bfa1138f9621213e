#include "qrsim/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "qrsim/errors.hpp"
#include "qrsim/quadrature.hpp"

namespace qrsim {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

constexpr int kMaxRefinements = 12;

bool is_finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

HarmonicSpectrum from_coefficients(const std::vector<cplx>& eps, int max_m, double delta)
{
    HarmonicSpectrum spec;
    spec.delta = delta;
    double mass = 0.0;
    for (int m = -max_m; m <= max_m; ++m) {
        const cplx c = eps[static_cast<std::size_t>(m + max_m)];
        const double w = std::norm(c);
        spec.entries.push_back({m, w, c});
        mass += w;
    }
    spec.tail_mass = 1.0 - mass;
    return spec;
}

// Phase of exp(i int_0^t (nu - omega0)) for a piecewise-linear nu.
struct SampledPhase {
    double dt;
    double omega0;
    std::span<const double> nu;
    std::vector<double> cumulative;

    SampledPhase(double period, double w0, std::span<const double> samples)
        : dt(period / static_cast<double>(samples.size() - 1)), omega0(w0), nu(samples)
    {
        cumulative.resize(samples.size(), 0.0);
        for (std::size_t j = 1; j < samples.size(); ++j) {
            cumulative[j] = cumulative[j - 1]
                + dt * (0.5 * (samples[j - 1] + samples[j]) - omega0);
        }
    }

    double operator()(double t) const
    {
        const auto n = nu.size() - 1;
        double pos = t / dt;
        auto j = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, double(n - 1)));
        const double s = t - double(j) * dt;
        const double slope = (nu[j + 1] - nu[j]) / dt;
        return cumulative[j] + s * (nu[j] - omega0) + 0.5 * slope * s * s;
    }
};

} // namespace

double ModulationScheme::period() const
{
    switch (kind) {
    case WaveformKind::PiFlip:
        return 2.0 * tau;
    case WaveformKind::Unmodulated:
    case WaveformKind::Sampled:
        return tau;
    }
    return tau;
}

void ModulationScheme::validate() const
{
    if (!is_finite_positive(omega0)) throw InvalidInput("modulation.omega0 must be > 0");
    if (!is_finite_positive(tau)) throw InvalidInput("modulation.tau must be > 0");
    if (truncation < 1) throw InvalidInput("modulation.truncation must be >= 1");
    if (kind != WaveformKind::Sampled) return;

    if (frequency_samples.size() < 3) {
        throw InvalidInput("modulation.frequency_samples: need at least 3 samples covering one period");
    }
    double scale = 0.0;
    for (double v : frequency_samples) {
        if (!std::isfinite(v)) throw InvalidInput("modulation.frequency_samples: non-finite sample");
        scale = std::max(scale, std::abs(v));
    }
    if (std::abs(frequency_samples.front() - frequency_samples.back()) > 1e-9 * scale) {
        throw InvalidInput("modulation.frequency_samples: first and last samples differ (non-periodic)");
    }
    SampledPhase phase(tau, omega0, frequency_samples);
    const double closure = phase.cumulative.back() / (2.0 * kPi);
    if (std::abs(closure - std::round(closure)) > 1e-9 * std::max(1.0, std::abs(closure))) {
        throw InvalidInput(
            "modulation.frequency_samples: accumulated phase over one period is not a multiple of 2pi");
    }
}

double HarmonicSpectrum::weight(int m) const
{
    for (const auto& h : entries) {
        if (h.m == m) return h.weight;
    }
    return 0.0;
}

double HarmonicSpectrum::retained_mass() const
{
    double s = 0.0;
    for (const auto& h : entries) s += h.weight;
    return s;
}

int HarmonicSpectrum::max_index() const
{
    int out = 0;
    for (const auto& h : entries) out = std::max(out, std::abs(h.m));
    return out;
}

std::vector<cplx> phase_factor_coefficients(const std::function<cplx(double)>& eps,
                                            double period,
                                            std::span<const double> breakpoints, int max_m,
                                            double tol)
{
    if (!is_finite_positive(period)) throw InvalidInput("period must be > 0");
    if (max_m < 0) throw InvalidInput("max_m must be >= 0");

    std::vector<double> edges{0.0};
    for (double b : quad::interior_points(breakpoints, 0.0, period)) edges.push_back(b);
    edges.push_back(period);

    const double w = 2.0 * kPi / period;
    const auto count = static_cast<std::size_t>(2 * max_m + 1);

    const auto& nodes = boost::math::quadrature::gauss<double, 20>::abscissa();
    const auto& weights = boost::math::quadrature::gauss<double, 20>::weights();

    auto evaluate = [&](int panels) {
        std::vector<cplx> out(count);
        auto accumulate = [&](double t, double wt) {
            const cplx e = wt * eps(t);
            for (std::size_t k = 0; k < count; ++k) {
                const int m = static_cast<int>(k) - max_m;
                out[k] += e * std::polar(1.0, -m * w * t);
            }
        };
        for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
            const double h = (edges[e + 1] - edges[e]) / panels;
            for (int p = 0; p < panels; ++p) {
                const double mid = edges[e] + (p + 0.5) * h;
                const double half = 0.5 * h;
                for (std::size_t i = 0; i < nodes.size(); ++i) {
                    if (nodes[i] == 0.0) {
                        accumulate(mid, half * weights[i]);
                    } else {
                        accumulate(mid - half * nodes[i], half * weights[i]);
                        accumulate(mid + half * nodes[i], half * weights[i]);
                    }
                }
            }
        }
        for (auto& c : out) c /= period;
        return out;
    };

    // enough panels to resolve the highest harmonic on every segment
    int panels = std::max(1, (max_m + 19) / 20);
    auto previous = evaluate(panels);
    for (int level = 0; level < kMaxRefinements; ++level) {
        panels *= 2;
        auto current = evaluate(panels);
        double change = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            change = std::max(change, std::abs(current[k] - previous[k]));
        }
        previous = std::move(current);
        if (change < tol) return previous;
    }
    double mass = 0.0;
    for (const auto& c : previous) mass += std::norm(c);
    throw AccuracyError("phase-factor quadrature did not converge", 1.0 - mass);
}

double pi_flip_partial_mass(int max_m)
{
    double s = 0.0;
    // small terms first
    for (int m = (max_m % 2 == 0) ? max_m - 1 : max_m; m >= 1; m -= 2) {
        s += 2.0 * 4.0 / (double(m) * m * kPi * kPi);
    }
    return s;
}

HarmonicSpectrum harmonic_spectrum(const ModulationScheme& mod)
{
    mod.validate();
    const int max_m = mod.truncation;
    switch (mod.kind) {
    case WaveformKind::Unmodulated: {
        HarmonicSpectrum spec;
        spec.delta = 0.0;
        spec.entries.push_back({0, 1.0, cplx{1.0, 0.0}});
        spec.tail_mass = 0.0;
        return spec;
    }
    case WaveformKind::PiFlip: {
        std::vector<cplx> eps(static_cast<std::size_t>(2 * max_m + 1));
        for (int m = -max_m; m <= max_m; ++m) {
            if (m % 2 != 0) {
                eps[static_cast<std::size_t>(m + max_m)] = cplx{0.0, -2.0 / (m * kPi)};
            }
        }
        auto spec = from_coefficients(eps, max_m, kPi / mod.tau);
        spec.tail_mass = 1.0 - pi_flip_partial_mass(max_m);
        return spec;
    }
    case WaveformKind::Sampled: {
        SampledPhase phase(mod.tau, mod.omega0, mod.frequency_samples);
        std::vector<double> breaks;
        const auto n = mod.frequency_samples.size() - 1;
        for (std::size_t j = 1; j < n; ++j) breaks.push_back(double(j) * phase.dt);
        auto eps = phase_factor_coefficients(
            [&](double t) { return std::polar(1.0, phase(t)); }, mod.tau, breaks, max_m);
        auto spec = from_coefficients(eps, max_m, 2.0 * kPi / mod.tau);
        if (spec.tail_mass < -1e-8) {
            throw AccuracyError("harmonic weights exceed unit mass", spec.tail_mass);
        }
        return spec;
    }
    }
    throw InvalidInput("unknown waveform kind");
}

double dominant_shift(const ModulationScheme& mod)
{
    mod.validate();
    switch (mod.kind) {
    case WaveformKind::Unmodulated:
        return 0.0;
    case WaveformKind::PiFlip:
        return kPi / mod.tau;
    case WaveformKind::Sampled: {
        const auto spec = harmonic_spectrum(mod);
        const Harmonic* best = nullptr;
        for (const auto& h : spec.entries) {
            if (h.m != 0 && (!best || h.weight > best->weight)) best = &h;
        }
        return best ? std::abs(best->m) * spec.delta : 0.0;
    }
    }
    return 0.0;
}

} // namespace qrsim
