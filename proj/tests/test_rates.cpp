#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "qrsim/errors.hpp"
#include "qrsim/rates.hpp"

using namespace qrsim;
using std::numbers::pi;

namespace {

// Si(x) by Gauss-Kronrod over half-periods of sin(u)/u
double sine_integral(double x)
{
    if (x == 0.0) return 0.0;
    const double sgn = x < 0 ? -1.0 : 1.0;
    x = std::abs(x);
    double s = 0.0;
    for (double a = 0.0; a < x; a += pi) {
        const double b = std::min(a + pi, x);
        s += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [](double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; }, a, b, 0, 1e-14);
    }
    return sgn * s;
}

ModulationScheme pi_flip(double w0, double delta)
{
    ModulationScheme m;
    m.omega0 = w0;
    m.tau = pi / delta;
    return m;
}

} // namespace

TEST_SUITE("rates") {

TEST_CASE("two-band cold emission carries 8/pi")
{
    const double w0 = 1.0, delta = 0.6;
    const auto cold = make_bath(BathPreset::Magnon, 0.3, 0.5);
    const double x = w0 - delta;
    const double expected = 8.0 / pi * bare_spectrum(cold, x) * (occupancy(x, cold.temperature) + 1.0);

    const auto hot = make_bath(BathPreset::HotCubic, 1.0, 50.0);
    const auto tb = two_band_rates(w0, delta, cold, hot);
    CHECK(tb.emission(BathLabel::Cold) == doctest::Approx(expected).epsilon(1e-14));

    // full spectrum: only m = -1 lands below the cold cutoff
    const std::vector<BathSpec> baths{cold};
    const auto table = averaged_rates(harmonic_spectrum(pi_flip(w0, delta)), w0, baths);
    CHECK(table.total_emission == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("zero-temperature bath does not excite")
{
    const auto cold = make_bath(BathPreset::AcousticPhonon, 0.0, 5.0);
    const std::vector<BathSpec> baths{cold};
    const auto table = averaged_rates(harmonic_spectrum(pi_flip(2.0, 0.5)), 2.0, baths);
    CHECK(table.total_absorption == 0.0);
    CHECK(table.total_emission > 0.0);
}

TEST_CASE("unmodulated rates are 2 pi G")
{
    ModulationScheme mod;
    mod.kind = WaveformKind::Unmodulated;
    mod.omega0 = 0.8;
    const auto bath = make_bath(BathPreset::Fracton, 0.4, 3.0);
    const std::vector<BathSpec> baths{bath};
    const auto table = averaged_rates(harmonic_spectrum(mod), mod.omega0, baths);
    CHECK(table.total_emission == doctest::Approx(2.0 * pi * coupling_spectrum(bath, 0.8)).epsilon(1e-14));
    CHECK(table.total_absorption == doctest::Approx(2.0 * pi * coupling_spectrum(bath, -0.8)).epsilon(1e-14));
}

TEST_CASE("property: additivity, non-negativity and per-harmonic detailed balance")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double w0 = 0.5 + 10.0 * u(rng);
        const double delta = w0 * (0.05 + 0.9 * u(rng));
        const auto spec = harmonic_spectrum(pi_flip(w0, delta));
        BathSpec c = make_bath(BathPreset::Fracton, 0.05 + 3.0 * u(rng), 0.5 + 5.0 * u(rng));
        c.gamma = 1.5 * u(rng);
        BathSpec h = make_bath(BathPreset::HotCubic, 0.05 + 5.0 * u(rng), 5.0 + 50.0 * u(rng));
        const std::vector<BathSpec> both{c, h}, only_c{c}, only_h{h};
        const auto tb = averaged_rates(spec, w0, both);
        const auto tc = averaged_rates(spec, w0, only_c);
        const auto th = averaged_rates(spec, w0, only_h);
        CHECK(tb.total_emission == doctest::Approx(tc.total_emission + th.total_emission).epsilon(1e-13));
        CHECK(tb.total_absorption == doctest::Approx(tc.total_absorption + th.total_absorption).epsilon(1e-13));

        double se = 0.0, sa = 0.0;
        for (const auto& e : tb.entries) {
            CHECK(e.emission >= 0.0);
            CHECK(e.absorption >= 0.0);
            se += e.emission;
            sa += e.absorption;
            if (e.emission > 0.0 && e.omega > 0.0) {
                const double ratio = e.absorption / e.emission;
                CHECK(ratio == doctest::Approx(std::exp(-e.omega / e.temperature)).epsilon(1e-10));
            }
        }
        CHECK(se == doctest::Approx(tb.total_emission).epsilon(1e-14));
        CHECK(sa == doctest::Approx(tb.total_absorption).epsilon(1e-14));
    }
}

TEST_CASE("negative sidebands: excluded mass and KMS inclusion")
{
    const double w0 = 1.0, delta = 0.3;
    const auto spec = harmonic_spectrum(pi_flip(w0, delta));
    double oracle = 0.0;
    for (int m = -51; m <= 51; m += 2) {
        if (w0 + m * delta <= 0.0) oracle += 4.0 / (m * m * pi * pi);
    }
    const auto bath = make_bath(BathPreset::Magnon, 0.5, 20.0);
    const std::vector<BathSpec> baths{bath};
    const auto ex = averaged_rates(spec, w0, baths);
    CHECK(ex.excluded_mass == doctest::Approx(oracle).epsilon(1e-14));

    RateOptions inc;
    inc.negative_sidebands = NegativeSidebands::Include;
    const auto in = averaged_rates(spec, w0, baths, inc);
    CHECK(in.excluded_mass == 0.0);
    CHECK(in.total_emission > ex.total_emission);
    const double w = w0 - 5.0 * delta;
    const double p5 = 4.0 / (25.0 * pi * pi);
    bool found = false;
    for (const auto& e : in.entries) {
        if (e.m != -5) continue;
        found = true;
        CHECK(e.emission == doctest::Approx(2.0 * pi * p5 * coupling_spectrum(bath, w)).epsilon(1e-14));
        CHECK(e.absorption == doctest::Approx(2.0 * pi * p5 * coupling_spectrum(bath, -w)).epsilon(1e-14));
    }
    CHECK(found);
}

TEST_CASE("tail mass above tolerance is rejected")
{
    auto mod = pi_flip(1.0, 0.3);
    mod.truncation = 3;
    const std::vector<BathSpec> baths{make_bath(BathPreset::Magnon, 0.5)};
    CHECK_THROWS_AS(averaged_rates(harmonic_spectrum(mod), 1.0, baths), AccuracyError);
    RateOptions loose;
    loose.tail_tolerance = 0.2;
    CHECK_NOTHROW(averaged_rates(harmonic_spectrum(mod), 1.0, baths, loose));
}

TEST_CASE("two-band consistency in the separated regime")
{
    const double w0 = 10.0, delta = 8.0;
    const auto cold = make_bath(BathPreset::Magnon, 1.0, 5.0);
    const auto hot = make_bath(BathPreset::HotCubic, 5.0, 100.0);
    const auto sep = validate_separation(cold, hot, w0, delta);
    REQUIRE(sep.two_band);
    const std::vector<BathSpec> baths{cold, hot};
    const auto full = averaged_rates(harmonic_spectrum(pi_flip(w0, delta)), w0, baths);
    const auto tb = two_band_rates(w0, delta, cold, hot);

    double kept_c = 0, kept_h = 0, stray = 0;
    for (const auto& e : full.entries) {
        if (e.label == BathLabel::Cold && e.m == -1) kept_c = e.emission;
        else if (e.label == BathLabel::Hot && e.m == 1) kept_h = e.emission;
        else if (std::abs(e.m) == 1) stray += e.emission;
    }
    CHECK(kept_c == doctest::Approx(tb.emission(BathLabel::Cold)).epsilon(1e-14));
    CHECK(kept_h == doctest::Approx(tb.emission(BathLabel::Hot)).epsilon(1e-14));
    CHECK(stray < sep.threshold * kept_h);
}

TEST_CASE("time-dependent rates vanish at t = 0")
{
    const auto r = time_dependent_rates(pi_flip(1.0, 0.25), make_bath(BathPreset::Magnon, 0.5), 0.0);
    CHECK(r.emission == 0.0);
    CHECK(r.absorption == 0.0);
    CHECK_THROWS_AS(time_dependent_rates(pi_flip(1.0, 0.25), make_bath(BathPreset::Magnon, 0.5), -1.0),
                    InvalidInput);
}

TEST_CASE("unmodulated flat spectrum follows the sine integral")
{
    // G = g on (0, wc): R_e(t) = 2g [Si(w0 t) + Si((wc - w0) t)] -> 2 pi g
    ModulationScheme mod;
    mod.kind = WaveformKind::Unmodulated;
    mod.omega0 = 1.0;
    BathSpec flat;
    flat.gamma = 0.0;
    flat.dim = 1.0;
    flat.prefactor = 0.7;
    flat.omega_cut = 40.0;
    flat.temperature = 0.0;
    for (double t : {0.5, 5.0, 20.0}) {
        const auto r = time_dependent_rates(mod, flat, t);
        const double re = 2.0 * 0.7 * (sine_integral(t) + sine_integral(39.0 * t));
        const double rg = 2.0 * 0.7 * (sine_integral(41.0 * t) - sine_integral(t));
        CHECK(r.emission == doctest::Approx(re).epsilon(1e-7));
        CHECK(r.absorption == doctest::Approx(rg).epsilon(1e-6).scale(1e-6));
    }
    const auto late = time_dependent_rates(mod, flat, 400.0);
    CHECK(late.emission == doctest::Approx(2.0 * pi * 0.7).epsilon(1e-2));
}

}
