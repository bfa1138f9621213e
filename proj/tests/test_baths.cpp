#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qrsim/baths.hpp"
#include "qrsim/errors.hpp"

using namespace qrsim;
using std::numbers::pi;

namespace {

double log_slope(const BathSpec& b, double t1, double t2)
{
    return std::log(heat_capacity(b, t2) / heat_capacity(b, t1)) / std::log(t2 / t1);
}

} // namespace

TEST_SUITE("baths") {

TEST_CASE("occupancy")
{
    CHECK(occupancy(1.0, 1.0) == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-15));
    CHECK(occupancy(1.0, 1.0) == doctest::Approx(0.581977).epsilon(1e-6));
    CHECK(occupancy(3.0, 0.0) == 0.0);
    // 1/(e^x - 1) = 1/x - 1/2 + x/12 - ...
    const double x = 1e-6;
    CHECK(occupancy(x, 1.0) == doctest::Approx(1.0 / x - 0.5 + x / 12.0).epsilon(1e-12));
    CHECK(occupancy(x, 1.0) == doctest::Approx(1e6).epsilon(1e-4));
    CHECK(occupancy(600.0, 1.0) == doctest::Approx(std::exp(-600.0)).epsilon(1e-12));
    const double deep = occupancy(720.0, 1.0);
    CHECK(std::isfinite(deep));
    CHECK(deep >= 0.0);
    CHECK_THROWS_AS(occupancy(0.0, 1.0), InvalidInput);
    CHECK_THROWS_AS(occupancy(-1.0, 1.0), InvalidInput);
}

TEST_CASE("presets")
{
    CHECK(make_bath(BathPreset::AcousticPhonon, 1).gamma == 1.0);
    CHECK(make_bath(BathPreset::Fracton, 1).gamma == 0.75);
    CHECK(make_bath(BathPreset::Magnon, 1).gamma == 0.0);
    const auto hot = make_bath(BathPreset::HotCubic, 2.0);
    CHECK(hot.spectral_exponent() == 3.0);
    CHECK(hot.label == BathLabel::Hot);
    for (auto p : {BathPreset::AcousticPhonon, BathPreset::Fracton, BathPreset::Magnon, BathPreset::HotCubic}) {
        CHECK_NOTHROW(make_bath(p, 0.3).validate());
    }
    CHECK(memory_time(make_bath(BathPreset::Magnon, 1.0, 4.0)) == doctest::Approx(0.25));
}

TEST_CASE("spectrum shape and cutoffs")
{
    auto b = make_bath(BathPreset::Magnon, 0.0, 2.0, 3.0);
    CHECK(bare_spectrum(b, 1.5) == doctest::Approx(3.0 * 1.5 * 1.5));
    CHECK(bare_spectrum(b, 2.5) == 0.0);
    CHECK(coupling_spectrum(b, 1.5) == doctest::Approx(3.0 * 1.5 * 1.5));
    CHECK(coupling_spectrum(b, -1.5) == 0.0);
    b.cutoff_shape = CutoffShape::Exponential;
    CHECK(bare_spectrum(b, 2.5) == doctest::Approx(3.0 * 2.5 * 2.5 * std::exp(-1.25)));
    CHECK_THROWS_AS(coupling_spectrum(b, 0.0), InvalidInput);
}

TEST_CASE("detailed balance at (1, 0.5)")
{
    const auto b = make_bath(BathPreset::AcousticPhonon, 0.5, 4.0);
    CHECK(coupling_spectrum(b, 1.0) == doctest::Approx(std::exp(2.0) * coupling_spectrum(b, -1.0)).epsilon(1e-13));
}

TEST_CASE("magnon high temperature limit")
{
    // n + 1 -> T/w, so G_T(w) / (T w^(d-2)) -> 1
    const auto b = make_bath(BathPreset::Magnon, 1e6, 10.0);
    const double ratio = coupling_spectrum(b, 2.0) / (1e6 * 2.0);
    CHECK(ratio == doctest::Approx(1.0).epsilon(2e-6));
}

TEST_CASE("property: KMS and temperature-independent G_0")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        BathSpec b;
        b.gamma = 2.0 * u(rng);
        b.dim = 0.5 + 3.0 * u(rng);
        b.prefactor = std::exp(4.0 * (u(rng) - 0.5));
        b.omega_cut = 0.1 + 10.0 * u(rng);
        b.cutoff_shape = u(rng) < 0.5 ? CutoffShape::Hard : CutoffShape::Exponential;
        b.temperature = std::exp(6.0 * (u(rng) - 0.5));
        const double w = b.omega_cut * (1e-3 + (1.0 - 1e-3) * u(rng));
        const double up = coupling_spectrum(b, w) * std::exp(-w / b.temperature);
        const double down = coupling_spectrum(b, -w);
        CHECK(std::abs(up - down) <= 1e-12 * std::abs(down));

        BathSpec b2 = b;
        b2.temperature = b.temperature * (0.2 + 3.0 * u(rng));
        const double g0a = coupling_spectrum(b, w) / (occupancy(w, b.temperature) + 1.0);
        const double g0b = coupling_spectrum(b2, w) / (occupancy(w, b2.temperature) + 1.0);
        CHECK(std::abs(g0a - g0b) <= 1e-12 * std::abs(g0a));
    }
}

TEST_CASE("heat capacity closed forms for a wide spectrum")
{
    // d/dT of pi^2 T^2 / 6 and of pi^4 T^4 / 15
    auto b1 = make_bath(BathPreset::AcousticPhonon, 0.0, 1e4);
    b1.dim = 1.0;
    for (double T : {0.3, 1.0, 7.0}) {
        CHECK(heat_capacity(b1, T) == doctest::Approx(pi * pi * T / 3.0).epsilon(1e-9));
    }
    auto b3 = make_bath(BathPreset::AcousticPhonon, 0.0, 1e4);
    for (double T : {0.3, 1.0, 7.0}) {
        CHECK(heat_capacity(b3, T) == doctest::Approx(4.0 * std::pow(pi, 4) * T * T * T / 15.0).epsilon(1e-9));
    }
}

TEST_CASE("heat capacity low-temperature exponent equals d")
{
    for (double d : {1.0, 2.0, 3.0}) {
        auto b = make_bath(BathPreset::Magnon, 0.0, 1.0);
        b.dim = d;
        CHECK(log_slope(b, 1e-3, 1e-2) == doctest::Approx(d).epsilon(0.05 / d));
    }
    auto b = make_bath(BathPreset::Magnon, 0.0, 1.0);
    double prev = 0.0;
    for (double T = 1e-4; T < 0.1; T *= 1.7) {
        const double c = heat_capacity(b, T);
        CHECK(c > prev);
        prev = c;
    }
    CHECK_THROWS_AS(heat_capacity(b, 0.0), InvalidInput);
}

TEST_CASE("separation report")
{
    const double w0 = 3.0, delta = 1.0;
    const auto cold = make_bath(BathPreset::Magnon, 0.2, w0);
    const auto hot = make_bath(BathPreset::HotCubic, 0.5, 50.0, 100.0);
    const auto r = validate_separation(cold, hot, w0, delta);
    CHECK(r.cold_upper_to_hot_upper == 0.0);
    CHECK(r.cold_cutoff_below_upper);

    auto same = hot;
    same.label = BathLabel::Cold;
    CHECK_FALSE(validate_separation(same, hot, w0, delta).two_band);

    const auto cubic = make_bath(BathPreset::HotCubic, 1e-3, 100.0);
    const auto rc = validate_separation(cold, cubic, 10.0, 5.0);
    CHECK(rc.hot_lower_to_hot_upper == doctest::Approx(1.0 / 27.0).epsilon(1e-9));

    CHECK_THROWS_AS(validate_separation(cold, hot, 1.0, 2.0), InvalidInput);
}

TEST_CASE("invalid specs")
{
    BathSpec b;
    b.prefactor = 0.0;
    CHECK_THROWS_AS(b.validate(), InvalidInput);
    b = BathSpec{};
    b.temperature = -1.0;
    CHECK_THROWS_AS(b.validate(), InvalidInput);
    b = BathSpec{};
    b.omega_cut = 0.0;
    CHECK_THROWS_AS(b.validate(), InvalidInput);
}

}
