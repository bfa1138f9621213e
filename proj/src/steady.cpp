#include "qrsim/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qrsim/errors.hpp"

namespace qrsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kResidualTolerance = 1e-10;

double g0(const BathSpec& b, double w) { return bare_spectrum(b, w); }
double n(const BathSpec& b, double w) { return occupancy(w, b.temperature); }

} // namespace

QubitState steady_polarization(const RateTable& table)
{
    const double re = table.total_emission;
    const double rg = table.total_absorption;
    if (!(re + rg > 0.0)) throw NoSteadyState("all transition rates vanish");
    return {(rg - re) / (2.0 * (rg + re))};
}

SteadyStateReport heat_currents(const RateTable& table, const QubitState& state, double omega0,
                                double delta)
{
    const double scale_w = std::max(std::abs(omega0), std::abs(table.omega0));
    if (std::abs(omega0 - table.omega0) > 1e-12 * scale_w
        || std::abs(delta - table.delta) > 1e-12 * std::max({std::abs(delta), scale_w})) {
        throw InconsistentInput("heat_currents: omega0/delta do not match the rate table");
    }
    const double S = state.polarization;
    const double re = table.total_emission;
    const double rg = table.total_absorption;
    const double residual = -(rg + re) * S + 0.5 * (rg - re);
    if (std::abs(S) > 0.5 + 1e-12 || std::abs(residual) > kResidualTolerance * (re + rg)) {
        throw InconsistentInput("heat_currents: state is not the steady state of the table");
    }

    // At the steady state each channel flow is sum_j (a_i e_j - e_i a_j) / R.
    // Summing pairs keeps same-bath contributions sign-definite, so net
    // currents do not drown in the cancellation of large channel flows.
    SteadyStateReport r;
    r.polarization = S;
    const auto& en = table.entries;
    const std::size_t k = en.size();
    const double rt = re + rg;
    bool all_hot = true;
    for (const auto& e : en) {
        r.current_scale = std::max(r.current_scale, std::abs(e.omega) * (e.emission + e.absorption));
        if (!(e.temperature > 0.0)) all_hot = false;
    }
    std::vector<double> flow(k, 0.0);
    double cold = 0.0, hot = 0.0, sigma = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        if (en[i].emission == 0.0 && en[i].absorption == 0.0) continue;
        for (std::size_t j = i + 1; j < k; ++j) {
            if (en[j].emission == 0.0 && en[j].absorption == 0.0) continue;
            const double d = (en[i].absorption * en[j].emission - en[i].emission * en[j].absorption) / rt;
            if (d == 0.0) continue;
            flow[i] += d;
            flow[j] -= d;
            double& bi = en[i].label == BathLabel::Cold ? cold : hot;
            double& bj = en[j].label == BathLabel::Cold ? cold : hot;
            if (&bi == &bj) {
                bi += d * (en[i].omega - en[j].omega);
            } else {
                bi += d * en[i].omega;
                bj -= d * en[j].omega;
            }
            if (all_hot) sigma -= d * (en[i].omega / en[i].temperature - en[j].omega / en[j].temperature);
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        ChannelCurrent c;
        c.bath = en[i].bath;
        c.label = en[i].label;
        c.m = en[i].m;
        c.omega = en[i].omega;
        c.polarization_flow = flow[i];
        c.heat = en[i].omega * flow[i];
        r.channels.push_back(c);
    }
    r.cold_current = cold;
    r.hot_current = hot;
    r.work_rate = -(r.cold_current + r.hot_current);
    r.entropy_production = all_hot ? sigma : std::numeric_limits<double>::quiet_NaN();
    r.cooling = r.cold_current > kZeroCurrentTolerance * r.current_scale;
    return r;
}

double entropy_production(const SteadyStateReport& report, double cold_temperature,
                          double hot_temperature)
{
    if (!(cold_temperature > 0.0 && hot_temperature > 0.0)) {
        throw InvalidInput("entropy_production requires T_C, T_H > 0");
    }
    const double a = report.cold_current / cold_temperature;
    const double b = report.hot_current / hot_temperature;
    const double sigma = -(a + b);
    // roundoff in the currents scales with the largest channel flow, not with
    // the (possibly tiny) net currents
    const double scale = std::max({1.0, std::abs(a), std::abs(b),
                                   report.current_scale / cold_temperature,
                                   report.current_scale / hot_temperature});
    if (sigma < -1e-12 * scale) {
        throw InvariantViolation("negative entropy production");
    }
    return sigma;
}

SteadyStateReport solve_steady_state(const RateTable& table)
{
    return heat_currents(table, steady_polarization(table), table.omega0, table.delta);
}

double two_band_cold_current(const TwoBandInputs& in)
{
    return two_band_cold_current_at_offset(in, in.omega0 - in.delta);
}

double two_band_cold_current_at_offset(const TwoBandInputs& in, double offset)
{
    const double lo = offset;
    const double hi = 2.0 * in.omega0 - offset;
    const double nh = n(in.hot, hi);
    return lo * kTwoPi * in.weight * g0(in.cold, lo) * (n(in.cold, lo) - nh) / (2.0 * nh + 1.0);
}

double two_band_polarization(const TwoBandInputs& in)
{
    const double lo = in.omega0 - in.delta;
    const double hi = in.omega0 + in.delta;
    const double gc = g0(in.cold, lo);
    const double gh = g0(in.hot, hi);
    const double k = gc * (2.0 * n(in.cold, lo) + 1.0) + gh * (2.0 * n(in.hot, hi) + 1.0);
    return -(gc + gh) / (2.0 * k);
}

double two_band_polarization_flow(const TwoBandInputs& in)
{
    const double lo = in.omega0 - in.delta;
    const double hi = in.omega0 + in.delta;
    const double gc = g0(in.cold, lo);
    const double gh = g0(in.hot, hi);
    const double nc = n(in.cold, lo);
    const double nh = n(in.hot, hi);
    const double k = gc * (2.0 * nc + 1.0) + gh * (2.0 * nh + 1.0);
    return kTwoPi * in.weight * gc * gh * (nc - nh) / k;
}

double wide_band_polarization_flow(const TwoBandInputs& in)
{
    const double lo = in.omega0 - in.delta;
    const double hi = in.omega0 + in.delta;
    const double gcl = g0(in.cold, lo), gch = g0(in.cold, hi);
    const double ghl = g0(in.hot, lo), ghh = g0(in.hot, hi);
    const double ncl = n(in.cold, lo), nch = n(in.cold, hi);
    const double nhl = n(in.hot, lo), nhh = n(in.hot, hi);
    const double k = gcl * (2.0 * ncl + 1.0) + gch * (2.0 * nch + 1.0)
        + ghl * (2.0 * nhl + 1.0) + ghh * (2.0 * nhh + 1.0);
    const double num = gcl * ghh * (ncl - nhh) + gch * ghl * (nch - nhl)
        + gch * ghh * (nch - nhh) + gcl * ghl * (ncl - nhl);
    return kTwoPi * in.weight * num / k;
}

double cooling_boundary_delta(double omega0, double cold_temperature, double hot_temperature)
{
    if (!(cold_temperature > 0.0 && hot_temperature > 0.0)) {
        throw InvalidInput("cooling_boundary_delta requires positive temperatures");
    }
    return omega0 * (hot_temperature - cold_temperature) / (hot_temperature + cold_temperature);
}

} // namespace qrsim
