#include "qrsim/cooling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "qrsim/kernels.hpp"
#include "qrsim/steady.hpp"

namespace qrsim {

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr double kRefineWidth = 1e-6;
// lower end of the offset scan, relative to T_C
constexpr double kMinOffsetOverT = 1e-4;

struct StageFailure {};

TwoBandInputs inputs_at(double T, double omega0, const BathSpec& cold, const BathSpec& hot,
                        double weight)
{
    TwoBandInputs in;
    in.omega0 = omega0;
    in.cold = cold;
    in.cold.temperature = T;
    in.hot = hot;
    in.weight = weight;
    return in;
}

} // namespace

std::string_view to_string(CoolingStatus status)
{
    switch (status) {
    case CoolingStatus::ReachedFloor: return "reached_floor";
    case CoolingStatus::TimedOut: return "timed_out";
    case CoolingStatus::StalledNonCooling: return "stalled_non_cooling";
    }
    return "?";
}

void CoolingConfig::validate() const
{
    cold.validate();
    hot.validate();
    if (!(omega0 > 0.0)) throw InvalidInput("omega0 must be > 0");
    if (!(floor_temperature > 0.0)) throw InvalidInput("floor_temperature must be > 0");
    if (!(initial_temperature > floor_temperature)) {
        throw InvalidInput("initial_temperature must exceed floor_temperature");
    }
    if (!(t_max > 0.0)) throw InvalidInput("t_max must be > 0");
    if (!(rel_tol > 0.0) || abs_tol < 0.0) throw InvalidInput("integrator tolerances invalid");
    if (!(hot.temperature > 0.0)) throw InvalidInput("hot bath temperature must be > 0");
    switch (delta_policy.kind) {
    case DeltaPolicyKind::Optimized:
        break;
    case DeltaPolicyKind::FixedOffset:
        if (!(delta_policy.value > 0.0)) throw InvalidInput("fixed offset ratio must be > 0");
        break;
    case DeltaPolicyKind::Constant:
        if (!(delta_policy.value > 0.0 && delta_policy.value < omega0)) {
            throw InvalidInput("constant delta must lie in (0, omega0)");
        }
        break;
    }
}

std::pair<double, double> offset_scan_range(double cold_temperature, double omega0,
                                            const BathSpec& cold)
{
    const double hi = std::min(cold.omega_cut, omega0) * (1.0 - 1e-9);
    const double lo = kMinOffsetOverT * std::min(cold_temperature, hi);
    return {lo, hi};
}

DeltaOptimum optimize_delta(double cold_temperature, double omega0, const BathSpec& cold,
                            const BathSpec& hot, double sideband_weight)
{
    if (!(cold_temperature > 0.0)) throw InvalidInput("optimize_delta: T_C must be > 0");
    const auto in = inputs_at(cold_temperature, omega0, cold, hot, sideband_weight);
    const auto [lo, hi] = offset_scan_range(cold_temperature, omega0, cold);

    std::array<double, kDeltaScanPoints> offsets{};
    const double step = std::log(hi / lo) / (kDeltaScanPoints - 1);
    for (int i = 0; i < kDeltaScanPoints; ++i) offsets[i] = lo * std::exp(step * i);
    offsets.back() = hi;

    bool separable = false;
    for (double x : offsets) {
        if (validate_separation(in.cold, in.hot, omega0, omega0 - x).two_band) {
            separable = true;
            break;
        }
    }
    if (!separable) {
        throw InvalidInput("optimize_delta: no Delta in the scan range reaches the two-band regime");
    }

    const auto current = kernels::scan_cold_current(in, offsets);
    const auto best = static_cast<std::size_t>(
        std::max_element(current.begin(), current.end()) - current.begin());
    DeltaOptimum opt{omega0 - offsets[best], current[best]};
    if (!(current[best] > 0.0)) {
        throw NotCoolable("cold current is non-positive for every scanned Delta", opt);
    }

    // golden section in log(offset) on the bracketing grid cells
    auto f = [&](double u) { return two_band_cold_current_at_offset(in, std::exp(u)); };
    double a = std::log(offsets[best == 0 ? 0 : best - 1]);
    double b = std::log(offsets[std::min(best + 1, offsets.size() - 1)]);
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > kRefineWidth) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
        }
    }
    const double u = 0.5 * (a + b);
    const double fu = f(u);
    if (fu > opt.cold_current) opt = {omega0 - std::exp(u), fu};
    return opt;
}

RateModel cooling_rate_model(const CoolingConfig& config)
{
    config.validate();
    return [config](double T) {
        if (!(T > 0.0)) throw StageFailure{};
        BathSpec cold = config.cold;
        cold.temperature = T;
        const auto in = inputs_at(T, config.omega0, config.cold, config.hot,
                                  config.sideband_weight);
        DeltaOptimum op;
        switch (config.delta_policy.kind) {
        case DeltaPolicyKind::Optimized:
            op = optimize_delta(T, config.omega0, config.cold, config.hot, config.sideband_weight);
            break;
        case DeltaPolicyKind::FixedOffset: {
            const auto range = offset_scan_range(T, config.omega0, config.cold);
            const double x = std::min(config.delta_policy.value * T, range.second);
            op = {config.omega0 - x, two_band_cold_current_at_offset(in, x)};
            break;
        }
        case DeltaPolicyKind::Constant: {
            const double x = config.omega0 - config.delta_policy.value;
            op = {config.delta_policy.value, two_band_cold_current_at_offset(in, x)};
            break;
        }
        }
        if (!(op.cold_current > 0.0)) throw NotCoolable("cold current is non-positive", op);
        const double cv = heat_capacity(cold, T);
        return CoolingRate{-op.cold_current / cv, op.delta, op.cold_current, cv};
    };
}

RateModel power_law_model(double prefactor, double gamma)
{
    return [prefactor, gamma](double T) {
        if (!(T > 0.0)) throw StageFailure{};
        const double j = prefactor * std::pow(T, gamma);
        return CoolingRate{-j, 0.0, j, 1.0};
    };
}

CoolingTrajectory integrate_trajectory(const RateModel& model, const IntegratorOptions& opt)
{
    using State = std::array<double, 1>;
    boost::numeric::odeint::runge_kutta_dopri5<State> stepper;

    CoolingTrajectory traj;
    auto record = [&](double t, double T, const CoolingRate& r) {
        traj.samples.push_back({t, T, r.delta, r.cold_current, r.heat_capacity});
    };

    double t = 0.0;
    double T = opt.initial_temperature;
    CoolingRate rate;
    try {
        rate = model(T);
    } catch (const NotCoolable& e) {
        traj.samples.push_back({0.0, T, e.least_negative().delta, e.least_negative().cold_current,
                                std::numeric_limits<double>::quiet_NaN()});
        traj.status = CoolingStatus::StalledNonCooling;
        return traj;
    }
    record(t, T, rate);
    if (!(rate.dTdt < 0.0)) {
        traj.status = CoolingStatus::StalledNonCooling;
        return traj;
    }

    auto rhs = [&](const State& x, State& dxdt, double) { dxdt[0] = model(x[0]).dTdt; };

    struct Trial {
        bool ok{false};
        State out{};
        State dout{};
        double err{0.0};
    };
    auto attempt = [&](double h) {
        Trial tr;
        State in{T}, din{rate.dTdt}, err{};
        try {
            stepper.do_step(rhs, in, din, t, tr.out, tr.dout, h, err);
        } catch (const StageFailure&) {
            return tr;
        } catch (const NotCoolable&) {
            return tr;
        }
        tr.ok = std::isfinite(tr.out[0]) && tr.out[0] > 0.0;
        tr.err = std::abs(err[0]);
        return tr;
    };

    double h = std::min(opt.t_max, 0.5 * opt.max_relative_change * T / std::abs(rate.dTdt));
    int halvings = 0;
    for (std::size_t steps = 0;; ++steps) {
        if (t >= opt.t_max) {
            traj.status = CoolingStatus::TimedOut;
            return traj;
        }
        if (steps > opt.max_steps) throw StiffnessError("step budget exhausted", traj);
        h = std::min({h, opt.t_max - t, 0.9 * opt.max_relative_change * T / std::abs(rate.dTdt)});

        Trial tr = attempt(h);
        double norm = 0.0;
        bool accept = tr.ok;
        if (accept) {
            norm = tr.err / (opt.abs_tol + opt.rel_tol * std::max(T, tr.out[0]));
            const double change = std::abs(tr.out[0] - T) / T;
            accept = norm <= 1.0 && change <= opt.max_relative_change;
        }
        if (!accept) {
            ++traj.rejected_steps;
            if (++halvings > opt.max_halvings) {
                throw StiffnessError("step rejected after maximum halvings", traj);
            }
            const double shrink = tr.ok && norm > 1.0 ? std::max(0.1, 0.9 * std::pow(norm, -0.2)) : 0.5;
            h *= std::min(0.5, shrink);
            continue;
        }

        if (tr.out[0] <= opt.floor_temperature) {
            // bisect the step length onto the floor
            double lo = 0.0, hi = h;
            Trial hit = tr;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                Trial m = attempt(mid);
                if (m.ok && m.out[0] >= opt.floor_temperature) {
                    lo = mid;
                    hit = m;
                    if (m.out[0] - opt.floor_temperature <= 1e-10 * opt.floor_temperature) break;
                } else {
                    hi = mid;
                }
                if (hi - lo <= 1e-15 * (t + hi)) break;
            }
            if (lo == 0.0) hit = attempt(hi);
            t += lo == 0.0 ? hi : lo;
            T = hit.out[0];
            traj.error_estimate += hit.err;
            CoolingRate last{};
            try {
                last = model(T);
            } catch (const NotCoolable&) {
                last = rate;
            }
            record(t, T, last);
            traj.status = CoolingStatus::ReachedFloor;
            traj.floor_time = t;
            return traj;
        }

        t += h;
        T = tr.out[0];
        traj.error_estimate += tr.err;
        halvings = 0;
        try {
            rate = model(T);
        } catch (const NotCoolable& e) {
            traj.samples.push_back({t, T, e.least_negative().delta,
                                    e.least_negative().cold_current,
                                    std::numeric_limits<double>::quiet_NaN()});
            traj.status = CoolingStatus::StalledNonCooling;
            return traj;
        }
        record(t, T, rate);
        if (!(rate.dTdt < 0.0)) {
            traj.status = CoolingStatus::StalledNonCooling;
            return traj;
        }
        const double grow = norm > 0.0 ? 0.9 * std::pow(norm, -0.2) : 5.0;
        h *= std::clamp(grow, 1.0, 5.0);
    }
}

CoolingTrajectory integrate_cooling(const CoolingConfig& config)
{
    config.validate();
    IntegratorOptions opt;
    opt.initial_temperature = config.initial_temperature;
    opt.floor_temperature = config.floor_temperature;
    opt.t_max = config.t_max;
    opt.rel_tol = config.rel_tol;
    opt.abs_tol = config.abs_tol > 0.0 ? config.abs_tol : 1e-3 * config.floor_temperature;
    auto traj = integrate_trajectory(cooling_rate_model(config), opt);

    if (traj.status == CoolingStatus::ReachedFloor) {
        // extrapolate the local power law from the floor down to T = 0
        const double floor = config.floor_temperature;
        ScalingFit fit;
        try {
            fit = fit_trajectory(traj, 0.0, 1e3 * floor);
        } catch (const InvalidInput&) {
            fit = fit_trajectory(traj);
        }
        traj.zero_time_extrapolated = true;
        if (fit.gamma_eff < 1.0) {
            traj.zero_time = traj.floor_time
                + std::pow(floor, 1.0 - fit.gamma_eff) / (fit.prefactor * (1.0 - fit.gamma_eff));
        } else {
            traj.zero_time = std::numeric_limits<double>::infinity();
        }
    }
    return traj;
}

LineFit least_squares_line(std::span<const double> x, std::span<const double> y)
{
    const auto n = x.size();
    if (n < 2 || y.size() != n) throw InvalidInput("least_squares_line: need >= 2 paired points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw InvalidInput("least_squares_line: degenerate abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += r * r;
    }
    f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    f.slope_stderr = n > 2 ? std::sqrt(ss_res / double(n - 2) / sxx) : 0.0;
    return f;
}

ScalingFit fit_scaling_exponent(std::span<const std::pair<double, double>> samples)
{
    if (samples.size() < 10) throw InvalidInput("fit_scaling_exponent: need >= 10 samples");
    std::vector<double> lx, ly;
    double tmin = std::numeric_limits<double>::infinity(), tmax = 0.0;
    for (const auto& [T, rate] : samples) {
        if (!(T > 0.0) || !(rate < 0.0)) {
            throw InvalidInput("fit_scaling_exponent: need T > 0 and dT/dt < 0 for every sample");
        }
        lx.push_back(std::log(T));
        ly.push_back(std::log(-rate));
        tmin = std::min(tmin, T);
        tmax = std::max(tmax, T);
    }
    const double decades = std::log10(tmax / tmin);
    if (decades < 1.5) throw InvalidInput("fit_scaling_exponent: samples span < 1.5 decades");
    const auto line = least_squares_line(lx, ly);
    ScalingFit fit;
    fit.gamma_eff = line.slope;
    fit.log_prefactor = line.intercept;
    fit.prefactor = std::exp(line.intercept);
    fit.r_squared = line.r_squared;
    fit.slope_stderr = line.slope_stderr;
    fit.samples = samples.size();
    fit.decades = decades;
    return fit;
}

ScalingFit fit_trajectory(const CoolingTrajectory& trajectory, double t_lo, double t_hi)
{
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : trajectory.samples) {
        if (s.temperature < t_lo || s.temperature > t_hi) continue;
        if (!(s.heat_capacity > 0.0) || !(s.cold_current > 0.0)) continue;
        pts.emplace_back(s.temperature, s.rate());
    }
    return fit_scaling_exponent(pts);
}

} // namespace qrsim
