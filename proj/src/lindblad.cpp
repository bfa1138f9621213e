#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "qrsim/errors.hpp"
#include "qrsim/steady.hpp"

namespace qrsim {

namespace {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Basis: index 0 = |e>, 1 = |g>; column-stacked vec(rho)[i + 2j] = rho(i, j).
Mat4 kron(const Mat2& a, const Mat2& b)
{
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

// vec(L rho L^+ - {L^+ L, rho}/2)
Mat4 dissipator(const Mat2& l)
{
    const Mat2 id = Mat2::Identity();
    const Mat2 ll = l.adjoint() * l;
    return kron(l.conjugate(), l) - 0.5 * kron(id, ll) - 0.5 * kron(ll.transpose(), id);
}

struct Channel {
    BathLabel label;
    double omega;
    double down;  // 2 pi P G_j(w_q)
    double up;    // 2 pi P G_j(-w_q)
    double temperature;
};

std::vector<Channel> channels(const HarmonicSpectrum& spec, double omega0,
                              std::span<const BathSpec> baths, const RateOptions& options)
{
    if (!(std::isfinite(omega0) && omega0 > 0.0)) {
        throw InvalidInput("lindblad_floquet_steady: omega0 must be > 0");
    }
    if (spec.tail_mass > options.tail_tolerance) {
        throw AccuracyError("harmonic spectrum tail mass above tolerance", spec.tail_mass,
                            options.tail_tolerance);
    }
    std::vector<Channel> out;
    for (const auto& h : spec.entries) {
        if (h.weight == 0.0) continue;
        const double w = omega0 + h.m * spec.delta;
        if (w == 0.0 || (w < 0.0 && options.negative_sidebands == NegativeSidebands::Exclude)) {
            continue;
        }
        for (const auto& b : baths) {
            b.validate();
            out.push_back({b.label, w, kTwoPi * h.weight * coupling_spectrum(b, w),
                           kTwoPi * h.weight * coupling_spectrum(b, -w), b.temperature});
        }
    }
    return out;
}

Mat4 channel_generator(const Channel& c)
{
    Mat2 lower = Mat2::Zero();
    lower(1, 0) = 1.0;  // |g><e|
    const Mat2 raise = lower.adjoint();
    return c.down * dissipator(lower) + c.up * dissipator(raise);
}

} // namespace

SteadyStateReport lindblad_floquet_steady(const HarmonicSpectrum& spec, double omega0,
                                          std::span<const BathSpec> baths,
                                          const RateOptions& options)
{
    const auto chans = channels(spec, omega0, baths, options);

    Mat2 h = Mat2::Zero();
    h(0, 0) = 0.5 * omega0;
    h(1, 1) = -0.5 * omega0;
    const Mat2 id = Mat2::Identity();
    const cplx i{0.0, 1.0};
    Mat4 total = -i * (kron(id, h) - kron(h.transpose(), id));

    std::vector<Mat4> generators;
    generators.reserve(chans.size());
    double rate_sum = 0.0;
    for (const auto& c : chans) {
        generators.push_back(channel_generator(c));
        total += generators.back();
        rate_sum += c.down + c.up;
    }
    if (!(rate_sum > 0.0)) throw NoSteadyState("all transition rates vanish");

    // replace the first row by the trace condition
    Mat4 system = total;
    system.row(0).setZero();
    system(0, 0) = 1.0;
    system(0, 3) = 1.0;
    Vec4 rhs = Vec4::Zero();
    rhs(0) = 1.0;
    const Vec4 rho = system.fullPivLu().solve(rhs);

    const double pe = rho(0).real();
    const double pg = rho(3).real();

    SteadyStateReport r;
    r.polarization = 0.5 * (pe - pg);
    bool all_hot = true;
    double sigma = 0.0;
    for (std::size_t k = 0; k < chans.size(); ++k) {
        const double dpe = (generators[k] * rho)(0).real();
        ChannelCurrent cc;
        cc.label = chans[k].label;
        cc.omega = chans[k].omega;
        cc.polarization_flow = dpe;
        cc.heat = chans[k].omega * dpe;
        (cc.label == BathLabel::Cold ? r.cold_current : r.hot_current) += cc.heat;
        r.current_scale =
            std::max(r.current_scale, std::abs(chans[k].omega) * (chans[k].down + chans[k].up));
        if (chans[k].temperature > 0.0) {
            sigma -= cc.heat / chans[k].temperature;
        } else {
            all_hot = false;
        }
        r.channels.push_back(cc);
    }
    r.work_rate = -(r.cold_current + r.hot_current);
    r.entropy_production = all_hot ? sigma : std::numeric_limits<double>::quiet_NaN();
    r.cooling = r.cold_current > kZeroCurrentTolerance * r.current_scale;
    return r;
}

double lindblad_population_ratio(const HarmonicSpectrum& spec, double omega0,
                                 std::span<const BathSpec> baths, const RateOptions& options)
{
    double num = 0.0;
    double den = 0.0;
    for (const auto& c : channels(spec, omega0, baths, options)) {
        if (c.temperature > 0.0) num += c.down * std::exp(-c.omega / c.temperature);
        den += c.down;
    }
    if (!(den > 0.0)) throw NoSteadyState("no emission channel");
    return num / den;
}

} // namespace qrsim
