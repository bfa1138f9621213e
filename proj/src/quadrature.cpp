#include "qrsim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qrsim/errors.hpp"

namespace qrsim::quad {

namespace {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// G15/K31 pair on [a, b]; node tables from boost, index layout as in
// boost::math::quadrature::gauss_kronrod (gauss nodes on even indices).
Panel gk31(const std::function<double(double)>& f, double a, double b)
{
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    const auto& x = gauss_kronrod<double, 31>::abscissa();
    const auto& wk = gauss_kronrod<double, 31>::weights();
    const auto& wg = gauss<double, 15>::weights();

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double kron = f0 * wk[0];
    double gs = f0 * wg[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double s = f(mid + half * x[i]) + f(mid - half * x[i]);
        kron += s * wk[i];
        if (i % 2 == 0) gs += s * wg[i / 2];
    }
    kron *= half;
    gs *= half;
    const double err = std::max(std::abs(kron - gs), 50.0 * 2.2e-16 * std::abs(kron));
    return {a, b, kron, err};
}

} // namespace

std::vector<double> interior_points(std::span<const double> pts, double a, double b)
{
    std::vector<double> out;
    for (double p : pts) {
        if (p > a && p < b) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Result integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, double rel_tol, double abs_tol,
                 unsigned max_depth)
{
    if (!(b > a)) return {};

    std::vector<double> edges{a};
    for (double p : interior_points(breakpoints, a, b)) edges.push_back(p);
    edges.push_back(b);

    std::priority_queue<Panel> heap;
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = gk31(f, edges[i], edges[i + 1]);
        value += p.value;
        error += p.error;
        heap.push(p);
    }

    const std::size_t budget = std::size_t{1} << std::min(max_depth, 14u);
    while (error > std::max(abs_tol, rel_tol * std::abs(value)) && heap.size() < budget) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push(worst);
            break;
        }
        Panel left = gk31(f, worst.a, mid);
        Panel right = gk31(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // re-sum to shed accumulated update roundoff
    value = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    if (!std::isfinite(value)) {
        throw AccuracyError("quadrature produced a non-finite value", value);
    }
    if (error > std::max(abs_tol, 10.0 * rel_tol * std::abs(value))) {
        throw AccuracyError("adaptive quadrature did not converge", value, error);
    }
    return {value, error};
}

} // namespace qrsim::quad
