#pragma once

#include <boost/math/quadrature/gauss.hpp>

namespace qrsim::quad {

template <class F>
auto composite_gauss_legendre(const F& f, double a, double b, int panels)
    -> decltype(f(a))
{
    using boost::math::quadrature::gauss;
    using Value = decltype(f(a));
    const auto& x = gauss<double, 20>::abscissa();
    const auto& w = gauss<double, 20>::weights();
    const double h = (b - a) / panels;
    Value sum{};
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        const double half = 0.5 * h;
        Value panel{};
        // boost stores the non-negative half of the symmetric rule
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0.0) {
                panel += w[i] * f(mid);
            } else {
                panel += w[i] * (f(mid - half * x[i]) + f(mid + half * x[i]));
            }
        }
        sum += half * panel;
    }
    return sum;
}

} // namespace qrsim::quad
