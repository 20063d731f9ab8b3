#include <forge/numeric.hpp>

#include <cmath>

namespace forge {

const std::array<double, 5>& GaussLegendre5::nodes()
{
    static const std::array<double, 5> x = [] {
        const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
        const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
        return std::array<double, 5>{-b, -a, 0.0, a, b};
    }();
    return x;
}

const std::array<double, 5>& GaussLegendre5::weights()
{
    static const std::array<double, 5> w = [] {
        const double inner = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
        const double outer = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
        return std::array<double, 5>{outer, inner, 128.0 / 225.0, inner, outer};
    }();
    return w;
}

} // namespace forge
