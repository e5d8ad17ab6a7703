#include "isodirac/presets.hpp"

#include <cmath>

namespace isodirac {

Superpotential tanh_ladder_superpotential(const Grid& grid, int ell) {
    if (ell < 1) throw DomainError("tanh ladder requires ell >= 1");
    const double l = static_cast<double>(ell);
    auto f = SampledFunction::tabulate(grid, [l](double x) { return l * std::tanh(x); });
    auto df = SampledFunction::tabulate(grid, [l](double x) {
        const double sech = 1.0 / std::cosh(x);
        return l * sech * sech;
    });
    return Superpotential(std::move(f), -l, l).with_derivative(std::move(df));
}

}  // namespace isodirac
