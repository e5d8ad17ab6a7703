#pragma once

#include "isodirac/susy_core.hpp"

namespace isodirac {

/// f(x) = ell * tanh(x) with its exact derivative attached; asymptotes -ell, +ell.
Superpotential tanh_ladder_superpotential(const Grid& grid, int ell);

/// The phi^4 kink background, f(x) = 2 tanh(x).
inline Superpotential kink_superpotential(const Grid& grid) { return tanh_ladder_superpotential(grid, 2); }

}  // namespace isodirac
