#pragma once

#include "isodirac/susy_core.hpp"

#include <vector>

namespace isodirac {

/// Regularized index Delta(beta) = 1/2 erf(f_plus sqrt(beta)) - 1/2 erf(f_minus sqrt(beta)).
/// Satisfies dDelta/dbeta = index_ode_rhs and Delta(0+) = 0.
double index_analytic(double f_plus, double f_minus, double beta);

/// Delta = saturation - deficit, with saturation = (sgn f_plus - sgn f_minus)/2 the
/// beta -> infinity limit and deficit built from erfc, so the approach to the limit
/// keeps full relative precision even when Delta rounds to its limit.
struct IndexSplit {
    double saturation;
    double deficit;

    double value() const { return saturation - deficit; }
};
IndexSplit index_analytic_split(double f_plus, double f_minus, double beta);

/// (f_plus exp(-beta f_plus^2) - f_minus exp(-beta f_minus^2)) / sqrt(4 pi beta)
double index_ode_rhs(double f_plus, double f_minus, double beta);

struct IndexLimit {
    int value;          // -1, 0 or +1
    bool indeterminate; // an asymptote within 1e-6 of zero; value is 0 then
};
IndexLimit index_limit(double f_plus, double f_minus);
IndexLimit index_limit(const Superpotential& f);

struct NumericIndex {
    double value;
    bool continuum_contaminated; // exp(-beta * edge) >= 1e-6
    bool levels_exhausted;       // the highest computed level is still bound
};

/// Sum exp(-beta E_-) - sum exp(-beta E_+) over box spectra truncated at k levels.
NumericIndex index_numeric(const Superpotential& f, double beta, std::size_t k);

/// Same, reusing precomputed spectra (continuum edge and spacing from the spectra).
NumericIndex index_numeric(const PartnerSpectra& spectra, double beta, double spacing);

struct IndexCurve {
    std::vector<double> betas;  // ascending, positive
    std::vector<double> deltas;
};
IndexCurve index_curve(double f_plus, double f_minus, std::vector<double> betas);

}  // namespace isodirac
