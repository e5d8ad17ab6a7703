#include "isodirac/witten_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace isodirac {

namespace {

void require_positive_beta(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        std::ostringstream os;
        os << "regulator beta must be positive and finite, got " << beta;
        throw DomainError(os.str());
    }
}

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Heat-kernel boundary term a exp(-beta a^2); an infinite asymptote contributes nothing.
double boundary_term(double a, double beta) {
    if (std::isinf(a)) return 0.0;
    return a * std::exp(-beta * a * a);
}

double spectral_trace(const Spectrum& s, double beta) {
    double sum = 0.0;
    for (double e : s.eigenvalues) sum += std::exp(-beta * e);
    return sum;
}

}  // namespace

IndexSplit index_analytic_split(double f_plus, double f_minus, double beta) {
    require_positive_beta(beta);
    const double root = std::sqrt(beta);
    // 1/2 erf(a sqrt(beta)) = 1/2 sgn(a) - 1/2 sgn(a) erfc(|a| sqrt(beta))
    auto half_tail = [root](double a) { return 0.5 * sign_of(a) * std::erfc(std::abs(a) * root); };
    return IndexSplit{0.5 * (sign_of(f_plus) - sign_of(f_minus)), half_tail(f_plus) - half_tail(f_minus)};
}

double index_analytic(double f_plus, double f_minus, double beta) {
    return index_analytic_split(f_plus, f_minus, beta).value();
}

double index_ode_rhs(double f_plus, double f_minus, double beta) {
    require_positive_beta(beta);
    return (boundary_term(f_plus, beta) - boundary_term(f_minus, beta)) / std::sqrt(4.0 * std::numbers::pi * beta);
}

IndexLimit index_limit(double f_plus, double f_minus) {
    switch (zero_mode_status(f_minus, f_plus)) {
        case ZeroModeStatus::in_minus: return {1, false};
        case ZeroModeStatus::in_plus: return {-1, false};
        case ZeroModeStatus::absent: return {0, false};
        case ZeroModeStatus::indeterminate: break;
    }
    return {0, true};
}

IndexLimit index_limit(const Superpotential& f) { return index_limit(f.f_plus(), f.f_minus()); }

NumericIndex index_numeric(const PartnerSpectra& spectra, double beta, double spacing) {
    require_positive_beta(beta);
    const double edge = spectra.minus.continuum_edge.value_or(std::numeric_limits<double>::infinity());
    NumericIndex out{spectral_trace(spectra.minus, beta) - spectral_trace(spectra.plus, beta), false, false};
    out.continuum_contaminated = std::isfinite(edge) && std::exp(-beta * edge) >= 1e-6;
    auto exhausted = [&](const Spectrum& s) {
        return s.size() > 0 && is_bound_level(s.eigenvalues.back(), edge, spacing);
    };
    out.levels_exhausted = exhausted(spectra.minus) || exhausted(spectra.plus);
    return out;
}

NumericIndex index_numeric(const Superpotential& f, double beta, std::size_t k) {
    require_positive_beta(beta);
    const PartnerSpectra spectra = partner_spectra(partner_potentials(f), k);
    return index_numeric(spectra, beta, f.grid().spacing());
}

IndexCurve index_curve(double f_plus, double f_minus, std::vector<double> betas) {
    std::sort(betas.begin(), betas.end());
    IndexCurve curve{std::move(betas), {}};
    curve.deltas.reserve(curve.betas.size());
    for (double b : curve.betas) curve.deltas.push_back(index_analytic(f_plus, f_minus, b));
    return curve;
}

}  // namespace isodirac
