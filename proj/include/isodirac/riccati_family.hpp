#pragma once

#include "isodirac/susy_core.hpp"

namespace isodirac {

/// Integration constant lambda of the general Riccati solution. Legal values
/// are lambda < -1 or lambda > 0, kept 1e-6 away from both -1 and 0.
class FamilyParameter {
public:
    explicit FamilyParameter(double lambda);

    double value() const { return lambda_; }

private:
    double lambda_;
};

/// One member of the isospectral family generated by lambda.
struct IsospectralMember {
    FamilyParameter lambda;
    SampledFunction F;                // large potential f + psi0^2 / (lambda + I)
    SampledFunction v_tilde;          // V_+ - 2 F'
    SampledFunction psi0_tilde;       // renormalized zero mode of B^dagger B
    SampledFunction running_integral; // I(x) = int_{x_min}^x psi0^2
    double expression_gap;            // max |(V_+ - 2F') - (F^2 - F')| on the interior
};

/// I(x) for a normalized zero mode: end-corrected trapezoid, made non-decreasing.
SampledFunction zero_mode_running_integral(const SampledFunction& psi0);

/// F = f + psi0^2 / (lambda + I). Throws NumericalError when min |lambda + I| < 1e-6
/// or lambda + I changes sign anywhere on the grid.
SampledFunction large_potential_F(const Superpotential& f, const SampledFunction& psi0, FamilyParameter lambda);

/// max over interior points of |F' + F^2 - V_+|
double riccati_residual(const SampledFunction& F, const SampledFunction& v_plus);

/// max over interior points of |phi' + phi^2 + 2 f phi|
double phi_residual(const SampledFunction& f, const SampledFunction& phi);

/// sqrt(lambda (lambda + 1)) psi0 / (lambda + I)
SampledFunction renormalized_zero_mode(const SampledFunction& psi0, FamilyParameter lambda);

/// || psi0_tilde' + F psi0_tilde ||_2
double annihilation_check(const SampledFunction& F, const SampledFunction& psi0_tilde);

/// Builds the member for lambda. `psi0` must be the normalized H_- zero mode of
/// pair.superpotential. F' is split as f' + phi', with f' taken from the
/// superpotential (exact when attached) and phi' from the stencil.
IsospectralMember deformed_potential(const PartnerPair& pair, const SampledFunction& psi0, FamilyParameter lambda);

/// Dirac levels of the deformed problem: psi_plus is kept from dirac_spectrum(f),
/// psi_minus is rebuilt as B^dagger psi_plus / omega with B^dagger = -d/dx + F
/// (evaluated as psi_minus + (F - f) psi_plus / omega), and the zero mode becomes psi0_tilde.
DiracSpectrum deformed_dirac_solutions(const IsospectralMember& member, const Superpotential& f, std::size_t k);

}  // namespace isodirac
