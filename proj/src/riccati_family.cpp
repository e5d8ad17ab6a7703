#include "isodirac/riccati_family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isodirac {

namespace {

constexpr double kGuard = 1e-6;

// lambda + I(x), checked for sign constancy and distance from zero.
std::vector<double> denominator(const SampledFunction& running, FamilyParameter lambda) {
    std::vector<double> den(running.size());
    const double sign = lambda.value() > 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < den.size(); ++i) {
        den[i] = lambda.value() + running[i];
        if (!(sign * den[i] >= kGuard)) {
            std::ostringstream os;
            os << "pole in the isospectral family: lambda + I(x) = " << den[i] << " at x = "
               << running.grid().x(i) << " (lambda = " << lambda.value() << ")";
            throw NumericalError(os.str());
        }
    }
    return den;
}

SampledFunction deformation(const SampledFunction& psi0, const SampledFunction& running, FamilyParameter lambda) {
    const std::vector<double> den = denominator(running, lambda);
    std::vector<double> phi(psi0.size());
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = psi0[i] * psi0[i] / den[i];
    return SampledFunction(psi0.grid(), std::move(phi));
}

SampledFunction renormalized(const SampledFunction& psi0, const SampledFunction& running, FamilyParameter lambda) {
    const std::vector<double> den = denominator(running, lambda);
    const double scale = std::sqrt(lambda.value() * (lambda.value() + 1.0));
    std::vector<double> out(psi0.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * psi0[i] / den[i];
    return SampledFunction(psi0.grid(), std::move(out));
}

}  // namespace

FamilyParameter::FamilyParameter(double lambda) : lambda_(lambda) {
    const bool legal = std::isfinite(lambda) && (lambda > 0.0 || lambda < -1.0) &&
                       std::abs(lambda) > kGuard && std::abs(lambda + 1.0) > kGuard;
    if (!legal) {
        std::ostringstream os;
        os << "family parameter lambda = " << lambda << " must satisfy lambda < -1 or lambda > 0";
        throw DomainError(os.str());
    }
}

SampledFunction zero_mode_running_integral(const SampledFunction& psi0) {
    std::vector<double> sq(psi0.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = psi0[i] * psi0[i];
    const SampledFunction running = cumulative_integral_corrected(SampledFunction(psi0.grid(), std::move(sq)));
    std::vector<double> v(running.values().begin(), running.values().end());
    for (std::size_t i = 1; i < v.size(); ++i) v[i] = std::max(v[i], v[i - 1]);
    return SampledFunction(psi0.grid(), std::move(v));
}

SampledFunction large_potential_F(const Superpotential& f, const SampledFunction& psi0, FamilyParameter lambda) {
    require_same_grid(f.samples(), psi0, "large_potential_F");
    const SampledFunction phi = deformation(psi0, zero_mode_running_integral(psi0), lambda);
    std::vector<double> big(phi.size());
    for (std::size_t i = 0; i < big.size(); ++i) big[i] = f.samples()[i] + phi[i];
    return SampledFunction(phi.grid(), std::move(big));
}

double riccati_residual(const SampledFunction& F, const SampledFunction& v_plus) {
    require_same_grid(F, v_plus, "riccati_residual");
    const SampledFunction dF = derivative(F);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < F.size(); ++i)
        worst = std::max(worst, std::abs(dF[i] + F[i] * F[i] - v_plus[i]));
    return worst;
}

double phi_residual(const SampledFunction& f, const SampledFunction& phi) {
    require_same_grid(f, phi, "phi_residual");
    const SampledFunction dphi = derivative(phi);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < phi.size(); ++i)
        worst = std::max(worst, std::abs(dphi[i] + phi[i] * phi[i] + 2.0 * f[i] * phi[i]));
    return worst;
}

SampledFunction renormalized_zero_mode(const SampledFunction& psi0, FamilyParameter lambda) {
    return renormalized(psi0, zero_mode_running_integral(psi0), lambda);
}

double annihilation_check(const SampledFunction& F, const SampledFunction& psi0_tilde) {
    return l2_norm(apply_lowering(F, psi0_tilde));
}

IsospectralMember deformed_potential(const PartnerPair& pair, const SampledFunction& psi0, FamilyParameter lambda) {
    const SampledFunction& f = pair.superpotential.samples();
    require_same_grid(f, psi0, "deformed_potential");
    const SampledFunction running = zero_mode_running_integral(psi0);
    const SampledFunction phi = deformation(psi0, running, lambda);
    const SampledFunction df = pair.superpotential.derivative();
    const SampledFunction dphi = derivative(phi);

    const std::size_t n = f.size();
    std::vector<double> big(n), v_tilde(n);
    for (std::size_t i = 0; i < n; ++i) {
        big[i] = f[i] + phi[i];
        v_tilde[i] = pair.v_plus[i] - 2.0 * (df[i] + dphi[i]);
    }
    SampledFunction F(f.grid(), std::move(big));

    // Second route to the same potential: B^dagger B = -d^2 + F^2 - F'.
    const SampledFunction dF = derivative(F);
    double gap = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i)
        gap = std::max(gap, std::abs(v_tilde[i] - (F[i] * F[i] - dF[i])));

    return IsospectralMember{lambda,
                             std::move(F),
                             SampledFunction(f.grid(), std::move(v_tilde)),
                             renormalized(psi0, running, lambda),
                             running,
                             gap};
}

DiracSpectrum deformed_dirac_solutions(const IsospectralMember& member, const Superpotential& f, std::size_t k) {
    require_same_grid(member.F, f.samples(), "deformed_dirac_solutions");
    DiracSpectrum base = dirac_spectrum(f, k);
    if (!base.zero_mode || base.zero_mode->sector != Sector::minus)
        throw DomainError("deformed_dirac_solutions: superpotential has no H_- zero mode");

    // B^dagger = A^dagger + phi with phi = F - f, and the Dirac pair gives A^dagger psi_plus =
    // omega psi_minus, so B^dagger psi_plus / omega = psi_minus + phi psi_plus / omega. This
    // avoids differentiating psi_plus, which is itself a stencil image of psi_minus.
    const SampledFunction& f_samples = f.samples();
    for (auto& level : base.levels) {
        if (level.omega == 0.0) {
            level.psi_minus = member.psi0_tilde;
            continue;
        }
        std::vector<double> v(level.psi_minus.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = level.psi_minus[i] + (member.F[i] - f_samples[i]) * level.psi_plus[i] / level.omega;
        level.psi_minus = normalized(SampledFunction(f_samples.grid(), std::move(v)));
    }
    base.zero_mode = ZeroMode{member.psi0_tilde, Sector::minus};
    return base;
}

}  // namespace isodirac
