#pragma once

#include "isodirac/numerics.hpp"

#include <optional>
#include <vector>

namespace isodirac {

/// Scalar potential f(x) of the Dirac problem, acting as the SUSY superpotential.
///
/// Asymptotes f_minus = f(-inf), f_plus = f(+inf) either come from the flat
/// tails of the samples (detect) or are supplied by the caller. An infinite
/// asymptote marks an unbounded (confining) tail and is exempt from the
/// tail-agreement check. An exact derivative may be attached; otherwise f'
/// is taken from the finite-difference stencil.
class Superpotential {
public:
    Superpotential(SampledFunction f, double f_minus, double f_plus);

    /// Reads f_minus/f_plus from the outer 5% of the grid on each side; throws
    /// DomainError when a tail is not flat to 1e-6 * max(1, |f_inf|).
    static Superpotential detect(SampledFunction f);

    Superpotential with_derivative(SampledFunction df) const;

    const SampledFunction& samples() const { return f_; }
    const Grid& grid() const { return f_.grid(); }
    double f_minus() const { return f_minus_; }
    double f_plus() const { return f_plus_; }
    bool has_exact_derivative() const { return df_.has_value(); }

    /// f' (exact when attached, stencil otherwise).
    SampledFunction derivative() const;

    /// Lowest scattering threshold min(f_plus^2, f_minus^2); infinite when both tails diverge.
    double continuum_edge() const;

private:
    SampledFunction f_;
    double f_minus_;
    double f_plus_;
    std::optional<SampledFunction> df_;
};

struct PartnerPair {
    Superpotential superpotential;
    SampledFunction v_minus;  // f^2 - f'
    SampledFunction v_plus;   // f^2 + f'
};

/// Which partner Hamiltonian owns the normalizable E = 0 state.
enum class Sector { minus, plus };

enum class ZeroModeStatus {
    in_minus,       // f_minus < 0 < f_plus: psi ~ exp(-int f) in H_-
    in_plus,        // f_plus < 0 < f_minus: psi ~ exp(+int f) in H_+
    absent,         // asymptotes of equal sign
    indeterminate,  // an asymptote within 1e-6 of zero
};

struct ZeroMode {
    SampledFunction psi;  // L2-normalized, positive
    Sector sector;
};

/// One Dirac level: omega with its two spinor components.
/// psi_minus lives in the H_- sector, psi_plus in the H_+ sector.
struct DiracLevel {
    double omega;
    SampledFunction psi_minus;
    SampledFunction psi_plus;
};

struct DiracSpectrum {
    std::vector<DiracLevel> levels;  // ascending in omega, symmetric under omega -> -omega
    std::optional<ZeroMode> zero_mode;
    double continuum_edge;

    bool has_zero_mode() const { return zero_mode.has_value(); }
    std::vector<double> omegas() const;
};

/// Spectra of H_- and H_+ with the zero level pinned to the integrated zero mode.
struct PartnerSpectra {
    Spectrum minus;
    Spectrum plus;
};

PartnerPair partner_potentials(const Superpotential& f);

/// A psi = psi' + f psi
SampledFunction apply_A(const Superpotential& f, const SampledFunction& psi);

/// A^dagger psi = -psi' + f psi
SampledFunction apply_A_dagger(const Superpotential& f, const SampledFunction& psi);

/// Same pair of operators for an arbitrary first-order factor d/dx + w.
SampledFunction apply_lowering(const SampledFunction& w, const SampledFunction& psi);
SampledFunction apply_raising(const SampledFunction& w, const SampledFunction& psi);

ZeroModeStatus zero_mode_status(double f_minus, double f_plus);

/// Normalized zero mode built by integrating f, or nullopt when none is normalizable.
std::optional<ZeroMode> zero_mode(const Superpotential& f);

/// -psi0'/psi0. Throws DomainError if an interior sample is <= 1e-300.
SampledFunction superpotential_from_zero_mode(const SampledFunction& psi0);

/// True when E lies below edge - 10 h^2 (a genuine bound level, not a box artifact).
bool is_bound_level(double energy, double continuum_edge, double spacing);

/// Solves H_- and H_+ for k levels each. Where a zero mode exists, the eigensolver's
/// lowest level in that sector is cross-checked against it (|E| <= 1e-3, overlap
/// >= 1 - 1e-3) and replaced by (0, psi0). Throws NumericalError if the check fails.
PartnerSpectra partner_spectra(const PartnerPair& pair, std::size_t k);

/// Dirac levels omega = +-sqrt(E) from the bound part of H_-'s spectrum, plus
/// omega = 0 when a zero mode exists. psi_plus = A psi_minus / omega.
DiracSpectrum dirac_spectrum(const Superpotential& f, std::size_t k);

}  // namespace isodirac
