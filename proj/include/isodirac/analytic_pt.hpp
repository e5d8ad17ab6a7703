#pragma once

#include <string_view>
#include <vector>

namespace isodirac::pt {

// Closed-form results for H = -1/2 d^2/dx^2 + c / cosh^2 x + s / sinh^2 x.
//
// Strengths are parametrized by k1, k2 through
//     c = -1/2 [(2 k1 - 1)^2 - 1/4],   s = 1/2 [(2 k2 - 1)^2 - 1/4],
// and bound energies are E_k = -(2k - 1)^2 / 2.  Each strength admits two
// roots; the primary one takes 2k - 1 >= 0 and the other is kept as *_alt.
//
// For s = 0 the two k2 roots 3/4 and 1/4 label the odd and even parity
// sectors.  Within one sector k runs over k1 - k2, k1 - k2 - 1, ... while
// k > 1/2; the full bound spectrum is the union of both sectors.

struct PTParams {
    double c;
    double s;
    double k1;
    double k2;
    double k1_alt;
    double k2_alt;
};

/// Throws DomainError when 1/4 - 2c < 0 or 1/4 + 2s < 0 (complex k).
PTParams params_from_cs(double c, double s);

struct Strengths {
    double c;
    double s;
};
Strengths cs_from_ks(double k1, double k2);

/// Bound energies of one k2 sector, ascending. Empty when k1 - k2 <= 1/2.
std::vector<double> pt_bound_energies(double k1, double k2);

struct BoundLevel {
    double k;
    double k2;  // sector root the level belongs to
    double energy;
};

/// All bound levels, ascending in energy. For s = 0 both k2 roots contribute;
/// otherwise only the primary root (the alternate one is not square integrable at 0).
std::vector<BoundLevel> pt_bound_levels(const PTParams& params);

/// Continuum branch k = (1 + i kappa)/2 of E_k; returns kappa^2 / 2.
double pt_scattering_energy(double kappa);

/// Unnormalized bound state (cosh x)^(3/2 - 2k1) (sinh x)^(2k2 - 1/2) 2F1(a, b; 2k2; -sinh^2 x)
/// with a = -k1 + k2 + k, b = -k1 + k2 - k + 1. Only terminating series are supported;
/// throws DomainError otherwise, or for x < 0 when the sinh power is not an integer.
double pt_bound_wavefunction(double k1, double k2, double k, double x);

/// c_ell sech^ell(x), normalized on the real line.
double legendre_zero_mode(int ell, double x);

/// Energies of H_-/H_+ for the superpotential ell tanh x.
struct LadderSpectra {
    int ell;
    std::vector<double> e_minus;  // ell^2 - (ell - j)^2, j = 0..ell-1
    std::vector<double> e_plus;   // same for j = 1..ell-1
    double continuum_edge;        // ell^2
};
LadderSpectra ladder_spectra(int ell);

/// H_-(ell) = 2 H_PT + ell^2 with c = -ell(ell+1)/2, s = 0.
double pt_to_partner_energy(double e_pt, int ell);

enum class Regime {
    unbounded_below,               // s < -1/8
    needs_self_adjoint_extension,  // -1/8 < s < 3/8, s != 0
    impenetrable_barrier,          // s > 3/8
    regular,                       // s = 0
};

struct RegimeClass {
    Regime regime;
    bool boundary;  // s sits exactly on -1/8 or 3/8
};

RegimeClass singularity_regime(double s);

std::string_view to_string(Regime regime);

}  // namespace isodirac::pt
