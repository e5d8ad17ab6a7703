#include "isodirac/analytic_pt.hpp"

#include "isodirac/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace isodirac::pt {

namespace {

constexpr double kIntegerSlack = 1e-9;

bool is_nonpositive_integer(double v) {
    return v <= kIntegerSlack && std::abs(v - std::round(v)) <= kIntegerSlack;
}

bool is_integer(double v) { return std::abs(v - std::round(v)) <= kIntegerSlack; }

// Terminating 2F1(a, b; c; z) for a or b a nonpositive integer.
double terminating_hypergeometric(double a, double b, double c, double z) {
    long degree = -1;
    if (is_nonpositive_integer(a)) degree = -std::lround(a);
    if (is_nonpositive_integer(b)) {
        const long other = -std::lround(b);
        degree = degree < 0 ? other : std::min(degree, other);
    }
    if (degree < 0) {
        std::ostringstream os;
        os << "hypergeometric series 2F1(" << a << ", " << b << "; " << c << "; z) does not terminate";
        throw DomainError(os.str());
    }
    double term = 1.0, sum = 1.0;
    for (long j = 0; j < degree; ++j) {
        const double dj = static_cast<double>(j);
        if (is_nonpositive_integer(c + dj)) throw DomainError("hypergeometric lower parameter hits a pole");
        term *= (a + dj) * (b + dj) / ((c + dj) * (dj + 1.0)) * z;
        sum += term;
    }
    return sum;
}

}  // namespace

PTParams params_from_cs(double c, double s) {
    const double rc = 0.25 - 2.0 * c;
    const double rs = 0.25 + 2.0 * s;
    if (rc < 0.0 || rs < 0.0) {
        std::ostringstream os;
        os << "Poschl-Teller strengths c = " << c << ", s = " << s << " give complex k";
        throw DomainError(os.str());
    }
    const double root_c = std::sqrt(rc);
    const double root_s = std::sqrt(rs);
    return PTParams{c, s, 0.5 * (1.0 + root_c), 0.5 * (1.0 + root_s), 0.5 * (1.0 - root_c), 0.5 * (1.0 - root_s)};
}

Strengths cs_from_ks(double k1, double k2) {
    const double a = 2.0 * k1 - 1.0;
    const double b = 2.0 * k2 - 1.0;
    return Strengths{-0.5 * (a * a - 0.25), 0.5 * (b * b - 0.25)};
}

std::vector<double> pt_bound_energies(double k1, double k2) {
    std::vector<double> out;
    for (double k = k1 - k2; k > 0.5 + kIntegerSlack; k -= 1.0) out.push_back(-0.5 * (2.0 * k - 1.0) * (2.0 * k - 1.0));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BoundLevel> pt_bound_levels(const PTParams& params) {
    std::vector<double> roots{params.k2};
    if (params.s == 0.0) roots.push_back(params.k2_alt);
    std::vector<BoundLevel> out;
    for (double k2 : roots)
        for (double k = params.k1 - k2; k > 0.5 + kIntegerSlack; k -= 1.0)
            out.push_back({k, k2, -0.5 * (2.0 * k - 1.0) * (2.0 * k - 1.0)});
    std::sort(out.begin(), out.end(), [](const BoundLevel& a, const BoundLevel& b) { return a.energy < b.energy; });
    return out;
}

double pt_scattering_energy(double kappa) {
    const std::complex<double> k(0.5, 0.5 * kappa);
    const std::complex<double> root = 2.0 * k - 1.0;
    return (-0.5 * root * root).real();
}

double pt_bound_wavefunction(double k1, double k2, double k, double x) {
    const double a = -k1 + k2 + k;
    const double b = -k1 + k2 - k + 1.0;
    const double gamma = 2.0 * k2;
    const double sh = std::sinh(x);
    const double sinh_power = 2.0 * k2 - 0.5;
    double sinh_factor;
    if (is_integer(sinh_power)) {
        sinh_factor = std::pow(sh, static_cast<int>(std::lround(sinh_power)));
    } else if (x >= 0.0) {
        sinh_factor = std::pow(sh, sinh_power);
    } else {
        throw DomainError("singular-channel wavefunction is only defined for x >= 0");
    }
    const double series = terminating_hypergeometric(a, b, gamma, -sh * sh);
    return std::pow(std::cosh(x), 1.5 - 2.0 * k1) * sinh_factor * series;
}

double legendre_zero_mode(int ell, double x) {
    if (ell < 1) throw DomainError("legendre_zero_mode requires ell >= 1");
    // int sech^(2 ell) = sqrt(pi) Gamma(ell) / Gamma(ell + 1/2)
    const double l = static_cast<double>(ell);
    const double mass = std::exp(0.5 * std::log(std::numbers::pi) + std::lgamma(l) - std::lgamma(l + 0.5));
    return std::pow(1.0 / std::cosh(x), l) / std::sqrt(mass);
}

LadderSpectra ladder_spectra(int ell) {
    if (ell < 1) throw DomainError("ladder_spectra requires ell >= 1");
    LadderSpectra out{ell, {}, {}, static_cast<double>(ell) * ell};
    for (int j = 0; j < ell; ++j) {
        const double e = static_cast<double>(ell * ell - (ell - j) * (ell - j));
        out.e_minus.push_back(e);
        if (j >= 1) out.e_plus.push_back(e);
    }
    return out;
}

double pt_to_partner_energy(double e_pt, int ell) { return 2.0 * e_pt + static_cast<double>(ell) * ell; }

RegimeClass singularity_regime(double s) {
    constexpr double lower = -1.0 / 8.0;
    constexpr double upper = 3.0 / 8.0;
    if (std::isnan(s)) throw DomainError("singularity strength s is NaN");
    if (s == lower || s == upper) return {Regime::needs_self_adjoint_extension, true};
    if (s < lower) return {Regime::unbounded_below, false};
    if (s > upper) return {Regime::impenetrable_barrier, false};
    if (s == 0.0) return {Regime::regular, false};
    return {Regime::needs_self_adjoint_extension, false};
}

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::unbounded_below: return "unbounded_below";
        case Regime::needs_self_adjoint_extension: return "needs_self_adjoint_extension";
        case Regime::impenetrable_barrier: return "impenetrable_barrier";
        case Regime::regular: return "regular";
    }
    return "unknown";
}

}  // namespace isodirac::pt
