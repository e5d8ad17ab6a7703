#include "isodirac/susy_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace isodirac {

namespace {

constexpr double kAsymptoteTolerance = 1e-6;

double asymptote_slack(double f_inf) { return kAsymptoteTolerance * std::max(1.0, std::abs(f_inf)); }

std::size_t tail_width(std::size_t n) { return std::max<std::size_t>(2, n / 20); }

// Mean of the tail and its spread (max - min).
std::pair<double, double> tail_stats(const SampledFunction& f, std::size_t first, std::size_t last) {
    double lo = f[first], hi = f[first], sum = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        lo = std::min(lo, f[i]);
        hi = std::max(hi, f[i]);
        sum += f[i];
    }
    return {sum / static_cast<double>(last - first), hi - lo};
}

SampledFunction negated(const SampledFunction& a) {
    std::vector<double> v(a.values().begin(), a.values().end());
    for (double& x : v) x = -x;
    return SampledFunction(a.grid(), std::move(v));
}

SampledFunction first_order(const SampledFunction& w, const SampledFunction& psi, double sign) {
    require_same_grid(w, psi, "first-order operator");
    const SampledFunction dpsi = derivative(psi);
    std::vector<double> v(psi.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = sign * dpsi[i] + w[i] * psi[i];
    return SampledFunction(psi.grid(), std::move(v));
}

double overlap(const SampledFunction& a, const SampledFunction& b) {
    std::vector<double> prod(a.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a[i] * b[i];
    return integral(SampledFunction(a.grid(), std::move(prod)));
}

void pin_zero_level(Spectrum& spec, const SampledFunction& psi0) {
    if (spec.size() == 0) return;
    const double e0 = spec.eigenvalues.front();
    const double ov = std::abs(overlap(spec.eigenvectors.front(), psi0));
    if (!(std::abs(e0) <= 1e-3) || !(ov >= 1.0 - 1e-3)) {
        std::ostringstream os;
        os << "zero-mode cross-check failed: lowest eigenvalue " << e0 << ", overlap " << ov;
        throw NumericalError(os.str());
    }
    spec.eigenvalues.front() = 0.0;
    spec.eigenvectors.front() = psi0;
}

}  // namespace

Superpotential::Superpotential(SampledFunction f, double f_minus, double f_plus)
    : f_(std::move(f)), f_minus_(f_minus), f_plus_(f_plus) {
    if (std::isnan(f_minus) || std::isnan(f_plus))
        throw DomainError("superpotential asymptotes must not be NaN");
    const std::size_t n = f_.size();
    if (std::isfinite(f_minus) && std::abs(f_[0] - f_minus) > asymptote_slack(f_minus)) {
        std::ostringstream os;
        os << "f(x_min) = " << f_[0] << " does not reach the asymptote f_minus = " << f_minus
           << "; widen the grid";
        throw DomainError(os.str());
    }
    if (std::isfinite(f_plus) && std::abs(f_[n - 1] - f_plus) > asymptote_slack(f_plus)) {
        std::ostringstream os;
        os << "f(x_max) = " << f_[n - 1] << " does not reach the asymptote f_plus = " << f_plus
           << "; widen the grid";
        throw DomainError(os.str());
    }
}

Superpotential Superpotential::detect(SampledFunction f) {
    const std::size_t n = f.size();
    const std::size_t w = tail_width(n);
    const auto [left_mean, left_spread] = tail_stats(f, 0, w);
    const auto [right_mean, right_spread] = tail_stats(f, n - w, n);
    if (left_spread > asymptote_slack(left_mean))
        throw DomainError("superpotential is not flat on the left tail; supply f_minus explicitly");
    if (right_spread > asymptote_slack(right_mean))
        throw DomainError("superpotential is not flat on the right tail; supply f_plus explicitly");
    const double f_minus = f[0];
    const double f_plus = f[n - 1];
    return Superpotential(std::move(f), f_minus, f_plus);
}

Superpotential Superpotential::with_derivative(SampledFunction df) const {
    require_same_grid(f_, df, "Superpotential::with_derivative");
    Superpotential out = *this;
    out.df_ = std::move(df);
    return out;
}

SampledFunction Superpotential::derivative() const { return df_ ? *df_ : isodirac::derivative(f_); }

double Superpotential::continuum_edge() const {
    return std::min(f_plus_ * f_plus_, f_minus_ * f_minus_);
}

std::vector<double> DiracSpectrum::omegas() const {
    std::vector<double> out;
    out.reserve(levels.size());
    for (const auto& l : levels) out.push_back(l.omega);
    return out;
}

PartnerPair partner_potentials(const Superpotential& f) {
    const SampledFunction& w = f.samples();
    const SampledFunction dw = f.derivative();
    std::vector<double> vm(w.size()), vp(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double sq = w[i] * w[i];
        vm[i] = sq - dw[i];
        vp[i] = sq + dw[i];
    }
    return PartnerPair{f, SampledFunction(w.grid(), std::move(vm)), SampledFunction(w.grid(), std::move(vp))};
}

SampledFunction apply_lowering(const SampledFunction& w, const SampledFunction& psi) {
    return first_order(w, psi, 1.0);
}

SampledFunction apply_raising(const SampledFunction& w, const SampledFunction& psi) {
    return first_order(w, psi, -1.0);
}

SampledFunction apply_A(const Superpotential& f, const SampledFunction& psi) {
    return apply_lowering(f.samples(), psi);
}

SampledFunction apply_A_dagger(const Superpotential& f, const SampledFunction& psi) {
    return apply_raising(f.samples(), psi);
}

ZeroModeStatus zero_mode_status(double f_minus, double f_plus) {
    if (std::abs(f_minus) <= kAsymptoteTolerance || std::abs(f_plus) <= kAsymptoteTolerance)
        return ZeroModeStatus::indeterminate;
    if (f_minus < 0.0 && f_plus > 0.0) return ZeroModeStatus::in_minus;
    if (f_minus > 0.0 && f_plus < 0.0) return ZeroModeStatus::in_plus;
    return ZeroModeStatus::absent;
}

std::optional<ZeroMode> zero_mode(const Superpotential& f) {
    const ZeroModeStatus status = zero_mode_status(f.f_minus(), f.f_plus());
    if (status != ZeroModeStatus::in_minus && status != ZeroModeStatus::in_plus) return std::nullopt;

    const double sign = status == ZeroModeStatus::in_minus ? -1.0 : 1.0;
    const SampledFunction running = cumulative_integral_corrected(f.samples(), f.derivative());
    // exponent = sign * int f, shifted so its maximum is zero (no overflow).
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < running.size(); ++i) peak = std::max(peak, sign * running[i]);
    std::vector<double> psi(running.size());
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = std::exp(sign * running[i] - peak);
    return ZeroMode{normalized(SampledFunction(running.grid(), std::move(psi))),
                    status == ZeroModeStatus::in_minus ? Sector::minus : Sector::plus};
}

SampledFunction superpotential_from_zero_mode(const SampledFunction& psi0) {
    constexpr double kFloor = 1e-300;
    const std::size_t n = psi0.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(psi0[i] > kFloor)) {
            std::ostringstream os;
            os << "zero mode must be positive on the interior; psi0(" << psi0.grid().x(i) << ") = " << psi0[i];
            throw DomainError(os.str());
        }
    }
    const SampledFunction d = derivative(psi0);
    std::vector<double> w(n);
    for (std::size_t i = 1; i + 1 < n; ++i) w[i] = -d[i] / psi0[i];
    // Walls may carry a vanishing sample; extrapolate linearly there instead.
    w[0] = psi0[0] > kFloor ? -d[0] / psi0[0] : 2.0 * w[1] - w[2];
    w[n - 1] = psi0[n - 1] > kFloor ? -d[n - 1] / psi0[n - 1] : 2.0 * w[n - 2] - w[n - 3];
    return SampledFunction(psi0.grid(), std::move(w));
}

bool is_bound_level(double energy, double continuum_edge, double spacing) {
    return energy < continuum_edge - 10.0 * spacing * spacing;
}

PartnerSpectra partner_spectra(const PartnerPair& pair, std::size_t k) {
    PartnerSpectra out{eigen_solve(pair.v_minus, k), eigen_solve(pair.v_plus, k)};
    const double edge = pair.superpotential.continuum_edge();
    out.minus.continuum_edge = edge;
    out.plus.continuum_edge = edge;
    if (const auto zm = zero_mode(pair.superpotential))
        pin_zero_level(zm->sector == Sector::minus ? out.minus : out.plus, zm->psi);
    return out;
}

DiracSpectrum dirac_spectrum(const Superpotential& f, std::size_t k) {
    const PartnerPair pair = partner_potentials(f);
    const Spectrum minus = eigen_solve(pair.v_minus, k);
    const double edge = f.continuum_edge();
    const double h = f.grid().spacing();

    DiracSpectrum out{{}, zero_mode(f), edge};
    std::size_t first = 0;
    if (out.zero_mode && out.zero_mode->sector == Sector::minus) {
        Spectrum check = minus;
        pin_zero_level(check, out.zero_mode->psi);
        first = 1;
    }

    std::vector<DiracLevel> positive;
    for (std::size_t i = first; i < minus.size(); ++i) {
        const double energy = minus.eigenvalues[i];
        if (!is_bound_level(energy, edge, h)) break;
        if (!(energy > 0.0)) {
            std::ostringstream os;
            os << "dirac_spectrum: unexpected non-positive level E = " << energy << " in H_-";
            throw NumericalError(os.str());
        }
        const double omega = std::sqrt(energy);
        const SampledFunction& lower = minus.eigenvectors[i];
        positive.push_back({omega, lower, normalized(apply_A(f, lower))});
    }

    for (auto it = positive.rbegin(); it != positive.rend(); ++it)
        out.levels.push_back({-it->omega, negated(it->psi_minus), it->psi_plus});
    if (out.zero_mode) {
        const SampledFunction zero = SampledFunction::zeros(f.grid());
        if (out.zero_mode->sector == Sector::minus)
            out.levels.push_back({0.0, out.zero_mode->psi, zero});
        else
            out.levels.push_back({0.0, zero, out.zero_mode->psi});
    }
    for (auto& level : positive) out.levels.push_back(std::move(level));
    return out;
}

}  // namespace isodirac
