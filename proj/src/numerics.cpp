#include "isodirac/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>

namespace isodirac {

Grid::Grid(double x_min, double x_max, std::size_t n)
    : x_min_(x_min), x_max_(x_max), n_(n), h_(0.0) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max))
        throw DomainError("grid bounds must be finite");
    if (!(x_min < x_max))
        throw DomainError("grid requires x_min < x_max");
    if (n < 3)
        throw DomainError("grid requires at least 3 points");
    h_ = (x_max - x_min) / static_cast<double>(n - 1);
}

std::size_t Grid::nearest_index(double x) const {
    const double t = std::round((x - x_min_) / h_);
    if (!(t > 0.0)) return 0;
    if (t >= static_cast<double>(n_ - 1)) return n_ - 1;
    return static_cast<std::size_t>(t);
}

std::vector<double> Grid::points() const {
    std::vector<double> xs(n_);
    for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
    return xs;
}

Grid production_grid() { return Grid(-20.0, 20.0, 8001); }

SampledFunction::SampledFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw DomainError("sampled function length does not match grid");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            std::ostringstream os;
            os << "non-finite sample at index " << i << " (x = " << grid_.x(i) << ")";
            throw DomainError(os.str());
        }
    }
}

SampledFunction SampledFunction::zeros(const Grid& grid) {
    return SampledFunction(grid, std::vector<double>(grid.size(), 0.0));
}

SampledFunction SampledFunction::tabulate(const Grid& grid, const std::function<double(double)>& fn) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.x(i));
    return SampledFunction(grid, std::move(v));
}

double SampledFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

void require_same_grid(const SampledFunction& a, const SampledFunction& b, const char* where) {
    if (!(a.grid() == b.grid()))
        throw DomainError(std::string(where) + ": operands live on different grids");
}

double sup_distance(const SampledFunction& a, const SampledFunction& b) {
    require_same_grid(a, b, "sup_distance");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

SampledFunction cumulative_integral(const SampledFunction& f) {
    const double h = f.grid().spacing();
    std::vector<double> g(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) g[i] = g[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return SampledFunction(f.grid(), std::move(g));
}

SampledFunction cumulative_integral_corrected(const SampledFunction& f,
                                              const std::optional<SampledFunction>& slope) {
    const SampledFunction df = slope ? *slope : derivative(f);
    require_same_grid(f, df, "cumulative_integral_corrected");
    const double h = f.grid().spacing();
    const double c = h * h / 12.0;
    std::vector<double> g(f.size(), 0.0);
    double trapezoid = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) {
        trapezoid += 0.5 * h * (f[i - 1] + f[i]);
        g[i] = trapezoid - c * (df[i] - df[0]);
    }
    return SampledFunction(f.grid(), std::move(g));
}

double integral(const SampledFunction& f) {
    const std::size_t n = f.size();
    double s = 0.5 * (f[0] + f[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) s += f[i];
    return s * f.grid().spacing();
}

double l2_norm(const SampledFunction& f) {
    const std::size_t n = f.size();
    double s = 0.5 * (f[0] * f[0] + f[n - 1] * f[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) s += f[i] * f[i];
    return std::sqrt(s * f.grid().spacing());
}

SampledFunction normalized(const SampledFunction& f) {
    const double norm = l2_norm(f);
    if (!(norm > 0.0)) throw NumericalError("cannot normalize a zero function");
    std::vector<double> v(f.values().begin(), f.values().end());
    for (double& x : v) x /= norm;
    return SampledFunction(f.grid(), std::move(v));
}

SampledFunction derivative(const SampledFunction& f) {
    const std::size_t n = f.size();
    const double h = f.grid().spacing();
    std::vector<double> d(n);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    return SampledFunction(f.grid(), std::move(d));
}

namespace {

// Symmetric tridiagonal matrix with constant off-diagonal.
struct Tridiagonal {
    std::vector<double> diag;
    double off;

    std::size_t size() const { return diag.size(); }

    double norm() const {  // infinity norm
        double m = 0.0;
        for (double d : diag) m = std::max(m, std::abs(d) + 2.0 * std::abs(off));
        return m;
    }
};

Tridiagonal assemble(const SampledFunction& potential) {
    const std::size_t n = potential.size();
    const double h = potential.grid().spacing();
    const double inv_h2 = 1.0 / (h * h);
    Tridiagonal t{std::vector<double>(n - 2), -inv_h2};
    for (std::size_t i = 1; i + 1 < n; ++i) t.diag[i - 1] = 2.0 * inv_h2 + potential[i];
    return t;
}

// Number of eigenvalues strictly below x (Sturm sequence via LDL^T pivots).
std::size_t sturm_count(const Tridiagonal& t, double x, double pivmin) {
    const double off2 = t.off * t.off;
    std::size_t count = 0;
    double q = t.diag[0] - x;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < t.size(); ++i) {
        q = t.diag[i] - x - off2 / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

// Solves (T - shift) y = b in place with partial pivoting (LAPACK gttrf/gtts2 layout).
class ShiftedSolver {
public:
    ShiftedSolver(const Tridiagonal& t, double shift, double tiny)
        : d_(t.size()), dl_(t.size() - 1, t.off), du_(t.size() - 1, t.off),
          du2_(t.size() > 2 ? t.size() - 2 : 0, 0.0), swapped_(t.size() - 1, false) {
        const std::size_t m = t.size();
        for (std::size_t i = 0; i < m; ++i) d_[i] = t.diag[i] - shift;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            if (std::abs(d_[i]) >= std::abs(dl_[i])) {
                if (d_[i] == 0.0) d_[i] = tiny;
                const double fact = dl_[i] / d_[i];
                dl_[i] = fact;
                d_[i + 1] -= fact * du_[i];
            } else {
                const double fact = d_[i] / dl_[i];
                d_[i] = dl_[i];
                dl_[i] = fact;
                const double temp = du_[i];
                du_[i] = d_[i + 1];
                d_[i + 1] = temp - fact * d_[i + 1];
                if (i + 2 < m) {
                    du2_[i] = du_[i + 1];
                    du_[i + 1] = -fact * du_[i + 1];
                }
                swapped_[i] = true;
            }
        }
        for (double& p : d_)
            if (std::abs(p) < tiny) p = std::copysign(tiny, p == 0.0 ? 1.0 : p);
    }

    void solve(std::vector<double>& b) const {
        const std::size_t m = d_.size();
        for (std::size_t i = 0; i + 1 < m; ++i) {
            if (!swapped_[i]) {
                b[i + 1] -= dl_[i] * b[i];
            } else {
                const double temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - dl_[i] * b[i];
            }
        }
        b[m - 1] /= d_[m - 1];
        if (m > 1) b[m - 2] = (b[m - 2] - du_[m - 2] * b[m - 1]) / d_[m - 2];
        for (std::size_t i = m - 2; i-- > 0;)
            b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }

private:
    std::vector<double> d_, dl_, du_, du2_;
    std::vector<bool> swapped_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void scale_to_unit(std::vector<double>& v) {
    const double norm = std::sqrt(dot(v, v));
    for (double& x : v) x /= norm;
}

double residual_norm(const Tridiagonal& t, double lambda, const std::vector<double>& v) {
    const std::size_t m = t.size();
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double r = (t.diag[i] - lambda) * v[i];
        if (i > 0) r += t.off * v[i - 1];
        if (i + 1 < m) r += t.off * v[i + 1];
        s += r * r;
    }
    return std::sqrt(s);
}

}  // namespace

Spectrum eigen_solve(const SampledFunction& potential, std::size_t k) {
    const std::size_t n = potential.size();
    if (k < 1 || k >= n - 2) {
        std::ostringstream os;
        os << "eigen_solve: level count " << k << " out of range [1, " << n - 3 << "]";
        throw DomainError(os.str());
    }
    const Tridiagonal t = assemble(potential);
    const std::size_t m = t.size();
    const double eps = std::numeric_limits<double>::epsilon();
    const double tnorm = t.norm();
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, t.off * t.off);
    const double abs_tol = eps * tnorm;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double d : t.diag) {
        lo = std::min(lo, d - 2.0 * std::abs(t.off));
        hi = std::max(hi, d + 2.0 * std::abs(t.off));
    }
    lo -= abs_tol;
    hi += abs_tol;

    Spectrum out;
    out.eigenvalues.reserve(k);
    double floor = lo;
    for (std::size_t j = 0; j < k; ++j) {
        double a = floor, b = hi;
        for (int iter = 0; iter < 200; ++iter) {
            const double tol = 2.0 * eps * std::max(std::abs(a), std::abs(b)) + abs_tol;
            if (b - a <= tol) break;
            const double mid = 0.5 * (a + b);
            if (sturm_count(t, mid, pivmin) > j) b = mid; else a = mid;
        }
        const double lambda = 0.5 * (a + b);
        out.eigenvalues.push_back(lambda);
        floor = a;
    }

    // Inverse iteration, orthogonalized against the vectors already accepted.
    std::mt19937 rng(20240501u);
    std::vector<std::vector<double>> vecs;
    vecs.reserve(k);
    const double tiny = eps * tnorm;
    for (std::size_t j = 0; j < k; ++j) {
        const double lambda = out.eigenvalues[j];
        const ShiftedSolver solver(t, lambda, tiny);
        std::vector<double> v(m);
        for (double& x : v) x = static_cast<double>(rng()) / 4294967296.0 - 0.5;
        double res = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < 8; ++iter) {
            solver.solve(v);
            for (const auto& u : vecs) {
                const double c = dot(u, v);
                for (std::size_t i = 0; i < m; ++i) v[i] -= c * u[i];
            }
            scale_to_unit(v);
            res = residual_norm(t, lambda, v);
            if (iter >= 2 && res <= 1e-12 * tnorm) break;
        }
        if (!(res <= 1e-8 * std::max(1.0, std::abs(lambda)))) {
            std::ostringstream os;
            os << "eigen_solve: inverse iteration did not converge for level " << j
               << " (E = " << lambda << ", residual " << res << ")";
            throw NumericalError(os.str());
        }
        vecs.push_back(std::move(v));
    }

    const double inv_sqrt_h = 1.0 / std::sqrt(potential.grid().spacing());
    for (auto& v : vecs) {
        double vmax = 0.0;
        for (double x : v) vmax = std::max(vmax, std::abs(x));
        double sign = 1.0;
        for (std::size_t i = m; i-- > 0;) {
            if (std::abs(v[i]) > 1e-3 * vmax) {
                sign = v[i] > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        std::vector<double> full(n, 0.0);
        for (std::size_t i = 0; i < m; ++i) full[i + 1] = sign * v[i] * inv_sqrt_h;
        out.eigenvectors.emplace_back(potential.grid(), std::move(full));
    }
    return out;
}

SampledFunction apply_hamiltonian(const SampledFunction& potential, const SampledFunction& psi) {
    require_same_grid(potential, psi, "apply_hamiltonian");
    const std::size_t n = psi.size();
    const double h = psi.grid().spacing();
    const double inv_h2 = 1.0 / (h * h);
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        // Dirichlet walls: the matrix only couples interior points.
        const double left = i > 1 ? psi[i - 1] : 0.0;
        const double right = i + 2 < n ? psi[i + 1] : 0.0;
        out[i] = (2.0 * psi[i] - left - right) * inv_h2 + potential[i] * psi[i];
    }
    return SampledFunction(psi.grid(), std::move(out));
}

double hamiltonian_residual(const SampledFunction& potential, double energy, const SampledFunction& psi) {
    const SampledFunction h_psi = apply_hamiltonian(potential, psi);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 1; i + 1 < psi.size(); ++i) {
        const double r = h_psi[i] - energy * psi[i];
        num += r * r;
        den += psi[i] * psi[i];
    }
    if (!(den > 0.0)) throw NumericalError("hamiltonian_residual: zero vector");
    return std::sqrt(num / den);
}

}  // namespace isodirac
