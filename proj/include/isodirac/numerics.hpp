#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace isodirac {

/// Raised when an input violates a documented precondition or type invariant.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure fails (no convergence, pole, cross-check).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Uniform 1D grid x_i = x_min + i*h, i = 0..n-1.
class Grid {
public:
    Grid(double x_min, double x_max, std::size_t n);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t size() const { return n_; }
    double spacing() const { return h_; }
    double x(std::size_t i) const { return x_min_ + static_cast<double>(i) * h_; }

    /// Index of the grid point closest to `x` (clamped to the grid).
    std::size_t nearest_index(double x) const;

    std::vector<double> points() const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_;
    double h_;
};

/// Box used by the presets and the acceptance suite: [-20, 20] with 8001 points.
Grid production_grid();

/// Real function tabulated on a Grid. All entries are finite.
class SampledFunction {
public:
    SampledFunction(Grid grid, std::vector<double> values);

    static SampledFunction zeros(const Grid& grid);
    static SampledFunction tabulate(const Grid& grid, const std::function<double(double)>& fn);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double at(double x) const { return values_[grid_.nearest_index(x)]; }

    double max_abs() const;

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Throws DomainError unless both functions live on the same grid.
void require_same_grid(const SampledFunction& a, const SampledFunction& b, const char* where);

/// max_i |a_i - b_i|
double sup_distance(const SampledFunction& a, const SampledFunction& b);

/// Ordered eigenpairs of a discretized Hamiltonian.
struct Spectrum {
    std::vector<double> eigenvalues;          // ascending
    std::vector<SampledFunction> eigenvectors; // L2-normalized under the trapezoid rule
    std::optional<double> continuum_edge;

    std::size_t size() const { return eigenvalues.size(); }
};

// Quadrature and differentiation ------------------------------------------

/// Running composite-trapezoid integral from x_min; g(x_min) = 0.
SampledFunction cumulative_integral(const SampledFunction& f);

/// Running trapezoid integral with the Euler-Maclaurin end correction
/// -h^2/12 (f'(x_i) - f'(x_min)), fourth order for smooth f. `slope` is f';
/// when absent it is taken from derivative(f).
SampledFunction cumulative_integral_corrected(const SampledFunction& f,
                                              const std::optional<SampledFunction>& slope = std::nullopt);

/// Full-range trapezoid integral.
double integral(const SampledFunction& f);

/// sqrt(integral(f^2))
double l2_norm(const SampledFunction& f);

/// Returns f scaled to unit L2 norm. Throws NumericalError on a zero function.
SampledFunction normalized(const SampledFunction& f);

/// Second-order central differences inside, second-order one-sided at both ends.
SampledFunction derivative(const SampledFunction& f);

// Eigenproblem for H = -d^2/dx^2 + V with Dirichlet walls ------------------

/// k lowest eigenpairs of the (n-2)x(n-2) finite-difference matrix with
/// diagonal 2/h^2 + V(x_i) and off-diagonal -1/h^2 on the interior points.
/// Eigenvalues by Sturm-sequence bisection, eigenvectors by inverse iteration.
/// Wall values of every eigenvector are zero.
Spectrum eigen_solve(const SampledFunction& potential, std::size_t k);

/// Discrete H psi on the interior points (wall entries set to zero).
SampledFunction apply_hamiltonian(const SampledFunction& potential, const SampledFunction& psi);

/// ||H psi - E psi||_2 / ||psi||_2 over the interior points (plain vector norm).
double hamiltonian_residual(const SampledFunction& potential, double energy, const SampledFunction& psi);

}  // namespace isodirac
