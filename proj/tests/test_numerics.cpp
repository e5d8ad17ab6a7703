#include "isodirac/numerics.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace isodirac;
using testing::sech;

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid(1.0, 1.0, 10), DomainError);
    CHECK_THROWS_AS(Grid(2.0, 1.0, 10), DomainError);
    CHECK_THROWS_AS(Grid(0.0, 1.0, 2), DomainError);
    CHECK_THROWS_AS(Grid(0.0, INFINITY, 10), DomainError);
    CHECK_THROWS_AS(Grid(NAN, 1.0, 10), DomainError);

    const Grid g(-1.0, 1.0, 201);
    CHECK(g.spacing() == doctest::Approx(0.01));
    CHECK(g.x(0) == -1.0);
    CHECK(g.x(200) == doctest::Approx(1.0));
    CHECK(g.nearest_index(0.0) == 100);
    CHECK(g.nearest_index(-5.0) == 0);
    CHECK(g.nearest_index(5.0) == 200);

    const Grid p = production_grid();
    CHECK(p.x_min() == -20.0);
    CHECK(p.x_max() == 20.0);
    CHECK(p.size() == 8001);
}

TEST_CASE("sampled functions reject bad data") {
    const Grid g(0.0, 1.0, 11);
    CHECK_THROWS_AS(SampledFunction(g, std::vector<double>(10, 0.0)), DomainError);
    std::vector<double> v(11, 0.0);
    v[3] = NAN;
    CHECK_THROWS_AS(SampledFunction(g, v), DomainError);
    v[3] = INFINITY;
    CHECK_THROWS_AS(SampledFunction(g, v), DomainError);

    const SampledFunction a = SampledFunction::zeros(g);
    const SampledFunction b = SampledFunction::zeros(Grid(0.0, 2.0, 11));
    CHECK_THROWS_AS(sup_distance(a, b), DomainError);
    CHECK_THROWS_AS(normalized(a), NumericalError);
}

TEST_CASE("cumulative integral") {
    SUBCASE("zero integrand") {
        const Grid g(-3.0, 5.0, 57);
        const SampledFunction gz = cumulative_integral(SampledFunction::zeros(g));
        CHECK(gz.max_abs() == 0.0);
    }
    SUBCASE("constant on [0, 2] is exact") {
        const Grid g(0.0, 2.0, 201);
        const SampledFunction c = cumulative_integral(SampledFunction::tabulate(g, [](double) { return 1.0; }));
        CHECK(c[0] == 0.0);
        CHECK(std::abs(c[200] - 2.0) <= 1e-14);
    }
    SUBCASE("affine integrands are exact at every node") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        for (int trial = 0; trial < 20; ++trial) {
            const double a = u(rng), b = u(rng), lo = u(rng);
            const Grid g(lo, lo + 1.0 + std::abs(u(rng)), 101 + trial);
            const SampledFunction c =
                cumulative_integral(SampledFunction::tabulate(g, [&](double x) { return a + b * x; }));
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double x = g.x(i);
                const double exact = a * (x - lo) + 0.5 * b * (x * x - lo * lo);
                CHECK(std::abs(c[i] - exact) <= 1e-12 * (1.0 + std::abs(exact)));
            }
        }
    }
    SUBCASE("sech^4 mass at n = 4001") {
        const Grid g(-20.0, 20.0, 4001);
        const SampledFunction f = SampledFunction::tabulate(g, [](double x) {
            const double p = std::sqrt(3.0) / 2.0 * sech(x) * sech(x);
            return p * p;
        });
        CHECK(std::abs(cumulative_integral(f)[4000] - 1.0) <= 1e-6);
        CHECK(std::abs(integral(f) - 1.0) <= 1e-6);
    }
    SUBCASE("end correction is fourth order") {
        auto err = [](std::size_t n, bool corrected) {
            const Grid g(0.0, 3.0, n);
            const SampledFunction f = SampledFunction::tabulate(g, [](double x) { return std::exp(std::sin(x)); });
            const SampledFunction df =
                SampledFunction::tabulate(g, [](double x) { return std::cos(x) * std::exp(std::sin(x)); });
            const double exact = testing::adaptive_simpson([](double x) { return std::exp(std::sin(x)); }, 0.0, 3.0, 1e-14);
            const SampledFunction c = corrected ? cumulative_integral_corrected(f, df) : cumulative_integral(f);
            return std::abs(c[n - 1] - exact);
        };
        CHECK(err(101, false) / err(201, false) == doctest::Approx(4.0).epsilon(0.05));
        CHECK(err(101, true) / err(201, true) > 12.0);
        CHECK(err(201, true) < 1e-8);
    }
}

TEST_CASE("normalization") {
    const Grid g(-10.0, 10.0, 2001);
    const SampledFunction f = SampledFunction::tabulate(g, [](double x) { return 3.0 * std::exp(-x * x); });
    CHECK(l2_norm(normalized(f)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("derivative stencil") {
    SUBCASE("constant") {
        const Grid g(-2.0, 2.0, 41);
        CHECK(derivative(SampledFunction::tabulate(g, [](double) { return 7.5; })).max_abs() <= 1e-12);
    }
    SUBCASE("linear is exact including the ends") {
        const Grid g(-1.0, 1.0, 21);
        const SampledFunction d = derivative(SampledFunction::tabulate(g, [](double x) { return x; }));
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(d[i] - 1.0) <= 1e-13);
    }
    SUBCASE("tanh at 0 with h = 1e-3") {
        const Grid g(-1.0, 1.0, 2001);
        const SampledFunction d = derivative(SampledFunction::tabulate(g, [](double x) { return std::tanh(x); }));
        CHECK(std::abs(d[1000] - 1.0) <= 1e-6);
    }
    SUBCASE("second order including the one-sided ends") {
        auto err = [](std::size_t n) {
            const Grid g(0.0, 2.0, n);
            const SampledFunction d = derivative(SampledFunction::tabulate(g, [](double x) { return std::sin(2.0 * x); }));
            double e = 0.0;
            for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(d[i] - 2.0 * std::cos(2.0 * g.x(i))));
            return e;
        };
        CHECK(err(101) / err(201) > 3.5);
    }
}

TEST_CASE("eigen_solve: particle in a box") {
    const Grid g(0.0, std::numbers::pi, 2001);
    const Spectrum s = eigen_solve(SampledFunction::zeros(g), 3);
    REQUIRE(s.size() == 3);
    for (int j = 0; j < 3; ++j) {
        const double exact = (j + 1.0) * (j + 1.0);
        CHECK(std::abs(s.eigenvalues[j] - exact) / exact <= 1e-3);
    }
}

TEST_CASE("eigen_solve: harmonic oscillator") {
    const Grid g(-10.0, 10.0, 2001);
    const Spectrum s = eigen_solve(SampledFunction::tabulate(g, [](double x) { return x * x; }), 3);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(s.eigenvalues[j] - (2.0 * j + 1.0)) <= 1e-3);
}

TEST_CASE("eigen_solve: kink partner at n = 4001") {
    const Grid g(-20.0, 20.0, 4001);
    const Spectrum s = eigen_solve(SampledFunction::tabulate(g, testing::kink::v_minus), 2);
    CHECK(std::abs(s.eigenvalues[0]) <= 1e-3);
    CHECK(std::abs(s.eigenvalues[1] - 3.0) <= 1e-3);
}

TEST_CASE("eigen_solve: level count bounds") {
    const Grid g(0.0, 1.0, 10);
    const SampledFunction v = SampledFunction::zeros(g);
    CHECK_THROWS_AS(eigen_solve(v, 0), DomainError);
    CHECK_THROWS_AS(eigen_solve(v, 8), DomainError);
    CHECK(eigen_solve(v, 7).size() == 7);
}

TEST_CASE("eigen_solve: random potentials keep ordering, residual and orthonormality") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 12; ++trial) {
        const double a = u(rng), b = u(rng), c = std::abs(u(rng));
        const Grid g(-8.0, 8.0, 801 + 50 * trial);
        const SampledFunction v = SampledFunction::tabulate(
            g, [&](double x) { return a * sech(x) * sech(x) + b * std::sin(x) + c * x * x / 10.0; });
        const Spectrum s = eigen_solve(v, 6);
        CAPTURE(trial);
        for (std::size_t i = 0; i + 1 < s.size(); ++i) CHECK(s.eigenvalues[i] <= s.eigenvalues[i + 1]);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(hamiltonian_residual(v, s.eigenvalues[i], s.eigenvectors[i]) <= 1e-8);
            CHECK(s.eigenvectors[i][0] == 0.0);
            CHECK(s.eigenvectors[i][g.size() - 1] == 0.0);
            for (std::size_t j = 0; j <= i; ++j) {
                std::vector<double> prod(g.size());
                for (std::size_t p = 0; p < g.size(); ++p) prod[p] = s.eigenvectors[i][p] * s.eigenvectors[j][p];
                const double overlap = integral(SampledFunction(g, prod));
                CHECK(std::abs(overlap - (i == j ? 1.0 : 0.0)) <= 1e-8);
            }
        }
    }
}

TEST_CASE("eigen_solve: sign convention and determinism") {
    const Grid g(-10.0, 10.0, 1001);
    const SampledFunction v = SampledFunction::tabulate(g, [](double x) { return x * x; });
    const Spectrum a = eigen_solve(v, 4);
    const Spectrum b = eigen_solve(v, 4);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(a.eigenvalues[j] == b.eigenvalues[j]);
        CHECK(sup_distance(a.eigenvectors[j], b.eigenvectors[j]) == 0.0);
        // Hermite functions are positive on the right tail.
        CHECK(a.eigenvectors[j].at(4.0) > 0.0);
    }
}

TEST_CASE("eigen_solve: grid refinement is second order") {
    auto error = [](std::size_t n) {
        const Grid g(0.0, std::numbers::pi, n);
        return std::abs(eigen_solve(SampledFunction::zeros(g), 2).eigenvalues[1] - 4.0);
    };
    CHECK(error(501) / error(1001) >= 3.0);
    CHECK(error(1001) / error(2001) >= 3.0);
}

TEST_CASE("apply_hamiltonian matches the residual helper") {
    const Grid g(-6.0, 6.0, 601);
    const SampledFunction v = SampledFunction::tabulate(g, [](double x) { return x * x; });
    const Spectrum s = eigen_solve(v, 1);
    const SampledFunction hpsi = apply_hamiltonian(v, s.eigenvectors[0]);
    CHECK(hpsi[0] == 0.0);
    CHECK(hpsi[600] == 0.0);
    double r = 0.0, n = 0.0;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        const double d = hpsi[i] - s.eigenvalues[0] * s.eigenvectors[0][i];
        r += d * d;
        n += s.eigenvectors[0][i] * s.eigenvectors[0][i];
    }
    CHECK(std::sqrt(r / n) == doctest::Approx(hamiltonian_residual(v, s.eigenvalues[0], s.eigenvectors[0])));
}
