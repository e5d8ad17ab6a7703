#include "isodirac/presets.hpp"
#include "isodirac/witten_index.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace isodirac;

namespace {

// Delta(beta) = int_0^beta rhs(b) db with b = u^2, which removes the 1/sqrt(b) endpoint:
// rhs(u^2) 2u du = (f+ exp(-u^2 f+^2) - f- exp(-u^2 f-^2)) / sqrt(pi) du.
double index_by_quadrature(double f_plus, double f_minus, double beta) {
    auto integrand = [=](double u) {
        return (f_plus * std::exp(-u * u * f_plus * f_plus) - f_minus * std::exp(-u * u * f_minus * f_minus)) /
               std::sqrt(std::numbers::pi);
    };
    return testing::adaptive_simpson(integrand, 0.0, std::sqrt(beta), 1e-14);
}

// dDelta/dbeta from the deficit part, which carries the whole beta dependence.
double fd_slope(double f_plus, double f_minus, double beta) {
    const double step = 1e-6 * beta;
    const double up = index_analytic_split(f_plus, f_minus, beta + step).deficit;
    const double down = index_analytic_split(f_plus, f_minus, beta - step).deficit;
    return -(up - down) / (2.0 * step);
}

}  // namespace

TEST_CASE("analytic index values") {
    CHECK(index_analytic(2.0, -2.0, 1e3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(index_analytic(2.0, -2.0, 1e3) - 1.0) <= 1e-12);
    for (double beta : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
        CHECK(index_analytic(1.0, 1.0, beta) == 0.0);
        CHECK(index_analytic(-0.7, -0.7, beta) == 0.0);
    }
    CHECK(index_analytic(2.0, -2.0, 0.25) == doctest::Approx(std::erf(1.0)).epsilon(1e-14));
}

TEST_CASE("beta = 0.25 against direct integration of the flow equation") {
    const double oracle = index_by_quadrature(2.0, -2.0, 0.25);
    CHECK(std::abs(oracle - 0.8427007929497149) <= 1e-12);
    CHECK(std::abs(index_analytic(2.0, -2.0, 0.25) - oracle) <= 1e-12);

    for (double fp : {0.5, 1.0, 2.0, -1.5})
        for (double fm : {-2.0, -0.5, 1.0})
            for (double beta : {0.01, 0.3, 2.0, 20.0}) {
                CAPTURE(fp);
                CAPTURE(fm);
                CAPTURE(beta);
                CHECK(std::abs(index_analytic(fp, fm, beta) - index_by_quadrature(fp, fm, beta)) <= 1e-11);
            }
}

TEST_CASE("flow equation right-hand side") {
    CHECK(index_ode_rhs(1.3, 1.3, 0.7) == 0.0);
    for (double a : {0.5, 1.0, 2.0}) {
        for (double beta : {0.1, 1.0, 5.0}) {
            const double expected = 2.0 * a / std::sqrt(4.0 * std::numbers::pi * beta) * std::exp(-beta * a * a);
            CHECK(index_ode_rhs(a, -a, beta) == doctest::Approx(expected).epsilon(1e-14));
            CHECK(index_ode_rhs(a, -a, beta) > 0.0);
        }
    }
    CHECK(std::abs(fd_slope(2.0, -2.0, 1.0) - index_ode_rhs(2.0, -2.0, 1.0)) <= 1e-6 * index_ode_rhs(2.0, -2.0, 1.0));
    // Confining tails do not contribute.
    CHECK(index_ode_rhs(INFINITY, -INFINITY, 1.0) == 0.0);
}

TEST_CASE("ODE consistency sweep") {
    const double values[] = {0.5, 1.0, 2.0};
    for (double a : values) {
        for (double b : values) {
            for (double sp : {1.0, -1.0}) {
                for (double sm : {1.0, -1.0}) {
                    const double fp = sp * a, fm = sm * b;
                    for (int i = 0; i <= 40; ++i) {
                        const double beta = std::pow(10.0, -2.0 + 4.0 * i / 40.0);
                        const double rhs = index_ode_rhs(fp, fm, beta);
                        // Scale: the two boundary terms separately, so cancellation between them
                        // (equal asymptotes) is judged against their size.
                        const double scale = (std::abs(fp) * std::exp(-beta * fp * fp) + std::abs(fm) * std::exp(-beta * fm * fm)) /
                                             std::sqrt(4.0 * std::numbers::pi * beta);
                        CAPTURE(fp);
                        CAPTURE(fm);
                        CAPTURE(beta);
                        CHECK(std::abs(fd_slope(fp, fm, beta) - rhs) <= 1e-6 * scale);
                    }
                }
            }
        }
    }
}

TEST_CASE("saturation, antisymmetry and monotonicity") {
    for (double fp : {0.5, 1.0, 2.0, -1.0})
        for (double fm : {-2.0, -0.5, 0.7}) {
            const IndexLimit lim = index_limit(fp, fm);
            REQUIRE_FALSE(lim.indeterminate);
            const double m2 = std::min(fp * fp, fm * fm);
            double prev = -2.0;
            for (int i = 0; i <= 60; ++i) {
                const double beta = std::pow(10.0, -3.0 + 6.0 * i / 60.0);
                const double d = index_analytic(fp, fm, beta);
                CAPTURE(fp);
                CAPTURE(fm);
                CAPTURE(beta);
                CHECK(d == -index_analytic(-fp, -fm, beta));
                if (beta >= 1.0) CHECK(std::abs(d - lim.value) <= std::exp(-beta * m2));
                if (fm < 0.0 && fp > 0.0) {
                    CHECK(d >= prev);
                    prev = d;
                }
            }
        }
}

TEST_CASE("index limit") {
    const Grid g = production_grid();
    CHECK(index_limit(kink_superpotential(g)).value == 1);
    const Superpotential one(SampledFunction::tabulate(g, [](double) { return 1.0; }), 1.0, 1.0);
    CHECK(index_limit(one).value == 0);
    CHECK_FALSE(index_limit(one).indeterminate);
    const Superpotential flipped = Superpotential::detect(SampledFunction::tabulate(g, [](double x) { return -std::tanh(x); }));
    CHECK(index_limit(flipped).value == -1);
    const IndexLimit zero = index_limit(0.0, 1.0);
    CHECK(zero.indeterminate);
    CHECK(zero.value == 0);
}

TEST_CASE("numeric index from box spectra") {
    const Grid g = production_grid();
    SUBCASE("kink") {
        const NumericIndex n = index_numeric(kink_superpotential(g), 10.0, 40);
        CHECK(std::abs(n.value - 1.0) <= 1e-2);
        CHECK(std::abs(n.value - index_analytic(2.0, -2.0, 10.0)) <= 1e-2);
        CHECK_FALSE(n.continuum_contaminated);
        CHECK_FALSE(n.levels_exhausted);
    }
    SUBCASE("constant superpotential") {
        const Superpotential one(SampledFunction::tabulate(g, [](double) { return 1.0; }), 1.0, 1.0);
        const NumericIndex n = index_numeric(one, 10.0, 40);
        CHECK(std::abs(n.value) <= 1e-2);
    }
    SUBCASE("contamination flag at small beta") {
        const NumericIndex n = index_numeric(kink_superpotential(g), 0.5, 8);
        CHECK(n.continuum_contaminated);
    }
    SUBCASE("too few levels are flagged") {
        const NumericIndex n = index_numeric(tanh_ladder_superpotential(g, 4), 10.0, 2);
        CHECK(n.levels_exhausted);
    }
}

TEST_CASE("index curve and argument checks") {
    const IndexCurve c = index_curve(2.0, -2.0, {10.0, 0.1, 1.0});
    REQUIRE(c.betas.size() == 3);
    CHECK(c.betas[0] == 0.1);
    CHECK(c.betas[2] == 10.0);
    for (std::size_t i = 0; i < 3; ++i) CHECK(c.deltas[i] == index_analytic(2.0, -2.0, c.betas[i]));
    CHECK(c.deltas[0] < c.deltas[1]);

    CHECK_THROWS_AS(index_analytic(1.0, -1.0, 0.0), DomainError);
    CHECK_THROWS_AS(index_analytic(1.0, -1.0, -1.0), DomainError);
    CHECK_THROWS_AS(index_ode_rhs(1.0, -1.0, NAN), DomainError);
    CHECK_THROWS_AS(index_curve(1.0, -1.0, {1.0, INFINITY}), DomainError);
}
