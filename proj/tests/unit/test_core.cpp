#include "doctest.h"

#include "wqed/core.hpp"

#include <cmath>
#include <random>

using namespace wqed;

TEST_CASE("transmission coefficients at reference detunings") {
    PhysicalParams p;
    CHECK(std::abs(s_coeff(0.0, p) - cplx(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(s_coeff(1.0, p) - cplx(-0.5, -0.5)) < 1e-15);
    CHECK(std::abs(t_coeff(0.0, p)) < 1e-15);
    CHECK(std::abs(t_coeff(1.0, p) - cplx(0.5, -0.5)) < 1e-15);
    CHECK(std::abs(t_coeff(1e9, p) - 1.0) < 1e-8);

    PhysicalParams sym;
    sym.chirality = 0.5;
    CHECK(std::abs(s_coeff(0.0, sym) - cplx(-0.5, 0.0)) < 1e-15);
}

TEST_CASE("chiral unitarity and even moduli") {
    PhysicalParams p;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dis(-25.0, 25.0);
    for (int k = 0; k < 500; ++k) {
        const double d = dis(rng);
        const double sum = std::norm(s_coeff(d, p)) + std::norm(t_coeff(d, p));
        CHECK(std::abs(sum - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(s_coeff(-d, p)) - std::abs(s_coeff(d, p))) < 1e-12);
        CHECK(std::abs(std::abs(t_coeff(-d, p)) - std::abs(t_coeff(d, p))) < 1e-12);
    }
}

TEST_CASE("parameter validation") {
    PhysicalParams p;
    p.chirality = 0.7;
    CHECK_THROWS_AS(p.validate(), validation_error);
    p.chirality = 1.0;
    p.gamma0 = 0.0;
    CHECK_THROWS_AS(p.validate(), validation_error);
}

TEST_CASE("time grid construction") {
    const TimeGrid g = make_time_grid(-10.0, 10.0, 201);
    CHECK(g.h == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(g.time(0) == -10.0);
    CHECK(g.time(200) == doctest::Approx(10.0));
    CHECK(g.weight(0) == doctest::Approx(0.05));
    CHECK(g.weight(100) == doctest::Approx(0.1));
    CHECK(g.index_of(0.0) == 100);
    CHECK_THROWS_AS(g.index_of(0.05), validation_error);

    CHECK_THROWS_AS(make_time_grid(0.0, 1.0, 2), validation_error);
    CHECK_THROWS_AS(make_time_grid(5.0, 5.0, 11), validation_error);
    CHECK_THROWS_AS(make_time_grid(0.0, 1.0, 1), validation_error);
}
