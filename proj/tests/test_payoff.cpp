#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "fedmech/errors.hpp"
#include "fedmech/payoff.hpp"
#include "oracles.hpp"

using namespace fedmech;

TEST_CASE("phi: closed-form values") {
    Payoff p = Payoff::power(1.0);
    CHECK(p.value(0.0) == 0.0);
    CHECK(p.value(0.5) == doctest::Approx(3.0).epsilon(1e-15));
    Payoff l = Payoff::linear(1.0);
    CHECK(l.value(0.75) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(l.value(0.0) == 0.0);
}

TEST_CASE("phi_d1: closed-form values") {
    Payoff p = Payoff::power(1.0);
    CHECK(p.d1(0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.d1(0.5) == doctest::Approx(16.0).epsilon(1e-15));
    CHECK(Payoff::linear(3.5).d1(0.2) == doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("phi_d2: closed-form values") {
    CHECK(Payoff::linear(3.0).d2(0.7) == 0.0);
    CHECK(Payoff::power(1.0).d2(0.0) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(Payoff::power(2.0).d2(0.5) == doctest::Approx(192.0).epsilon(1e-15));
}

TEST_CASE("domain and parameter errors") {
    Payoff p = Payoff::power(1.0);
    CHECK_THROWS_AS(p.value(1.0), std::domain_error);
    CHECK_THROWS_AS(p.value(-0.1), std::domain_error);
    CHECK_THROWS_AS(p.d1(1.5), std::domain_error);
    CHECK_THROWS_AS(p.d2(-1.0), std::domain_error);
    CHECK_THROWS_AS(Payoff::power(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Payoff::linear(-1.0), std::invalid_argument);
}

TEST_CASE("derivatives match finite differences") {
    std::vector<Payoff> payoffs = {Payoff::linear(1.0), Payoff::linear(2.3),
                                   Payoff::power(1.0), Payoff::power(1.1),
                                   Payoff::power(0.9)};
    for (const auto& p : payoffs) {
        for (double a = 0.05; a < 0.95; a += 0.09) {
            double h = 1e-6;
            double fd1 = oracle::central_diff([&](double x) { return p.value(x); }, a, h);
            double fd2 = oracle::central_diff([&](double x) { return p.d1(x); }, a, h);
            CHECK(std::fabs(p.d1(a) - fd1) / std::max(1.0, std::fabs(p.d1(a))) <= 1e-6);
            CHECK(std::fabs(p.d2(a) - fd2) / std::max(1.0, std::fabs(p.d2(a))) <= 1e-6);
        }
    }
}

TEST_CASE("phi is increasing and convex on samples") {
    for (const Payoff& p : {Payoff::power(1.05), Payoff::linear(0.7)}) {
        double prev = p.value(0.0);
        for (double a = 0.02; a < 0.99; a += 0.02) {
            double cur = p.value(a);
            CHECK(cur > prev);
            CHECK(p.d2(a) >= 0.0);
            prev = cur;
        }
    }
}

TEST_CASE("power payoff value matches long-double re-evaluation") {
    Payoff p = Payoff::power(1.1);
    for (double a : {0.1, 0.5, 0.9, 0.99, 0.9975}) {
        long double want = oracle::power_phi_ld(1.1L, a);
        CHECK(p.value(a) == doctest::Approx(static_cast<double>(want)).epsilon(1e-14));
    }
}

TEST_CASE("validate_composition accepts the stock configurations") {
    CHECK_NOTHROW(validate_composition(
        Payoff::power(1.0), AccuracyModel(0.95, 10.0, AccuracyForm::GeneralizationBound)));
    CHECK_NOTHROW(validate_composition(
        Payoff::power(1.1), AccuracyModel(0.9975, 0.25, AccuracyForm::Simplified)));
    CHECK_NOTHROW(validate_composition(
        Payoff::linear(1.0), AccuracyModel(0.9, 1.0, AccuracyForm::Simplified)));
}
