#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "susy8v/theta.hpp"
#include "theta_oracle.hpp"

using susy8v::Complex;
using susy8v::Nome;
using susy8v::theta;
using susy8v::theta_deriv;

namespace {
const double pi = std::acos(-1.0);

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}
}  // namespace

TEST_CASE("values frozen from an independent high-precision evaluation") {
    // 20-digit references computed ahead of the build at 50-digit precision.
    struct Row {
        int j;
        double z, q;
        int order;
        double want;
    };
    const Row rows[] = {
        {2, 0.3, 0.25, 0, 1.4060172781921948916},
        {1, 0.0, 0.2, 1, 1.1774108922055698443},
        {1, 0.5, 0.3, 1, 1.2663806017958978109},
        {1, 0.7, 0.3, 0, 0.83817877516948846973},
        {3, 1.2, 0.5, 0, 0.27589002971256114108},
        {4, 0.9, 0.35, 0, 1.1320275185717536028},
        {2, 0.4, 0.2, 2, -1.4054831551863845068},
    };
    for (const auto& r : rows) {
        const Nome q(r.q);
        const double got = r.order == 0 ? theta(r.j, r.z, q) : theta_deriv(r.j, r.z, q, r.order);
        CHECK(rel_err(got, r.want) < 5e-15);
        // the long double oracle must agree with the same frozen digits
        const double ora = theta_oracle::real_value(r.j, r.z, r.q, r.order);
        CHECK(rel_err(ora, r.want) < 5e-16);
    }
}

TEST_CASE("complex arguments against frozen values and the oracle") {
    const Complex w3 = theta(3, Complex(0.2, 0.3), Nome(0.4));
    CHECK(std::abs(w3 - Complex(1.9386874238562109429, -0.25522252578454010219)) < 1e-14);
    const Complex w1 = theta(1, Complex(0.5, 0.25), Nome(0.15));
    CHECK(std::abs(w1 - Complex(0.57931888080754326145, 0.27428051122684656431)) < 1e-14);

    std::mt19937 rng(42);
    std::uniform_real_distribution<double> zr(-2.0, 2.0), zi(-0.5, 0.5), pr(0.05, 0.7);
    for (int it = 0; it < 200; ++it) {
        const Complex z(zr(rng), zi(rng));
        const double p = pr(rng);
        const int j = 1 + (it % 4);
        const Complex got = theta(j, z, Nome(p));
        const Complex want = theta_oracle::value(j, z, p);
        CHECK(std::abs(got - want) < 1e-13 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("parity in z") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> zr(-3.0, 3.0), pr(0.05, 0.9);
    for (int it = 0; it < 1000; ++it) {
        const double z = zr(rng);
        const Nome q(pr(rng));
        const double s1 = std::max(1.0, std::abs(theta(1, z, q)));
        CHECK(std::abs(theta(1, -z, q) + theta(1, z, q)) < 1e-13 * s1);
        for (int j = 2; j <= 4; ++j) {
            const double v = theta(j, z, q);
            CHECK(std::abs(theta(j, -z, q) - v) < 1e-13 * std::max(1.0, std::abs(v)));
        }
    }
}

TEST_CASE("quasi-periodicity under z -> z + pi") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> zr(-2.0, 2.0), pr(0.05, 0.9);
    for (int it = 0; it < 300; ++it) {
        const double z = zr(rng);
        const Nome q(pr(rng));
        const double scale = std::max({1.0, std::abs(theta(1, z, q)), std::abs(theta(2, z, q))});
        CHECK(std::abs(theta(1, z + pi, q) + theta(1, z, q)) < 1e-12 * scale);
        CHECK(std::abs(theta(2, z + pi, q) + theta(2, z, q)) < 1e-12 * scale);
        CHECK(std::abs(theta(3, z + pi, q) - theta(3, z, q)) < 1e-12 * scale);
        CHECK(std::abs(theta(4, z + pi, q) - theta(4, z, q)) < 1e-12 * scale);
    }
}

TEST_CASE("theta1'(0) equals theta2(0) theta3(0) theta4(0)") {
    for (const double p : {0.05, 0.2, 0.5, 0.8}) {
        const Nome q(p);
        const double lhs = theta_deriv(1, 0.0, q, 1);
        const double rhs = theta(2, 0.0, q) * theta(3, 0.0, q) * theta(4, 0.0, q);
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("half-angle rearrangements used by the parameter layer") {
    // theta2(pi/6, p) = theta1(pi/3, p)
    for (const double p : {0.1, 0.3, 0.6}) {
        const Nome q(p);
        CHECK(rel_err(theta(2, pi / 6.0, q), theta(1, pi / 3.0, q)) < 1e-13);
    }
    // det [[th4(t+pi/3, p^2), th4(t-pi/3, p^2)], [th1(t+pi/3, p^2), th1(t-pi/3, p^2)]]
    //   = -theta1(pi/3, p) theta2(t, p)
    for (const double p : {0.2, 0.4}) {
        for (const double t : {0.3, pi / 6.0, 1.1}) {
            const Nome q(p), q2 = q.squared();
            const double det = theta(4, t + pi / 3.0, q2) * theta(1, t - pi / 3.0, q2) -
                               theta(4, t - pi / 3.0, q2) * theta(1, t + pi / 3.0, q2);
            const double rhs = -theta(1, pi / 3.0, q) * theta(2, t, q);
            CHECK(std::abs(det - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("derivatives agree with Richardson finite differences") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> zr(-2.0, 2.0), pr(0.05, 0.8);
    const double h = 1e-5;
    for (int it = 0; it < 200; ++it) {
        const double z = zr(rng);
        const Nome q(pr(rng));
        const int j = 1 + (it % 4);
        auto f = [&](double x) { return theta(j, x, q); };
        const double fd =
            (8.0 * (f(z + h) - f(z - h)) - (f(z + 2 * h) - f(z - 2 * h))) / (12.0 * h);
        const double an = theta_deriv(j, z, q, 1);
        CHECK(std::abs(fd - an) < 1e-8 * std::max(1.0, std::abs(an)));

        auto g = [&](double x) { return theta_deriv(j, x, q, 1); };
        const double fd2 =
            (8.0 * (g(z + h) - g(z - h)) - (g(z + 2 * h) - g(z - 2 * h))) / (12.0 * h);
        const double an2 = theta_deriv(j, z, q, 2);
        CHECK(std::abs(fd2 - an2) < 1e-8 * std::max(1.0, std::abs(an2)));
    }
}

TEST_CASE("small-nome limits and exact zeros") {
    const Nome tiny(1e-12);
    CHECK(std::abs(theta(3, 0.8, tiny) - 1.0) < 1e-11);
    CHECK(std::abs(theta(4, 0.8, tiny) - 1.0) < 1e-11);
    CHECK(theta(1, 0.0, Nome(0.5)) == 0.0);
    CHECK(theta_deriv(2, 0.0, Nome(0.5), 1) == 0.0);  // even function, odd derivative
    CHECK(theta_deriv(3, 0.0, Nome(0.5), 1) == 0.0);
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(Nome(0.0), std::domain_error);
    CHECK_THROWS_AS(Nome(1.0), std::domain_error);
    CHECK_THROWS_AS(Nome(-0.2), std::domain_error);
    CHECK_THROWS_AS(theta(5, 0.3, Nome(0.2)), std::domain_error);
    CHECK_THROWS_AS(theta(0, 0.3, Nome(0.2)), std::domain_error);
    CHECK_THROWS_AS(theta_deriv(2, 0.3, Nome(0.2), 0), std::domain_error);
    // |Im z| far beyond what the nome can damp: the convergence guard trips
    CHECK_THROWS_AS(theta(1, Complex(0.5, 60.0), Nome(0.5)), std::domain_error);
}
