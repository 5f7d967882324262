#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "doctest.h"
#include "toriclab/moments.hpp"

using namespace toriclab;

TEST_CASE("character sum over the norm-2 prime of D = 23 vanishes") {
    ClassGroup G{QuadField(23)};
    auto chars = characters(G);
    auto sp = prime_splitting(G, 2);
    std::complex<double> s = 0;
    for (const auto& chi : chars) s += chi.value(*sp.ideal_class);
    CHECK(std::abs(s) < 1e-14);
}

TEST_CASE("nu-mode brute force: D = 23, n = 4 gives R(4) h = 6") {
    ClassGroup G{QuadField(23)};
    auto rep = orthogonality_bruteforce_nu(G, 1, {4});
    CHECK(rep.max_deviation < 1e-12);
    double sum = 0;
    for (const auto& chi : characters(G)) sum += chi.a_chi_completely_multiplicative(4, 1);
    CHECK(sum == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("nu-mode brute force over all admissible n for D in {23, 47, 71, 84}") {
    for (i64 D : {23, 47, 71, 84}) {
        ClassGroup G{QuadField(D)};
        for (i64 nu = 1; nu <= 3; ++nu) {
            auto ns = orthogonality_admissible_n(G, nu, nu % 2 == 0);
            auto rep = orthogonality_bruteforce_nu(G, nu, ns);
            CHECK(rep.max_deviation < 1e-9);
        }
    }
}

TEST_CASE("(alpha,beta)-mode brute force: D = 47, split-prime squares") {
    ClassGroup G{QuadField(47)};
    REQUIRE(G.h() == 5);
    auto b = [](i64 p) { return 1.0 + 0.5 / double(p); };
    auto c = [](i64 p) { return -0.75; };
    // split primes of Q(sqrt(-47)): 2, 3, 7; admissible n < (47/4)^{1/2} ~ 3.4
    auto ns = orthogonality_admissible_n(G, 2, true);
    auto rep = orthogonality_bruteforce_ab(G, 1, 2, b, c, ns);
    CHECK(rep.cases == static_cast<i64>(ns.size()));
    CHECK(rep.max_deviation < 1e-9);
}

TEST_CASE("ideal orthogonality on a medium field") {
    ClassGroup G{QuadField(479)};
    auto rep = ideal_orthogonality_check(G);
    CHECK(rep.ideals > 50);
    CHECK(rep.max_deviation < 1e-9);
}

TEST_CASE("moment inequality, nu mode: the D = 163 example and the zero sequence") {
    ClassGroup G{QuadField(163)};
    REQUIRE(G.h() == 1);
    auto one = [](i64) { return 1.0; };
    auto zero = [](i64) { return 0.0; };
    // x = 6 satisfies x^2 < 163/4
    auto rep = moment_inequality_nu(G, 1, 1, 6, one);
    CHECK(rep.holds);
    // h = 1: LHS = (sum_p a_chi0(p)/sqrt p)^2, RHS = 2 * (1/2) sum (1+eta)/p
    double s = 0, r = 0;
    auto chi0 = characters(G)[0];
    for (i64 p : {2, 3, 5}) {
        s += chi0.a_chi(p) / std::sqrt(double(p));
        r += 0.5 * (1.0 + kronecker(-163, p)) / double(p);
    }
    CHECK(rep.lhs == doctest::Approx(s * s).epsilon(1e-12));
    CHECK(rep.rhs == doctest::Approx(2.0 * r).epsilon(1e-12));

    auto repz = moment_inequality_nu(G, 1, 1, 6, zero);
    CHECK(repz.lhs == 0.0);
    CHECK(repz.rhs == 0.0);
    CHECK(repz.holds);

    CHECK_THROWS_AS(moment_inequality_nu(G, 1, 2, 6, one), std::invalid_argument);  // x^4 > D/4
}

TEST_CASE("moment inequality, mixed mode on randomized sequences") {
    ClassGroup G{QuadField(1931)};  // 1931 = 3 mod 8, prime, h odd
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::map<i64, double> bv, cv;
        auto b = [&](i64 p) {
            if (!bv.count(p)) bv[p] = unif(rng);
            return bv[p];
        };
        auto c = [&](i64 p) {
            if (!cv.count(p)) cv[p] = unif(rng);
            return cv[p];
        };
        auto r1 = moment_inequality_ab(G, 1, 2, 1, 4, b, c);  // v2 differs
        CHECK(r1.holds);
        auto r2 = moment_inequality_ab(G, 1, 3, 1, 2, b, c);  // v2 equal
        CHECK(r2.holds);
    }
}

TEST_CASE("moment parameters: synthetic plug-in gives mu_D = -1/2") {
    LAtOneValues v;  // all values 1
    double x = std::exp(std::exp(1.0));  // log log x = 1
    auto mp = moment_parameters_from_values(1000, x, 10.0, 10.0, v);
    CHECK(mp.mu_d == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(mp.var_star_d == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mp.var_d == doctest::Approx(0.5).epsilon(1e-12));  // rs value 1 adds nothing
    CHECK(mp.h_e == doctest::Approx(std::sqrt(1000.0)).epsilon(1e-12));
    CHECK(mp.z == doctest::Approx(std::pow(x, 1.0 / mp.delta)).epsilon(1e-12));
}

TEST_CASE("var_D - var*_D is half the log of the correlation L-value") {
    const HeckeForm& f1 = builtin_form("11a");
    const HeckeForm& f2 = builtin_form("tau");
    ClassGroup G{QuadField(163)};
    auto mp = moment_parameters(G, f1, f2, std::nullopt, 5000.0);
    CHECK(mp.var_d - mp.var_star_d ==
          doctest::Approx(0.5 * std::log(mp.lvalues.rs_pair_theta)).epsilon(1e-12));
    CHECK(mp.x == doctest::Approx(163.0));
    CHECK(mp.curly_c ==
          doctest::Approx(std::log(std::log(163.0)) + std::cbrt(std::log(36.0))).epsilon(1e-12));
}
