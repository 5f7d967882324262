#include "doctest.h"
#include "toriclab/combinatorics.hpp"

using namespace toriclab;

TEST_CASE("R at split and ramified primes of D = 23") {
    QuadField f(23);
    // 2 splits, 23 ramifies, 5 is inert
    CHECK(combinatorial_r(f, 4) == 2);         // C(2,1)
    CHECK(combinatorial_r(f, 16) == 6);        // C(4,2)
    CHECK(combinatorial_r(f, 2) == 0);         // odd exponent
    CHECK(combinatorial_r(f, 23 * 23) == 1);   // ramified even
    CHECK(combinatorial_r(f, 23) == 0);        // ramified odd
    CHECK(combinatorial_r(f, 25) == 0);        // inert prime never contributes
    CHECK(combinatorial_r(f, 4 * 23 * 23) == 2);
    CHECK(combinatorial_r(f, 1) == 1);
}

TEST_CASE("nu and p_j") {
    CHECK(nu_factorial(1) == 1);
    CHECK(nu_factorial(2) == 1);
    CHECK(nu_factorial(4) == 2);
    CHECK(nu_factorial(8) == 6);
    CHECK(nu_factorial(72) == 12);  // 2^3 3^2 -> 3! 2!
    CHECK(big_omega(12) == 3);
    CHECK(p_j_indicator(1, 0));
    CHECK(p_j_indicator(30, 3));
    CHECK_FALSE(p_j_indicator(30, 2));
}

TEST_CASE("B identities: (50), (50a), trivial bound, and the 9.7 values") {
    for (i64 a = 1; a <= 4; ++a)
        for (i64 b = 1; b <= 4; ++b) {
            if (a != b) {
                CHECK(b_alpha_beta(a, b, 1, 0) == 0);
                CHECK(b_alpha_beta(a, b, 1, 1) == 0);
                CHECK(b_alpha_beta(a, b, 2, 0) == 2);
                CHECK(b_alpha_beta(a, b, 2, 1) == 0);
                CHECK(b_alpha_beta(a, b, 2, 2) == 2);
            }
        }
    CHECK(b_alpha_beta(1, 1, 2, 0) == 2);
    CHECK(b_alpha_beta(1, 1, 2, 1) == 4);
    CHECK(b_alpha_beta(1, 1, 2, 2) == 2);

    auto v2 = [](i64 n) {
        int v = 0;
        while (n % 2 == 0) {
            n /= 2;
            ++v;
        }
        return v;
    };
    for (i64 a = 1; a <= 4; ++a)
        for (i64 b = 1; b <= 4; ++b) {
            if (a == b) continue;
            for (i64 n = 0; n <= 12; ++n)
                for (i64 m = 0; m <= n; ++m) {
                    i64 val = b_alpha_beta(a, b, n, m);
                    CHECK(val <= binomial(n, m) * (i64(1) << n));
                    bool allowed = (v2(a) == v2(b)) ? (n % 2 == 0)
                                   : (v2(a) < v2(b)) ? (m % 2 == 0)
                                                     : ((n - m) % 2 == 0);
                    if (!allowed) CHECK(val == 0);
                }
        }
}

TEST_CASE("H is multiplicative over split primes") {
    QuadField f(47);  // 2, 3, 7 split in Q(sqrt(-47))
    auto b = [](i64 p) { return 0.5 + 1.0 / double(p); };
    auto c = [](i64 p) { return -0.25 + 2.0 / double(p); };
    double h6 = h_alpha_beta(f, 1, 2, 36, b, c);  // 36 = 2^2 3^2, both split
    double h4 = h_alpha_beta(f, 1, 2, 4, b, c);
    double h9 = h_alpha_beta(f, 1, 2, 9, b, c);
    CHECK(h6 == doctest::Approx(h4 * h9).epsilon(1e-14));
    CHECK(h_alpha_beta(f, 1, 2, 1, b, c) == 1.0);
    CHECK_THROWS_AS(h_alpha_beta(f, 1, 2, 5, b, c), std::invalid_argument);  // 5 inert
}

TEST_CASE("factorial bound") {
    for (i64 k = 1; k <= 50; ++k) CHECK(factorial_bound_holds(k));
}
