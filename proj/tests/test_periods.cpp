#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "toriclab/periods.hpp"

using namespace toriclab;

TEST_CASE("spherical harmonics: normalization and orthogonality by quadrature") {
    CHECK(sphere_harmonic(0, 0, 0.3, -0.2, 0.93) == doctest::Approx(1.0));
    // mean square over the sphere is 1 (probability measure); check by a
    // product Gauss-type grid in (cos theta, phi)
    const int nt = 400, np = 400;
    auto integrate = [&](int l1, int m1, int l2, int m2) {
        double s = 0;
        for (int i = 0; i < nt; ++i) {
            double ct = -1.0 + (double(i) + 0.5) * 2.0 / nt;
            double st = std::sqrt(1.0 - ct * ct);
            for (int j = 0; j < np; ++j) {
                double phi = (double(j) + 0.5) * 2.0 * std::numbers::pi / np;
                double x = st * std::cos(phi), y = st * std::sin(phi);
                s += sphere_harmonic(l1, m1, x, y, ct) * sphere_harmonic(l2, m2, x, y, ct);
            }
        }
        return s / double(nt) / double(np);  // d(cos t)/2 * d phi / 2 pi, both uniform
    };
    CHECK(integrate(3, 2, 3, 2) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(integrate(5, -4, 5, -4) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(integrate(3, 2, 5, 2)) < 1e-3);
    CHECK(std::abs(integrate(2, 1, 2, -1)) < 1e-3);
    CHECK_THROWS_AS(sphere_harmonic(13, 0, 1, 0, 0), std::invalid_argument);
}

TEST_CASE("modular bins: masses and membership") {
    ModularBins bins = ModularBins::standard();
    CHECK(bins.count() == 20);
    double covered = bins.covered_mass();
    // the truncated fundamental domain misses only the cusp above Im = 10:
    // uncovered hyperbolic area is 1/10, i.e. mass 3/(10 pi)
    CHECK(covered == doctest::Approx(1.0 - 0.1 / (std::numbers::pi / 3.0)).epsilon(1e-6));
    for (int b = 0; b < bins.count(); ++b) CHECK(bins.target_mass(b) > 0);
    // membership vs mass by area sampling
    std::complex<double> z(0.2, 1.1);
    int b = bins.bin_of(z);
    CHECK(b >= 0);
    CHECK(bins.bin_of({0.2, 100.0}) == -1);
    CHECK_THROWS_AS(bins.bin_of({0.9, 2.0}), std::invalid_argument);
}

TEST_CASE("twisted periods: constants and orthogonality") {
    ClassGroup G{QuadField(47)};
    auto chars = characters(G);
    std::vector<std::complex<double>> ones(static_cast<std::size_t>(G.h()), {1.0, 0.0});
    auto periods = twisted_periods(G, ones);
    for (std::size_t i = 0; i < periods.size(); ++i) {
        double expect = chars[i].is_trivial() ? 1.0 : 0.0;
        CHECK(std::abs(periods[i] - std::complex<double>(expect, 0)) < 1e-14);
    }
    // |P^chi| is conjugation-invariant for real observables
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unif(-1, 1);
    std::vector<std::complex<double>> f;
    for (int t = 0; t < G.h(); ++t) f.emplace_back(unif(rng), 0.0);
    auto p = twisted_periods(G, f);
    for (const auto& chi : chars)
        CHECK(std::abs(p[static_cast<std::size_t>(chi.id())]) ==
              doctest::Approx(std::abs(p[static_cast<std::size_t>(chi.conjugate_id())])).epsilon(1e-12));
}

TEST_CASE("Plancherel identity is exact on random observables") {
    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> unif(-1, 1);
    for (i64 D : {23, 84, 479}) {
        ClassGroup G{QuadField(D)};
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::complex<double>> f1, f2;
            for (int t = 0; t < G.h(); ++t) {
                f1.emplace_back(unif(rng), unif(rng));
                f2.emplace_back(unif(rng), unif(rng));
            }
            CHECK(plancherel_gap(G, f1, f2) < 1e-12);
            CHECK(std::abs(diagonal_period(G, f1, f2)) <= plancherel_majorant(G, f1, f2) + 1e-12);
        }
        // f1 = f2 = 1: both sides 1
        std::vector<std::complex<double>> ones(static_cast<std::size_t>(G.h()), {1.0, 0.0});
        CHECK(std::abs(diagonal_period(G, ones, ones) - std::complex<double>(1, 0)) < 1e-15);
        CHECK(plancherel_gap(G, ones, ones) < 1e-14);
    }
}
