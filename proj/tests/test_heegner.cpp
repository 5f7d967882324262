#include <set>

#include "doctest.h"
#include "toriclab/heegner.hpp"

using namespace toriclab;

TEST_CASE("Heegner points for D = 23") {
    auto pts = heegner_points(QuadField(23));
    REQUIRE(pts.size() == 3);
    double s = std::sqrt(23.0);
    CHECK(std::abs(pts[0].z - std::complex<double>(-0.5, s / 2)) < 1e-14);
    CHECK(std::abs(pts[1].z - std::complex<double>(0.25, s / 4)) < 1e-14);
    CHECK(std::abs(pts[2].z - std::complex<double>(-0.25, s / 4)) < 1e-14);
    CHECK_THROWS_AS(QuadField(4), std::invalid_argument);
}

TEST_CASE("algebraic identity a |z|^2 = c and fundamental domain membership") {
    for (i64 D : {23, 84, 479, 1051, 4999}) {
        for (const auto& pt : heegner_points(QuadField(D))) {
            double lhs = double(pt.source_form.a) * std::norm(pt.z);
            CHECK(lhs == doctest::Approx(double(pt.source_form.c)).epsilon(1e-12));
            CHECK(std::abs(pt.z.real()) <= 0.5 + 1e-12);
            CHECK(std::norm(pt.z) >= 1.0 - 1e-12);
        }
    }
}

TEST_CASE("the form -> point map is injective up to D = 5000") {
    for (i64 D = 5; D <= 5000; ++D) {
        if (!QuadField::is_fundamental(D)) continue;
        auto pts = heegner_points(QuadField(D));
        std::set<std::pair<double, double>> seen;
        for (const auto& pt : pts) seen.insert({pt.z.real(), pt.z.imag()});
        CHECK(seen.size() == pts.size());
    }
}

TEST_CASE("fundamental domain reduction") {
    std::complex<double> i(0, 1);
    CHECK(std::abs(reduce_to_fundamental_domain(i + 5.0) - i) < 1e-12);
    CHECK(std::abs(reduce_to_fundamental_domain(i / 2.0) - 2.0 * i) < 1e-12);
    // the corner e^{i pi/3} is fixed under the tie-break convention
    std::complex<double> corner = std::polar(1.0, std::numbers::pi / 3);
    CHECK(std::abs(reduce_to_fundamental_domain(corner) - corner) < 1e-12);
    // its mirror image maps to it
    std::complex<double> mirror = std::polar(1.0, 2 * std::numbers::pi / 3);
    CHECK(std::abs(reduce_to_fundamental_domain(mirror) - corner) < 1e-12);
    // idempotence on a grid
    for (double x = -2.0; x <= 2.0; x += 0.13)
        for (double y = 0.1; y <= 3.0; y += 0.21) {
            auto z = reduce_to_fundamental_domain({x, y});
            auto z2 = reduce_to_fundamental_domain(z);
            CHECK(std::abs(z - z2) < 1e-9);
            CHECK(z.real() > -0.5 - 1e-12);
            CHECK(z.real() <= 0.5 + 1e-12);
            CHECK(std::norm(z) >= 1.0 - 1e-12);
        }
    CHECK_THROWS_AS(reduce_to_fundamental_domain({0.0, -1.0}), std::invalid_argument);
}

TEST_CASE("class action on Heegner points commutes with the form map") {
    // acting by composing source forms, then mapping, equals mapping then relabeling
    for (i64 D : {23, 47, 84}) {
        ClassGroup G{QuadField(D)};
        for (int t = 0; t < G.h(); ++t)
            for (int s = 0; s < G.h(); ++s) {
                auto composed = compose(G.elements()[static_cast<std::size_t>(t)], G.elements()[static_cast<std::size_t>(s)]);
                auto p1 = heegner_point(composed);
                auto p2 = heegner_point(G.elements()[static_cast<std::size_t>(G.compose_idx(t, s))]);
                CHECK(std::abs(p1.z - p2.z) < 1e-14);
            }
    }
}

TEST_CASE("diagonal orbit: single pair for h = 1, freeness for d = 5") {
    MaximalOrder O = MaximalOrder::create(2);

    {
        QuadField F(11);
        ClassGroup G(F);
        auto emb = Embedding::find(O, F);
        REQUIRE(emb.has_value());
        auto orb = diagonal_orbit(G, *emb, emb->base_point(), G.identity());
        CHECK(orb.sphere_points.size() == 1);
        CHECK(orb.heegner_pts.size() == 1);
    }

    {
        QuadField F(20);
        ClassGroup G(F);
        auto emb = Embedding::find(O, F);
        REQUIRE(emb.has_value());
        auto orb = diagonal_orbit(G, *emb, emb->base_point(), G.identity());
        REQUIRE(orb.sphere_points.size() == 2);
        // sphere components are Gamma-inequivalent (freeness)
        CHECK(gamma_canonical(O, orb.sphere_points[0]) != gamma_canonical(O, orb.sphere_points[1]));
        // projections are bijections onto their orbits
        std::set<std::pair<double, double>> zs;
        for (const auto& pt : orb.heegner_pts) zs.insert({pt.z.real(), pt.z.imag()});
        CHECK(zs.size() == 2);
    }
}

TEST_CASE("twisted diagonal orbit alpha=1, beta=2 covers the square coset") {
    MaximalOrder O = MaximalOrder::create(2);
    // prime discriminant: h odd, squaring is a bijection
    QuadField F(59);
    ClassGroup G(F);
    REQUIRE(G.h() % 2 == 1);
    auto emb = Embedding::find(O, F);
    REQUIRE(emb.has_value());
    auto orb = diagonal_orbit(G, *emb, emb->base_point(), G.identity(), 1, 2);
    std::set<Vec3> sphere_orbits;
    for (const auto& x : orb.sphere_points) sphere_orbits.insert(gamma_canonical(O, x));
    CHECK(sphere_orbits.size() == static_cast<std::size_t>(G.h()));

    // torsion obstruction: beta = 2 requires odd h
    QuadField F2(20);
    ClassGroup G2(F2);
    auto emb2 = Embedding::find(O, F2);
    REQUIRE(emb2.has_value());
    CHECK_THROWS_AS(diagonal_orbit(G2, *emb2, emb2->base_point(), G2.identity(), 1, 2),
                    std::invalid_argument);
}
