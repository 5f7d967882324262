#include <random>
#include <set>

#include "doctest.h"
#include "toriclab/quadratic.hpp"
#include "toriclab/ternary.hpp"

using namespace toriclab;

namespace {

// naive O(d^{3/2}) oracle: full triple loop with a crude coordinate bound
std::vector<Vec3> naive_representations(const TernaryForm& f, i64 d) {
    std::vector<Vec3> out;
    i64 bound = 1;
    while (f.value({bound, 0, 0}) <= d || f.value({0, bound, 0}) <= d || f.value({0, 0, bound}) <= d)
        ++bound;
    bound += 2;
    // the diagonal entries alone do not bound the coordinates for skew forms;
    // widen by the full Gram data
    bound = 4 * bound + 8;
    for (i64 x = -bound; x <= bound; ++x)
        for (i64 y = -bound; y <= bound; ++y)
            for (i64 z = -bound; z <= bound; ++z) {
                Vec3 v{x, y, z};
                if (f.value(v) != d) continue;
                if (std::gcd(std::gcd(std::llabs(x), std::llabs(y)), std::llabs(z)) == 1)
                    out.push_back(v);
            }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("sphere representation counts") {
    auto r5 = enumerate_representations(sphere_form(), 5);
    CHECK(r5.points.size() == 24);
    auto r7 = enumerate_representations(sphere_form(), 7);
    CHECK(r7.points.empty());
    auto r11 = enumerate_representations(sphere_form(), 11);
    CHECK(r11.points.size() == 24);
    CHECK_THROWS_AS(enumerate_representations(sphere_form(), 0), std::invalid_argument);
}

TEST_CASE("representation sets close under negation and are primitive") {
    for (const char* id : {"Q1_1", "Q1_2", "Q2_1", "Q2_2"}) {
        auto f = example_form(id);
        for (i64 d : {5, 11, 20, 44, 59}) {
            auto reps = enumerate_representations(f, d);
            std::set<Vec3> s(reps.points.begin(), reps.points.end());
            for (const auto& x : reps.points) {
                CHECK(f.value(x) == d);
                CHECK(s.count({-x[0], -x[1], -x[2]}) == 1);
            }
        }
    }
}

TEST_CASE("enumeration agrees with the naive triple-loop oracle") {
    std::mt19937_64 rng(71104);
    std::uniform_int_distribution<i64> diag(1, 6), off(-2, 2);
    std::vector<TernaryForm> forms;
    forms.push_back(sphere_form());
    while (forms.size() < 6) {
        i64 a = diag(rng), b = diag(rng), c = diag(rng);
        i64 r = off(rng), s = off(rng), t = off(rng);
        try {
            forms.emplace_back(a, b, c, r, s, t);
        } catch (const std::invalid_argument&) {
        }
    }
    for (const auto& f : forms) {
        for (i64 d : {1, 2, 3, 5, 12, 37, 101, 250, 499}) {
            auto fast = enumerate_representations(f, d).points;
            auto slow = naive_representations(f, d);
            CHECK(fast == slow);
        }
    }
}

TEST_CASE("automorphism orders of the printed genus forms") {
    // The quoted orders for these four forms are (4, 6, 8, 4); the first pair
    // counts rotations, the second the full group.  We pin both conventions.
    const char* ids[4] = {"Q1_1", "Q1_2", "Q2_1", "Q2_2"};
    const i64 full[4] = {8, 12, 8, 4};
    const i64 proper[4] = {4, 6, 4, 2};
    const i64 printed[4] = {4, 6, 8, 4};
    for (int i = 0; i < 4; ++i) {
        auto aut = automorphism_group(example_form(ids[i]));
        CHECK(static_cast<i64>(aut.size()) == full[i]);
        CHECK(rotation_count(aut) == proper[i]);
        CHECK((printed[i] == full[i] || printed[i] == proper[i]));
    }
    CHECK(automorphism_group(sphere_form()).size() == 48);
    CHECK(rotation_count(automorphism_group(sphere_form())) == 24);
}

TEST_CASE("automorphisms stabilize representation sets and form a group") {
    for (const char* id : {"Q1_1", "Q2_2"}) {
        auto f = example_form(id);
        auto aut = automorphism_group(f);

        bool has_minus_one = false;
        for (const auto& u : aut) {
            if (u == Mat3{{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}}) has_minus_one = true;
        }
        CHECK(has_minus_one);

        // closure under multiplication
        std::set<Mat3> s(aut.begin(), aut.end());
        for (const auto& u : aut)
            for (const auto& v : aut) CHECK(s.count(mat_mul(u, v)) == 1);

        auto reps = enumerate_representations(f, 59);
        std::set<Vec3> pts(reps.points.begin(), reps.points.end());
        for (const auto& u : aut)
            for (const auto& x : reps.points) CHECK(pts.count(apply(u, x)) == 1);
    }
}

TEST_CASE("genus weights from the printed automorphism counts") {
    auto g1 = genus_weights({example_form("Q1_1"), example_form("Q1_2")});
    CHECK(g1.weights[0] == Rational(3, 5));
    CHECK(g1.weights[1] == Rational(2, 5));

    auto g2 = genus_weights({example_form("Q2_1"), example_form("Q2_2")});
    CHECK(g2.weights[0] == Rational(1, 3));
    CHECK(g2.weights[1] == Rational(2, 3));

    auto single = genus_weights({sphere_form()});
    CHECK(single.weights[0] == Rational(1));
    CHECK_THROWS_AS(genus_weights({}), std::invalid_argument);
}

TEST_CASE("Gauss count cross-check on a small range") {
    for (i64 d = 4; d <= 200; ++d) {
        if (!is_squarefree(d) || !admissible_sum_of_three_squares(d)) continue;
        i64 count = static_cast<i64>(enumerate_representations(sphere_form(), d).points.size());
        i64 D = (d % 4 == 3) ? d : 4 * d;
        ClassGroup G{QuadField(D)};
        if (d % 8 == 3) {
            CHECK(count == 24 * G.h());
        } else {
            CHECK(count == 12 * G.h());
        }
    }
}

TEST_CASE("form parsing round trip") {
    auto f = TernaryForm::parse("3,11,1,0,1,0");
    CHECK(f == example_form("Q1_1"));
    CHECK(f.to_string() == "3,11,1,0,1,0");
    CHECK_THROWS_AS(TernaryForm::parse("1,2"), std::invalid_argument);
    CHECK_THROWS_AS(TernaryForm::parse("1,1,1,9,9,9"), std::invalid_argument);  // indefinite
}
