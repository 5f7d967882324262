#include <random>

#include "doctest.h"
#include "toriclab/quaternion.hpp"

using namespace toriclab;

namespace {
Quaternion rnd_quat(std::mt19937_64& rng) {
    std::uniform_int_distribution<i64> num(-20, 20);
    std::uniform_int_distribution<i64> den(1, 4);
    Quaternion q;
    for (int m = 0; m < 4; ++m) q.c[static_cast<std::size_t>(m)] = Rational(num(rng), den(rng));
    return q;
}
}  // namespace

TEST_CASE("norm multiplicativity and conjugation identities") {
    std::mt19937_64 rng(12022);
    for (i64 p : {2, 3, 11}) {
        QuatAlgebra A = ramified_algebra(p);
        for (int t = 0; t < 3400; ++t) {
            Quaternion x = rnd_quat(rng), y = rnd_quat(rng);
            CHECK(nrd(A, mul(A, x, y)) == nrd(A, x) * nrd(A, y));
            CHECK(mul(A, x, conjugate(x)) == Quaternion::scalar(nrd(A, x)));
            // conjugation is an anti-automorphism
            CHECK(conjugate(mul(A, x, y)) == mul(A, conjugate(y), conjugate(x)));
        }
    }
}

TEST_CASE("algebra structure constants") {
    CHECK(ramified_algebra(2).a == 1);
    CHECK(ramified_algebra(3).b == 3);
    CHECK(ramified_algebra(3).a == 1);
    CHECK(ramified_algebra(5).a == 2);
    CHECK(ramified_algebra(13).a == 2);
    CHECK(ramified_algebra(17).a == 3);  // 3 = 3 mod 4 and (3|17) = -1
}

TEST_CASE("maximal orders are certified for p up to 50") {
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        MaximalOrder O = MaximalOrder::create(p);
        CHECK(reduced_discriminant(O.lattice()) == p);
        CHECK(O.lattice().closed_under_multiplication());
        CHECK(O.lattice().contains(Quaternion::one()));
        // basis elements are integral
        for (int m = 0; m < 4; ++m) {
            CHECK(trd(O.lattice().basis(m)).is_integer());
            CHECK(nrd(O.algebra(), O.lattice().basis(m)).is_integer());
        }
    }
}

TEST_CASE("unit counts match the Eichler mass for class number one") {
    // p in {2,3,5,7,13} have class number 1: 1/|O^x| = (p-1)/24
    CHECK(MaximalOrder::create(2).unit_count() == 24);
    CHECK(MaximalOrder::create(3).unit_count() == 12);
    CHECK(MaximalOrder::create(5).unit_count() == 6);
    CHECK(MaximalOrder::create(7).unit_count() == 4);
    CHECK(MaximalOrder::create(13).unit_count() == 2);
}

TEST_CASE("Hurwitz trace-zero form is the sphere") {
    MaximalOrder O = MaximalOrder::create(2);
    CHECK(O.trace_zero_form() == sphere_form());
    Vec3 x{1, -2, 3};
    Quaternion q = O.from_trace_zero_coords(x);
    CHECK(trd(q).is_zero());
    CHECK(nrd(O.algebra(), q) == Rational(14));
    CHECK(O.to_trace_zero_coords(q) == x);
}

TEST_CASE("trace-zero ternary forms are positive and have determinant 2p^2") {
    for (i64 p : {2, 3, 5, 7, 11, 13, 19}) {
        MaximalOrder O = MaximalOrder::create(p);
        TernaryForm f = O.trace_zero_form();
        CHECK(f.det_gram2() == 2 * p * p);
    }
}

TEST_CASE("lattice membership, orders, and products") {
    MaximalOrder O = MaximalOrder::create(2);
    const QuatLattice& L = O.lattice();
    Quaternion omega = {{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}};
    CHECK(L.contains(omega));
    CHECK_FALSE(L.contains({{Rational(1, 2), Rational(0), Rational(0), Rational(0)}}));
    CHECK(L.left_order() == L);
    CHECK(L.right_order() == L);
    CHECK(L.product(L) == L);
    CHECK(L.intersect(L) == L);

    // 2L has right order L as well
    QuatLattice twoL = L.scale(Rational(2));
    CHECK(twoL.right_order() == L);
    CHECK((twoL.det() / L.det()) == Rational(16));
}

TEST_CASE("vectors of norm enumerate exactly") {
    MaximalOrder O = MaximalOrder::create(2);
    // theta series of the Hurwitz order: 24 sigma(2n+1) representations
    CHECK(O.lattice().count_vectors_of_norm(Rational(1)) == 24);
    CHECK(O.lattice().count_vectors_of_norm(Rational(2)) == 24);
    CHECK(O.lattice().count_vectors_of_norm(Rational(3)) == 96);
    CHECK(O.lattice().count_vectors_of_norm(Rational(4)) == 24);
    CHECK(O.lattice().count_vectors_of_norm(Rational(5)) == 144);
}
