#ifndef TORICLAB_QUATERNION_HPP
#define TORICLAB_QUATERNION_HPP

#include <array>
#include <vector>

#include "toriclab/arith.hpp"
#include "toriclab/ternary.hpp"

namespace toriclab {

// B = (-a, -b / Q): i^2 = -a, j^2 = -b, k = ij = -ji, attached to the unique
// definite rational quaternion algebra ramified exactly at {p, infinity}.
struct QuatAlgebra {
    i64 a, b;
    i64 p;

    friend bool operator==(const QuatAlgebra& x, const QuatAlgebra& y) {
        return x.a == y.a && x.b == y.b && x.p == y.p;
    }
};

// Coordinates in the basis 1, i, j, k with exact rational entries.
struct Quaternion {
    std::array<Rational, 4> c;

    static Quaternion zero() { return {{Rational(0), Rational(0), Rational(0), Rational(0)}}; }
    static Quaternion one() { return {{Rational(1), Rational(0), Rational(0), Rational(0)}}; }
    static Quaternion scalar(const Rational& r) { return {{r, Rational(0), Rational(0), Rational(0)}}; }

    bool is_zero() const;
    friend bool operator==(const Quaternion& x, const Quaternion& y) { return x.c == y.c; }
};

Quaternion operator+(const Quaternion& x, const Quaternion& y);
Quaternion operator-(const Quaternion& x, const Quaternion& y);
Quaternion operator*(const Rational& r, const Quaternion& x);

Quaternion mul(const QuatAlgebra& A, const Quaternion& x, const Quaternion& y);
Quaternion conjugate(const Quaternion& x);
Rational nrd(const QuatAlgebra& A, const Quaternion& x);
Rational trd(const Quaternion& x);
Quaternion inverse(const QuatAlgebra& A, const Quaternion& x);

// Structure constants for B^(p, infinity): (1,1) for p = 2, (1,p) for
// p = 3 mod 4, (2,p) for p = 5 mod 8, and (q,p) with an auxiliary prime
// q = 3 mod 4, (q|p) = -1, for p = 1 mod 8.
QuatAlgebra ramified_algebra(i64 p);

// A full-rank Z-lattice in B, stored as an HNF basis over a common denominator.
class QuatLattice {
  public:
    QuatLattice(const QuatAlgebra& alg, std::vector<Quaternion> generators);

    const QuatAlgebra& algebra() const { return alg_; }
    Quaternion basis(int i) const;
    std::array<Quaternion, 4> basis() const;

    bool contains(const Quaternion& q) const;
    // coefficients of q in the lattice basis (rational; integral iff contained)
    std::array<Rational, 4> coordinates(const Quaternion& q) const;
    Rational det() const;  // |det| of the basis in 1,i,j,k coordinates

    QuatLattice product(const QuatLattice& other) const;  // span of pairwise products
    QuatLattice conjugate_lattice() const;
    QuatLattice sum(const QuatLattice& other) const;
    QuatLattice intersect(const QuatLattice& other) const;
    QuatLattice scale(const Rational& r) const;
    QuatLattice left_multiple(const Quaternion& q) const;   // q * L
    QuatLattice right_multiple(const Quaternion& q) const;  // L * q

    // multiplicative left / right orders
    QuatLattice left_order() const;
    QuatLattice right_order() const;

    bool closed_under_multiplication() const;

    // all v in the lattice with nrd(v) == target (pairs +-v both listed)
    std::vector<Quaternion> vectors_of_norm(const Rational& target) const;
    i64 count_vectors_of_norm(const Rational& target) const;

    friend bool operator==(const QuatLattice& x, const QuatLattice& y) {
        return x.alg_ == y.alg_ && x.den_ == y.den_ && x.rows_ == y.rows_;
    }

  private:
    QuatAlgebra alg_;
    std::array<std::array<i64, 4>, 4> rows_;
    i64 den_;
    void canonicalize(std::vector<std::array<i64, 4>> gens);
};

// A maximal order of B^(p, infinity), certified at construction: contains 1,
// multiplicatively closed, integral, reduced discriminant p.
class MaximalOrder {
  public:
    static MaximalOrder create(i64 p);
    // promote an arbitrary closed lattice (used for left orders of ideals)
    static MaximalOrder adopt(const QuatLattice& lattice, i64 p);

    const QuatAlgebra& algebra() const { return lattice_.algebra(); }
    const QuatLattice& lattice() const { return lattice_; }
    i64 discriminant() const { return p_; }

    const std::vector<Quaternion>& units() const { return units_; }
    i64 unit_count() const { return static_cast<i64>(units_.size()); }

    // basis of the trace-zero sublattice O^0, with (i, j, k) pinned for p = 2
    const std::array<Quaternion, 3>& trace_zero_basis() const { return tz_basis_; }
    // the integral ternary form Nrd restricted to O^0 in that basis
    TernaryForm trace_zero_form() const;

    Quaternion from_trace_zero_coords(const Vec3& x) const;
    Vec3 to_trace_zero_coords(const Quaternion& q) const;  // throws if not in O^0

  private:
    MaximalOrder(QuatLattice lattice, i64 p);
    QuatLattice lattice_;
    i64 p_;
    std::vector<Quaternion> units_;
    std::array<Quaternion, 3> tz_basis_;
};

// reduced discriminant of a multiplicatively closed lattice (sqrt of |det|
// of the trace pairing Trd(b_i conj(b_j)))
i64 reduced_discriminant(const QuatLattice& order);

}  // namespace toriclab

#endif
