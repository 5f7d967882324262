#ifndef TORICLAB_VENKOV_HPP
#define TORICLAB_VENKOV_HPP

#include <optional>
#include <vector>

#include "toriclab/quadratic.hpp"
#include "toriclab/quaternion.hpp"
#include "toriclab/ternary.hpp"

namespace toriclab {

// A right O-ideal I (I * O inside I) with its reduced norm.
struct RightIdeal {
    const MaximalOrder* order;
    QuatLattice lattice;
    Rational norm;
};

// Optimal embedding of O_E into a maximal order, determined by a primitive
// trace-zero base point of reduced norm d (the squarefree core of the field).
class Embedding {
  public:
    Embedding(const MaximalOrder& order, const QuadField& field, const Vec3& base_point);

    // first base point (in deterministic enumeration order) that yields an
    // optimal embedding, if any
    static std::optional<Embedding> find(const MaximalOrder& order, const QuadField& field);

    const MaximalOrder& order() const { return *order_; }
    const QuadField& field() const { return field_; }
    const Vec3& base_point() const { return base_; }
    i64 d() const { return d_; }
    const Quaternion& image_of_sqrt() const { return xi_; }

    // iota(u + v sqrt(-d))
    Quaternion iota(const Rational& u, const Rational& v) const;

  private:
    const MaximalOrder* order_;
    QuadField field_;
    Vec3 base_;
    i64 d_;
    Quaternion xi_;
    void check_optimal() const;
};

// iota(a) O for the ideal a = Z a' + Z(-b'+sqrt(-D))/2 attached to a form
// equivalent to cls with gcd(a', 2p) = 1.  Throws if no coprime representative
// is found within the scan bound.
RightIdeal ideal_from_class(const Embedding& emb, const BinaryFormClass& cls);

// q with I = q O and nrd(q) = norm(I); requires a class-number-one algebra.
Quaternion principal_generator(const RightIdeal& ideal);

// [a] . x = q^{-1} x q in trace-zero coordinates; lies in R_d, well defined on
// Gamma-orbits.
Vec3 class_action(const Embedding& emb, const BinaryFormClass& cls, const Vec3& x);

// canonical representative of the Gamma = O^x/{+-1} orbit of a sphere point
Vec3 gamma_canonical(const MaximalOrder& order, const Vec3& x);
std::vector<Vec3> gamma_orbit(const MaximalOrder& order, const Vec3& x);

struct GaussReport {
    i64 d;
    i64 count;    // |R_d(x^2+y^2+z^2)|
    i64 h;        // |Cl_E| for E = Q(sqrt(-d))
    i64 ratio;    // count / h, 12 or 24
    i64 orbit_count;  // Cl_E-orbits on Gamma \ R_d, 1 or 2
};

GaussReport gauss_check(i64 d);

// The right ideal class set of O, certified by the Eichler mass formula
// sum 1/|O_l(I)^x| = (p-1)/24.
struct IdealClassSet {
    const MaximalOrder* order;
    std::vector<QuatLattice> representatives;  // representatives[0] = O
    std::vector<i64> unit_counts;              // |O_l(I)^x|
    std::vector<Rational> masses;              // (1/unit_counts) normalized to sum 1
    Rational total_mass;                       // sum 1/unit_counts = (p-1)/24
};

IdealClassSet ideal_classes(const MaximalOrder& order);

// index of I in the class set (I ~ rep[j] iff I = q rep[j])
int ideal_class_index(const IdealClassSet& cs, const RightIdeal& ideal);

// quaternionic stand-in for the supersingular reduction map
int class_set_map(const IdealClassSet& cs, const Embedding& emb, const BinaryFormClass& cls);

bool ideals_equivalent(const MaximalOrder& order, const QuatLattice& I, const Rational& nI,
                       const QuatLattice& J, const Rational& nJ);

// nrd of an integral or fractional right O-ideal via the index
Rational ideal_reduced_norm(const MaximalOrder& order, const QuatLattice& I);

}  // namespace toriclab

#endif
