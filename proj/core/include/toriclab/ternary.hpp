#ifndef TORICLAB_TERNARY_HPP
#define TORICLAB_TERNARY_HPP

#include <array>
#include <string>
#include <vector>

#include "toriclab/arith.hpp"

namespace toriclab {

using Vec3 = std::array<i64, 3>;
using Mat3 = std::array<std::array<i64, 3>, 3>;

// Positive definite integral ternary form
//   q(x) = a11 x1^2 + a22 x2^2 + a33 x3^2 + b12 x1 x2 + b13 x1 x3 + b23 x2 x3
// with integral cross coefficients b_ij = 2 a_ij.
class TernaryForm {
  public:
    TernaryForm(i64 a11, i64 a22, i64 a33, i64 b12, i64 b13, i64 b23);

    // "a11,a22,a33,b12,b13,b23" with doubled cross coefficients
    static TernaryForm parse(const std::string& spec);

    i64 value(const Vec3& x) const;
    // polar form 2*B(x,y) = q(x+y) - q(x) - q(y), always integral
    i64 polar2(const Vec3& x, const Vec3& y) const;
    // Gram matrix doubled so it stays integral: (2G)_ij
    const Mat3& gram2() const { return gram2_; }
    i64 det_gram2() const;

    std::array<i64, 6> coeffs() const { return {a11_, a22_, a33_, b12_, b13_, b23_}; }
    std::string to_string() const;

    friend bool operator==(const TernaryForm& f, const TernaryForm& g) {
        return f.coeffs() == g.coeffs();
    }

  private:
    i64 a11_, a22_, a33_, b12_, b13_, b23_;
    Mat3 gram2_;
};

struct RepresentationSet {
    TernaryForm form;
    i64 d;
    std::vector<Vec3> points;  // primitive solutions, sorted lexicographically
};

// All primitive x with q(x) = d, by ellipsoid-bounded coordinate enumeration.
RepresentationSet enumerate_representations(const TernaryForm& form, i64 d);

// Total (not primitive-filtered) representation count, for genus statistics on
// squarefree d the two notions agree.
i64 representation_count(const TernaryForm& form, i64 d, bool primitive_only = true);

// All U in GL_3(Z) with U^T G U = G, including -I.
std::vector<Mat3> automorphism_group(const TernaryForm& form);

// Number of det = +1 elements (always exactly half the full group in odd
// dimension, where -I is improper).
i64 rotation_count(const std::vector<Mat3>& group);

struct GenusWeights {
    std::vector<TernaryForm> forms;
    std::vector<i64> aut_orders;
    std::vector<Rational> weights;  // (1/aut_i) / sum_j (1/aut_j)
};

GenusWeights genus_weights(const std::vector<TernaryForm>& forms);

// Built-in forms: the sphere form and the two genus-2 pairs at 11 and 19.
TernaryForm sphere_form();                        // x^2 + y^2 + z^2
TernaryForm example_form(const std::string& id);  // "Q1_1", "Q1_2", "Q2_1", "Q2_2"

Vec3 apply(const Mat3& u, const Vec3& x);
Mat3 mat_mul(const Mat3& a, const Mat3& b);
i64 det3(const Mat3& m);

}  // namespace toriclab

#endif
