#ifndef TORICLAB_QUADRATIC_HPP
#define TORICLAB_QUADRATIC_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "toriclab/arith.hpp"

namespace toriclab {

// Imaginary quadratic field E = Q(sqrt(-D)) of fundamental discriminant -D, D > 3.
class QuadField {
  public:
    explicit QuadField(i64 D);

    i64 D() const { return D_; }
    i64 disc() const { return -D_; }
    // number of units in O_E (always 2 for D > 4)
    int unit_count() const { return 2; }

    // eta_E(n) = kronecker(-D | n)
    int eta(i64 n) const { return kronecker(-D_, n); }

    static bool is_fundamental(i64 D);

  private:
    i64 D_;
};

// A reduced positive binary quadratic form (a, b, c) with b^2 - 4ac = -D.
struct BinaryFormClass {
    i64 a, b, c;

    i64 disc() const { return b * b - 4 * a * c; }
    BinaryFormClass inverse() const;

    friend bool operator==(const BinaryFormClass& f, const BinaryFormClass& g) {
        return f.a == g.a && f.b == g.b && f.c == g.c;
    }
    friend bool operator<(const BinaryFormClass& f, const BinaryFormClass& g) {
        if (f.a != g.a) return f.a < g.a;
        if (f.b != g.b) return f.b < g.b;
        return f.c < g.c;
    }
};

std::string to_string(const BinaryFormClass& f);

// Reduce an arbitrary positive form of discriminant -D to its canonical representative.
BinaryFormClass reduce_form(i64 a, i64 b, i64 c);

// All reduced forms of discriminant -D, sorted by (a, b).
std::vector<BinaryFormClass> reduced_forms(const QuadField& field);

// Dirichlet composition followed by reduction.
BinaryFormClass compose(const BinaryFormClass& f, const BinaryFormClass& g);

BinaryFormClass principal_form(i64 D);

// An integral ideal of O_E written as g * (m, Z m + Z(-b+sqrt(-D))/2) with a
// rational content g and primitive part of norm m.
struct QuadIdeal {
    i64 content;     // g
    i64 m;           // norm of the primitive part
    i64 b;           // b^2 = -D mod 4m, normalized to 0 <= b < 2m
    i64 norm() const { return content * content * m; }
    bool induced_from_q() const { return m == 1; }
};

// The class group Cl_E with its composition table and a direct-product
// decomposition found by generator peeling.
class ClassGroup {
  public:
    explicit ClassGroup(const QuadField& field);

    const QuadField& field() const { return field_; }
    i64 h() const { return static_cast<i64>(elements_.size()); }
    const std::vector<BinaryFormClass>& elements() const { return elements_; }
    const BinaryFormClass& identity() const { return elements_[identity_]; }
    int identity_index() const { return identity_; }

    int index_of(const BinaryFormClass& reduced) const;
    int compose_idx(int i, int j) const { return table_[i][j]; }
    int inverse_idx(int i) const;
    int power_idx(int i, i64 e) const;
    int order_of(int i) const;

    // internal direct product decomposition: (generator index, order) pairs
    const std::vector<std::pair<int, i64>>& cycle_structure() const { return cycles_; }
    // exponent vector of an element w.r.t. the cycle generators
    const std::vector<i64>& exponents(int i) const { return exps_[i]; }

    // class of the ideal of norm m attached to (m, b): Z m + Z(-b+sqrt(-D))/2
    int ideal_class_index(i64 m, i64 b) const;

    // All integral ideals of norm n, with their class indices.
    std::vector<std::pair<QuadIdeal, int>> ideals_of_norm(i64 n) const;

  private:
    QuadField field_;
    std::vector<BinaryFormClass> elements_;
    std::vector<std::vector<int>> table_;
    std::vector<std::pair<int, i64>> cycles_;
    std::vector<std::vector<i64>> exps_;
    int identity_;
};

enum class SplitKind { Split, Inert, Ramified };

struct PrimeSplitting {
    i64 p;
    SplitKind kind;
    // class index of the chosen prime above p (least nonnegative b_p), absent if inert
    std::optional<int> ideal_class;
    std::optional<i64> b_p;
};

PrimeSplitting prime_splitting(const ClassGroup& group, i64 p);

// A character of the class group, represented by exponents along the cycles.
class ClassCharacter {
  public:
    ClassCharacter(const ClassGroup* group, std::vector<i64> exponent_vector, int id);

    const ClassGroup& group() const { return *group_; }
    int id() const { return id_; }
    double lambda_chi() const { return 0.0; }  // imaginary field: trivial at infinity
    const std::vector<i64>& exponent_vector() const { return exps_; }

    std::complex<double> value(int element_index) const;
    bool is_trivial() const;
    bool is_real() const;
    int conjugate_id() const;  // id of chi-bar in the characters() ordering

    // Dirichlet coefficient a_chi(n) of the induced theta series; always real.
    double a_chi(i64 n) const;
    // completely multiplicative variant from Section "high moments": tilde-a of chi^nu
    double a_chi_completely_multiplicative(i64 n, i64 nu) const;
    // a_{chi^nu}(p) for a prime p
    double a_chi_prime(i64 p, i64 nu) const;

  private:
    const ClassGroup* group_;
    std::vector<i64> exps_;
    int id_;
};

// The full character group, h characters, deterministic order.
std::vector<ClassCharacter> characters(const ClassGroup& group);

// id of chi^e in the characters() ordering
int character_power_id(const ClassGroup& group, int id, i64 e);

}  // namespace toriclab

#endif
