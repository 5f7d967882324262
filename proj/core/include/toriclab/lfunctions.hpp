#ifndef TORICLAB_LFUNCTIONS_HPP
#define TORICLAB_LFUNCTIONS_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "toriclab/afe.hpp"
#include "toriclab/hecke.hpp"
#include "toriclab/quadratic.hpp"

namespace toriclab {

// Splitting data of all primes p <= bound in E, built once per field and
// shared by every character.
class SplittingTable {
  public:
    SplittingTable(const ClassGroup& group, i64 bound);

    const ClassGroup& group() const { return *group_; }
    i64 bound() const { return bound_; }
    int eta(i64 p) const;
    int prime_class(i64 p) const;  // class index of the chosen prime above p

  private:
    const ClassGroup* group_;
    i64 bound_;
    std::unordered_map<i64, std::pair<int, int>> data_;  // p -> (eta, class index)
};

// theta-series coefficients a_chi(n) for n <= bound (always real)
std::vector<double> a_chi_stream(const ClassCharacter& chi, const SplittingTable& st, i64 bound);

// Dirichlet coefficients of L(s, pi x chi) = L(2s, eta_E) sum lambda(n) a_chi(n) n^{-s}
std::vector<double> rs_coefficient_stream(const QuadField& field, i64 level,
                                          const std::vector<double>& lambda,
                                          const std::vector<double>& achi, i64 bound);

// the same coefficient at a prime power, from the Satake data of the Euler product
double rs_local_coefficient(const HeckeForm& form, const ClassCharacter& chi, const SplittingTable& st,
                            i64 p, int k);

double rankin_selberg_conductor(const HeckeForm& form, const QuadField& field);   // N^2 D^2
double rankin_selberg_analytic_q(const HeckeForm& form, const QuadField& field);  // (Q_pi D)^2

struct LValueOptions {
    i64 term_cap_factor = 30;  // truncation cap: terms <= factor * sqrt(conductor)
    double epsilon_tol = 1e-3;
    double gap_tol = 1e-6;
    bool strict = true;  // throw when the record violates the tolerances
};

struct CentralValueRecord {
    i64 D = 0;
    int chi_id = 0;
    std::string form_id;
    double value = 0;
    int epsilon = 0;
    double epsilon_estimate = 0;
    i64 terms_used = 0;
    double consistency_gap = 0;
    double tail_bound = 0;
    double conductor = 0;
};

// L(1/2, pi x chi) by the smoothed approximate functional equation
// number of Dirichlet coefficients the smoothed AFE for pi x chi can consume
// (the weight cutoff, capped by term_cap_factor * sqrt(C))
i64 afe_stream_bound(const HeckeForm& form, const QuadField& field, const LValueOptions& opt = {});

CentralValueRecord central_value(const HeckeForm& form, const ClassGroup& group, const ClassCharacter& chi,
                                 const SplittingTable& st, const LValueOptions& opt = {});
// variant with precomputed lambda / a_chi streams (shared across characters)
CentralValueRecord central_value_with_streams(const HeckeForm& form, const ClassGroup& group,
                                              const ClassCharacter& chi, const std::vector<double>& lambda,
                                              const std::vector<double>& achi, const LValueOptions& opt = {});

// degree-2 oracles: L(1/2, pi) and L(1/2, pi (x) eta_E)
AfeResult central_value_degree2(const HeckeForm& form, const LValueOptions& opt = {});
AfeResult central_value_degree2_twist(const HeckeForm& form, const QuadField& field,
                                      const LValueOptions& opt = {});

// fix the a_11 sign of the built-in level 11 form by functional-equation
// self-consistency of the untwisted degree-2 AFE
void certify_a11(Ec11aForm& form);
// shared built-in providers ("11a" and "tau"), a_11 certified once
const HeckeForm& builtin_form(const std::string& label);
Ec11aForm& builtin_ec11a();
TauForm& builtin_tau();

// ---- values at s = 1 (smoothed Dirichlet series, Gaussian damping) ----

struct LOneResult {
    double value = 0;
    double two_x_gap = 0;  // |S(X) - S(X/2)|, smoothing consistency indicator
};

LOneResult l_at_one_eta(const QuadField& field, double X);
double l_one_eta_class_number(const ClassGroup& group);  // exact: 2 pi h / (w sqrt(D))
LOneResult l_at_one_ad(const HeckeForm& form, double X);
LOneResult l_at_one_ad_eta(const HeckeForm& form, const QuadField& field, double X);
double l_at_one_ad_theta(const HeckeForm& form, const QuadField& field, double X);
double l_at_one_rs_pair_theta(const HeckeForm& f1, const HeckeForm& f2, const QuadField& field, double X);

// short prime sums sum_{p <= x} coef(p)/p approximating log L(1, .)
double prime_sum_eta(const QuadField& field, i64 x);
double prime_sum_ad(const HeckeForm& form, i64 x);
double prime_sum_ad_eta(const HeckeForm& form, const QuadField& field, i64 x);
double prime_sum_ad_theta(const HeckeForm& form, const QuadField& field, i64 x);
double prime_sum_rs_pair_theta(const HeckeForm& f1, const HeckeForm& f2, const QuadField& field, i64 x);

// ---- the GRH majorant and its decomposition ----

struct ChandeeParts {
    double majorant = 0;      // the full majorant
    double split_linear = 0;  // split-prime linear term
    double split_square = 0;  // split-prime square term
    double mu_jd = 0;         // mu_{j,D}(x)
    double remainder = 0;     // majorant minus the three named pieces
    double log_q = 0;
};

ChandeeParts chandee_rhs(const HeckeForm& form, const ClassGroup& group, const ClassCharacter& chi,
                         const SplittingTable& st, double x, double smoothing_X = 2e4);

}  // namespace toriclab

#endif
