#ifndef TORICLAB_MOMENTS_HPP
#define TORICLAB_MOMENTS_HPP

#include <functional>
#include <optional>

#include "toriclab/combinatorics.hpp"
#include "toriclab/lfunctions.hpp"

namespace toriclab {

// ---- brute-force orthogonality over the genuine character group ----

struct OrthogonalityReport {
    i64 cases = 0;
    double max_deviation = 0;
};

// all n in the precondition range of the nu-mode sum: n < (D/4)^{1/nu},
// composed of split primes when nu is even
std::vector<i64> orthogonality_admissible_n(const ClassGroup& group, i64 nu, bool split_only);

// sum_chi tilde-a_{chi^nu}(n) = R(n) h, exactly
OrthogonalityReport orthogonality_bruteforce_nu(const ClassGroup& group, i64 nu,
                                                const std::vector<i64>& ns);

// sum_chi f_chi(n) = H_{alpha,beta}(n) h for split-supported n < (D/4)^{1/max}
OrthogonalityReport orthogonality_bruteforce_ab(const ClassGroup& group, i64 alpha, i64 beta,
                                                const std::function<double(i64)>& b,
                                                const std::function<double(i64)>& c,
                                                const std::vector<i64>& ns);

// imaginary-case orthogonality: every ideal of norm < D/4 has zero character
// sum unless it is induced from Q
struct IdealOrthogonalityReport {
    i64 ideals = 0;
    i64 induced = 0;
    double max_deviation = 0;  // over non-induced ideals
};
IdealOrthogonalityReport ideal_orthogonality_check(const ClassGroup& group);

// ---- high-moment inequalities ----

struct InequalityReport {
    double lhs = 0;
    double rhs = 0;
    bool holds = false;
};

// sum_chi (sum_{p<=x} a_{chi^nu}(p) b(p) / sqrt p)^{2k}
//   <= (2k)!/k! ( (1/2) sum (1+eta(p)) b(p)^2 / p )^k  h
InequalityReport moment_inequality_nu(const ClassGroup& group, i64 nu, i64 k, i64 x,
                                      const std::function<double(i64)>& b);

// the mixed version with exponents alpha != beta (split-prime sequences b, c)
InequalityReport moment_inequality_ab(const ClassGroup& group, i64 alpha, i64 beta, i64 k, i64 x,
                                      const std::function<double(i64)>& b,
                                      const std::function<double(i64)>& c);

// ---- moment parameters ----

struct LAtOneValues {
    double eta = 1;
    double ad1 = 1, ad2 = 1;
    double ad1_eta = 1, ad2_eta = 1;
    double ad1_theta = 1, ad2_theta = 1;
    double rs_pair_theta = 1;
};

struct MomentParameters {
    i64 D = 0;
    double x = 0, z = 0, delta = 0;
    i64 k = 0;
    double big_v = 0;
    double curly_c = 0;
    double h_e = 0;
    double mu_d = 0;
    double var_d = 0;
    double var_star_d = 0;
    LAtOneValues lvalues;
};

// pure plug-in from given L-values (also the synthetic test entry point)
MomentParameters moment_parameters_from_values(i64 D, double x, double q_pi1, double q_pi2,
                                               const LAtOneValues& v);

MomentParameters moment_parameters(const ClassGroup& group, const HeckeForm& f1, const HeckeForm& f2,
                                   std::optional<double> x_override = std::nullopt,
                                   double smoothing_X = 2e4);

}  // namespace toriclab

#endif
