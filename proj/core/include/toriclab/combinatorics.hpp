#ifndef TORICLAB_COMBINATORICS_HPP
#define TORICLAB_COMBINATORICS_HPP

#include <functional>

#include "toriclab/quadratic.hpp"

namespace toriclab {

i64 binomial(i64 n, i64 k);

// R is multiplicative with R(p^a) = C(a, a/2) for even a at split p, 1 for
// even a at ramified p, and 0 otherwise.
i64 combinatorial_r_local(int eta_p, i64 alpha);
i64 combinatorial_r(const QuadField& field, i64 n);

// nu(p^a) = a!
i64 nu_factorial(i64 n);

i64 big_omega(i64 n);                        // number of prime factors with multiplicity
bool p_j_indicator(i64 n, i64 j);            // [Omega(n) = j]

// B_{alpha,beta}(n, m): the constrained double sum
//   sum_{r<=m, s<=n-m, 2 alpha r + (beta-alpha) m - beta n + 2 beta s = 0}
//     C(n,m) C(m,r) C(n-m,s)
i64 b_alpha_beta(i64 alpha, i64 beta, i64 n, i64 m);

// H_{alpha,beta}(p^nu) = sum_m B(nu, m) b^m c^{nu-m} for one split prime, and
// its multiplicative extension to integers composed of split primes
double h_alpha_beta_local(i64 alpha, i64 beta, i64 nu, double b, double c);
double h_alpha_beta(const QuadField& field, i64 alpha, i64 beta, i64 n,
                    const std::function<double(i64)>& b, const std::function<double(i64)>& c);

// (2k)!/k! <= sqrt(2) (4k/e)^k
bool factorial_bound_holds(i64 k);

}  // namespace toriclab

#endif
