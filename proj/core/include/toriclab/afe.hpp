#ifndef TORICLAB_AFE_HPP
#define TORICLAB_AFE_HPP

#include <vector>

#include "toriclab/arith.hpp"
#include "toriclab/numerics.hpp"

namespace toriclab {

// Smoothed cutoff weight of the approximate functional equation,
//   W(y) = (1/2 pi i) int gamma(s) e^{s^2} y^{-s} ds / s,
// where gamma(s) = L_inf(1/2+s)/L_inf(1/2) for the Gamma factor
// (2 pi)^{-m s} Gamma(k/2 + s)^m, m = degree/2.  Incomplete-Mellin weights are
// computed by quadrature on vertical lines and tabulated in log y.
class AfeWeight {
  public:
    AfeWeight(int degree, int weight);

    int degree() const { return degree_; }
    int weight() const { return weight_; }
    double operator()(double y) const;
    double y_cut() const { return y_cut_; }  // |W| < 1e-19 beyond

    // direct quadrature evaluation (slow path, used for table construction
    // and accuracy self-checks)
    double evaluate(double y) const;

  private:
    int degree_, weight_;
    LogGridTable table_;
    double y_cut_ = 1;
    double y_small_ = 1e-9;
};

// shared weight cache (constructing a table costs ~0.1 s)
const AfeWeight& afe_weight(int degree, int weight);

struct AfeResult {
    double value = 0;
    int epsilon = 0;
    double epsilon_estimate = 0;
    double consistency_gap = 0;
    i64 terms_used = 0;
    double tail_bound = 0;
};

// Self-dual smoothed AFE: L(1/2) = P(A) + eps P(1/A) with
// P(A) = sum c(n) n^{-1/2} W(n / (A sqrt(C))).  The root number is solved
// numerically from evaluations at distinct smoothing parameters A.
AfeResult central_value_afe(const std::vector<double>& coeff, double conductor, const AfeWeight& weight,
                            i64 term_cap);

}  // namespace toriclab

#endif
