#ifndef TORICLAB_NUMERICS_HPP
#define TORICLAB_NUMERICS_HPP

#include <complex>
#include <vector>

#include "toriclab/arith.hpp"

namespace toriclab {

// principal branch of log Gamma via a Lanczos approximation, accurate to
// ~1e-13 on Re z > 0 (reflection handles the rest)
std::complex<double> log_gamma(std::complex<double> z);

double digamma(double x);

// function table on a uniform grid in log y with Catmull-Rom interpolation
class LogGridTable {
  public:
    LogGridTable() = default;
    LogGridTable(double log_y0, double step, std::vector<double> values);

    double log_y0() const { return log_y0_; }
    double log_y_max() const { return log_y0_ + step_ * double(values_.size() - 1); }
    // evaluate at y; out-of-range queries clamp to the boundary values
    double operator()(double y) const;

  private:
    double log_y0_ = 0, step_ = 1;
    std::vector<double> values_;
};

}  // namespace toriclab

#endif
