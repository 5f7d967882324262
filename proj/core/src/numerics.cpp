#include "toriclab/numerics.hpp"

#include <cmath>
#include <numbers>

namespace toriclab {

std::complex<double> log_gamma(std::complex<double> z) {
    // Lanczos, g = 7, n = 9
    static const double coeff[9] = {
        0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
        771.32342877765313,   -176.61502916214059, 12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    const double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        // reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    std::complex<double> x = coeff[0];
    for (int i = 1; i < 9; ++i) x += coeff[i] / (z + double(i));
    std::complex<double> t = z + 7.5;
    return 0.5 * std::log(2 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double digamma(double x) {
    double r = 0;
    while (x < 8) {
        r -= 1.0 / x;
        x += 1;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    return r + std::log(x) - 0.5 * inv -
           inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 / 240)));
}

LogGridTable::LogGridTable(double log_y0, double step, std::vector<double> values)
    : log_y0_(log_y0), step_(step), values_(std::move(values)) {
    if (values_.size() < 4) throw std::invalid_argument("LogGridTable: need at least 4 samples");
}

double LogGridTable::operator()(double y) const {
    double u = (std::log(y) - log_y0_) / step_;
    const double n = double(values_.size() - 1);
    if (u <= 0) return values_.front();
    if (u >= n) return values_.back();
    std::size_t i = static_cast<std::size_t>(u);
    if (i == 0) i = 1;
    if (i > values_.size() - 3) i = values_.size() - 3;
    double t = u - double(i);
    double p0 = values_[i - 1], p1 = values_[i], p2 = values_[i + 1], p3 = values_[i + 2];
    // 4-point Lagrange cubic through nodes at t = -1, 0, 1, 2
    double l0 = -t * (t - 1) * (t - 2) / 6.0;
    double l1 = (t + 1) * (t - 1) * (t - 2) / 2.0;
    double l2 = -(t + 1) * t * (t - 2) / 2.0;
    double l3 = (t + 1) * t * (t - 1) / 6.0;
    return l0 * p0 + l1 * p1 + l2 * p2 + l3 * p3;
}

}  // namespace toriclab
