#include "toriclab/afe.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace toriclab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GammaRatio {
    int m;         // degree / 2
    double halfk;  // weight / 2
    double base;   // Re log Gamma(k/2)

    std::complex<double> log_value(std::complex<double> s) const {
        return -double(m) * s * std::log(kTwoPi) + double(m) * (log_gamma(halfk + s) - base);
    }
};

// (1/2 pi) int gamma(sigma + it) y^{-(sigma+it)} / (sigma + it) dt by uniform
// trapezoid; the Gamma factor supplies e^{-pi m |t|/2} decay once |t| exceeds
// the argument, and a Gaussian ramp before that.
double contour(const GammaRatio& g, double sigma, double log_y) {
    const double h = 0.05;
    const double x = g.halfk + std::abs(sigma);
    const double tmax = std::max(12.0, std::sqrt(95.0 * x / double(g.m))) + 4.0;
    double sum = 0;
    for (double t = -tmax; t <= tmax + 1e-12; t += h) {
        std::complex<double> s(sigma, t);
        std::complex<double> f = std::exp(g.log_value(s) - s * log_y) / s;
        sum += f.real();
    }
    return sum * h / kTwoPi;
}

double minimize_sigma(const GammaRatio& g, double log_y) {
    // log |gamma(sigma) y^{-sigma}| is convex in sigma; bisect the derivative
    auto deriv = [&](double s) {
        return double(g.m) * digamma(g.halfk + s) - double(g.m) * std::log(kTwoPi) - log_y;
    };
    double lo = 0.75, hi = 90.0;
    if (deriv(lo) >= 0) return lo;
    if (deriv(hi) <= 0) return hi;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (deriv(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double weight_at(const GammaRatio& g, double log_y) {
    if (log_y <= 0) {
        // shift past the pole at s = 0, staying clear of the Gamma pole at -k/2
        return 1.0 + contour(g, -0.6, log_y);
    }
    return contour(g, minimize_sigma(g, log_y), log_y);
}

}  // namespace

AfeWeight::AfeWeight(int degree, int weight) : degree_(degree), weight_(weight) {
    if (degree != 2 && degree != 4) throw std::invalid_argument("AfeWeight: degree must be 2 or 4");
    if (weight < 2 || weight % 2 != 0) throw std::invalid_argument("AfeWeight: even weight >= 2 required");
    GammaRatio g{degree / 2, double(weight) / 2.0, log_gamma(std::complex<double>(weight / 2.0, 0)).real()};

    const double step = 0.01;
    const double log_y0 = std::log(y_small_);
    std::vector<double> vals;
    double log_y = log_y0;
    for (;;) {
        double w = weight_at(g, log_y);
        vals.push_back(w);
        if (log_y > 0 && std::abs(w) < 1e-19) break;
        if (log_y > 60) break;  // safety
        log_y += step;
    }
    y_cut_ = std::exp(log_y);
    table_ = LogGridTable(log_y0, step, std::move(vals));
}

double AfeWeight::operator()(double y) const {
    if (y <= y_small_) return 1.0;
    if (y >= y_cut_) return 0.0;
    return table_(y);
}

double AfeWeight::evaluate(double y) const {
    GammaRatio g{degree_ / 2, double(weight_) / 2.0,
                 log_gamma(std::complex<double>(weight_ / 2.0, 0)).real()};
    return weight_at(g, std::log(y));
}

const AfeWeight& afe_weight(int degree, int weight) {
    static std::map<std::pair<int, int>, AfeWeight> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(degree, weight);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, AfeWeight(degree, weight)).first;
    return it->second;
}

AfeResult central_value_afe(const std::vector<double>& coeff, double conductor, const AfeWeight& weight,
                            i64 term_cap) {
    const double sqrt_c = std::sqrt(conductor);
    const double a_values[3] = {1.0, 1.21, 1.37};
    double p_plus[3], p_minus[3];  // P(A_i), P(1/A_i)
    AfeResult res;

    auto partial_sum = [&](double scale) {
        // sum over n of c(n)/sqrt(n) W(n / (scale * sqrt(C)))
        const double denom = scale * sqrt_c;
        double s = 0;
        i64 nmax = std::min<i64>(static_cast<i64>(coeff.size()) - 1, term_cap);
        for (i64 n = 1; n <= nmax; ++n) {
            double y = double(n) / denom;
            if (y >= weight.y_cut()) {
                nmax = n;
                break;
            }
            s += coeff[static_cast<std::size_t>(n)] / std::sqrt(double(n)) * weight(y);
        }
        res.terms_used = std::max(res.terms_used, nmax);
        return s;
    };

    for (int i = 0; i < 3; ++i) {
        p_plus[i] = partial_sum(a_values[i]);
        p_minus[i] = (i == 0) ? p_plus[i] : partial_sum(1.0 / a_values[i]);
    }

    // epsilon from the best-conditioned pair
    double scale = 1e-30;
    for (int i = 0; i < 3; ++i) scale = std::max({scale, std::abs(p_plus[i]), std::abs(p_minus[i])});
    int best = -1;
    double best_den = 0;
    for (int i = 1; i < 3; ++i) {
        double den = p_plus[0] - p_minus[i];
        if (std::abs(den) > std::abs(best_den)) {
            best_den = den;
            best = i;
        }
    }
    if (best < 0 || std::abs(best_den) < 1e-9 * scale) {
        // degenerate system: decide by which sign is self-consistent
        double spread_plus = 0, spread_minus = 0;
        for (int i = 1; i < 3; ++i) {
            spread_plus = std::max(spread_plus, std::abs((p_plus[i] + p_minus[i]) - 2 * p_plus[0]));
            spread_minus = std::max(spread_minus, std::abs(p_plus[i] - p_minus[i]));
        }
        res.epsilon = (spread_minus <= spread_plus) ? -1 : 1;
        res.epsilon_estimate = res.epsilon;
    } else {
        res.epsilon_estimate = (p_plus[best] - p_plus[0]) / best_den;
        res.epsilon = (res.epsilon_estimate >= 0) ? 1 : -1;
    }

    double lmin = 0, lmax = 0, lsum = 0;
    for (int i = 0; i < 3; ++i) {
        double li = p_plus[i] + res.epsilon * p_minus[i];
        if (i == 0) lmin = lmax = li;
        lmin = std::min(lmin, li);
        lmax = std::max(lmax, li);
        lsum += li;
    }
    res.value = lsum / 3.0;
    res.consistency_gap = lmax - lmin;

    // tail estimate: magnitude of the last included band times the cut weight
    i64 t = res.terms_used;
    double band = 0;
    for (i64 n = std::max<i64>(1, t - 49); n <= t && n < static_cast<i64>(coeff.size()); ++n)
        band += std::abs(coeff[static_cast<std::size_t>(n)]) / std::sqrt(double(n));
    res.tail_bound = band * std::max(1e-19, std::abs(weight(double(t) / sqrt_c)));
    return res;
}

}  // namespace toriclab
