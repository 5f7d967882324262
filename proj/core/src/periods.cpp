#include "toriclab/periods.hpp"

#include <cmath>
#include <numbers>

namespace toriclab {

namespace {
// associated Legendre P_l^m(t) (no Condon-Shortley phase), stable upward recurrence
double assoc_legendre(int l, int m, double t) {
    double pmm = 1.0;
    if (m > 0) {
        double somx2 = std::sqrt(std::max(0.0, (1.0 - t) * (1.0 + t)));
        double fact = 1.0;
        for (int i = 0; i < m; ++i) {
            pmm *= fact * somx2;
            fact += 2.0;
        }
    }
    if (l == m) return pmm;
    double pmmp1 = t * double(2 * m + 1) * pmm;
    if (l == m + 1) return pmmp1;
    double pll = 0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = (t * double(2 * ll - 1) * pmmp1 - double(ll + m - 1) * pmm) / double(ll - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

double norm_factor(int l, int m) {
    // sqrt((2l+1) (l-m)! / (l+m)!)  [probability-measure normalization]
    double r = double(2 * l + 1);
    for (int t = l - m + 1; t <= l + m; ++t) r /= double(t);
    return std::sqrt(r);
}
}  // namespace

double sphere_harmonic(int l, int m, double x, double y, double z) {
    if (l < 0 || l > kMaxHarmonicDegree || std::abs(m) > l)
        throw std::invalid_argument("sphere_harmonic: need 0 <= l <= 12 and |m| <= l");
    double r = std::sqrt(x * x + y * y + z * z);
    if (r <= 0) throw std::invalid_argument("sphere_harmonic: zero vector");
    double ct = z / r;
    double phi = std::atan2(y, x);
    int ma = std::abs(m);
    double base = norm_factor(l, ma) * assoc_legendre(l, ma, ct);
    if (m == 0) return base;
    double sq2 = std::numbers::sqrt2;
    return m > 0 ? sq2 * base * std::cos(ma * phi) : sq2 * base * std::sin(ma * phi);
}

double sphere_harmonic_at(int l, int m, const Vec3& v, i64 d) {
    (void)d;  // points are projected radially, so the scale drops out
    return sphere_harmonic(l, m, double(v[0]), double(v[1]), double(v[2]));
}

namespace {
// hyperbolic area of a vertical strip cell [x0,x1] x [y0,y1] intersected with
// the region above the unit circle, via dx dy / y^2
double cell_area(double x0, double x1, double y0, double y1) {
    auto height = [&](double x) {
        double circle = std::sqrt(std::max(0.0, 1.0 - x * x));
        double lo = std::max(y0, circle);
        if (lo >= y1) return 0.0;
        return 1.0 / lo - 1.0 / y1;
    };
    // adaptive-free Simpson on a fine fixed grid (integrand is piecewise smooth)
    const int n = 4000;
    double h = (x1 - x0) / n;
    double s = height(x0) + height(x1);
    for (int i = 1; i < n; ++i) s += height(x0 + h * i) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}
}  // namespace

ModularBins::ModularBins(int nx, std::vector<double> y_breaks) : nx_(nx), ybreaks_(std::move(y_breaks)) {
    if (nx_ < 1 || ybreaks_.size() < 2) throw std::invalid_argument("ModularBins: bad partition");
    const double volume = std::numbers::pi / 3.0;
    for (std::size_t j = 0; j + 1 < ybreaks_.size(); ++j) {
        for (int i = 0; i < nx_; ++i) {
            double x0 = -0.5 + double(i) / double(nx_);
            double x1 = -0.5 + double(i + 1) / double(nx_);
            mass_.push_back(cell_area(x0, x1, ybreaks_[j], ybreaks_[j + 1]) / volume);
        }
    }
}

ModularBins ModularBins::standard() {
    return ModularBins(4, {std::sqrt(3.0) / 2.0, 1.0, 1.25, 1.75, 3.0, 10.0});
}

int ModularBins::bin_of(std::complex<double> z) const {
    double x = z.real(), y = z.imag();
    if (x < -0.5 - 1e-12 || x > 0.5 + 1e-12 || std::norm(z) < 1.0 - 1e-12)
        throw std::invalid_argument("ModularBins: point outside the fundamental domain");
    if (y >= ybreaks_.back()) return -1;
    int ix = std::min(nx_ - 1, std::max(0, int((x + 0.5) * nx_)));
    for (std::size_t j = 0; j + 1 < ybreaks_.size(); ++j) {
        if (y < ybreaks_[j + 1]) return int(j) * nx_ + ix;
    }
    return -1;
}

double ModularBins::covered_mass() const {
    double s = 0;
    for (double m : mass_) s += m;
    return s;
}

std::vector<std::complex<double>> twisted_periods(const ClassGroup& group,
                                                  const std::vector<std::complex<double>>& values) {
    if (static_cast<i64>(values.size()) != group.h())
        throw std::invalid_argument("twisted_periods: value vector must have length h");
    auto chars = characters(group);
    std::vector<std::complex<double>> out;
    out.reserve(chars.size());
    for (const auto& chi : chars) {
        std::complex<double> s = 0;
        for (int t = 0; t < group.h(); ++t) s += values[static_cast<std::size_t>(t)] * std::conj(chi.value(t));
        out.push_back(s / double(group.h()));
    }
    return out;
}

std::complex<double> twisted_period(const ClassGroup& group, const ClassCharacter& chi,
                                    const std::vector<std::complex<double>>& values) {
    std::complex<double> s = 0;
    for (int t = 0; t < group.h(); ++t) s += values[static_cast<std::size_t>(t)] * std::conj(chi.value(t));
    return s / double(group.h());
}

std::complex<double> diagonal_period(const ClassGroup& group, const std::vector<std::complex<double>>& f1,
                                     const std::vector<std::complex<double>>& f2) {
    std::complex<double> s = 0;
    for (int t = 0; t < group.h(); ++t)
        s += f1[static_cast<std::size_t>(t)] * std::conj(f2[static_cast<std::size_t>(t)]);
    return s / double(group.h());
}

double plancherel_gap(const ClassGroup& group, const std::vector<std::complex<double>>& f1,
                      const std::vector<std::complex<double>>& f2) {
    auto p1 = twisted_periods(group, f1);
    auto p2 = twisted_periods(group, f2);
    std::complex<double> rhs = 0;
    for (std::size_t t = 0; t < p1.size(); ++t) rhs += p1[t] * std::conj(p2[t]);
    return std::abs(diagonal_period(group, f1, f2) - rhs);
}

double plancherel_majorant(const ClassGroup& group, const std::vector<std::complex<double>>& f1,
                           const std::vector<std::complex<double>>& f2) {
    auto p1 = twisted_periods(group, f1);
    auto p2 = twisted_periods(group, f2);
    double s = 0;
    for (std::size_t t = 0; t < p1.size(); ++t) s += std::abs(p1[t] * p2[t]);
    return s;
}

}  // namespace toriclab
