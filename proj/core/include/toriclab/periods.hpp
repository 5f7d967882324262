#ifndef TORICLAB_PERIODS_HPP
#define TORICLAB_PERIODS_HPP

#include <complex>
#include <vector>

#include "toriclab/heegner.hpp"
#include "toriclab/quadratic.hpp"

namespace toriclab {

// Real spherical harmonics, orthonormal for the probability measure on S^2
// (so the mean square over the sphere is 1 and Y_00 = 1).  l is capped at 12.
double sphere_harmonic(int l, int m, double x, double y, double z);
double sphere_harmonic_at(int l, int m, const Vec3& v, i64 d);  // at v / sqrt(d)
constexpr int kMaxHarmonicDegree = 12;

// Hyperbolic-area bins partitioning the truncated fundamental domain
// {|Re| <= 1/2, |z| >= 1, Im z <= y_top}; masses are areas divided by pi/3.
class ModularBins {
  public:
    ModularBins(int nx, std::vector<double> y_breaks);
    static ModularBins standard();  // 4 strips x breaks {sqrt(3)/2, 1, 1.25, 1.75, 3, 10}

    int count() const { return static_cast<int>(mass_.size()); }
    // bin index of a fundamental-domain point; -1 when Im z > y_top
    int bin_of(std::complex<double> z) const;
    double target_mass(int bin) const { return mass_[static_cast<std::size_t>(bin)]; }
    double covered_mass() const;  // sum of bin masses (< 1, the cusp is cut)

  private:
    int nx_;
    std::vector<double> ybreaks_;
    std::vector<double> mass_;
};

// twisted toric periods P^chi(f) = (1/h) sum_t f(t . base) conj(chi(t)) for
// all characters at once; `values` is indexed by group element
std::vector<std::complex<double>> twisted_periods(const ClassGroup& group,
                                                  const std::vector<std::complex<double>>& values);

std::complex<double> twisted_period(const ClassGroup& group, const ClassCharacter& chi,
                                    const std::vector<std::complex<double>>& values);

// |diagonal period - sum_chi P^chi(f1) conj(P^chi(f2))| (finite Plancherel)
double plancherel_gap(const ClassGroup& group, const std::vector<std::complex<double>>& f1,
                      const std::vector<std::complex<double>>& f2);

// triangle-inequality majorant sum_chi |P^chi(f1) P^chi(f2)|
double plancherel_majorant(const ClassGroup& group, const std::vector<std::complex<double>>& f1,
                           const std::vector<std::complex<double>>& f2);

std::complex<double> diagonal_period(const ClassGroup& group, const std::vector<std::complex<double>>& f1,
                                     const std::vector<std::complex<double>>& f2);

}  // namespace toriclab

#endif
