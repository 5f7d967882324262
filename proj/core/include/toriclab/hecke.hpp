#ifndef TORICLAB_HECKE_HPP
#define TORICLAB_HECKE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "toriclab/arith.hpp"

namespace toriclab {

// A holomorphic PGL2 newform presented through its Deligne-normalized Hecke
// eigenvalue stream lambda(n), |lambda(p)| <= 2 for p not dividing the level.
class HeckeForm {
  public:
    HeckeForm(std::string label, i64 level, int weight);
    virtual ~HeckeForm() = default;

    const std::string& label() const { return label_; }
    i64 level() const { return level_; }
    int weight() const { return weight_; }
    int psi(i64 n) const { return std::gcd(n, level_) == 1 ? 1 : 0; }

    // conventions: Q_pi = N (k/2)^2 exactly; lambda_pi^2 = (k/2)(k/2 + 1)
    double q_analytic() const;
    double spectral_parameter() const;

    double lambda_p(i64 p) const;  // normalized a_p / p^{(k-1)/2}
    double lambda_prime_power(i64 p, int e) const;
    double lambda_n(i64 n) const;

    // lambda(m) for 1 <= m <= bound (index 0 unused)
    std::vector<double> lambda_stream(i64 bound) const;

  protected:
    virtual double compute_lambda_p(i64 p) const = 0;

  private:
    std::string label_;
    i64 level_;
    int weight_;
    mutable std::mutex mu_;
    mutable std::map<i64, double> cache_;
};

// y^2 + y = x^3 - x^2 - 10x - 20, the weight 2 level 11 newform, by point
// counting; a_11 defaults to +1 and is certified separately against the
// functional equation.
class Ec11aForm : public HeckeForm {
  public:
    Ec11aForm();
    i64 ap(i64 p) const;  // unnormalized trace of Frobenius
    void set_a11(int sign);
    int a11() const { return a11_; }
    // batch point counting (parallel, one cheap sieve per prime)
    void ensure_primes(i64 bound, int threads = 0) const;
    void preload(const std::map<i64, i64>& ap);
    std::map<i64, i64> known_ap() const { return ap_; }

  protected:
    double compute_lambda_p(i64 p) const override;

  private:
    int a11_ = 1;
    mutable std::mutex ap_mu_;
    mutable std::map<i64, i64> ap_;
};

// Ramanujan Delta (weight 12, level 1) from the eta-power q-expansion.
class TauForm : public HeckeForm {
  public:
    explicit TauForm(i64 initial_bound = 1 << 12);
    // exact tau(n); grows the table on demand
    i128 tau(i64 n) const;
    i64 table_bound() const { return static_cast<i64>(table_.size()) - 1; }
    void ensure(i64 bound) const;

  protected:
    double compute_lambda_p(i64 p) const override;

  private:
    mutable std::mutex table_mu_;
    mutable std::vector<i128> table_;  // tau(0) = 0 sentinel
};

struct EigenvalueFile {
    std::string label;
    i64 level;
    int weight;
    std::map<i64, i64> ap;
};

// Eigenvalue stream read from the exchange format:
//   # label <string> weight <int> level <int>
//   p<TAB>a_p        (unnormalized integral a_p)
class FileForm : public HeckeForm {
  public:
    explicit FileForm(const std::string& path);
    explicit FileForm(EigenvalueFile file);
    FileForm(std::string label, i64 level, int weight, std::map<i64, i64> ap);
    i64 max_prime() const;

  protected:
    double compute_lambda_p(i64 p) const override;

  private:
    std::map<i64, i64> ap_;
};

// eigenvalue file round trip
void write_eigenvalue_file(const std::string& path, const std::string& label, i64 level, int weight,
                           const std::map<i64, i64>& ap);
EigenvalueFile read_eigenvalue_file(const std::string& path);

}  // namespace toriclab

#endif
