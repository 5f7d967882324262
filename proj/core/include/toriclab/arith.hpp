#ifndef TORICLAB_ARITH_HPP
#define TORICLAB_ARITH_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace toriclab {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// Extended gcd: returns g = gcd(a,b) >= 0 and x, y with a*x + b*y = g.
struct Xgcd {
    i64 g, x, y;
};
Xgcd xgcd(i64 a, i64 b);

i64 mod_nonneg(i64 a, i64 m);  // representative in [0, m)
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 a, u64 e, i64 m);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(i64 n);

// Kronecker symbol (a | n), defined for all integers with n != 0.
int kronecker(i64 a, i64 n);

// Sum-of-three-squares admissibility: d != 4^a (8b+7).
bool admissible_sum_of_three_squares(i64 d);

bool is_squarefree(i64 n);

// d(n), number of divisors
i64 divisor_count(i64 n);

// Smallest-prime-factor sieve with a prime list, grown on demand.
class PrimeTable {
  public:
    explicit PrimeTable(i64 limit = 1 << 16) { grow(limit); }

    void grow(i64 limit);
    i64 limit() const { return static_cast<i64>(spf_.size()) - 1; }

    i64 spf(i64 n) const { return spf_[static_cast<std::size_t>(n)]; }
    const std::vector<i64>& primes() const { return primes_; }

    // primes p <= x (grows the sieve if needed)
    std::vector<i64> primes_up_to(i64 x);

    // factor n <= limit() as (p, e) pairs
    std::vector<std::pair<i64, int>> factor(i64 n) const;

  private:
    std::vector<i64> spf_;
    std::vector<i64> primes_;
};

// Exact rational on int64, always reduced with positive denominator.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(i64 n) : num_(n), den_(1) {}
    Rational(i64 n, i64 d);

    i64 num() const { return num_; }
    i64 den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
    }

  private:
    i64 num_, den_;
};

// Checked narrowing of a 128-bit intermediate back to int64.
i64 checked_i64(i128 v);

}  // namespace toriclab

#endif
