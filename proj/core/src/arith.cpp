#include "toriclab/arith.hpp"

#include <algorithm>
#include <cmath>

namespace toriclab {

Xgcd xgcd(i64 a, i64 b) {
    i64 old_r = a, r = b;
    i64 old_s = 1, s = 0;
    i64 old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
        old_t -= q * t;
        std::swap(old_t, t);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

i64 mod_nonneg(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<i128>(a) * b % m);
}

i64 powmod(i64 a, u64 e, i64 m) {
    i64 r = 1 % m;
    a = mod_nonneg(a, m);
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Sinclair's deterministic base set for 64-bit integers
    for (i64 a : {2, 325, 9375, 28178, 450775, 9780504, 1795265022}) {
        i64 x = powmod(a % n, static_cast<u64>(d), n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int kronecker(i64 a, i64 n) {
    if (n == 0) throw std::invalid_argument("kronecker: n must be nonzero");
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    if (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        while (n % 2 == 0) {
            n /= 2;
            i64 r = mod_nonneg(a, 8);
            if (r == 3 || r == 5) result = -result;
        }
    }
    // Jacobi symbol (a | n) for odd n > 0
    a = mod_nonneg(a, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

bool admissible_sum_of_three_squares(i64 d) {
    if (d <= 0) throw std::invalid_argument("admissibility requires d >= 1");
    while (d % 4 == 0) d /= 4;
    return d % 8 != 7;
}

bool is_squarefree(i64 n) {
    if (n == 0) return false;
    n = std::llabs(n);
    if (n % 4 == 0) return false;
    for (i64 p = 2; p * p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    // remaining part has at most two prime factors
    i64 r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(n))));
    for (i64 s = std::max<i64>(0, r - 2); s <= r + 2; ++s) {
        if (s > 1 && s * s == n) return false;
    }
    return true;
}

i64 divisor_count(i64 n) {
    i64 count = 1;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            count *= e + 1;
        }
    }
    if (n > 1) count *= 2;
    return count;
}

void PrimeTable::grow(i64 limit) {
    if (limit < 2) limit = 2;
    if (limit <= this->limit()) return;
    std::size_t n = static_cast<std::size_t>(limit);
    spf_.assign(n + 1, 0);
    primes_.clear();
    for (std::size_t i = 2; i <= n; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<i64>(i);
            primes_.push_back(static_cast<i64>(i));
        }
        for (i64 p : primes_) {
            u64 v = static_cast<u64>(p) * i;
            if (p > spf_[i] || v > n) break;
            spf_[static_cast<std::size_t>(v)] = p;
        }
    }
}

std::vector<i64> PrimeTable::primes_up_to(i64 x) {
    if (x > limit()) grow(std::max(x, limit() * 2));
    std::vector<i64> out;
    for (i64 p : primes_) {
        if (p > x) break;
        out.push_back(p);
    }
    return out;
}

std::vector<std::pair<i64, int>> PrimeTable::factor(i64 n) const {
    if (n < 1 || n > limit()) throw std::invalid_argument("PrimeTable::factor: n out of range");
    std::vector<std::pair<i64, int>> out;
    while (n > 1) {
        i64 p = spf_[static_cast<std::size_t>(n)];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

Rational::Rational(i64 n, i64 d) : num_(n), den_(d) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    i64 g = std::gcd(std::llabs(num_), den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

namespace {
i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational make_reduced(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rational(checked_i64(n), checked_i64(d));
}
}  // namespace

Rational& Rational::operator+=(const Rational& o) {
    i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    *this = make_reduced(n, d);
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    i128 n = static_cast<i128>(num_) * o.num_;
    i128 d = static_cast<i128>(den_) * o.den_;
    *this = make_reduced(n, d);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    i128 n = static_cast<i128>(num_) * o.den_;
    i128 d = static_cast<i128>(den_) * o.num_;
    *this = make_reduced(n, d);
    return *this;
}

i64 checked_i64(i128 v) {
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
        throw std::overflow_error("128-bit intermediate does not fit in int64");
    return static_cast<i64>(v);
}

}  // namespace toriclab
