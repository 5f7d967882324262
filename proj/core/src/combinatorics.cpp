#include "toriclab/combinatorics.hpp"

#include <cmath>

namespace toriclab {

i64 binomial(i64 n, i64 k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    i128 r = 1;
    for (i64 t = 0; t < k; ++t) {
        r = r * (n - t);
        r /= (t + 1);
    }
    return checked_i64(r);
}

i64 combinatorial_r_local(int eta_p, i64 alpha) {
    if (alpha % 2 != 0) return 0;
    if (eta_p == 1) return binomial(alpha, alpha / 2);
    if (eta_p == 0) return 1;
    return 0;  // inert primes never appear in the supported sums
}

i64 combinatorial_r(const QuadField& field, i64 n) {
    if (n < 1) throw std::invalid_argument("R: n must be positive");
    i64 r = 1;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        i64 a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        r *= combinatorial_r_local(field.eta(p), a);
        if (r == 0) return 0;
    }
    if (n > 1) r *= combinatorial_r_local(field.eta(n), 1);
    return r;
}

i64 nu_factorial(i64 n) {
    if (n < 1) throw std::invalid_argument("nu: n must be positive");
    i128 r = 1;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        i64 a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        for (i64 t = 2; t <= a; ++t) r *= t;
    }
    return checked_i64(r);  // the last prime contributes 1! = 1
}

i64 big_omega(i64 n) {
    i64 c = 0;
    for (i64 p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            n /= p;
            ++c;
        }
    return n > 1 ? c + 1 : c;
}

bool p_j_indicator(i64 n, i64 j) { return big_omega(n) == j; }

i64 b_alpha_beta(i64 alpha, i64 beta, i64 n, i64 m) {
    if (n < 0 || m < 0 || m > n) return 0;
    i64 total = 0;
    for (i64 r = 0; r <= m; ++r)
        for (i64 s = 0; s <= n - m; ++s) {
            if (2 * alpha * r + (beta - alpha) * m - beta * n + 2 * beta * s != 0) continue;
            total += binomial(n, m) * binomial(m, r) * binomial(n - m, s);
        }
    return total;
}

double h_alpha_beta_local(i64 alpha, i64 beta, i64 nu, double b, double c) {
    double s = 0;
    for (i64 m = 0; m <= nu; ++m) {
        i64 w = b_alpha_beta(alpha, beta, nu, m);
        if (w == 0) continue;
        s += double(w) * std::pow(b, double(m)) * std::pow(c, double(nu - m));
    }
    return s;
}

double h_alpha_beta(const QuadField& field, i64 alpha, i64 beta, i64 n,
                    const std::function<double(i64)>& b, const std::function<double(i64)>& c) {
    if (n < 1) throw std::invalid_argument("H: n must be positive");
    double r = 1;
    for (i64 p = 2; n > 1; ++p) {
        if (p * p > n) {
            p = n;  // remaining prime
        }
        if (n % p != 0) continue;
        i64 a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        if (field.eta(p) != 1)
            throw std::invalid_argument("H: n must be composed of split primes");
        r *= h_alpha_beta_local(alpha, beta, a, b(p), c(p));
    }
    return r;
}

bool factorial_bound_holds(i64 k) {
    // compare logs: log((2k)!/k!) <= log(sqrt 2) + k log(4k/e)
    double lhs = 0;
    for (i64 t = k + 1; t <= 2 * k; ++t) lhs += std::log(double(t));
    double rhs = 0.5 * std::log(2.0) + double(k) * (std::log(4.0 * double(k)) - 1.0);
    return lhs <= rhs + 1e-12;
}

}  // namespace toriclab
