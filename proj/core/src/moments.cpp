#include "toriclab/moments.hpp"

#include <cmath>
#include <complex>

namespace toriclab {

namespace {
// tilde-a_{chi^nu}(n): completely multiplicative extension of a_{chi^nu}(p)
double tilde_a(const ClassCharacter& chi, i64 nu, i64 n) {
    return chi.a_chi_completely_multiplicative(n, nu);
}
}  // namespace

std::vector<i64> orthogonality_admissible_n(const ClassGroup& group, i64 nu, bool split_only) {
    const i64 D = group.field().D();
    std::vector<i64> out;
    for (i64 n = 1;; ++n) {
        // n < (D/4)^{1/nu}  <=>  4 n^nu < D
        i128 pw = 4;
        bool ok = true;
        for (i64 t = 0; t < nu; ++t) {
            pw *= n;
            if (pw >= D) {
                ok = false;
                break;
            }
        }
        if (!ok) break;
        if (split_only) {
            i64 m = n;
            bool split = true;
            for (i64 p = 2; p * p <= m; ++p)
                while (m % p == 0) {
                    if (group.field().eta(p) != 1) split = false;
                    m /= p;
                }
            if (m > 1 && group.field().eta(m) != 1) split = false;
            if (!split) continue;
        }
        out.push_back(n);
    }
    return out;
}

OrthogonalityReport orthogonality_bruteforce_nu(const ClassGroup& group, i64 nu,
                                                const std::vector<i64>& ns) {
    auto chars = characters(group);
    OrthogonalityReport rep;
    for (i64 n : ns) {
        double sum = 0;
        for (const auto& chi : chars) sum += tilde_a(chi, nu, n);
        double expect = double(combinatorial_r(group.field(), n) * group.h());
        rep.max_deviation = std::max(rep.max_deviation, std::abs(sum - expect));
        ++rep.cases;
    }
    return rep;
}

OrthogonalityReport orthogonality_bruteforce_ab(const ClassGroup& group, i64 alpha, i64 beta,
                                                const std::function<double(i64)>& b,
                                                const std::function<double(i64)>& c,
                                                const std::vector<i64>& ns) {
    if (alpha == beta) throw std::invalid_argument("alpha and beta must be distinct");
    auto chars = characters(group);
    OrthogonalityReport rep;
    for (i64 n : ns) {
        double sum = 0;
        for (const auto& chi : chars) {
            // completely multiplicative f_chi with f_chi(p) = a_{chi^a}(p) b(p) + a_{chi^b}(p) c(p)
            double f = 1;
            i64 m = n;
            for (i64 p = 2; m > 1; ++p) {
                if (p * p > m) p = m;
                if (m % p != 0) continue;
                int e = 0;
                while (m % p == 0) {
                    m /= p;
                    ++e;
                }
                double fp = chi.a_chi_prime(p, alpha) * b(p) + chi.a_chi_prime(p, beta) * c(p);
                for (int t = 0; t < e; ++t) f *= fp;
            }
            sum += f;
        }
        double expect = h_alpha_beta(group.field(), alpha, beta, n, b, c) * double(group.h());
        rep.max_deviation = std::max(rep.max_deviation, std::abs(sum - expect));
        ++rep.cases;
    }
    return rep;
}

IdealOrthogonalityReport ideal_orthogonality_check(const ClassGroup& group) {
    auto chars = characters(group);
    IdealOrthogonalityReport rep;
    const i64 D = group.field().D();
    for (i64 n = 1; 4 * n < D; ++n) {
        for (const auto& [ideal, cls] : group.ideals_of_norm(n)) {
            std::complex<double> sum = 0;
            for (const auto& chi : chars) sum += chi.value(cls);
            ++rep.ideals;
            if (ideal.induced_from_q()) {
                ++rep.induced;
                rep.max_deviation =
                    std::max(rep.max_deviation, std::abs(sum - std::complex<double>(double(group.h()), 0)));
            } else {
                rep.max_deviation = std::max(rep.max_deviation, std::abs(sum));
            }
        }
    }
    return rep;
}

namespace {
// 4 x^e < D, evaluated without overflow
bool power_precondition(i64 x, i64 e, i64 D) {
    i128 pw = 4;
    for (i64 t = 0; t < e; ++t) {
        pw *= x;
        if (pw >= D) return false;
    }
    return true;
}
}  // namespace

InequalityReport moment_inequality_nu(const ClassGroup& group, i64 nu, i64 k, i64 x,
                                      const std::function<double(i64)>& b) {
    // precondition x^{2k} < (D/4)^{1/nu}
    const i64 D = group.field().D();
    if (!power_precondition(x, 2 * k * nu, D))
        throw std::invalid_argument("moment_inequality_nu: x^{2k nu} exceeds D/4");

    auto chars = characters(group);
    double lhs = 0, inner_rhs = 0;
    for (i64 p = 2; p <= x; ++p) {
        if (!is_prime(p)) continue;
        if (nu % 2 == 0 && group.field().eta(p) != 1) continue;  // split primes only when nu even
        inner_rhs += 0.5 * (1.0 + double(group.field().eta(p))) * b(p) * b(p) / double(p);
    }
    for (const auto& chi : chars) {
        double s = 0;
        for (i64 p = 2; p <= x; ++p) {
            if (!is_prime(p)) continue;
            if (nu % 2 == 0 && group.field().eta(p) != 1) continue;
            s += chi.a_chi_prime(p, nu) * b(p) / std::sqrt(double(p));
        }
        double pw2k = 1;
        for (i64 t = 0; t < 2 * k; ++t) pw2k *= s;
        lhs += pw2k;
    }
    double fac = 1;
    for (i64 t = k + 1; t <= 2 * k; ++t) fac *= double(t);
    double rhs = fac * std::pow(inner_rhs, double(k)) * double(group.h());
    return {lhs, rhs, lhs <= rhs + 1e-9 * std::max(1.0, std::abs(rhs))};
}

InequalityReport moment_inequality_ab(const ClassGroup& group, i64 alpha, i64 beta, i64 k, i64 x,
                                      const std::function<double(i64)>& b,
                                      const std::function<double(i64)>& c) {
    if (alpha == beta) throw std::invalid_argument("alpha and beta must be distinct");
    const i64 D = group.field().D();
    if (!power_precondition(x, 2 * k * std::max(alpha, beta), D))
        throw std::invalid_argument("moment_inequality_ab: x^{2k max(a,b)} exceeds D/4");

    auto chars = characters(group);
    std::vector<i64> split_primes;
    for (i64 p = 2; p <= x; ++p)
        if (is_prime(p) && group.field().eta(p) == 1) split_primes.push_back(p);

    double lhs = 0;
    for (const auto& chi : chars) {
        double s = 0;
        for (i64 p : split_primes)
            s += (chi.a_chi_prime(p, alpha) * b(p) + chi.a_chi_prime(p, beta) * c(p)) / std::sqrt(double(p));
        double pw2k = 1;
        for (i64 t = 0; t < 2 * k; ++t) pw2k *= s;
        lhs += pw2k;
    }

    double sum_sq = 0, sum_32 = 0, sum_4 = 0;
    for (i64 p : split_primes) {
        sum_sq += (b(p) * b(p) + c(p) * c(p)) / double(p);
        sum_32 += b(p) * b(p) * std::abs(c(p)) / std::pow(double(p), 1.5);
        double t = std::abs(b(p)) + std::abs(c(p));
        sum_4 += t * t * t * t / (double(p) * double(p));
    }

    auto fact = [](i64 n) {
        double f = 1;
        for (i64 t = 2; t <= n; ++t) f *= double(t);
        return f;
    };
    const double fac2k = fact(2 * k);
    auto v2 = [](i64 n) {
        int v = 0;
        while (n % 2 == 0) {
            n /= 2;
            ++v;
        }
        return v;
    };
    double rhs = 0;
    if (v2(alpha) != v2(beta)) {
        for (i64 l2 = 0; 3 * l2 <= 2 * k; ++l2) {
            if ((2 * k - 3 * l2) % 2 != 0) continue;
            i64 l1 = (2 * k - 3 * l2) / 2;
            rhs += fac2k / (fact(l1) * fact(l2)) * std::pow(sum_sq, double(l1)) * std::pow(sum_32, double(l2));
        }
    } else {
        for (i64 l2 = 0; 4 * l2 <= 2 * k; ++l2) {
            if ((2 * k - 4 * l2) % 2 != 0) continue;
            i64 l1 = (2 * k - 4 * l2) / 2;
            rhs += fac2k / (fact(l1) * fact(l2)) * std::pow(sum_sq, double(l1)) * std::pow(sum_4, double(l2));
        }
    }
    rhs *= double(group.h());
    return {lhs, rhs, lhs <= rhs + 1e-9 * std::max(1.0, std::abs(rhs))};
}

MomentParameters moment_parameters_from_values(i64 D, double x, double q_pi1, double q_pi2,
                                               const LAtOneValues& v) {
    MomentParameters mp;
    mp.D = D;
    mp.x = x;
    mp.lvalues = v;
    const double logD = std::log(double(D));
    mp.delta = std::cbrt(std::log(logD));
    mp.z = std::pow(x, 1.0 / mp.delta);
    mp.big_v = std::sqrt(logD);
    mp.k = static_cast<i64>(mp.big_v);
    mp.curly_c = std::log(logD) + std::cbrt(std::log(std::max(q_pi1, q_pi2)));
    mp.h_e = v.eta * std::sqrt(double(D));
    const double loglogx = std::log(std::log(x));
    mp.mu_d = 0.5 * std::log(v.eta) + 0.25 * std::log(v.ad1) + 0.25 * std::log(v.ad2) -
              0.25 * std::log(v.ad1_eta) - 0.25 * std::log(v.ad2_eta) - 0.5 * loglogx;
    mp.var_star_d = 0.5 * loglogx + 0.5 * std::log(v.eta) + 0.25 * std::log(v.ad1_theta) +
                    0.25 * std::log(v.ad2_theta);
    mp.var_d = mp.var_star_d + 0.5 * std::log(v.rs_pair_theta);
    return mp;
}

MomentParameters moment_parameters(const ClassGroup& group, const HeckeForm& f1, const HeckeForm& f2,
                                   std::optional<double> x_override, double smoothing_X) {
    const QuadField& field = group.field();
    LAtOneValues v;
    v.eta = l_one_eta_class_number(group);  // exact finite value
    v.ad1 = l_at_one_ad(f1, smoothing_X).value;
    v.ad2 = l_at_one_ad(f2, smoothing_X).value;
    v.ad1_eta = l_at_one_ad_eta(f1, field, smoothing_X).value;
    v.ad2_eta = l_at_one_ad_eta(f2, field, smoothing_X).value;
    v.ad1_theta = v.ad1 * v.ad1_eta;
    v.ad2_theta = v.ad2 * v.ad2_eta;
    // the correlation value L(1, pi1 x pi2 x theta) only makes sense for
    // distinct forms (otherwise the Rankin-Selberg factor has a pole at 1);
    // with equal forms var_D degenerates to var*_D
    v.rs_pair_theta = (f1.label() == f2.label())
                          ? 1.0
                          : l_at_one_rs_pair_theta(f1, f2, field, smoothing_X);
    double x = x_override.value_or(double(field.D()));
    return moment_parameters_from_values(field.D(), x, f1.q_analytic(), f2.q_analytic(), v);
}

}  // namespace toriclab
