#include "toriclab/lfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>

namespace toriclab {

namespace {
PrimeTable& shared_primes() {
    static PrimeTable pt(1 << 20);
    return pt;
}
std::mutex& prime_mutex() {
    static std::mutex mu;
    return mu;
}
std::vector<i64> primes_up_to(i64 x) {
    std::lock_guard<std::mutex> lock(prime_mutex());
    return shared_primes().primes_up_to(x);
}
}  // namespace

SplittingTable::SplittingTable(const ClassGroup& group, i64 bound) : group_(&group), bound_(bound) {
    for (i64 p : primes_up_to(bound)) {
        int e = group.field().eta(p);
        int cls = -1;
        if (e != -1) cls = *prime_splitting(group, p).ideal_class;
        data_[p] = {e, cls};
    }
}

int SplittingTable::eta(i64 p) const {
    auto it = data_.find(p);
    if (it == data_.end()) throw std::out_of_range("SplittingTable: prime beyond bound");
    return it->second.first;
}

int SplittingTable::prime_class(i64 p) const {
    auto it = data_.find(p);
    if (it == data_.end() || it->second.second < 0)
        throw std::out_of_range("SplittingTable: no prime class stored");
    return it->second.second;
}

std::vector<double> a_chi_stream(const ClassCharacter& chi, const SplittingTable& st, i64 bound) {
    if (bound > st.bound()) throw std::invalid_argument("a_chi_stream: bound exceeds splitting table");
    std::vector<double> a(static_cast<std::size_t>(bound) + 1, 0.0);
    if (bound < 1) return a;
    a[1] = 1.0;
    // smallest prime factor sieve with prime-power parts
    std::vector<i64> spf(static_cast<std::size_t>(bound) + 1, 0);
    std::vector<i64> ppow(static_cast<std::size_t>(bound) + 1, 0);
    std::vector<i64> primes;
    for (i64 n = 2; n <= bound; ++n) {
        if (spf[static_cast<std::size_t>(n)] == 0) {
            spf[static_cast<std::size_t>(n)] = n;
            ppow[static_cast<std::size_t>(n)] = n;
            primes.push_back(n);
        }
        for (i64 p : primes) {
            if (p > spf[static_cast<std::size_t>(n)] || n * p > bound) break;
            spf[static_cast<std::size_t>(n * p)] = p;
            ppow[static_cast<std::size_t>(n * p)] = (p == spf[static_cast<std::size_t>(n)]) ? ppow[static_cast<std::size_t>(n)] * p : p;
        }
    }
    // local values at primes
    std::unordered_map<i64, double> tp;  // split: a_chi(p); ramified: chi(p-class)
    for (i64 p : primes) {
        int e = st.eta(p);
        if (e == -1) continue;
        double v = chi.value(st.prime_class(p)).real();
        tp[p] = (e == 1) ? 2.0 * v : v;
    }
    for (i64 n = 2; n <= bound; ++n) {
        i64 q = ppow[static_cast<std::size_t>(n)];
        if (q != n) {
            a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(q)] * a[static_cast<std::size_t>(n / q)];
            continue;
        }
        i64 p = spf[static_cast<std::size_t>(n)];
        int e = st.eta(p);
        if (e == -1) {
            // inert: 1 for even exponents, 0 for odd
            a[static_cast<std::size_t>(n)] = (n == p) ? 0.0 : a[static_cast<std::size_t>(n / p / p)];
        } else if (e == 0) {
            a[static_cast<std::size_t>(n)] = (n == p) ? tp[p] : tp[p] * a[static_cast<std::size_t>(n / p)];
        } else {
            // split: Dirichlet-kernel recurrence U_e = t U_{e-1} - U_{e-2}, U_0 = 1
            a[static_cast<std::size_t>(n)] =
                (n == p) ? tp[p] : tp[p] * a[static_cast<std::size_t>(n / p)] - a[static_cast<std::size_t>(n / p / p)];
        }
    }
    return a;
}

std::vector<double> rs_coefficient_stream(const QuadField& field, i64 level,
                                          const std::vector<double>& lambda,
                                          const std::vector<double>& achi, i64 bound) {
    std::vector<double> c(static_cast<std::size_t>(bound) + 1, 0.0);
    // u(r) = lambda(r) a_chi(r), then c(n) = sum_{m^2 r = n} eta(m) u(r); the
    // zeta-type factor omits primes dividing the level, where the local factor
    // of the twisted L-function is already complete
    for (i64 m = 1; m * m <= bound; ++m) {
        int em = field.eta(m);
        if (em == 0 || std::gcd(m, level) != 1) continue;
        const i64 mm = m * m;
        for (i64 r = 1; mm * r <= bound; ++r)
            c[static_cast<std::size_t>(mm * r)] += double(em) * lambda[static_cast<std::size_t>(r)] * achi[static_cast<std::size_t>(r)];
    }
    return c;
}

double rs_local_coefficient(const HeckeForm& form, const ClassCharacter& chi, const SplittingTable& st,
                            i64 p, int k) {
    // Satake roots of pi at p
    std::complex<double> lp(form.lambda_p(p), 0);
    std::complex<double> disc = lp * lp - 4.0 * double(form.psi(p));
    std::complex<double> sq = std::sqrt(disc);
    std::complex<double> alpha1 = (lp + sq) / 2.0, alpha2 = (lp - sq) / 2.0;
    // Satake parameters of chi at p
    std::vector<std::complex<double>> xi;
    int e = st.eta(p);
    if (e == -1) {
        xi = {{-1.0, 0.0}, {1.0, 0.0}};
    } else {
        std::complex<double> v = chi.value(st.prime_class(p));
        if (e == 1)
            xi = {v, std::conj(v)};
        else
            xi = {v};
    }
    std::vector<std::complex<double>> roots;
    for (const auto& a : {alpha1, alpha2}) {
        if (std::abs(a) < 1e-15) continue;  // level prime: one Satake parameter vanishes
        for (const auto& x : xi) roots.push_back(a * x);
    }
    // expand prod (1 - r x)^{-1} via the polynomial recurrence
    std::vector<std::complex<double>> q(roots.size() + 1, 0.0);
    q[0] = 1.0;
    for (std::size_t t = 0; t < roots.size(); ++t)
        for (std::size_t j = t + 1; j > 0; --j) q[j] -= roots[t] * q[j - 1];
    std::vector<std::complex<double>> c(static_cast<std::size_t>(k) + 1, 0.0);
    c[0] = 1.0;
    for (int n = 1; n <= k; ++n) {
        std::complex<double> s = 0.0;
        for (std::size_t j = 1; j < q.size() && j <= static_cast<std::size_t>(n); ++j)
            s += q[j] * c[static_cast<std::size_t>(n) - j];
        c[static_cast<std::size_t>(n)] = -s;
    }
    return c[static_cast<std::size_t>(k)].real();
}

double rankin_selberg_conductor(const HeckeForm& form, const QuadField& field) {
    double nd = double(form.level()) * double(field.D());
    return nd * nd;
}

double rankin_selberg_analytic_q(const HeckeForm& form, const QuadField& field) {
    double v = form.q_analytic() * double(field.D());
    return v * v;
}

i64 afe_stream_bound(const HeckeForm& form, const QuadField& field, const LValueOptions& opt) {
    const double C = rankin_selberg_conductor(form, field);
    const double cut = afe_weight(4, form.weight()).y_cut() * 1.38 * std::sqrt(C) + 2.0;
    const double cap = double(opt.term_cap_factor) * std::sqrt(C) + 1.0;
    return static_cast<i64>(std::min(cut, cap));
}

CentralValueRecord central_value_with_streams(const HeckeForm& form, const ClassGroup& group,
                                              const ClassCharacter& chi, const std::vector<double>& lambda,
                                              const std::vector<double>& achi, const LValueOptions& opt) {
    const QuadField& field = group.field();
    if (std::gcd(form.level(), 2 * field.D()) != 1)
        throw std::invalid_argument("central_value: gcd(N, 2D) = 1 required");
    const double C = rankin_selberg_conductor(form, field);
    const i64 cap = static_cast<i64>(double(opt.term_cap_factor) * std::sqrt(C)) + 1;
    const i64 bound = std::min<i64>({cap, static_cast<i64>(lambda.size()) - 1,
                                     afe_stream_bound(form, field, opt)});
    std::vector<double> c = rs_coefficient_stream(field, form.level(), lambda, achi, bound);
    const AfeWeight& w = afe_weight(4, form.weight());
    AfeResult r = central_value_afe(c, C, w, cap);

    CentralValueRecord rec;
    rec.D = field.D();
    rec.chi_id = chi.id();
    rec.form_id = form.label();
    rec.value = r.value;
    rec.epsilon = r.epsilon;
    rec.epsilon_estimate = r.epsilon_estimate;
    rec.terms_used = r.terms_used;
    rec.consistency_gap = r.consistency_gap;
    rec.tail_bound = r.tail_bound;
    rec.conductor = C;
    if (opt.strict) {
        if (std::abs(r.epsilon_estimate - double(r.epsilon)) > opt.epsilon_tol)
            throw std::runtime_error("central_value: root number estimate " +
                                     std::to_string(r.epsilon_estimate) + " is not within tolerance of +-1");
        if (r.consistency_gap > opt.gap_tol)
            throw std::runtime_error("central_value: smoothing consistency gap " +
                                     std::to_string(r.consistency_gap) + " above tolerance");
    }
    return rec;
}

CentralValueRecord central_value(const HeckeForm& form, const ClassGroup& group, const ClassCharacter& chi,
                                 const SplittingTable& st, const LValueOptions& opt) {
    const i64 bound = afe_stream_bound(form, group.field(), opt);
    if (st.bound() < bound)
        throw std::invalid_argument("central_value: splitting table too small for the AFE length");
    std::vector<double> lambda = form.lambda_stream(bound);
    std::vector<double> achi = a_chi_stream(chi, st, bound);
    return central_value_with_streams(form, group, chi, lambda, achi, opt);
}

AfeResult central_value_degree2(const HeckeForm& form, const LValueOptions& opt) {
    const double C = double(form.level());
    const i64 cap = std::min<i64>(static_cast<i64>(double(opt.term_cap_factor) * std::sqrt(C)) + 64,
                                  static_cast<i64>(afe_weight(2, form.weight()).y_cut() * 1.38 * std::sqrt(C)) + 64);
    std::vector<double> lambda = form.lambda_stream(cap);
    const AfeWeight& w = afe_weight(2, form.weight());
    return central_value_afe(lambda, C, w, cap);
}

AfeResult central_value_degree2_twist(const HeckeForm& form, const QuadField& field,
                                      const LValueOptions& opt) {
    if (std::gcd(form.level(), 2 * field.D()) != 1)
        throw std::invalid_argument("degree2 twist: gcd(N, 2D) = 1 required");
    const double C = double(form.level()) * double(field.D()) * double(field.D());
    const i64 cap = std::min<i64>(static_cast<i64>(double(opt.term_cap_factor) * std::sqrt(C)) + 64,
                                  static_cast<i64>(afe_weight(2, form.weight()).y_cut() * 1.38 * std::sqrt(C)) + 64);
    std::vector<double> coeff = form.lambda_stream(cap);
    for (i64 n = 1; n <= cap && n < static_cast<i64>(coeff.size()); ++n)
        coeff[static_cast<std::size_t>(n)] *= double(field.eta(n));
    const AfeWeight& w = afe_weight(2, form.weight());
    return central_value_afe(coeff, C, w, cap);
}

void certify_a11(Ec11aForm& form) {
    double best_gap = 1e99;
    int best_sign = 0;
    LValueOptions opt;
    for (int sign : {1, -1}) {
        form.set_a11(sign);
        AfeResult r = central_value_degree2(form, opt);
        bool sane = std::abs(r.epsilon_estimate - double(r.epsilon)) < 1e-3;
        double gap = sane ? r.consistency_gap : 1e98;
        if (gap < best_gap) {
            best_gap = gap;
            best_sign = sign;
        }
    }
    if (best_sign == 0 || best_gap > 1e-6)
        throw std::runtime_error("certify_a11: neither sign is functional-equation consistent");
    form.set_a11(best_sign);
}

Ec11aForm& builtin_ec11a() {
    static std::mutex mu;
    static std::unique_ptr<Ec11aForm> ec11a;
    std::lock_guard<std::mutex> lock(mu);
    if (!ec11a) {
        ec11a = std::make_unique<Ec11aForm>();
        certify_a11(*ec11a);
    }
    return *ec11a;
}

TauForm& builtin_tau() {
    static std::mutex mu;
    static std::unique_ptr<TauForm> tau;
    std::lock_guard<std::mutex> lock(mu);
    if (!tau) tau = std::make_unique<TauForm>();
    return *tau;
}

const HeckeForm& builtin_form(const std::string& label) {
    if (label == "11a") return builtin_ec11a();
    if (label == "tau") return builtin_tau();
    throw std::invalid_argument("unknown builtin form: " + label);
}

// ---------------------------------------------------------------------------
// values at s = 1

namespace {
// sum b(n)/n exp(-(n/X)^2); b is 1-indexed
double smoothed_sum_at_one(const std::vector<double>& b, double X) {
    double s = 0;
    const i64 nmax = std::min<i64>(static_cast<i64>(b.size()) - 1, static_cast<i64>(6.0 * X));
    for (i64 n = 1; n <= nmax; ++n) {
        double u = double(n) / X;
        s += b[static_cast<std::size_t>(n)] / double(n) * std::exp(-u * u);
    }
    return s;
}

i64 one_bound(double X) { return static_cast<i64>(6.0 * X) + 1; }

std::vector<double> eta_stream(const QuadField& field, i64 bound) {
    std::vector<double> e(static_cast<std::size_t>(bound) + 1, 0.0);
    for (i64 n = 1; n <= bound; ++n) e[static_cast<std::size_t>(n)] = double(field.eta(n));
    return e;
}

// lambda(v^2) for v <= bound
std::vector<double> lambda_square_stream(const HeckeForm& form, i64 bound) {
    std::vector<double> l2(static_cast<std::size_t>(bound) + 1, 0.0);
    if (bound < 1) return l2;
    l2[1] = 1.0;
    for (i64 n = 2; n <= bound; ++n) {
        // factor out the smallest prime power
        i64 p = 0;
        for (i64 q = 2; q * q <= n; ++q)
            if (n % q == 0) {
                p = q;
                break;
            }
        if (p == 0) {
            l2[static_cast<std::size_t>(n)] = form.lambda_prime_power(n, 2);
            continue;
        }
        i64 m = n;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        l2[static_cast<std::size_t>(n)] = form.lambda_prime_power(p, 2 * e) * l2[static_cast<std::size_t>(m)];
    }
    return l2;
}

// b(n) = sum_{u^2 v = n, gcd(u, M) = 1} core(v)
std::vector<double> square_zeta_convolve(const std::vector<double>& core, i64 M, i64 bound) {
    std::vector<double> b(static_cast<std::size_t>(bound) + 1, 0.0);
    for (i64 u = 1; u * u <= bound; ++u) {
        if (std::gcd(u, M) != 1) continue;
        for (i64 v = 1; u * u * v <= bound; ++v) b[static_cast<std::size_t>(u * u * v)] += core[static_cast<std::size_t>(v)];
    }
    return b;
}

double zeta2_without(i64 M) {
    double z = std::numbers::pi * std::numbers::pi / 6.0;
    for (i64 p = 2; p <= M; ++p) {
        if (!is_prime(p) || M % p != 0) continue;
        z *= 1.0 - 1.0 / (double(p) * double(p));
    }
    return z;
}
}  // namespace

LOneResult l_at_one_eta(const QuadField& field, double X) {
    auto e = eta_stream(field, one_bound(X));
    LOneResult r;
    r.value = smoothed_sum_at_one(e, X);
    r.two_x_gap = std::abs(r.value - smoothed_sum_at_one(e, X / 2));
    return r;
}

double l_one_eta_class_number(const ClassGroup& group) {
    return 2.0 * std::numbers::pi * double(group.h()) /
           (double(group.field().unit_count()) * std::sqrt(double(group.field().D())));
}

LOneResult l_at_one_ad(const HeckeForm& form, double X) {
    const i64 bound = one_bound(X);
    auto l2 = lambda_square_stream(form, bound);
    auto b = square_zeta_convolve(l2, form.level(), bound);
    LOneResult r;
    r.value = smoothed_sum_at_one(b, X);
    r.two_x_gap = std::abs(r.value - smoothed_sum_at_one(b, X / 2));
    return r;
}

LOneResult l_at_one_ad_eta(const HeckeForm& form, const QuadField& field, double X) {
    const i64 bound = one_bound(X);
    auto l2 = lambda_square_stream(form, bound);
    for (i64 v = 1; v <= bound; ++v) l2[static_cast<std::size_t>(v)] *= double(field.eta(v));
    auto b = square_zeta_convolve(l2, form.level() * field.D(), bound);
    LOneResult r;
    r.value = smoothed_sum_at_one(b, X);
    r.two_x_gap = std::abs(r.value - smoothed_sum_at_one(b, X / 2));
    return r;
}

double l_at_one_ad_theta(const HeckeForm& form, const QuadField& field, double X) {
    return l_at_one_ad(form, X).value * l_at_one_ad_eta(form, field, X).value;
}

double l_at_one_rs_pair_theta(const HeckeForm& f1, const HeckeForm& f2, const QuadField& field, double X) {
    const i64 bound = one_bound(X);
    auto l1 = f1.lambda_stream(bound);
    auto l2 = f2.lambda_stream(bound);
    std::vector<double> s1(static_cast<std::size_t>(bound) + 1, 0.0), s2(static_cast<std::size_t>(bound) + 1, 0.0);
    for (i64 n = 1; n <= bound; ++n) {
        double v = l1[static_cast<std::size_t>(n)] * l2[static_cast<std::size_t>(n)];
        s1[static_cast<std::size_t>(n)] = v;
        s2[static_cast<std::size_t>(n)] = v * double(field.eta(n));
    }
    double v1 = smoothed_sum_at_one(s1, X);
    double v2 = smoothed_sum_at_one(s2, X);
    double z = zeta2_without(f1.level() * f2.level()) * zeta2_without(f1.level() * f2.level() * field.D());
    double corr = 1.0;
    for (i64 p = 2; p <= std::gcd(f1.level(), f2.level()); ++p) {
        if (!is_prime(p)) continue;
        if (f1.level() % p != 0 || f2.level() % p != 0 || field.D() % p == 0) continue;
        double lam_p = f1.lambda_p(p) * f2.lambda_p(p) * double(p);
        double ep = double(field.eta(p));
        corr *= 1.0 - lam_p * (1.0 + ep) / double(p) + ep / (double(p) * double(p));
    }

    return v1 * v2 * z * corr;
}

double prime_sum_eta(const QuadField& field, i64 x) {
    double s = 0;
    for (i64 p : primes_up_to(x)) s += double(field.eta(p)) / double(p);
    return s;
}

double prime_sum_ad(const HeckeForm& form, i64 x) {
    double s = 0;
    for (i64 p : primes_up_to(x)) s += form.lambda_prime_power(p, 2) / double(p);
    return s;
}

double prime_sum_ad_eta(const HeckeForm& form, const QuadField& field, i64 x) {
    double s = 0;
    for (i64 p : primes_up_to(x)) s += form.lambda_prime_power(p, 2) * double(field.eta(p)) / double(p);
    return s;
}

double prime_sum_ad_theta(const HeckeForm& form, const QuadField& field, i64 x) {
    double s = 0;
    for (i64 p : primes_up_to(x))
        s += form.lambda_prime_power(p, 2) * (1.0 + double(field.eta(p))) / double(p);
    return s;
}

double prime_sum_rs_pair_theta(const HeckeForm& f1, const HeckeForm& f2, const QuadField& field, i64 x) {
    double s = 0;
    for (i64 p : primes_up_to(x))
        s += f1.lambda_p(p) * f2.lambda_p(p) * (1.0 + double(field.eta(p))) / double(p);
    return s;
}

// ---------------------------------------------------------------------------
// Chandee majorant

ChandeeParts chandee_rhs(const HeckeForm& form, const ClassGroup& group, const ClassCharacter& chi,
                         const SplittingTable& st, double x, double smoothing_X) {
    if (x <= 1) throw std::invalid_argument("chandee_rhs: x > 1 required");
    const QuadField& field = group.field();
    const double log_x = std::log(x);
    ChandeeParts parts;
    parts.log_q = std::log(rankin_selberg_analytic_q(form, field));

    for (i64 p : primes_up_to(static_cast<i64>(x))) {
        // alpha1^n + alpha2^n by the Hecke recurrence
        double t_prev = 2.0, t_cur = form.lambda_p(p);
        int e = (p <= st.bound()) ? st.eta(p) : field.eta(p);
        double chi_cos = 0.0;
        if (e != -1) chi_cos = chi.value(st.prime_class(p)).real();
        double pn = double(p);
        for (int n = 1; pn <= x; ++n, pn *= double(p)) {
            double xi_sum;
            if (e == -1)
                xi_sum = (n % 2 == 0) ? 2.0 : 0.0;
            else if (e == 0)
                xi_sum = (n % 2 == 0) ? 1.0 : chi_cos;  // chi(p)^n, chi(p) = +-1
            else {
                // 2 cos(n theta) via Chebyshev T_n
                double c = chi_cos, prev2 = 1.0, cur2 = c;
                for (int t = 1; t < n; ++t) {
                    double next = 2 * c * cur2 - prev2;
                    prev2 = cur2;
                    cur2 = next;
                }
                xi_sum = 2.0 * cur2;
            }
            double alpha_sum = (n == 1) ? t_cur : 0.0;
            if (n > 1) {
                // advance the recurrence t_n = lambda(p) t_{n-1} - psi(p) t_{n-2}
                double next = form.lambda_p(p) * t_cur - double(form.psi(p)) * t_prev;
                t_prev = t_cur;
                t_cur = next;
                alpha_sum = t_cur;
            }
            double term = alpha_sum * xi_sum /
                          (double(n) * std::pow(pn, 0.5 + 1.0 / log_x)) * std::log(x / pn) / log_x;
            parts.majorant += term;
            if (n == 1 && e == 1) parts.split_linear += term;
            if (n == 2 && e == 1) parts.split_square += term;
        }
    }
    parts.majorant += 10.0 * parts.log_q / log_x;

    double l_eta = l_at_one_eta(field, smoothing_X).value;
    double l_ad = l_at_one_ad(form, smoothing_X).value;
    double l_ad_eta = l_at_one_ad_eta(form, field, smoothing_X).value;
    parts.mu_jd = 0.5 * std::log(l_eta) + 0.5 * std::log(l_ad) - 0.5 * std::log(l_ad_eta) -
                  0.5 * std::log(log_x);
    parts.remainder = parts.majorant - parts.split_linear - parts.split_square - parts.mu_jd;
    return parts;
}

}  // namespace toriclab
