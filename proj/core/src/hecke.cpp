#include "toriclab/hecke.hpp"

#include <cmath>
#include <fstream>
#include <thread>
#include <vector>
#include <sstream>

namespace toriclab {

HeckeForm::HeckeForm(std::string label, i64 level, int weight)
    : label_(std::move(label)), level_(level), weight_(weight) {
    if (level < 1 || !is_squarefree(level)) throw std::invalid_argument("HeckeForm: level must be squarefree");
    if (weight < 2 || weight % 2 != 0) throw std::invalid_argument("HeckeForm: weight must be even and >= 2");
}

double HeckeForm::q_analytic() const {
    double half_k = double(weight_) / 2.0;
    return double(level_) * half_k * half_k;
}

double HeckeForm::spectral_parameter() const {
    double half_k = double(weight_) / 2.0;
    return std::sqrt(half_k * (half_k + 1.0));
}

double HeckeForm::lambda_p(i64 p) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(p);
        if (it != cache_.end()) return it->second;
    }
    double v = compute_lambda_p(p);
    std::lock_guard<std::mutex> lock(mu_);
    cache_[p] = v;
    return v;
}

double HeckeForm::lambda_prime_power(i64 p, int e) const {
    // lambda(p^{e+1}) = lambda(p) lambda(p^e) - psi(p) lambda(p^{e-1})
    double lp = lambda_p(p);
    double prev = 1.0, cur = lp;
    double psi_p = psi(p);
    for (int t = 1; t < e; ++t) {
        double next = lp * cur - psi_p * prev;
        prev = cur;
        cur = next;
    }
    return e == 0 ? 1.0 : cur;
}

double HeckeForm::lambda_n(i64 n) const {
    if (n < 1) throw std::invalid_argument("lambda_n: n must be positive");
    double r = 1.0;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        r *= lambda_prime_power(p, e);
    }
    if (n > 1) r *= lambda_p(n);
    return r;
}

std::vector<double> HeckeForm::lambda_stream(i64 bound) const {
    std::vector<double> lam(static_cast<std::size_t>(bound) + 1, 0.0);
    if (bound < 1) return lam;
    lam[1] = 1.0;
    // smallest prime factor sieve with prime-power tracking
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
    // local values lambda(p^e) filled along prime powers
    for (i64 n = 2; n <= bound; ++n) {
        i64 q = ppow[static_cast<std::size_t>(n)];
        if (q == n) {
            // prime power: recurrence
            i64 p = spf[static_cast<std::size_t>(n)];
            if (n == p) {
                lam[static_cast<std::size_t>(n)] = lambda_p(p);
            } else {
                double psi_p = psi(p);
                lam[static_cast<std::size_t>(n)] =
                    lam[static_cast<std::size_t>(p)] * lam[static_cast<std::size_t>(n / p)] -
                    psi_p * lam[static_cast<std::size_t>(n / p / p)];
            }
        } else {
            lam[static_cast<std::size_t>(n)] = lam[static_cast<std::size_t>(q)] * lam[static_cast<std::size_t>(n / q)];
        }
    }
    return lam;
}

// ---------------------------------------------------------------------------

Ec11aForm::Ec11aForm() : HeckeForm("11a", 11, 2) {}

namespace {
// #E(F_p) for y^2 + y = x^3 - x^2 - 10x - 20 by direct counting with a
// quadratic-residue table; O(p) per prime.
i64 count_points_11a(i64 p) {
    if (p == 2 || p == 3) {
        i64 affine = 0;
        for (i64 x = 0; x < p; ++x)
            for (i64 y = 0; y < p; ++y) {
                i64 lhs = mod_nonneg(y * y + y, p);
                i64 rhs = mod_nonneg(x * x * x - x * x - 10 * x - 20, p);
                if (lhs == rhs) ++affine;
            }
        return affine + 1;
    }
    // complete the square: (2y+1)^2 = 4f(x) + 1
    std::vector<unsigned char> qr(static_cast<std::size_t>(p), 0);
    for (i64 t = 0; t < p; ++t) qr[static_cast<std::size_t>(mulmod(t, t, p))] = 1;
    i64 affine = 0;
    for (i64 x = 0; x < p; ++x) {
        i64 f = mod_nonneg(((x - 1) * x % p) * x % p - 10 * x - 20, p);
        i64 u = mod_nonneg(4 * f + 1, p);
        if (u == 0)
            affine += 1;
        else
            affine += qr[static_cast<std::size_t>(u)] ? 2 : 0;
    }
    return affine + 1;
}
}  // namespace

i64 Ec11aForm::ap(i64 p) const {
    if (!is_prime(p)) throw std::invalid_argument("ap: p must be prime");
    if (p == 11) return a11_;
    {
        std::lock_guard<std::mutex> lock(ap_mu_);
        auto it = ap_.find(p);
        if (it != ap_.end()) return it->second;
    }
    i64 v = p + 1 - count_points_11a(p);
    std::lock_guard<std::mutex> lock(ap_mu_);
    ap_[p] = v;
    return v;
}

void Ec11aForm::set_a11(int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("a_11 must be +-1");
    a11_ = sign;
}

void Ec11aForm::ensure_primes(i64 bound, int threads) const {
    std::vector<i64> todo;
    {
        std::lock_guard<std::mutex> lock(ap_mu_);
        for (i64 p = 2; p <= bound; ++p)
            if (is_prime(p) && p != 11 && !ap_.count(p)) todo.push_back(p);
    }
    if (todo.empty()) return;
    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw ? static_cast<int>(hw) : 4;
    }
    threads = static_cast<int>(std::min<i64>(threads, static_cast<i64>(todo.size())));
    std::vector<i64> results(todo.size());
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = static_cast<std::size_t>(t); i < todo.size(); i += static_cast<std::size_t>(threads))
                results[i] = todo[i] + 1 - count_points_11a(todo[i]);
        });
    for (auto& th : pool) th.join();
    std::lock_guard<std::mutex> lock(ap_mu_);
    for (std::size_t i = 0; i < todo.size(); ++i) ap_[todo[i]] = results[i];
}

void Ec11aForm::preload(const std::map<i64, i64>& ap) {
    std::lock_guard<std::mutex> lock(ap_mu_);
    for (const auto& [p, a] : ap)
        if (p != 11) ap_[p] = a;
}

double Ec11aForm::compute_lambda_p(i64 p) const {
    return double(ap(p)) / std::sqrt(double(p));
}

// ---------------------------------------------------------------------------

TauForm::TauForm(i64 initial_bound) : HeckeForm("tau", 1, 12) { ensure(initial_bound); }

void TauForm::ensure(i64 bound) const {
    std::lock_guard<std::mutex> lock(table_mu_);
    if (table_bound() >= bound) return;
    const std::size_t n = static_cast<std::size_t>(bound) + 1;
    // Jacobi: eta^3 ~ G(q) = sum_k (-1)^k (2k+1) q^{k(k+1)/2}; Delta = q G^8
    std::vector<std::pair<i64, i64>> sparse;  // (exponent, coefficient)
    for (i64 k = 0;; ++k) {
        i64 t = k * (k + 1) / 2;
        if (t >= static_cast<i64>(n)) break;
        sparse.emplace_back(t, (k % 2 == 0) ? (2 * k + 1) : -(2 * k + 1));
    }
    std::vector<i128> acc(n, 0);
    // acc = G^2 by sparse x sparse
    for (const auto& [e1, c1] : sparse)
        for (const auto& [e2, c2] : sparse) {
            i64 e = e1 + e2;
            if (e >= static_cast<i64>(n)) break;
            acc[static_cast<std::size_t>(e)] += static_cast<i128>(c1) * c2;
        }
    // six more sparse multiplications: acc = G^8
    for (int pass = 0; pass < 6; ++pass) {
        std::vector<i128> next(n, 0);
        for (const auto& [e1, c1] : sparse) {
            for (std::size_t e2 = 0; e2 + static_cast<std::size_t>(e1) < n; ++e2) {
                if (acc[e2] == 0) continue;
                next[e2 + static_cast<std::size_t>(e1)] += static_cast<i128>(c1) * acc[e2];
            }
        }
        acc.swap(next);
    }
    // Delta = q G^8: tau(m) = coefficient of q^{m-1} in G^8
    table_.assign(n, 0);
    for (std::size_t m = 1; m < n; ++m) table_[m] = acc[m - 1];
}

i128 TauForm::tau(i64 n) const {
    if (n < 1) throw std::invalid_argument("tau: n must be positive");
    {
        std::lock_guard<std::mutex> lock(table_mu_);
        if (n <= table_bound()) return table_[static_cast<std::size_t>(n)];
    }
    ensure(2 * n);
    std::lock_guard<std::mutex> lock(table_mu_);
    return table_[static_cast<std::size_t>(n)];
}

double TauForm::compute_lambda_p(i64 p) const {
    return static_cast<double>(static_cast<long double>(tau(p)) /
                               std::pow(static_cast<long double>(p), 5.5L));
}

// ---------------------------------------------------------------------------

FileForm::FileForm(const std::string& path) : FileForm(read_eigenvalue_file(path)) {}

FileForm::FileForm(EigenvalueFile file)
    : HeckeForm(file.label, file.level, file.weight), ap_(std::move(file.ap)) {}

FileForm::FileForm(std::string label, i64 level, int weight, std::map<i64, i64> ap)
    : HeckeForm(std::move(label), level, weight), ap_(std::move(ap)) {}

i64 FileForm::max_prime() const { return ap_.empty() ? 0 : ap_.rbegin()->first; }

double FileForm::compute_lambda_p(i64 p) const {
    auto it = ap_.find(p);
    if (it == ap_.end())
        throw std::out_of_range("FileForm: eigenvalue at p = " + std::to_string(p) + " not in file");
    return double(it->second) / std::pow(double(p), (double(weight()) - 1.0) / 2.0);
}

// ---------------------------------------------------------------------------

void write_eigenvalue_file(const std::string& path, const std::string& label, i64 level, int weight,
                           const std::map<i64, i64>& ap) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open eigenvalue file for writing: " + path);
    os << "# label " << label << " weight " << weight << " level " << level << "\n";
    for (const auto& [p, a] : ap) os << p << "\t" << a << "\n";
}

EigenvalueFile read_eigenvalue_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open eigenvalue file: " + path);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("eigenvalue file is empty: " + path);
    std::istringstream hs(line);
    std::string hash, kw_label, label, kw_weight, kw_level;
    int weight = 0;
    i64 level = 0;
    hs >> hash >> kw_label >> label >> kw_weight >> weight >> kw_level >> level;
    if (hash != "#" || kw_label != "label" || kw_weight != "weight" || kw_level != "level" || !hs)
        throw std::runtime_error("malformed eigenvalue file header: " + line);
    EigenvalueFile out{label, level, weight, {}};
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        i64 p, a;
        if (!(ls >> p >> a)) throw std::runtime_error("malformed eigenvalue line: " + line);
        if (!is_prime(p)) throw std::runtime_error("eigenvalue line with composite p: " + line);
        out.ap[p] = a;
    }
    return out;
}

}  // namespace toriclab
