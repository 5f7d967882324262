#include "toriclab/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace toriclab {

namespace {

// Tonelli-Shanks square root mod an odd prime; requires (a|p) = 1.
i64 sqrt_mod(i64 a, i64 p) {
    a = mod_nonneg(a, p);
    if (a == 0) return 0;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // find a non-residue
    i64 z = 2;
    while (kronecker(z, p) != -1) ++z;
    i64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    i64 m = s;
    i64 c = powmod(z, q, p);
    i64 t = powmod(a, q, p);
    i64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        i64 t2 = t;
        i64 i = 0;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        i64 b = powmod(c, i64(1) << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

}  // namespace

QuadField::QuadField(i64 D) : D_(D) {
    // D = 3 and D = 4 carry extra units and are excluded throughout
    if (D <= 4) throw std::invalid_argument("QuadField: D must exceed 3 (and D = 4 is excluded)");
    if (!is_fundamental(D))
        throw std::invalid_argument("QuadField: -D is not a fundamental discriminant");
}

bool QuadField::is_fundamental(i64 D) {
    if (D <= 0) return false;
    if (D % 4 == 3) return is_squarefree(D);
    if (D % 4 == 0) {
        i64 m = D / 4;
        return is_squarefree(m) && (m % 4 == 1 || m % 4 == 2);
    }
    return false;
}

BinaryFormClass BinaryFormClass::inverse() const { return reduce_form(a, -b, c); }

std::string to_string(const BinaryFormClass& f) {
    return "(" + std::to_string(f.a) + "," + std::to_string(f.b) + "," + std::to_string(f.c) + ")";
}

BinaryFormClass reduce_form(i64 a, i64 b, i64 c) {
    if (a <= 0 || b * b - 4 * a * c >= 0)
        throw std::invalid_argument("reduce_form: form must be positive definite");
    i64 D = 4 * a * c - b * b;
    for (;;) {
        // normalize: b in (-a, a]
        if (b > a || b <= -a) {
            i64 r = mod_nonneg(b + a, 2 * a) - a;  // (-a, a]
            if (r <= -a) r += 2 * a;
            b = r;
            c = (b * b + D) / (4 * a);
        }
        if (a > c) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        break;
    }
    if (a == c && b < 0) b = -b;
    if (b == -a) b = a;
    return {a, b, c};
}

std::vector<BinaryFormClass> reduced_forms(const QuadField& field) {
    const i64 D = field.D();
    std::vector<BinaryFormClass> out;
    for (i64 b = (D % 2 == 0) ? 0 : 1; b * b * 3 <= D; b += 2) {
        i64 n4 = b * b + D;
        if (n4 % 4 != 0) continue;
        i64 n = n4 / 4;  // = a*c
        for (i64 a = std::max<i64>(b, 1); a * a <= n; ++a) {
            if (n % a != 0) continue;
            i64 c = n / a;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            out.push_back({a, b, c});
            if (b > 0 && b < a && a < c) out.push_back({a, -b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BinaryFormClass principal_form(i64 D) {
    i64 b0 = (D % 2 == 0) ? 0 : 1;
    return {1, b0, (b0 * b0 + D) / 4};
}

// Dirichlet composition, classical algorithm with immediate reduction.
BinaryFormClass compose(const BinaryFormClass& f, const BinaryFormClass& g) {
    if (f.disc() != g.disc()) throw std::invalid_argument("compose: discriminant mismatch");
    const i64 D = -f.disc();
    i64 a1 = f.a, b1 = f.b, c1 = f.c;
    i64 a2 = g.a, b2 = g.b, c2 = g.c;
    if (a1 > a2) {
        std::swap(a1, a2);
        std::swap(b1, b2);
        std::swap(c1, c2);
    }
    (void)c1;
    const i64 s = (b1 + b2) / 2;
    const i64 n = b2 - s;
    i64 y1, d;
    if (a2 % a1 == 0) {
        y1 = 0;
        d = a1;
    } else {
        auto e = xgcd(a2, a1);
        y1 = e.x;
        d = e.g;
    }
    i64 x2, y2, d1;
    if (s % d == 0) {
        x2 = 0;
        y2 = -1;
        d1 = d;
    } else {
        auto e = xgcd(s, d);
        x2 = e.x;
        y2 = -e.y;
        d1 = e.g;
    }
    const i64 v1 = a1 / d1;
    const i64 v2 = a2 / d1;
    const i64 r = mod_nonneg(y1 * y2 * n - x2 * c2, v1);
    const i64 a3 = v1 * v2;
    const i64 b3 = b2 + 2 * v2 * r;
    const i64 c3 = (b3 * b3 + D) / (4 * a3);
    return reduce_form(a3, b3, c3);
}

ClassGroup::ClassGroup(const QuadField& field) : field_(field) {
    elements_ = reduced_forms(field);
    const int h = static_cast<int>(elements_.size());
    identity_ = index_of(principal_form(field.D()));

    table_.assign(h, std::vector<int>(h, -1));
    for (int i = 0; i < h; ++i)
        for (int j = i; j < h; ++j) {
            int k = index_of(compose(elements_[i], elements_[j]));
            table_[i][j] = k;
            table_[j][i] = k;
        }

    // generator peeling: grow an internal direct product subgroup until it fills Cl_E
    std::map<int, std::vector<i64>> span;  // element index -> exponent vector
    span[identity_] = {};
    while (static_cast<int>(span.size()) < h) {
        // element with maximal order in the quotient by the current span
        int best = -1;
        i64 best_ord = 0;
        for (int g = 0; g < h; ++g) {
            if (span.count(g)) continue;
            i64 ord = 1;
            int x = g;
            while (!span.count(x)) {
                x = table_[x][g];
                ++ord;
            }
            if (ord > best_ord) {
                best_ord = ord;
                best = g;
            }
        }
        // adjust the lift so that its absolute order equals its quotient order
        int gen = -1;
        for (const auto& [s, se] : span) {
            int cand = table_[best][s];
            int x = cand;
            for (i64 k = 1; k < best_ord; ++k) x = table_[x][cand];
            if (x == identity_) {
                gen = cand;
                break;
            }
        }
        if (gen < 0) throw std::logic_error("class group peeling failed");
        std::map<int, std::vector<i64>> next;
        int p = identity_;
        for (i64 e = 0; e < best_ord; ++e) {
            for (const auto& [s, se] : span) {
                std::vector<i64> v = se;
                v.push_back(e);
                next[table_[s][p]] = std::move(v);
            }
            p = table_[p][gen];
        }
        if (next.size() != span.size() * static_cast<std::size_t>(best_ord))
            throw std::logic_error("class group peeling: span is not a direct product");
        span = std::move(next);
        cycles_.emplace_back(gen, best_ord);
    }
    exps_.assign(h, {});
    for (auto& [idx, v] : span) exps_[idx] = v;
}

int ClassGroup::index_of(const BinaryFormClass& reduced) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), reduced);
    if (it == elements_.end() || !(*it == reduced))
        throw std::invalid_argument("ClassGroup: form is not a reduced form of this discriminant");
    return static_cast<int>(it - elements_.begin());
}

int ClassGroup::inverse_idx(int i) const { return index_of(elements_[i].inverse()); }

int ClassGroup::power_idx(int i, i64 e) const {
    e = mod_nonneg(e, h());  // element orders divide h
    int acc = identity_;
    int base = i;
    while (e) {
        if (e & 1) acc = table_[acc][base];
        base = table_[base][base];
        e >>= 1;
    }
    return acc;
}

int ClassGroup::order_of(int i) const {
    int x = i;
    int ord = 1;
    while (x != identity_) {
        x = table_[x][i];
        ++ord;
    }
    return ord;
}

int ClassGroup::ideal_class_index(i64 m, i64 b) const {
    const i64 D = field_.D();
    if ((b * b + D) % (4 * m) != 0)
        throw std::invalid_argument("ideal_class_index: b^2 != -D mod 4m");
    return index_of(reduce_form(m, b, (b * b + D) / (4 * m)));
}

std::vector<std::pair<QuadIdeal, int>> ClassGroup::ideals_of_norm(i64 n) const {
    if (n < 1) throw std::invalid_argument("ideals_of_norm: n must be positive");
    const i64 D = field_.D();
    std::vector<std::pair<QuadIdeal, int>> out;
    for (i64 g = 1; g * g <= n; ++g) {
        if (n % (g * g) != 0) continue;
        i64 m = n / (g * g);
        if (m == 1) {
            out.push_back({QuadIdeal{g, 1, (D % 2 == 0) ? 0 : 1}, identity_});
            continue;
        }
        for (i64 b = 0; b < 2 * m; ++b) {
            if ((b * b + D) % (4 * m) == 0)
                out.push_back({QuadIdeal{g, m, b}, ideal_class_index(m, b)});
        }
    }
    return out;
}

PrimeSplitting prime_splitting(const ClassGroup& group, i64 p) {
    if (!is_prime(p)) throw std::invalid_argument("prime_splitting: p must be prime");
    const i64 D = group.field().D();
    int e = group.field().eta(p);
    if (e == -1) return {p, SplitKind::Inert, std::nullopt, std::nullopt};

    i64 bp = -1;
    if (e == 0 || p == 2) {
        // ramified, or p = 2: scan the small solution set directly
        for (i64 b = 0; b < 2 * p; ++b) {
            if ((b * b + D) % (4 * p) == 0) {
                bp = b;
                break;
            }
        }
    } else {
        i64 r = sqrt_mod(mod_nonneg(-D, p), p);
        i64 want = mod_nonneg(D, 2);
        i64 b0 = (r % 2 == want) ? r : p - r;
        i64 b1 = (b0 % 2 == want) ? b0 : b0 + p;
        bp = std::min(b1, mod_nonneg(2 * p - b1, 2 * p));
        if ((bp * bp + D) % (4 * p) != 0) bp = 2 * p - bp;
    }
    if (bp < 0 || (bp * bp + D) % (4 * p) != 0)
        throw std::logic_error("prime_splitting: no b_p found");
    SplitKind kind = (e == 1) ? SplitKind::Split : SplitKind::Ramified;
    return {p, kind, group.ideal_class_index(p, bp), bp};
}

ClassCharacter::ClassCharacter(const ClassGroup* group, std::vector<i64> exponent_vector, int id)
    : group_(group), exps_(std::move(exponent_vector)), id_(id) {}

std::complex<double> ClassCharacter::value(int element_index) const {
    const auto& e = group_->exponents(element_index);
    const auto& cyc = group_->cycle_structure();
    // exact rational multiple of 2*pi
    Rational frac(0);
    for (std::size_t j = 0; j < cyc.size(); ++j)
        frac += Rational(mod_nonneg(exps_[j] * e[j], cyc[j].second), cyc[j].second);
    frac -= Rational(frac.num() / frac.den());  // into [0, 1)
    // evaluate on the canonical angle in [0, 1/2] so that chi and chi-bar
    // produce bit-identical real parts
    double sign = 1.0;
    if (2 * frac.num() > frac.den()) {
        frac = Rational(1) - frac;
        sign = -1.0;
    }
    double t = 2.0 * std::numbers::pi * frac.to_double();
    return {std::cos(t), sign * std::sin(t)};
}

bool ClassCharacter::is_trivial() const {
    return std::all_of(exps_.begin(), exps_.end(), [](i64 v) { return v == 0; });
}

bool ClassCharacter::is_real() const {
    const auto& cyc = group_->cycle_structure();
    for (std::size_t j = 0; j < cyc.size(); ++j)
        if (mod_nonneg(2 * exps_[j], cyc[j].second) != 0) return false;
    return true;
}

int ClassCharacter::conjugate_id() const {
    const auto& cyc = group_->cycle_structure();
    int id = 0;
    for (std::size_t j = 0; j < cyc.size(); ++j) {
        id = static_cast<int>(id * cyc[j].second + mod_nonneg(-exps_[j], cyc[j].second));
    }
    return id;
}

namespace {
// angle of chi^nu at the class of the prime above p, as cos(theta)
double cos_at_prime(const ClassCharacter& chi, const PrimeSplitting& ps, i64 nu) {
    const ClassGroup& G = chi.group();
    int cls = G.power_idx(*ps.ideal_class, nu);
    return chi.value(cls).real();
}

double chebyshev_u(double c, i64 k) {
    // U_k with U_0 = 1, U_1 = 2c: equals sum_{j=0..k} e^{i(2j-k)theta}
    if (k == 0) return 1.0;
    double um = 1.0, u = 2.0 * c;
    for (i64 i = 2; i <= k; ++i) {
        double next = 2.0 * c * u - um;
        um = u;
        u = next;
    }
    return u;
}
}  // namespace

double ClassCharacter::a_chi_prime(i64 p, i64 nu) const {
    PrimeSplitting ps = prime_splitting(*group_, p);
    switch (ps.kind) {
        case SplitKind::Inert:
            return 0.0;
        case SplitKind::Ramified: {
            int cls = group_->power_idx(*ps.ideal_class, nu);
            return value(cls).real();  // +-1
        }
        case SplitKind::Split:
            return 2.0 * cos_at_prime(*this, ps, nu);
    }
    return 0.0;
}

double ClassCharacter::a_chi(i64 n) const {
    if (n < 1) throw std::invalid_argument("a_chi: n must be positive");
    double result = 1.0;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        PrimeSplitting ps = prime_splitting(*group_, p);
        switch (ps.kind) {
            case SplitKind::Inert:
                if (k % 2 != 0) return 0.0;
                break;
            case SplitKind::Ramified: {
                int cls = group_->power_idx(*ps.ideal_class, k);
                result *= value(cls).real();
                break;
            }
            case SplitKind::Split:
                result *= chebyshev_u(cos_at_prime(*this, ps, 1), k);
                break;
        }
    }
    if (n > 1) {
        PrimeSplitting ps = prime_splitting(*group_, n);
        switch (ps.kind) {
            case SplitKind::Inert:
                return 0.0;
            case SplitKind::Ramified:
                result *= value(*ps.ideal_class).real();
                break;
            case SplitKind::Split:
                result *= 2.0 * cos_at_prime(*this, ps, 1);
                break;
        }
    }
    return result;
}

double ClassCharacter::a_chi_completely_multiplicative(i64 n, i64 nu) const {
    if (n < 1) throw std::invalid_argument("n must be positive");
    double result = 1.0;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        double ap = a_chi_prime(p, nu);
        for (int t = 0; t < k; ++t) result *= ap;
    }
    if (n > 1) result *= a_chi_prime(n, nu);
    return result;
}

int character_power_id(const ClassGroup& group, int id, i64 e) {
    const auto& cyc = group.cycle_structure();
    std::vector<i64> v(cyc.size(), 0);
    i64 rest = id;
    for (std::size_t j = cyc.size(); j-- > 0;) {
        v[j] = rest % cyc[j].second;
        rest /= cyc[j].second;
    }
    int out = 0;
    for (std::size_t j = 0; j < cyc.size(); ++j)
        out = static_cast<int>(out * cyc[j].second + mod_nonneg(v[j] * e, cyc[j].second));
    return out;
}

std::vector<ClassCharacter> characters(const ClassGroup& group) {
    const auto& cyc = group.cycle_structure();
    std::vector<ClassCharacter> out;
    out.reserve(static_cast<std::size_t>(group.h()));
    for (i64 id = 0; id < group.h(); ++id) {
        std::vector<i64> v(cyc.size(), 0);
        i64 rest = id;
        for (std::size_t j = cyc.size(); j-- > 0;) {
            v[j] = rest % cyc[j].second;
            rest /= cyc[j].second;
        }
        out.emplace_back(&group, std::move(v), static_cast<int>(id));
    }
    return out;
}

}  // namespace toriclab
