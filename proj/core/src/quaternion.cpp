#include "toriclab/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace toriclab {

bool Quaternion::is_zero() const {
    return c[0].is_zero() && c[1].is_zero() && c[2].is_zero() && c[3].is_zero();
}

Quaternion operator+(const Quaternion& x, const Quaternion& y) {
    Quaternion r;
    for (int m = 0; m < 4; ++m) r.c[static_cast<std::size_t>(m)] = x.c[static_cast<std::size_t>(m)] + y.c[static_cast<std::size_t>(m)];
    return r;
}

Quaternion operator-(const Quaternion& x, const Quaternion& y) {
    Quaternion r;
    for (int m = 0; m < 4; ++m) r.c[static_cast<std::size_t>(m)] = x.c[static_cast<std::size_t>(m)] - y.c[static_cast<std::size_t>(m)];
    return r;
}

Quaternion operator*(const Rational& r, const Quaternion& x) {
    Quaternion y;
    for (int m = 0; m < 4; ++m) y.c[static_cast<std::size_t>(m)] = r * x.c[static_cast<std::size_t>(m)];
    return y;
}

Quaternion mul(const QuatAlgebra& A, const Quaternion& x, const Quaternion& y) {
    const Rational &w1 = x.c[0], &x1 = x.c[1], &y1 = x.c[2], &z1 = x.c[3];
    const Rational &w2 = y.c[0], &x2 = y.c[1], &y2 = y.c[2], &z2 = y.c[3];
    const Rational a(A.a), b(A.b), ab(A.a * A.b);
    Quaternion r;
    r.c[0] = w1 * w2 - a * x1 * x2 - b * y1 * y2 - ab * z1 * z2;
    r.c[1] = w1 * x2 + x1 * w2 + b * (y1 * z2 - z1 * y2);
    r.c[2] = w1 * y2 + y1 * w2 + a * (z1 * x2 - x1 * z2);
    r.c[3] = w1 * z2 + z1 * w2 + (x1 * y2 - x2 * y1);
    return r;
}

Quaternion conjugate(const Quaternion& x) {
    return {{x.c[0], -x.c[1], -x.c[2], -x.c[3]}};
}

Rational nrd(const QuatAlgebra& A, const Quaternion& x) {
    return x.c[0] * x.c[0] + Rational(A.a) * x.c[1] * x.c[1] + Rational(A.b) * x.c[2] * x.c[2] +
           Rational(A.a * A.b) * x.c[3] * x.c[3];
}

Rational trd(const Quaternion& x) { return Rational(2) * x.c[0]; }

Quaternion inverse(const QuatAlgebra& A, const Quaternion& x) {
    Rational n = nrd(A, x);
    if (n.is_zero()) throw std::domain_error("quaternion inverse of zero");
    Quaternion r = conjugate(x);
    for (auto& v : r.c) v /= n;
    return r;
}

QuatAlgebra ramified_algebra(i64 p) {
    if (!is_prime(p)) throw std::invalid_argument("ramified_algebra: p must be prime");
    if (p == 2) return {1, 1, 2};
    if (p % 4 == 3) return {1, p, p};
    if (p % 8 == 5) return {2, p, p};
    // p = 1 mod 8: auxiliary q = 3 mod 4 with (q|p) = -1
    for (i64 q = 3;; q += 4) {
        if (is_prime(q) && kronecker(q, p) == -1) return {q, p, p};
    }
}

// ---------------------------------------------------------------------------
// lattices

namespace {

using Row = std::array<i64, 4>;

void row_sub(Row& r, const Row& s, i64 q) {
    for (int m = 0; m < 4; ++m)
        r[static_cast<std::size_t>(m)] = checked_i64(static_cast<i128>(r[static_cast<std::size_t>(m)]) - static_cast<i128>(q) * s[static_cast<std::size_t>(m)]);
}

// Row-style HNF: returns 4 echelon rows (pivot of row r in column r), pivots
// positive, entries above each pivot reduced into [0, pivot).
std::array<Row, 4> hnf4(std::vector<Row> work) {
    std::array<Row, 4> basis{};
    int r = 0;
    for (int col = 0; col < 4; ++col) {
        for (;;) {
            int best = -1;
            for (std::size_t t = 0; t < work.size(); ++t) {
                if (work[t][static_cast<std::size_t>(col)] == 0) continue;
                if (best < 0 || std::llabs(work[t][static_cast<std::size_t>(col)]) < std::llabs(work[static_cast<std::size_t>(best)][static_cast<std::size_t>(col)]))
                    best = static_cast<int>(t);
            }
            if (best < 0) break;
            bool done = true;
            for (std::size_t t = 0; t < work.size(); ++t) {
                if (static_cast<int>(t) == best || work[t][static_cast<std::size_t>(col)] == 0) continue;
                i64 q = work[t][static_cast<std::size_t>(col)] / work[static_cast<std::size_t>(best)][static_cast<std::size_t>(col)];
                row_sub(work[t], work[static_cast<std::size_t>(best)], q);
                if (work[t][static_cast<std::size_t>(col)] != 0) done = false;
            }
            if (done) {
                basis[static_cast<std::size_t>(r)] = work[static_cast<std::size_t>(best)];
                work.erase(work.begin() + best);
                ++r;
                break;
            }
        }
    }
    if (r != 4) throw std::invalid_argument("QuatLattice: generators do not span a full lattice");
    for (int t = 0; t < 4; ++t) {
        if (basis[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] < 0)
            for (auto& v : basis[static_cast<std::size_t>(t)]) v = -v;
    }
    // reduce above-pivot entries in ascending pivot order: row t has zeros in
    // columns < t, so later steps cannot disturb the columns already reduced
    for (int t = 1; t < 4; ++t) {
        for (int s = 0; s < t; ++s) {
            i64 piv = basis[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)];
            i64 q = basis[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
            i64 f = (q >= 0) ? q / piv : -((-q + piv - 1) / piv);
            if (f != 0) row_sub(basis[static_cast<std::size_t>(s)], basis[static_cast<std::size_t>(t)], f);
        }
    }
    return basis;
}

}  // namespace

QuatLattice::QuatLattice(const QuatAlgebra& alg, std::vector<Quaternion> generators) : alg_(alg) {
    i64 den = 1;
    for (const auto& g : generators)
        for (const auto& v : g.c) den = std::lcm(den, v.den());
    std::vector<Row> rows;
    rows.reserve(generators.size());
    for (const auto& g : generators) {
        Row r{};
        bool zero = true;
        for (int m = 0; m < 4; ++m) {
            r[static_cast<std::size_t>(m)] = checked_i64(static_cast<i128>(g.c[static_cast<std::size_t>(m)].num()) * (den / g.c[static_cast<std::size_t>(m)].den()));
            if (r[static_cast<std::size_t>(m)] != 0) zero = false;
        }
        if (!zero) rows.push_back(r);
    }
    den_ = den;
    canonicalize(std::move(rows));
}

void QuatLattice::canonicalize(std::vector<Row> gens) {
    rows_ = hnf4(std::move(gens));
    i64 g = den_;
    for (const auto& r : rows_)
        for (i64 v : r) g = std::gcd(g, std::llabs(v));
    if (g > 1) {
        den_ /= g;
        for (auto& r : rows_)
            for (auto& v : r) v /= g;
    }
}

Quaternion QuatLattice::basis(int i) const {
    Quaternion q;
    for (int m = 0; m < 4; ++m) q.c[static_cast<std::size_t>(m)] = Rational(rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)], den_);
    return q;
}

std::array<Quaternion, 4> QuatLattice::basis() const {
    return {basis(0), basis(1), basis(2), basis(3)};
}

std::array<Rational, 4> QuatLattice::coordinates(const Quaternion& q) const {
    // solve c * rows = q * den by forward substitution along pivot columns
    std::array<Rational, 4> t;
    std::array<Rational, 4> coeff;
    for (int m = 0; m < 4; ++m) t[static_cast<std::size_t>(m)] = q.c[static_cast<std::size_t>(m)] * Rational(den_);
    for (int col = 0; col < 4; ++col) {
        Rational c = t[static_cast<std::size_t>(col)] / Rational(rows_[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)]);
        coeff[static_cast<std::size_t>(col)] = c;
        for (int m = col; m < 4; ++m)
            t[static_cast<std::size_t>(m)] -= c * Rational(rows_[static_cast<std::size_t>(col)][static_cast<std::size_t>(m)]);
    }
    return coeff;
}

bool QuatLattice::contains(const Quaternion& q) const {
    for (const auto& c : coordinates(q))
        if (!c.is_integer()) return false;
    return true;
}

Rational QuatLattice::det() const {
    i128 p = 1;
    for (int m = 0; m < 4; ++m) p *= rows_[static_cast<std::size_t>(m)][static_cast<std::size_t>(m)];
    Rational d = Rational(checked_i64(p));
    for (int m = 0; m < 4; ++m) d /= Rational(den_);
    return d;
}

QuatLattice QuatLattice::product(const QuatLattice& other) const {
    std::vector<Quaternion> gens;
    gens.reserve(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) gens.push_back(mul(alg_, basis(i), other.basis(j)));
    return {alg_, std::move(gens)};
}

QuatLattice QuatLattice::conjugate_lattice() const {
    std::vector<Quaternion> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(conjugate(basis(i)));
    return {alg_, std::move(gens)};
}

QuatLattice QuatLattice::sum(const QuatLattice& other) const {
    std::vector<Quaternion> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(basis(i));
    for (int i = 0; i < 4; ++i) gens.push_back(other.basis(i));
    return {alg_, std::move(gens)};
}

QuatLattice QuatLattice::scale(const Rational& r) const {
    std::vector<Quaternion> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(r * basis(i));
    return {alg_, std::move(gens)};
}

QuatLattice QuatLattice::left_multiple(const Quaternion& q) const {
    std::vector<Quaternion> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(mul(alg_, q, basis(i)));
    return {alg_, std::move(gens)};
}

QuatLattice QuatLattice::right_multiple(const Quaternion& q) const {
    std::vector<Quaternion> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(mul(alg_, basis(i), q));
    return {alg_, std::move(gens)};
}

QuatLattice QuatLattice::intersect(const QuatLattice& other) const {
    const i64 den = std::lcm(den_, other.den_);
    std::array<Row, 8> stack{};
    std::array<std::array<i64, 8>, 8> aug{};
    for (int t = 0; t < 8; ++t) aug[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] = 1;
    for (int t = 0; t < 4; ++t)
        for (int m = 0; m < 4; ++m) {
            stack[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)] = checked_i64(static_cast<i128>(rows_[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)]) * (den / den_));
            stack[static_cast<std::size_t>(t + 4)][static_cast<std::size_t>(m)] = checked_i64(-static_cast<i128>(other.rows_[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)]) * (den / other.den_));
        }
    // integer elimination over the stacked matrix, tracking row operations
    auto combined_sub = [&](int t, int s, i64 q) {
        for (int m = 0; m < 4; ++m)
            stack[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)] = checked_i64(static_cast<i128>(stack[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)]) - static_cast<i128>(q) * stack[static_cast<std::size_t>(s)][static_cast<std::size_t>(m)]);
        for (int m = 0; m < 8; ++m)
            aug[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)] = checked_i64(static_cast<i128>(aug[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)]) - static_cast<i128>(q) * aug[static_cast<std::size_t>(s)][static_cast<std::size_t>(m)]);
    };
    std::array<bool, 8> used{};
    for (int col = 0; col < 4; ++col) {
        for (;;) {
            int best = -1;
            for (int t = 0; t < 8; ++t) {
                if (used[static_cast<std::size_t>(t)] || stack[static_cast<std::size_t>(t)][static_cast<std::size_t>(col)] == 0) continue;
                if (best < 0 || std::llabs(stack[static_cast<std::size_t>(t)][static_cast<std::size_t>(col)]) < std::llabs(stack[static_cast<std::size_t>(best)][static_cast<std::size_t>(col)]))
                    best = t;
            }
            if (best < 0) break;
            bool done = true;
            for (int t = 0; t < 8; ++t) {
                if (t == best || used[static_cast<std::size_t>(t)] || stack[static_cast<std::size_t>(t)][static_cast<std::size_t>(col)] == 0) continue;
                i64 q = stack[static_cast<std::size_t>(t)][static_cast<std::size_t>(col)] / stack[static_cast<std::size_t>(best)][static_cast<std::size_t>(col)];
                combined_sub(t, best, q);
                if (stack[static_cast<std::size_t>(t)][static_cast<std::size_t>(col)] != 0) done = false;
            }
            if (done) {
                used[static_cast<std::size_t>(best)] = true;
                break;
            }
        }
    }
    // rows with vanished stack part encode kernel elements (u | v), u M1 = v M2
    std::vector<Quaternion> gens;
    for (int t = 0; t < 8; ++t) {
        if (used[static_cast<std::size_t>(t)]) continue;
        bool zero = true;
        for (int m = 0; m < 4; ++m)
            if (stack[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)] != 0) zero = false;
        if (!zero) throw std::logic_error("intersect: nonzero non-pivot row");
        Quaternion v = Quaternion::zero();
        for (int s = 0; s < 4; ++s) {
            Rational coeff(aug[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)]);
            if (!coeff.is_zero()) v = v + coeff * basis(s);
        }
        gens.push_back(v);
    }
    if (gens.size() != 4) throw std::logic_error("intersect: kernel rank mismatch");
    return {alg_, std::move(gens)};
}

QuatLattice QuatLattice::right_order() const {
    QuatLattice acc = left_multiple(inverse(alg_, basis(0)));
    for (int i = 1; i < 4; ++i) acc = acc.intersect(left_multiple(inverse(alg_, basis(i))));
    return acc;
}

QuatLattice QuatLattice::left_order() const {
    QuatLattice acc = right_multiple(inverse(alg_, basis(0)));
    for (int i = 1; i < 4; ++i) acc = acc.intersect(right_multiple(inverse(alg_, basis(i))));
    return acc;
}

bool QuatLattice::closed_under_multiplication() const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!contains(mul(alg_, basis(i), basis(j)))) return false;
    return true;
}

std::vector<Quaternion> QuatLattice::vectors_of_norm(const Rational& target) const {
    std::vector<Quaternion> out;
    if (target.num() <= 0) return out;
    const double t = target.to_double();
    const double weights[4] = {1.0, double(alg_.a), double(alg_.b), double(alg_.a) * double(alg_.b)};
    double g[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int m = 0; m < 4; ++m)
                s += weights[m] * double(rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)]) * double(rows_[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)]);
            g[i][j] = s / (double(den_) * double(den_));
        }
    // LDL^T decomposition
    double l[4][4] = {};
    double d[4] = {};
    for (int j = 0; j < 4; ++j) {
        double s = g[j][j];
        for (int k = 0; k < j; ++k) s -= l[j][k] * l[j][k] * d[k];
        d[j] = s;
        l[j][j] = 1.0;
        for (int i = j + 1; i < 4; ++i) {
            double v = g[i][j];
            for (int k = 0; k < j; ++k) v -= l[i][k] * l[j][k] * d[k];
            l[i][j] = v / d[j];
        }
    }
    const double bound = t + 0.4999;
    std::array<i64, 4> c{};
    // enumerate coordinates from the last index down
    auto rec = [&](auto&& self, int level, double remaining) -> void {
        if (level < 0) {
            Quaternion v = Quaternion::zero();
            for (int m = 0; m < 4; ++m)
                if (c[static_cast<std::size_t>(m)] != 0) v = v + Rational(c[static_cast<std::size_t>(m)]) * basis(m);
            if (!v.is_zero() && nrd(alg_, v) == target) out.push_back(v);
            return;
        }
        double off = 0;
        for (int i = level + 1; i < 4; ++i) off += l[i][level] * double(c[static_cast<std::size_t>(i)]);
        double radius = std::sqrt(std::max(remaining, 0.0) / d[level]);
        i64 lo = static_cast<i64>(std::floor(-off - radius - 1e-9));
        i64 hi = static_cast<i64>(std::ceil(-off + radius + 1e-9));
        for (i64 v = lo; v <= hi; ++v) {
            double term = d[level] * (double(v) + off) * (double(v) + off);
            if (term > remaining + 1e-9) continue;
            c[static_cast<std::size_t>(level)] = v;
            self(self, level - 1, remaining - term);
        }
        c[static_cast<std::size_t>(level)] = 0;
    };
    rec(rec, 3, bound);
    std::sort(out.begin(), out.end(), [](const Quaternion& x, const Quaternion& y) {
        for (int m = 0; m < 4; ++m) {
            if (x.c[static_cast<std::size_t>(m)] != y.c[static_cast<std::size_t>(m)]) return x.c[static_cast<std::size_t>(m)] < y.c[static_cast<std::size_t>(m)];
        }
        return false;
    });
    return out;
}

i64 QuatLattice::count_vectors_of_norm(const Rational& target) const {
    return static_cast<i64>(vectors_of_norm(target).size());
}

// ---------------------------------------------------------------------------
// orders

i64 reduced_discriminant(const QuatLattice& order) {
    const QuatAlgebra& A = order.algebra();
    std::array<std::array<Rational, 4>, 4> t;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = trd(mul(A, order.basis(i), conjugate(order.basis(j))));
    // Gaussian elimination determinant
    Rational det(1);
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (!t[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::logic_error("degenerate trace form");
        if (piv != col) {
            std::swap(t[static_cast<std::size_t>(piv)], t[static_cast<std::size_t>(col)]);
            det = -det;
        }
        det *= t[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        for (int r = col + 1; r < 4; ++r) {
            Rational f = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / t[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            for (int m = col; m < 4; ++m)
                t[static_cast<std::size_t>(r)][static_cast<std::size_t>(m)] -= f * t[static_cast<std::size_t>(col)][static_cast<std::size_t>(m)];
        }
    }
    if (det.num() < 0) det = -det;
    if (!det.is_integer()) throw std::logic_error("trace form determinant is not integral");
    i64 n = det.num();
    i64 r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(n))));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (r * r != n) throw std::logic_error("trace form determinant is not a perfect square");
    return r;
}

MaximalOrder::MaximalOrder(QuatLattice lattice, i64 p) : lattice_(std::move(lattice)), p_(p) {
    if (!lattice_.contains(Quaternion::one())) throw std::logic_error("order does not contain 1");
    if (!lattice_.closed_under_multiplication()) throw std::logic_error("order is not closed");
    if (reduced_discriminant(lattice_) != p) throw std::logic_error("order is not maximal");
    units_ = lattice_.vectors_of_norm(Rational(1));

    // trace-zero sublattice: kernel of c -> sum c_m trd(b_m)
    const auto b = lattice_.basis();
    std::array<i64, 4> tr{};
    i64 den = 1;
    for (int m = 0; m < 4; ++m) den = std::lcm(den, trd(b[static_cast<std::size_t>(m)]).den());
    for (int m = 0; m < 4; ++m) {
        Rational v = trd(b[static_cast<std::size_t>(m)]) * Rational(den);
        tr[static_cast<std::size_t>(m)] = v.num();
    }
    // integer kernel via tracked elimination on a single column
    std::array<std::array<i64, 4>, 4> aug{};
    for (int m = 0; m < 4; ++m) aug[static_cast<std::size_t>(m)][static_cast<std::size_t>(m)] = 1;
    std::array<bool, 4> used{};
    for (;;) {
        int best = -1;
        for (int m = 0; m < 4; ++m)
            if (!used[static_cast<std::size_t>(m)] && tr[static_cast<std::size_t>(m)] != 0 && (best < 0 || std::llabs(tr[static_cast<std::size_t>(m)]) < std::llabs(tr[static_cast<std::size_t>(best)])))
                best = m;
        if (best < 0) break;
        bool done = true;
        for (int m = 0; m < 4; ++m) {
            if (m == best || used[static_cast<std::size_t>(m)] || tr[static_cast<std::size_t>(m)] == 0) continue;
            i64 q = tr[static_cast<std::size_t>(m)] / tr[static_cast<std::size_t>(best)];
            tr[static_cast<std::size_t>(m)] -= q * tr[static_cast<std::size_t>(best)];
            for (int s = 0; s < 4; ++s)
                aug[static_cast<std::size_t>(m)][static_cast<std::size_t>(s)] = checked_i64(static_cast<i128>(aug[static_cast<std::size_t>(m)][static_cast<std::size_t>(s)]) - static_cast<i128>(q) * aug[static_cast<std::size_t>(best)][static_cast<std::size_t>(s)]);
            if (tr[static_cast<std::size_t>(m)] != 0) done = false;
        }
        if (done) {
            used[static_cast<std::size_t>(best)] = true;
            break;
        }
    }
    int idx = 0;
    for (int m = 0; m < 4 && idx < 3; ++m) {
        if (used[static_cast<std::size_t>(m)] || tr[static_cast<std::size_t>(m)] != 0) continue;
        Quaternion v = Quaternion::zero();
        for (int s = 0; s < 4; ++s)
            if (aug[static_cast<std::size_t>(m)][static_cast<std::size_t>(s)] != 0)
                v = v + Rational(aug[static_cast<std::size_t>(m)][static_cast<std::size_t>(s)]) * b[static_cast<std::size_t>(s)];
        tz_basis_[static_cast<std::size_t>(idx++)] = v;
    }
    if (idx != 3) throw std::logic_error("trace-zero sublattice has wrong rank");

    if (p == 2) {
        // pin the basis i, j, k (the classical sphere coordinate convention)
        Quaternion qi = {{Rational(0), Rational(1), Rational(0), Rational(0)}};
        Quaternion qj = {{Rational(0), Rational(0), Rational(1), Rational(0)}};
        Quaternion qk = {{Rational(0), Rational(0), Rational(0), Rational(1)}};
        tz_basis_ = {qi, qj, qk};
    }
}

MaximalOrder MaximalOrder::create(i64 p) {
    QuatAlgebra A = ramified_algebra(p);
    const Quaternion one = Quaternion::one();
    const Quaternion qi = {{Rational(0), Rational(1), Rational(0), Rational(0)}};
    const Quaternion qj = {{Rational(0), Rational(0), Rational(1), Rational(0)}};
    const Quaternion qk = {{Rational(0), Rational(0), Rational(0), Rational(1)}};
    std::vector<Quaternion> gens = {one, qi, qj, qk};
    if (p == 2) gens.push_back({{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}});
    QuatLattice L(A, gens);

    // saturate at the primes dividing discrd/p until the order is maximal
    for (;;) {
        i64 disc = reduced_discriminant(L);
        if (disc == p) break;
        if (disc % p != 0) throw std::logic_error("saturation lost the ramified prime");
        i64 rest = disc / p;
        bool enlarged = false;
        for (i64 ell = 2; ell <= rest && !enlarged; ++ell) {
            if (rest % ell != 0 || !is_prime(ell)) continue;
            std::array<i64, 4> e{};
            for (e[0] = 0; e[0] < ell && !enlarged; ++e[0])
                for (e[1] = 0; e[1] < ell && !enlarged; ++e[1])
                    for (e[2] = 0; e[2] < ell && !enlarged; ++e[2])
                        for (e[3] = 0; e[3] < ell && !enlarged; ++e[3]) {
                            if (e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0) continue;
                            Quaternion x = Quaternion::zero();
                            for (int m = 0; m < 4; ++m)
                                if (e[static_cast<std::size_t>(m)] != 0)
                                    x = x + Rational(e[static_cast<std::size_t>(m)], ell) * L.basis(m);
                            if (L.contains(x)) continue;
                            if (!trd(x).is_integer() || !nrd(A, x).is_integer()) continue;
                            std::vector<Quaternion> g2 = {L.basis(0), L.basis(1), L.basis(2), L.basis(3), x};
                            QuatLattice L2(A, g2);
                            if (!L2.closed_under_multiplication()) continue;
                            L = L2;
                            enlarged = true;
                        }
        }
        if (!enlarged) throw std::logic_error("order saturation failed to reach a maximal order");
    }
    return MaximalOrder(L, p);
}

MaximalOrder MaximalOrder::adopt(const QuatLattice& lattice, i64 p) { return MaximalOrder(lattice, p); }

TernaryForm MaximalOrder::trace_zero_form() const {
    const QuatAlgebra& A = algebra();
    std::array<Rational, 3> diag;
    std::array<Rational, 3> cross;  // (12), (13), (23)
    for (int m = 0; m < 3; ++m) diag[static_cast<std::size_t>(m)] = nrd(A, tz_basis_[static_cast<std::size_t>(m)]);
    cross[0] = trd(mul(A, tz_basis_[0], conjugate(tz_basis_[1])));
    cross[1] = trd(mul(A, tz_basis_[0], conjugate(tz_basis_[2])));
    cross[2] = trd(mul(A, tz_basis_[1], conjugate(tz_basis_[2])));
    for (const auto& v : diag)
        if (!v.is_integer()) throw std::logic_error("trace-zero form is not integral");
    for (const auto& v : cross)
        if (!v.is_integer()) throw std::logic_error("trace-zero form has non-integral polar values");
    return {diag[0].num(), diag[1].num(), diag[2].num(), cross[0].num(), cross[1].num(), cross[2].num()};
}

Quaternion MaximalOrder::from_trace_zero_coords(const Vec3& x) const {
    Quaternion v = Quaternion::zero();
    for (int m = 0; m < 3; ++m)
        if (x[static_cast<std::size_t>(m)] != 0) v = v + Rational(x[static_cast<std::size_t>(m)]) * tz_basis_[static_cast<std::size_t>(m)];
    return v;
}

Vec3 MaximalOrder::to_trace_zero_coords(const Quaternion& q) const {
    if (!trd(q).is_zero()) throw std::invalid_argument("quaternion is not trace-zero");
    // solve x1 f1 + x2 f2 + x3 f3 = q over the rationals, require integers
    std::array<std::array<Rational, 5>, 4> m{};
    for (int r = 0; r < 4; ++r) {
        for (int s = 0; s < 3; ++s) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = tz_basis_[static_cast<std::size_t>(s)].c[static_cast<std::size_t>(r)];
        m[static_cast<std::size_t>(r)][3] = q.c[static_cast<std::size_t>(r)];
    }
    // Gaussian elimination on the 4x3 system
    std::array<int, 3> pivot_row{-1, -1, -1};
    int rank = 0;
    for (int col = 0; col < 3; ++col) {
        int piv = -1;
        for (int r = 0; r < 4; ++r) {
            bool taken = false;
            for (int c2 = 0; c2 < col; ++c2)
                if (pivot_row[static_cast<std::size_t>(c2)] == r) taken = true;
            if (!taken && !m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv < 0) throw std::logic_error("trace-zero basis is degenerate");
        pivot_row[static_cast<std::size_t>(col)] = piv;
        ++rank;
        for (int r = 0; r < 4; ++r) {
            if (r == piv || m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) continue;
            Rational f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / m[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)];
            for (int c2 = col; c2 < 4; ++c2)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c2)] -= f * m[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c2)];
        }
    }
    Vec3 x{};
    for (int col = 0; col < 3; ++col) {
        int r = pivot_row[static_cast<std::size_t>(col)];
        Rational v = m[static_cast<std::size_t>(r)][3] / m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
        if (!v.is_integer()) throw std::invalid_argument("quaternion is not in the trace-zero lattice");
        x[static_cast<std::size_t>(col)] = v.num();
    }
    // consistency of the remaining row
    if (from_trace_zero_coords(x) == q) return x;
    throw std::invalid_argument("quaternion is not in the trace-zero lattice");
}

}  // namespace toriclab
