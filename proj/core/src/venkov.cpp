#include "toriclab/venkov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace toriclab {

namespace {

i64 squarefree_core(const QuadField& field) {
    return (field.D() % 4 == 0) ? field.D() / 4 : field.D();
}

// 2-dimensional rational lattice as a canonical pair basis, for the
// optimality comparison iota(E) cap O = iota(O_E)
struct Lattice2 {
    // basis rows (x, y) over common denominator
    std::array<std::array<i64, 2>, 2> rows;
    i64 den;
};

Lattice2 hnf2(std::vector<std::array<i64, 2>> gens, i64 den) {
    // reduce y-column first, then x
    std::array<i64, 2> w{0, 0};
    for (auto& t : gens) {
        while (t[1] != 0) {
            if (w[1] == 0) {
                std::swap(w, t);
                continue;
            }
            i64 q = t[1] / w[1];
            t[0] -= q * w[0];
            t[1] -= q * w[1];
            if (t[1] != 0) std::swap(w, t);
        }
    }
    if (w[1] < 0) {
        w[0] = -w[0];
        w[1] = -w[1];
    }
    i64 e = 0;
    for (const auto& t : gens) e = std::gcd(e, std::llabs(t[0]));
    if (e == 0 || w[1] == 0) throw std::logic_error("hnf2: rank deficient");
    w[0] = mod_nonneg(w[0], e);
    i64 g = std::gcd(std::gcd(e, w[0]), std::gcd(w[1], den));
    Lattice2 out;
    out.rows = {{{e / g, 0}, {w[0] / g, w[1] / g}}};
    out.den = den / g;
    return out;
}

bool lattice2_equal(const Lattice2& a, const Lattice2& b) {
    return a.rows == b.rows && a.den == b.den;
}

}  // namespace

Embedding::Embedding(const MaximalOrder& order, const QuadField& field, const Vec3& base_point)
    : order_(&order), field_(field), base_(base_point) {
    d_ = squarefree_core(field);
    xi_ = order.from_trace_zero_coords(base_point);
    if (std::gcd(std::gcd(std::llabs(base_point[0]), std::llabs(base_point[1])), std::llabs(base_point[2])) != 1)
        throw std::invalid_argument("Embedding: base point must be primitive");
    if (nrd(order.algebra(), xi_) != Rational(d_))
        throw std::invalid_argument("Embedding: base point norm must equal the squarefree core d");
    check_optimal();
}

Quaternion Embedding::iota(const Rational& u, const Rational& v) const {
    Quaternion r = v * xi_;
    r.c[0] += u;
    return r;
}

void Embedding::check_optimal() const {
    const QuatLattice& L = order_->lattice();
    // iota(O_E) inside O
    const bool odd_disc = (field_.D() % 2 == 1);
    Quaternion omega = odd_disc ? iota(Rational(1, 2), Rational(1, 2)) : xi_;
    if (!L.contains(omega)) throw std::invalid_argument("Embedding: not optimal (omega misses the order)");

    // K = {(u, v) : u + v xi in O}; elements have denominator at most 2 (the
    // trace bounds u, the norm and squarefreeness of d bound v), so work with
    // 2K = {(s, t) integral : (s + t xi)/2 in O} and compare with 2 O_E.
    auto c1 = L.coordinates(Quaternion::one());
    auto c2 = L.coordinates(xi_);
    i64 m = 1;
    for (int t = 0; t < 4; ++t) m = std::lcm(m, std::lcm(c1[static_cast<std::size_t>(t)].den(), c2[static_cast<std::size_t>(t)].den()));
    m *= 2;
    std::array<i64, 4> a1{}, a2{};
    for (int t = 0; t < 4; ++t) {
        a1[static_cast<std::size_t>(t)] = c1[static_cast<std::size_t>(t)].num() * (m / c1[static_cast<std::size_t>(t)].den());
        a2[static_cast<std::size_t>(t)] = c2[static_cast<std::size_t>(t)].num() * (m / c2[static_cast<std::size_t>(t)].den());
    }
    // (s a1 + t a2)/(2m) integral <=> s a1 + t a2 = 0 mod 2m
    std::vector<std::array<i64, 2>> gens = {{2 * m, 0}, {0, 2 * m}};
    for (i64 s = 0; s < 2 * m; ++s)
        for (i64 t = 0; t < 2 * m; ++t) {
            bool ok = true;
            for (int r = 0; r < 4 && ok; ++r)
                if (mod_nonneg(s * a1[static_cast<std::size_t>(r)] + t * a2[static_cast<std::size_t>(r)], 2 * m) != 0) ok = false;
            if (ok && (s | t)) gens.push_back({s, t});
        }
    Lattice2 K2 = hnf2(std::move(gens), 1);  // = 2K, integral
    Lattice2 OE2 = odd_disc ? hnf2({{2, 0}, {1, 1}}, 1) : hnf2({{2, 0}, {0, 2}}, 1);
    if (!lattice2_equal(K2, OE2)) throw std::invalid_argument("Embedding: not optimal (index above O_E)");
}

std::optional<Embedding> Embedding::find(const MaximalOrder& order, const QuadField& field) {
    i64 d = squarefree_core(field);
    auto reps = enumerate_representations(order.trace_zero_form(), d);
    for (const Vec3& x : reps.points) {
        try {
            return Embedding(order, field, x);
        } catch (const std::invalid_argument&) {
        }
    }
    return std::nullopt;
}

RightIdeal ideal_from_class(const Embedding& emb, const BinaryFormClass& cls) {
    const i64 D = emb.field().D();
    if (cls.disc() != -D) throw std::invalid_argument("ideal_from_class: discriminant mismatch");
    const i64 p = emb.order().discriminant();

    // find an equivalent form (A, B, C) with gcd(A, 2p) = 1 via represented values
    i64 A = 0, B = 0;
    bool found = false;
    const i64 scan = 2 * p + 4;
    for (i64 s = 0; s <= 2 * scan && !found; ++s) {
        for (i64 x = -scan; x <= scan && !found; ++x) {
            for (i64 y = -scan; y <= scan && !found; ++y) {
                if (std::llabs(x) + std::llabs(y) != s || std::gcd(std::llabs(x), std::llabs(y)) != 1) continue;
                i64 val = cls.a * x * x + cls.b * x * y + cls.c * y * y;
                if (std::gcd(val, 2 * p) != 1) continue;
                auto e = xgcd(x, y);  // x*e.x + y*e.y = 1
                i64 u = -e.y, v = e.x;  // det [[x, u], [y, v]] = 1
                A = val;
                B = 2 * cls.a * x * u + cls.b * (x * v + u * y) + 2 * cls.c * y * v;
                found = true;
            }
        }
    }
    if (!found)
        throw std::invalid_argument("ideal_from_class: no representative coprime to 2p within scan bound");
    if ((B * B + D) % (4 * A) != 0) throw std::logic_error("ideal_from_class: bad transaction");

    // iota(a)O with a = Z A + Z (-B + sqrt(-D))/2
    const Rational half(1, 2);
    const i64 sqrt_scale = (D % 4 == 0) ? 2 : 1;  // sqrt(-D) = sqrt_scale * sqrt(-d)
    Quaternion w = emb.iota(Rational(-B, 2), Rational(sqrt_scale, 2));
    std::vector<Quaternion> gens;
    const auto ob = emb.order().lattice().basis();
    for (int t = 0; t < 4; ++t) {
        gens.push_back(Rational(A) * ob[static_cast<std::size_t>(t)]);
        gens.push_back(mul(emb.order().algebra(), w, ob[static_cast<std::size_t>(t)]));
    }
    QuatLattice I(emb.order().algebra(), std::move(gens));
    Rational index = I.det() / emb.order().lattice().det();
    if (index != Rational(A * A)) throw std::logic_error("ideal_from_class: index is not norm^2");
    return {&emb.order(), std::move(I), Rational(A)};
}

Quaternion principal_generator(const RightIdeal& ideal) {
    const auto candidates = ideal.lattice.vectors_of_norm(ideal.norm);
    const QuatLattice& OL = ideal.order->lattice();
    for (const Quaternion& q : candidates) {
        if (OL.left_multiple(q) == ideal.lattice) return q;
    }
    throw std::logic_error("principal_generator: no generator found (class number > 1?)");
}

Vec3 class_action(const Embedding& emb, const BinaryFormClass& cls, const Vec3& x) {
    const MaximalOrder& O = emb.order();
    // act through the stabilizer torus of x itself: rebase the embedding at x
    Embedding at_x = (x == emb.base_point()) ? emb : Embedding(O, emb.field(), x);
    RightIdeal I = ideal_from_class(at_x, cls);
    Quaternion q = principal_generator(I);
    Quaternion xt = O.from_trace_zero_coords(x);
    Quaternion y = mul(O.algebra(), mul(O.algebra(), conjugate(q), xt), q);
    Rational n = nrd(O.algebra(), q);
    for (auto& v : y.c) v /= n;
    Vec3 out = O.to_trace_zero_coords(y);
    if (nrd(O.algebra(), O.from_trace_zero_coords(out)) != Rational(at_x.d()))
        throw std::logic_error("class_action: output left the sphere");
    return out;
}

std::vector<Vec3> gamma_orbit(const MaximalOrder& order, const Vec3& x) {
    Quaternion xt = order.from_trace_zero_coords(x);
    std::set<Vec3> orbit;
    for (const Quaternion& u : order.units()) {
        Quaternion y = mul(order.algebra(), mul(order.algebra(), conjugate(u), xt), u);
        Rational n = nrd(order.algebra(), u);
        for (auto& v : y.c) v /= n;
        orbit.insert(order.to_trace_zero_coords(y));
    }
    return {orbit.begin(), orbit.end()};
}

Vec3 gamma_canonical(const MaximalOrder& order, const Vec3& x) { return gamma_orbit(order, x).front(); }

GaussReport gauss_check(i64 d) {
    if (d <= 3 || !is_squarefree(d) || !admissible_sum_of_three_squares(d))
        throw std::invalid_argument("gauss_check: d must be squarefree, admissible and > 3");
    GaussReport r;
    r.d = d;
    r.count = static_cast<i64>(enumerate_representations(sphere_form(), d).points.size());
    i64 D = (d % 4 == 3) ? d : 4 * d;
    ClassGroup G{QuadField(D)};
    r.h = G.h();
    if (r.count % r.h != 0) throw std::logic_error("gauss_check: count not divisible by h");
    r.ratio = r.count / r.h;
    i64 expected = (d % 8 == 3) ? 24 : 12;
    if (r.ratio != expected) throw std::logic_error("gauss_check: ratio violates the Gauss formula");
    r.orbit_count = r.count / (12 * r.h);
    return r;
}

Rational ideal_reduced_norm(const MaximalOrder& order, const QuatLattice& I) {
    Rational ratio = I.det() / order.lattice().det();
    // ratio = nrd^2 with nrd rational
    auto int_sqrt = [](i64 n) -> i64 {
        i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
        while (r * r > n) --r;
        while ((r + 1) * (r + 1) <= n) ++r;
        if (r * r != n) throw std::logic_error("ideal norm: det ratio is not a square");
        return r;
    };
    return {int_sqrt(ratio.num()), int_sqrt(ratio.den())};
}

bool ideals_equivalent(const MaximalOrder& order, const QuatLattice& I, const Rational& nI,
                       const QuatLattice& J, const Rational& nJ) {
    (void)order;
    QuatLattice M = I.product(J.conjugate_lattice());
    for (const Quaternion& x : M.vectors_of_norm(nI * nJ)) {
        Quaternion q = x;
        for (auto& v : q.c) v /= nJ;
        if (J.left_multiple(q) == I) return true;
    }
    return false;
}

IdealClassSet ideal_classes(const MaximalOrder& order) {
    const i64 p = order.discriminant();
    const QuatAlgebra& A = order.algebra();
    i64 ell = (p == 2) ? 3 : 2;

    IdealClassSet cs;
    cs.order = &order;
    cs.representatives.push_back(order.lattice());
    std::vector<Rational> norms = {Rational(1)};
    std::vector<QuatLattice> left_orders = {order.lattice()};

    std::size_t expanded = 0;
    while (expanded < cs.representatives.size()) {
        const QuatLattice I = cs.representatives[expanded];
        const Rational nI = norms[expanded];
        const QuatLattice B = left_orders[expanded];
        ++expanded;

        // norm-ell right B-ideals: ell B + alpha B
        std::vector<QuatLattice> neighbors;
        std::array<i64, 4> e{};
        for (e[0] = 0; e[0] < ell; ++e[0])
            for (e[1] = 0; e[1] < ell; ++e[1])
                for (e[2] = 0; e[2] < ell; ++e[2])
                    for (e[3] = 0; e[3] < ell; ++e[3]) {
                        if (e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0) continue;
                        Quaternion alpha = Quaternion::zero();
                        for (int m = 0; m < 4; ++m)
                            if (e[static_cast<std::size_t>(m)] != 0)
                                alpha = alpha + Rational(e[static_cast<std::size_t>(m)]) * B.basis(m);
                        Rational n = nrd(A, alpha);
                        if (!n.is_integer() || n.num() % ell != 0) continue;
                        std::vector<Quaternion> gens;
                        for (int m = 0; m < 4; ++m) {
                            gens.push_back(Rational(ell) * B.basis(m));
                            gens.push_back(mul(A, alpha, B.basis(m)));
                        }
                        QuatLattice P(A, std::move(gens));
                        if (P.det() / B.det() != Rational(ell * ell)) continue;  // wrong norm
                        if (std::find(neighbors.begin(), neighbors.end(), P) == neighbors.end())
                            neighbors.push_back(P);
                    }
        if (static_cast<i64>(neighbors.size()) != ell + 1)
            throw std::logic_error("ideal_classes: neighbor count is not ell + 1");

        for (const QuatLattice& P : neighbors) {
            QuatLattice J = P.product(I);
            Rational nJ = Rational(ell) * nI;
            bool known = false;
            for (std::size_t t = 0; t < cs.representatives.size() && !known; ++t)
                known = ideals_equivalent(order, J, nJ, cs.representatives[t], norms[t]);
            if (!known) {
                cs.representatives.push_back(J);
                norms.push_back(nJ);
                left_orders.push_back(J.left_order());
            }
        }
    }

    Rational total(0);
    for (std::size_t t = 0; t < cs.representatives.size(); ++t) {
        if (reduced_discriminant(left_orders[t]) != p)
            throw std::logic_error("ideal_classes: left order is not maximal");
        i64 w = left_orders[t].count_vectors_of_norm(Rational(1));
        cs.unit_counts.push_back(w);
        total += Rational(1, w);
    }
    if (total != Rational(p - 1, 24))
        throw std::logic_error("ideal_classes: Eichler mass not reached within search bound");
    cs.total_mass = total;
    for (i64 w : cs.unit_counts) cs.masses.push_back(Rational(1, w) / total);
    return cs;
}

int ideal_class_index(const IdealClassSet& cs, const RightIdeal& ideal) {
    for (std::size_t t = 0; t < cs.representatives.size(); ++t) {
        Rational nt = ideal_reduced_norm(*cs.order, cs.representatives[t]);
        if (ideals_equivalent(*cs.order, ideal.lattice, ideal.norm, cs.representatives[t], nt))
            return static_cast<int>(t);
    }
    throw std::logic_error("ideal_class_index: ideal matches no representative");
}

int class_set_map(const IdealClassSet& cs, const Embedding& emb, const BinaryFormClass& cls) {
    const i64 p = emb.order().discriminant();
    if (emb.field().eta(p) != -1)
        throw std::invalid_argument("class_set_map: p must be inert in E");
    RightIdeal I = ideal_from_class(emb, cls);
    return ideal_class_index(cs, I);
}

}  // namespace toriclab
