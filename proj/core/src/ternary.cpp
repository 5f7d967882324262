#include "toriclab/ternary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace toriclab {

namespace {
i64 isqrt_floor(i64 n) {
    if (n < 0) return -1;
    i64 r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(n))));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c)); }
}  // namespace

TernaryForm::TernaryForm(i64 a11, i64 a22, i64 a33, i64 b12, i64 b13, i64 b23)
    : a11_(a11), a22_(a22), a33_(a33), b12_(b12), b13_(b13), b23_(b23) {
    gram2_ = {{{2 * a11, b12, b13}, {b12, 2 * a22, b23}, {b13, b23, 2 * a33}}};
    // leading principal minors of the (doubled) Gram matrix
    i64 m1 = gram2_[0][0];
    i64 m2 = gram2_[0][0] * gram2_[1][1] - gram2_[0][1] * gram2_[0][1];
    i64 m3 = det3(gram2_);
    if (m1 <= 0 || m2 <= 0 || m3 <= 0)
        throw std::invalid_argument("TernaryForm: not positive definite");
}

TernaryForm TernaryForm::parse(const std::string& spec) {
    std::stringstream ss(spec);
    std::array<i64, 6> v{};
    std::string tok;
    for (int i = 0; i < 6; ++i) {
        if (!std::getline(ss, tok, ',')) throw std::invalid_argument("TernaryForm: expected six comma-separated integers");
        v[static_cast<std::size_t>(i)] = std::stoll(tok);
    }
    if (std::getline(ss, tok, ',')) throw std::invalid_argument("TernaryForm: trailing input");
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

i64 TernaryForm::value(const Vec3& x) const {
    return a11_ * x[0] * x[0] + a22_ * x[1] * x[1] + a33_ * x[2] * x[2] + b12_ * x[0] * x[1] +
           b13_ * x[0] * x[2] + b23_ * x[1] * x[2];
}

i64 TernaryForm::polar2(const Vec3& x, const Vec3& y) const {
    i64 s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += gram2_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
    return s;
}

i64 TernaryForm::det_gram2() const { return det3(gram2_); }

std::string TernaryForm::to_string() const {
    std::ostringstream os;
    os << a11_ << "," << a22_ << "," << a33_ << "," << b12_ << "," << b13_ << "," << b23_;
    return os.str();
}

i64 det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Vec3 apply(const Mat3& u, const Vec3& x) {
    Vec3 y{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) y[static_cast<std::size_t>(i)] += u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    return y;
}

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j) c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    return c;
}

namespace {

// Enumeration core: visit every integral solution of q(x) = d (up to nothing,
// both signs included). Coordinates x1, x2 are bounded by the inverse-Gram
// ellipsoid; x3 is solved from a quadratic.
template <typename F>
void visit_representations(const TernaryForm& form, i64 d, F&& visit) {
    const auto c = form.coeffs();
    const i64 a11 = c[0], a22 = c[1], a33 = c[2], b12 = c[3], b13 = c[4], b23 = c[5];
    const Mat3& g2 = form.gram2();
    const i64 det2 = det3(g2);
    // cofactors of the doubled Gram give the coordinate bounds:
    // x_i^2 <= d * 2 * adj(2G)_ii / det(2G)
    const i64 adj00 = g2[1][1] * g2[2][2] - g2[1][2] * g2[1][2];
    const i64 adj11 = g2[0][0] * g2[2][2] - g2[0][2] * g2[0][2];
    const i64 b1 = isqrt_floor((2 * d * adj00) / det2);
    const i64 b2 = isqrt_floor((2 * d * adj11) / det2);
    for (i64 x1 = -b1; x1 <= b1; ++x1) {
        for (i64 x2 = -b2; x2 <= b2; ++x2) {
            const i64 beta = b13 * x1 + b23 * x2;
            const i64 gamma = a11 * x1 * x1 + a22 * x2 * x2 + b12 * x1 * x2 - d;
            const i64 disc = beta * beta - 4 * a33 * gamma;
            if (disc < 0) continue;
            const i64 r = isqrt_floor(disc);
            if (r * r != disc) continue;
            for (i64 sgn : {1, -1}) {
                if (sgn < 0 && r == 0) break;
                const i64 num = -beta + sgn * r;
                if (num % (2 * a33) != 0) continue;
                visit(Vec3{x1, x2, num / (2 * a33)});
            }
        }
    }
}

}  // namespace

RepresentationSet enumerate_representations(const TernaryForm& form, i64 d) {
    if (d <= 0) throw std::invalid_argument("enumerate_representations: d must be positive");
    RepresentationSet out{form, d, {}};
    visit_representations(form, d, [&](const Vec3& x) {
        if (gcd3(x[0], x[1], x[2]) == 1) out.points.push_back(x);
    });
    std::sort(out.points.begin(), out.points.end());
    return out;
}

i64 representation_count(const TernaryForm& form, i64 d, bool primitive_only) {
    if (d <= 0) throw std::invalid_argument("representation_count: d must be positive");
    i64 count = 0;
    visit_representations(form, d, [&](const Vec3& x) {
        if (!primitive_only || gcd3(x[0], x[1], x[2]) == 1) ++count;
    });
    return count;
}

std::vector<Mat3> automorphism_group(const TernaryForm& form) {
    const auto c = form.coeffs();
    const std::array<i64, 3> diag = {c[0], c[1], c[2]};
    std::array<std::vector<Vec3>, 3> candidates;
    for (int i = 0; i < 3; ++i)
        candidates[static_cast<std::size_t>(i)] = enumerate_representations(form, diag[static_cast<std::size_t>(i)]).points;

    const i64 b12 = c[3], b13 = c[4], b23 = c[5];
    std::vector<Mat3> group;
    for (const Vec3& u1 : candidates[0]) {
        for (const Vec3& u2 : candidates[1]) {
            if (form.polar2(u1, u2) != b12) continue;
            for (const Vec3& u3 : candidates[2]) {
                if (form.polar2(u1, u3) != b13 || form.polar2(u2, u3) != b23) continue;
                Mat3 u{};
                for (int r = 0; r < 3; ++r) {
                    u[static_cast<std::size_t>(r)][0] = u1[static_cast<std::size_t>(r)];
                    u[static_cast<std::size_t>(r)][1] = u2[static_cast<std::size_t>(r)];
                    u[static_cast<std::size_t>(r)][2] = u3[static_cast<std::size_t>(r)];
                }
                i64 det = det3(u);
                if (det != 1 && det != -1)
                    throw std::logic_error("automorphism_group: Gram-compatible matrix with |det| != 1");
                group.push_back(u);
            }
        }
    }
    return group;
}

i64 rotation_count(const std::vector<Mat3>& group) {
    i64 n = 0;
    for (const auto& u : group)
        if (det3(u) == 1) ++n;
    return n;
}

GenusWeights genus_weights(const std::vector<TernaryForm>& forms) {
    if (forms.empty()) throw std::invalid_argument("genus_weights: empty form list");
    GenusWeights gw;
    gw.forms = forms;
    Rational total(0);
    for (const auto& f : forms) {
        i64 n = static_cast<i64>(automorphism_group(f).size());
        gw.aut_orders.push_back(n);
        total += Rational(1, n);
    }
    Rational check(0);
    for (i64 n : gw.aut_orders) {
        gw.weights.push_back(Rational(1, n) / total);
        check += gw.weights.back();
    }
    if (!(check == Rational(1))) throw std::logic_error("genus weights do not sum to 1");
    return gw;
}

TernaryForm sphere_form() { return {1, 1, 1, 0, 0, 0}; }

TernaryForm example_form(const std::string& id) {
    if (id == "Q1_1") return {3, 11, 1, 0, 1, 0};
    if (id == "Q1_2") return {3, 4, 4, 2, 2, -3};
    if (id == "Q2_1") return {1, 5, 19, 1, 0, 0};
    if (id == "Q2_2") return {4, 5, 6, 2, 1, 5};
    throw std::invalid_argument("unknown builtin form: " + id);
}

}  // namespace toriclab
