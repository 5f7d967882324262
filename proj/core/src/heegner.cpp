#include "toriclab/heegner.hpp"

#include <cmath>

namespace toriclab {

HeegnerPoint heegner_point(const BinaryFormClass& form) {
    double D = static_cast<double>(-form.disc());
    std::complex<double> z(-double(form.b) / (2.0 * double(form.a)),
                           std::sqrt(D) / (2.0 * double(form.a)));
    return {z, form};
}

std::vector<HeegnerPoint> heegner_points(const QuadField& field) {
    std::vector<HeegnerPoint> out;
    for (const auto& f : reduced_forms(field)) out.push_back(heegner_point(f));
    return out;
}

std::complex<double> reduce_to_fundamental_domain(std::complex<double> z) {
    if (z.imag() <= 0) throw std::invalid_argument("reduce: point must lie in the upper half plane");
    constexpr double eps = 1e-12;
    for (int iter = 0; iter < 10000; ++iter) {
        double t = std::round(z.real());
        z -= t;
        double n = std::norm(z);
        if (n < 1.0 - eps) {
            z = -std::conj(z) / n;  // -1/z
            continue;
        }
        break;
    }
    // boundary normalization: Re z in (-1/2, 1/2]; right half of the arc
    if (z.real() <= -0.5 + eps) z += 1.0;
    if (std::abs(std::norm(z) - 1.0) < eps && z.real() < -eps) z = -std::conj(z) / std::norm(z);
    return z;
}

DiagonalOrbit diagonal_orbit(const ClassGroup& group, const Embedding& emb, const Vec3& base_sphere,
                             const BinaryFormClass& base_class, i64 alpha, i64 beta) {
    const QuadField& field = group.field();
    if (field.D() != emb.field().D()) throw std::invalid_argument("diagonal_orbit: field mismatch");
    i64 d = emb.d();
    if (!is_squarefree(d) || !admissible_sum_of_three_squares(d) || d <= 3)
        throw std::invalid_argument("diagonal_orbit: d must be squarefree, admissible and > 3");
    if (alpha != beta) {
        // Cl_E must have no p-torsion for p | 2*beta
        for (i64 p = 2; p <= 2 * beta; ++p) {
            if (!is_prime(p) || (2 * beta) % p != 0) continue;
            if (group.h() % p == 0)
                throw std::invalid_argument("diagonal_orbit: class group has p-torsion for p | 2 beta");
        }
    }
    DiagonalOrbit orbit;
    orbit.d = d;
    orbit.alpha = alpha;
    orbit.beta = beta;
    const int base_idx = group.index_of(base_class);
    for (int t = 0; t < group.h(); ++t) {
        int tb = group.power_idx(t, beta);
        orbit.sphere_points.push_back(class_action(emb, group.elements()[static_cast<std::size_t>(tb)], base_sphere));
        int ta = group.compose_idx(group.power_idx(t, alpha), base_idx);
        orbit.heegner_pts.push_back(heegner_point(group.elements()[static_cast<std::size_t>(ta)]));
    }
    return orbit;
}

}  // namespace toriclab
