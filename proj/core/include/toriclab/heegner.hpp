#ifndef TORICLAB_HEEGNER_HPP
#define TORICLAB_HEEGNER_HPP

#include <complex>
#include <vector>

#include "toriclab/quadratic.hpp"
#include "toriclab/venkov.hpp"

namespace toriclab {

// Heegner point (-b + i sqrt(D)) / (2a) of a reduced form of discriminant -D.
struct HeegnerPoint {
    std::complex<double> z;
    BinaryFormClass source_form;
};

// exactly h points, bijective with the reduced forms (in element order)
std::vector<HeegnerPoint> heegner_points(const QuadField& field);
HeegnerPoint heegner_point(const BinaryFormClass& form);

// PSL_2(Z)-reduction to the fundamental domain. Canonical representatives
// satisfy -1/2 < Re z <= 1/2, |z| >= 1, and Re z >= 0 when |z| = 1 (so
// e^{i pi/3} is fixed). Idempotent.
std::complex<double> reduce_to_fundamental_domain(std::complex<double> z);

// joint diagonal orbit: pairs (cls^beta . base_sphere, heegner(cls^alpha o base_class))
struct DiagonalOrbit {
    i64 d;
    i64 alpha, beta;
    // one entry per class-group element, in element order
    std::vector<Vec3> sphere_points;
    std::vector<HeegnerPoint> heegner_pts;
};

DiagonalOrbit diagonal_orbit(const ClassGroup& group, const Embedding& emb, const Vec3& base_sphere,
                             const BinaryFormClass& base_class, i64 alpha = 1, i64 beta = 1);

}  // namespace toriclab

#endif
