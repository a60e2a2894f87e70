#include "thermodec/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "thermodec/constants.hpp"
#include "thermodec/quadrature.hpp"

namespace thermodec {

Orientation Orientation::from_matrix(const Eigen::Matrix3d& m) {
    const double ortho = (m.transpose() * m - Eigen::Matrix3d::Identity()).norm();
    if (ortho > 1e-11)
        throw std::invalid_argument("orientation matrix is not orthogonal");
    if (std::abs(m.determinant() - 1.0) > 1e-11)
        throw std::invalid_argument("orientation matrix must have det = +1");
    return Orientation(m, unchecked{});
}

Orientation Orientation::axis_angle(const Eigen::Vector3d& axis, double theta) {
    if (std::abs(axis.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("rotation axis must be a unit vector");
    return Orientation(Eigen::AngleAxisd(theta, axis).toRotationMatrix(), unchecked{});
}

Orientation Orientation::transposed() const { return Orientation(r_.transpose(), unchecked{}); }

Orientation Orientation::operator*(const Orientation& rhs) const {
    return Orientation(r_ * rhs.r_, unchecked{});
}

double rotation_angle(const Orientation& r, const Orientation& rp) {
    const double cos_theta = ((r.matrix().transpose() * rp.matrix()).trace() - 1.0) / 2.0;
    return std::acos(std::clamp(cos_theta, -1.0, 1.0));
}

EllipsoidShape::EllipsoidShape(double l1_, double l2_, double l3_, double mass_)
    : l1(l1_), l2(l2_), l3(l3_), mass(mass_) {
    if (!(l1 > 0.0 && l2 > 0.0 && l3 > 0.0))
        throw std::invalid_argument("semi-axes must be positive");
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
}

EllipsoidShape EllipsoidShape::sphere(double radius, double mass) {
    return EllipsoidShape(radius, radius, radius, mass);
}

EllipsoidShape EllipsoidShape::spheroid(double l_perp, double l_par, double mass) {
    return EllipsoidShape(l_perp, l_perp, l_par, mass);
}

double EllipsoidShape::volume() const { return 4.0 / 3.0 * pi * l1 * l2 * l3; }

double EllipsoidShape::mean_radius() const { return std::cbrt(l1 * l2 * l3); }

Eigen::Vector3d EllipsoidShape::moments_of_inertia() const {
    return mass / 5.0 *
           Eigen::Vector3d(l2 * l2 + l3 * l3, l3 * l3 + l1 * l1, l1 * l1 + l2 * l2);
}

EllipsoidShape EllipsoidShape::scaled(double factor) const {
    return EllipsoidShape(factor * l1, factor * l2, factor * l3, mass);
}

namespace {

// L_i = (l1 l2 l3 / 2) int_0^inf ds / ((s + l_i^2) sqrt((s+l1^2)(s+l2^2)(s+l3^2)))
// with the substitution s = l1^2 tan^2 u mapping to u in (0, pi/2).
double depolarization_exact(double li, double l1, double l2, double l3) {
    const double scale = l1 * l1;
    auto integrand = [&](double u) {
        const double t = std::tan(u);
        const double sec2 = 1.0 + t * t;
        const double s = scale * t * t;
        const double ds = 2.0 * scale * t * sec2;
        const double root = std::sqrt((s + l1 * l1) * (s + l2 * l2) * (s + l3 * l3));
        return ds / ((s + li * li) * root);
    };
    const auto res = integrate_adaptive(integrand, 0.0, pi / 2.0, 1e-13);
    return 0.5 * l1 * l2 * l3 * res.value;
}

}  // namespace

Eigen::Vector3d depolarization_factors(const EllipsoidShape& shape, DepolarizationMode mode) {
    if (mode == DepolarizationMode::Approximate) {
        Eigen::Vector3d L(1.0 / (1.0 + shape.l1 / shape.l2 + shape.l1 / shape.l3),
                          1.0 / (1.0 + shape.l2 / shape.l3 + shape.l2 / shape.l1),
                          1.0 / (1.0 + shape.l3 / shape.l1 + shape.l3 / shape.l2));
        return L / L.sum();
    }
    Eigen::Vector3d L(depolarization_exact(shape.l1, shape.l1, shape.l2, shape.l3),
                      depolarization_exact(shape.l2, shape.l1, shape.l2, shape.l3),
                      depolarization_exact(shape.l3, shape.l1, shape.l2, shape.l3));
    return L;
}

}  // namespace thermodec
