#pragma once

#include <Eigen/Dense>

namespace thermodec {

/// Proper rotation tensor relating body frame to lab frame.
class Orientation {
public:
    Orientation() : r_(Eigen::Matrix3d::Identity()) {}

    /// Validates orthogonality and det = +1 within 1e-12.
    static Orientation from_matrix(const Eigen::Matrix3d& m);

    /// Rodrigues rotation about a unit axis. Throws on non-unit axis.
    static Orientation axis_angle(const Eigen::Vector3d& axis, double theta);

    const Eigen::Matrix3d& matrix() const { return r_; }
    Orientation transposed() const;
    Orientation operator*(const Orientation& rhs) const;
    Eigen::Vector3d operator*(const Eigen::Vector3d& v) const { return r_ * v; }

private:
    struct unchecked {};
    Orientation(const Eigen::Matrix3d& m, unchecked) : r_(m) {}
    Eigen::Matrix3d r_;
};

/// Angle of rotation relating two orientations, in [0, pi].
double rotation_angle(const Orientation& r, const Orientation& rp);

struct EllipsoidShape {
    double l1, l2, l3;  // semi-axes [m]
    double mass;        // [kg]

    EllipsoidShape(double l1, double l2, double l3, double mass);
    static EllipsoidShape sphere(double radius, double mass);
    /// l1 = l2 = l_perp, symmetry axis l3 = l_par
    static EllipsoidShape spheroid(double l_perp, double l_par, double mass);

    double volume() const;
    /// Volume-equivalent radius (3V/4pi)^(1/3)
    double mean_radius() const;
    /// I_1 = m (l2^2 + l3^2)/5 and cyclic permutations
    Eigen::Vector3d moments_of_inertia() const;
    EllipsoidShape scaled(double factor) const;  // same mass, scaled axes
};

enum class DepolarizationMode { Exact, Approximate };

/// Electrostatic depolarization factors of the ellipsoid. Exact mode
/// evaluates the elliptic integrals by adaptive quadrature; approximate mode
/// uses L_1 = [1 + l1/l2 + l1/l3]^-1 (and cyclic), renormalized to unit sum.
Eigen::Vector3d depolarization_factors(const EllipsoidShape& shape, DepolarizationMode mode);

}  // namespace thermodec
