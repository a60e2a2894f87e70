#pragma once

#include <complex>

#include <Eigen/Dense>

#include "thermodec/geometry.hpp"

namespace thermodec {

/// Free-space electromagnetic Green tensor at separation dr and frequency
/// omega, in units of 1/m. Singular at dr = 0; use im_free_green for the
/// regular imaginary part.
Eigen::Matrix3cd free_green(const Eigen::Vector3d& dr, double omega);

/// Imaginary part of the free-space Green tensor; regular everywhere, with a
/// series branch below kr = 0.1 so the dr -> 0 limit (omega/6 pi c) * I is
/// exact.
Eigen::Matrix3d im_free_green(const Eigen::Vector3d& dr, double omega);

/// Scalar shape functions of u = kr in
///   Im G0 = (k/4pi) [ fa(u) I + fb(u) rhat rhat ].
double im_green_fa(double u);
double im_green_fb(double u);

struct PolarizationBasis {
    Eigen::Vector3d n;
    Eigen::Vector3cd e1, e2;
};

/// Deterministic real transverse pair orthonormal to n, built from the
/// smallest-magnitude component pivot. pivot_shift cycles the pivot choice and
/// exists so physical results can be checked for gauge invariance.
PolarizationBasis polarization_basis(const Eigen::Vector3d& n, int pivot_shift = 0);

/// Vector-valued amplitude of emission K^sigma_R(n, s; omega): how a source
/// point s inside the body in orientation R feeds the outgoing plane-wave
/// channel (n, sigma). Implementations must satisfy the rotation covariance
/// of the reference amplitude.
class EmissionAmplitudeProvider {
public:
    virtual ~EmissionAmplitudeProvider() = default;
    virtual Eigen::Vector3cd amplitude(int sigma, const Eigen::Vector3d& n,
                                       const Eigen::Vector3d& s, double omega,
                                       const Orientation& r) const = 0;
};

}  // namespace thermodec
