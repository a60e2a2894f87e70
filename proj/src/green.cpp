#include "thermodec/green.hpp"

#include <cmath>
#include <stdexcept>

#include "thermodec/constants.hpp"

namespace thermodec {

Eigen::Matrix3cd free_green(const Eigen::Vector3d& dr, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("free_green requires omega > 0");
    const double r = dr.norm();
    if (r == 0.0)
        throw std::domain_error("free_green is singular at dr = 0; use im_free_green");
    const double k = omega / PhysicalConstants::c;
    const double kr = k * r;
    const std::complex<double> iu(0.0, 1.0);
    const std::complex<double> phase = std::exp(iu * kr) / (4.0 * pi * r);
    const std::complex<double> a = 1.0 + (iu * kr - 1.0) / (kr * kr);
    const std::complex<double> b = (3.0 - 3.0 * iu * kr - kr * kr) / (kr * kr);
    const Eigen::Vector3d er = dr / r;
    Eigen::Matrix3cd g = phase * (a * Eigen::Matrix3cd::Identity().eval() +
                                  b * (er * er.transpose()).cast<std::complex<double>>());
    return g;
}

namespace {
constexpr double kSeriesSwitch = 0.1;
}

double im_green_fa(double u) {
    if (std::abs(u) < kSeriesSwitch) {
        const double u2 = u * u;
        return 2.0 / 3.0 +
               u2 * (-2.0 / 15.0 + u2 * (1.0 / 140.0 + u2 * (-1.0 / 5670.0 + u2 / 399168.0)));
    }
    return (std::sin(u) * (u * u - 1.0) + u * std::cos(u)) / (u * u * u);
}

double im_green_fb(double u) {
    if (std::abs(u) < kSeriesSwitch) {
        const double u2 = u * u;
        return u2 * (1.0 / 15.0 + u2 * (-1.0 / 210.0 + u2 * (1.0 / 7560.0 - u2 / 498960.0)));
    }
    return (std::sin(u) * (3.0 - u * u) - 3.0 * u * std::cos(u)) / (u * u * u);
}

Eigen::Matrix3d im_free_green(const Eigen::Vector3d& dr, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("im_free_green requires omega > 0");
    const double k = omega / PhysicalConstants::c;
    const double r = dr.norm();
    if (r == 0.0) return (k / (6.0 * pi)) * Eigen::Matrix3d::Identity();
    const double u = k * r;
    const Eigen::Vector3d er = dr / r;
    return (k / (4.0 * pi)) *
           (im_green_fa(u) * Eigen::Matrix3d::Identity() + im_green_fb(u) * (er * er.transpose()));
}

PolarizationBasis polarization_basis(const Eigen::Vector3d& n, int pivot_shift) {
    if (std::abs(n.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("polarization_basis requires a unit vector");
    int pivot = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(n[i]) < std::abs(n[pivot])) pivot = i;
    pivot = (pivot + pivot_shift) % 3;
    Eigen::Vector3d e1 = Eigen::Vector3d::Unit(pivot).cross(n);
    const double norm = e1.norm();
    if (norm < 1e-14) {
        // pivot_shift moved the pivot onto n; fall back to the next axis
        e1 = Eigen::Vector3d::Unit((pivot + 1) % 3).cross(n);
        return PolarizationBasis{n, e1.normalized().cast<std::complex<double>>(),
                                 n.cross(e1.normalized()).cast<std::complex<double>>()};
    }
    e1 /= norm;
    const Eigen::Vector3d e2 = n.cross(e1);
    return PolarizationBasis{n, e1.cast<std::complex<double>>(),
                             e2.cast<std::complex<double>>()};
}

}  // namespace thermodec
