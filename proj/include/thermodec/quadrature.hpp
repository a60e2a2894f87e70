#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace thermodec {

template <typename T>
struct QuadratureResult {
    T value{};
    double error = 0.0;   // absolute error estimate
    bool converged = true;
};

/// Strictly increasing positive frequency nodes seeding the adaptive panels.
class FrequencyGrid {
public:
    explicit FrequencyGrid(std::vector<double> nodes);
    static FrequencyGrid log_spaced(double omega_lo, double omega_hi, std::size_t count);

    const std::vector<double>& nodes() const { return nodes_; }
    double lower() const { return nodes_.front(); }
    double upper() const { return nodes_.back(); }

    /// Merge additional nodes lying inside the support into the seed grid.
    void insert(const std::vector<double>& extra);

private:
    std::vector<double> nodes_;
};

QuadratureResult<double> integrate_frequency(const std::function<double(double)>& f,
                                             const FrequencyGrid& grid, double rel_tol,
                                             std::size_t max_panels = 200000);

QuadratureResult<std::complex<double>> integrate_frequency(
    const std::function<std::complex<double>(double)>& f, const FrequencyGrid& grid,
    double rel_tol, std::size_t max_panels = 200000);

QuadratureResult<Eigen::Matrix3d> integrate_frequency(
    const std::function<Eigen::Matrix3d(double)>& f, const FrequencyGrid& grid, double rel_tol,
    std::size_t max_panels = 200000);

QuadratureResult<Eigen::VectorXd> integrate_frequency(
    const std::function<Eigen::VectorXd(double)>& f, const FrequencyGrid& grid, double rel_tol,
    std::size_t max_panels = 200000);

/// Adaptive Gauss-Kronrod integration over a single finite interval.
QuadratureResult<double> integrate_adaptive(const std::function<double(double)>& f, double a,
                                            double b, double rel_tol,
                                            std::size_t max_panels = 200000);

struct GaussLegendre {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};
GaussLegendre gauss_legendre(int n);

/// Product quadrature on the unit sphere: Gauss-Legendre in cos(theta),
/// uniform (trapezoidal) in azimuth. Exact for spherical polynomials up to
/// degree 2*order - 1.
struct SphereQuadrature {
    std::vector<Eigen::Vector3d> directions;
    std::vector<double> weights;  // solid-angle weights, sum = 4 pi
    std::size_t size() const { return directions.size(); }
};

SphereQuadrature sphere_quadrature(int order);

/// Same product rule with the polar axis rotated onto `axis` and independent
/// polar/azimuthal orders; used where the integrand oscillates along one axis.
SphereQuadrature sphere_quadrature_aligned(int polar_order, int azimuth_count,
                                           const Eigen::Vector3d& axis);

}  // namespace thermodec
