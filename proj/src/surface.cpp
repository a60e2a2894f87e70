#include "thermodec/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "thermodec/constants.hpp"
#include "thermodec/quadrature.hpp"

namespace thermodec {

namespace {
using PC = PhysicalConstants;
}

SpheroidSurface::SpheroidSurface(double l_perp, double l_par, int polar_order,
                                 int azimuth_count)
    : l_perp_(l_perp), l_par_(l_par) {
    if (!(l_perp > 0.0 && l_par > 0.0))
        throw std::invalid_argument("spheroid semi-axes must be positive");
    if (polar_order < 2 || azimuth_count < 4)
        throw std::invalid_argument("spheroid surface orders too small");

    const GaussLegendre gl = gauss_legendre(polar_order);
    const double dphi = 2.0 * pi / azimuth_count;
    patches_.reserve(static_cast<std::size_t>(polar_order) * azimuth_count);
    for (int i = 0; i < polar_order; ++i) {
        const double mu = gl.x[i];  // cos(theta)
        const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        // |r_theta x r_phi| dtheta dphi = l_perp sqrt(l_par^2 s^2 + l_perp^2 mu^2) dmu dphi
        const double jac = l_perp_ * std::sqrt(l_par_ * l_par_ * s * s + l_perp_ * l_perp_ * mu * mu);
        for (int j = 0; j < azimuth_count; ++j) {
            const double phi = dphi * (j + 0.5);
            SurfacePatch p;
            p.r_s = Eigen::Vector3d(l_perp_ * s * std::cos(phi), l_perp_ * s * std::sin(phi),
                                    l_par_ * mu);
            p.normal = Eigen::Vector3d(p.r_s.x() / (l_perp_ * l_perp_),
                                       p.r_s.y() / (l_perp_ * l_perp_),
                                       p.r_s.z() / (l_par_ * l_par_))
                           .normalized();
            p.area = gl.w[i] * dphi * jac;
            quad_area_ += p.area;
            patches_.push_back(p);
        }
    }
}

SpheroidSurface SpheroidSurface::sphere(double radius, int polar_order, int azimuth_count) {
    return SpheroidSurface(radius, radius, polar_order, azimuth_count);
}

double SpheroidSurface::analytic_area() const {
    const double a = l_perp_, c = l_par_;
    if (std::abs(a - c) < 1e-14 * a) return 4.0 * pi * a * a;
    if (c > a) {  // prolate
        const double e = std::sqrt(1.0 - a * a / (c * c));
        return 2.0 * pi * a * a * (1.0 + c / (a * e) * std::asin(e));
    }
    const double e = std::sqrt(1.0 - c * c / (a * a));  // oblate
    return 2.0 * pi * a * a + pi * c * c / e * std::log((1.0 + e) / (1.0 - e));
}

std::pair<std::complex<double>, double> wavevector_normal(const Eigen::Vector3d& n,
                                                          const Eigen::Vector3d& e_perp,
                                                          std::complex<double> eps,
                                                          double omega) {
    if (std::abs(n.norm() - 1.0) > 1e-12 || std::abs(e_perp.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("wavevector_normal requires unit vectors");
    const double k = omega / PC::c;
    const double sin2 = e_perp.cross(n).squaredNorm();
    std::complex<double> k_in = k * std::sqrt(eps - sin2);
    if (k_in.imag() < 0.0) k_in = -k_in;
    const double k_ex = k * std::sqrt(std::max(0.0, 1.0 - sin2));
    return {k_in, k_ex};
}

FresnelSet fresnel(const Eigen::Vector3d& n, const Eigen::Vector3d& e_perp,
                   std::complex<double> eps, double omega) {
    const auto [k_in, k_ex] = wavevector_normal(n, e_perp, eps, omega);
    FresnelSet f;
    f.k_perp_in = k_in;
    f.k_perp_ex = k_ex;
    f.t_s = 2.0 * k_in / (k_in + k_ex);
    f.t_p = 1.0 / std::sqrt(eps) * 2.0 * eps * k_in / (k_in + eps * k_ex);
    f.R_s = std::norm((k_in - k_ex) / (k_in + k_ex));
    f.R_p = std::norm((k_in - eps * k_ex) / (k_in + eps * k_ex));
    f.T_s = 1.0 - f.R_s;
    f.T_p = 1.0 - f.R_p;
    return f;
}

double jump_factor(const Eigen::Vector3d& n, const Eigen::Vector3d& e_perp,
                   std::complex<double> eps, double omega) {
    const FresnelSet f = fresnel(n, e_perp, eps, omega);
    if (!(f.k_perp_in.real() > 1e-12 * std::abs(f.k_perp_in)) || f.k_perp_in == 0.0)
        throw std::domain_error("jump_factor: Re k_perp_in vanishes (evanescent interior)");
    if (!(f.k_perp_ex > 0.0))
        throw std::domain_error("jump_factor: grazing exterior direction");
    const double k = omega / PC::c;
    const double sin2 = e_perp.cross(n).squaredNorm();
    // interior p polarization with the stated non-unit normalization:
    // e_p^in* . e_p^in = (k^2 sin^2 + |k_in|^2) / (k^2 |eps|)
    const double ep_norm2 = (k * k * sin2 + std::norm(f.k_perp_in)) / (k * k * std::abs(eps));
    return std::norm(f.t_s / f.k_perp_in) * 1.0 + std::norm(f.t_p / f.k_perp_in) * ep_norm2;
}

double jump_factor_fresnel(const Eigen::Vector3d& n, const Eigen::Vector3d& e_perp,
                           std::complex<double> eps, double omega) {
    const FresnelSet f = fresnel(n, e_perp, eps, omega);
    if (!(f.k_perp_in.real() > 1e-12 * std::abs(f.k_perp_in)) || f.k_perp_in == 0.0)
        throw std::domain_error("jump_factor: Re k_perp_in vanishes (evanescent interior)");
    if (!(f.k_perp_ex > 0.0))
        throw std::domain_error("jump_factor: grazing exterior direction");
    return (f.T_s + f.T_p) / (f.k_perp_ex * f.k_perp_in.real());
}

SurfaceMaterial SurfaceMaterial::black_body() { return SurfaceMaterial(); }

SurfaceMaterial SurfaceMaterial::dielectric(PermittivityTable table) {
    SurfaceMaterial m;
    m.table_ = std::move(table);
    return m;
}

const PermittivityTable& SurfaceMaterial::table() const {
    if (!table_) throw std::logic_error("black-body surface has no permittivity table");
    return *table_;
}

double SurfaceMaterial::transmission_sum(double mu, double omega) const {
    if (!(mu > 0.0)) return 0.0;
    if (is_black_body()) return 2.0;
    mu = std::min(mu, 1.0);
    const std::complex<double> eps = table_->permittivity(omega);
    const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    const Eigen::Vector3d n(s, 0.0, mu);
    const FresnelSet f = fresnel(n, Eigen::Vector3d::UnitZ(), eps, omega);
    return f.T_s + f.T_p;
}

double SurfaceMaterial::omega_min() const {
    return is_black_body() ? 0.0 : table_->omega_min();
}

double SurfaceMaterial::omega_max() const {
    return is_black_body() ? std::numeric_limits<double>::infinity() : table_->omega_max();
}

double surface_photon_intensity(const Eigen::Vector3d& n, const SurfacePatch& patch,
                                const SurfaceMaterial& material, double omega, double T) {
    const double mu = n.dot(patch.normal);
    if (mu <= 0.0) return 0.0;
    const double ts = material.transmission_sum(mu, omega);
    return omega * omega / (8.0 * pi * pi * pi * PC::c * PC::c) * bose_occupation(omega, T) *
           ts * mu;
}

namespace {

FrequencyGrid surface_frequency_grid(const SurfaceMaterial& material, double T) {
    const auto [x_lo, x_hi] = thermal_window_x();
    const double scale = PC::k_B * T / PC::hbar;
    double lo = x_lo * scale, hi = x_hi * scale;
    if (!material.is_black_body()) {
        lo = std::max(lo, material.omega_min());
        hi = std::min(hi, material.omega_max());
        if (!(hi > lo))
            throw std::runtime_error("thermal window does not overlap the material support");
    }
    FrequencyGrid grid = FrequencyGrid::log_spaced(lo, hi, 96);
    if (!material.is_black_body()) {
        std::vector<double> nodes;
        for (const auto& s : material.table().samples()) nodes.push_back(s.omega);
        grid.insert(nodes);
    }
    return grid;
}

// 2 pi int_0^1 (T_s + T_p)(mu) mu^{1+moment} dmu on a fixed Gauss grid
double hemisphere_moment(const SurfaceMaterial& material, double omega, int moment,
                         const GaussLegendre& gl) {
    double sum = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        const double mu = 0.5 * (gl.x[i] + 1.0);
        double f = material.transmission_sum(mu, omega) * mu;
        for (int p = 0; p < moment; ++p) f *= mu;
        sum += 0.5 * gl.w[i] * f;
    }
    return 2.0 * pi * sum;
}

}  // namespace

double total_surface_emission_rate(const SpheroidSurface& surface,
                                   const SurfaceMaterial& material, double T, double rel_tol) {
    const auto grid = surface_frequency_grid(material, T);
    const GaussLegendre gl = gauss_legendre(64);
    double area = 0.0;
    for (const auto& p : surface.patches()) area += p.area;
    const auto res = integrate_frequency(
        std::function<double(double)>([&](double w) {
            const double spectral = w * w / (8.0 * pi * pi * pi * PC::c * PC::c) *
                                    bose_occupation(w, T);
            return spectral * hemisphere_moment(material, w, 0, gl) * area;
        }),
        grid, rel_tol);
    return res.value;
}

HeatingRates heating_rates_large(const SpheroidSurface& surface, const SurfaceMaterial& material,
                                 double T, double mass, const Eigen::Vector3d& inertia,
                                 double rel_tol) {
    // Azimuthal averages around each patch normal u with tangent frame (t1, t2):
    //   <(e_j . n)^2>_phi      = mu^2 u_j^2 + (1 - mu^2)/2 (1 - u_j^2)
    //   <(e_j . r_s x n)^2>_phi = mu^2 (e_j . r_s x u)^2
    //                            + (1 - mu^2)/2 [(e_j . r_s x t1)^2 + (e_j . r_s x t2)^2]
    Eigen::Vector3d cm_a = Eigen::Vector3d::Zero(), cm_b = Eigen::Vector3d::Zero();
    Eigen::Vector3d rot_a = Eigen::Vector3d::Zero(), rot_b = Eigen::Vector3d::Zero();
    for (const auto& p : surface.patches()) {
        const Eigen::Vector3d& u = p.normal;
        int pivot = 0;
        for (int i = 1; i < 3; ++i)
            if (std::abs(u[i]) < std::abs(u[pivot])) pivot = i;
        const Eigen::Vector3d t1 = Eigen::Vector3d::Unit(pivot).cross(u).normalized();
        const Eigen::Vector3d t2 = u.cross(t1);
        const Eigen::Vector3d xu = p.r_s.cross(u);
        const Eigen::Vector3d xt1 = p.r_s.cross(t1);
        const Eigen::Vector3d xt2 = p.r_s.cross(t2);
        for (int j = 0; j < 3; ++j) {
            cm_a[j] += p.area * u[j] * u[j];
            cm_b[j] += p.area * 0.5 * (1.0 - u[j] * u[j]);
            rot_a[j] += p.area * xu[j] * xu[j];
            rot_b[j] += p.area * 0.5 * (xt1[j] * xt1[j] + xt2[j] * xt2[j]);
        }
    }

    const auto grid = surface_frequency_grid(material, T);
    const GaussLegendre gl = gauss_legendre(64);
    const auto res = integrate_frequency(
        std::function<Eigen::VectorXd(double)>([&](double w) -> Eigen::VectorXd {
            const double spectral = w * w / (8.0 * pi * pi * pi * PC::c * PC::c) *
                                    bose_occupation(w, T) * w * w / (PC::c * PC::c);
            const double m3 = hemisphere_moment(material, w, 2, gl);          // mu^3 weight
            const double m1 = hemisphere_moment(material, w, 0, gl) - m3;     // mu (1 - mu^2)
            Eigen::VectorXd out(6);
            for (int j = 0; j < 3; ++j) {
                out[j] = spectral * (m3 * cm_a[j] + m1 * cm_b[j]);
                out[3 + j] = spectral * (m3 * rot_a[j] + m1 * rot_b[j]);
            }
            return out;
        }),
        grid, rel_tol);

    HeatingRates h;
    const double h2 = PC::hbar * PC::hbar;
    for (int j = 0; j < 3; ++j) {
        h.cm[j] = h2 / (2.0 * mass) * res.value[j];
        h.rot[j] = h2 / (2.0 * inertia[j]) * res.value[3 + j];
    }
    return h;
}

ComplexRate well_oriented_generator_rate(const Orientation& r, const Orientation& rp,
                                         const Eigen::Vector3d& dx,
                                         const SpheroidSurface& surface,
                                         const SurfaceMaterial& material, double T,
                                         double rel_tol) {
    const auto grid = surface_frequency_grid(material, T);
    const Eigen::Matrix3d dr = r.matrix() - rp.matrix();
    const double dx_norm = dx.norm();
    const Eigen::Vector3d axis =
        dx_norm > 0.0 ? Eigen::Vector3d(dx / dx_norm) : Eigen::Vector3d::UnitZ();

    const auto res = integrate_frequency(
        std::function<std::complex<double>(double)>([&](double w) -> std::complex<double> {
            const double k = w / PC::c;
            const int polar = std::max(24, static_cast<int>(std::ceil(0.55 * k * dx_norm)) + 16);
            const SphereQuadrature sq = sphere_quadrature_aligned(polar, 48, axis);
            const double spectral = w * w / (8.0 * pi * pi * pi * PC::c * PC::c) *
                                    bose_occupation(w, T);
            std::complex<double> sum(0.0, 0.0);
            for (std::size_t i = 0; i < sq.size(); ++i) {
                const Eigen::Vector3d& n = sq.directions[i];
                const std::complex<double> global =
                    std::exp(std::complex<double>(0.0, -k * n.dot(dx)));
                std::complex<double> cell(0.0, 0.0);
                for (const auto& p : surface.patches()) {
                    const double mu = n.dot(p.normal);
                    if (mu <= 0.0) continue;
                    const double phi = material.transmission_sum(mu, w) * mu;
                    const std::complex<double> local =
                        std::exp(std::complex<double>(0.0, -k * n.dot(dr * p.r_s)));
                    cell += p.area * phi * (1.0 - global * local);
                }
                sum += sq.weights[i] * cell;
            }
            return spectral * sum;
        }),
        grid, rel_tol);
    return ComplexRate{res.value.real(), res.value.imag()};
}

SurfaceValidity surface_validity(const SpheroidSurface& surface, const SurfaceMaterial& material,
                                 double T) {
    SurfaceValidity v{};
    v.min_extent = std::min(surface.l_perp(), surface.l_par());
    const double w_peak = thermal_peak_omega(T);
    v.thermal_wavelength = 2.0 * pi * PC::c / w_peak;
    if (material.is_black_body()) {
        v.absorption_length = 0.0;
    } else {
        const double w = std::clamp(w_peak, material.omega_min(), material.omega_max());
        const std::complex<double> nref = std::sqrt(material.table().permittivity(w));
        const double kappa = std::max(nref.imag(), 1e-300);
        v.absorption_length = PC::c / (2.0 * w * kappa);
    }
    v.extent_over_wavelength = v.min_extent / v.thermal_wavelength;
    v.extent_over_absorption =
        v.absorption_length > 0.0 ? v.min_extent / v.absorption_length
                                  : std::numeric_limits<double>::infinity();
    return v;
}

}  // namespace thermodec
