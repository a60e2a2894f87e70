#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "thermodec/geometry.hpp"
#include "thermodec/material.hpp"
#include "thermodec/small_particle.hpp"

namespace thermodec {

struct SurfacePatch {
    Eigen::Vector3d r_s;     // body frame, center-of-mass origin [m]
    Eigen::Vector3d normal;  // outward unit normal
    double area = 0.0;       // [m^2]
};

/// Quadrature tiling of a spheroid surface: Gauss-Legendre in the polar
/// parameter, uniform azimuth, exact area Jacobian.
class SpheroidSurface {
public:
    SpheroidSurface(double l_perp, double l_par, int polar_order, int azimuth_count);
    static SpheroidSurface sphere(double radius, int polar_order, int azimuth_count);

    const std::vector<SurfacePatch>& patches() const { return patches_; }
    double quadrature_area() const { return quad_area_; }
    double analytic_area() const;
    double l_perp() const { return l_perp_; }
    double l_par() const { return l_par_; }

private:
    double l_perp_, l_par_;
    std::vector<SurfacePatch> patches_;
    double quad_area_ = 0.0;
};

struct FresnelSet {
    std::complex<double> t_s, t_p;       // amplitude transmission, incident side
    double R_s, R_p;                     // intensity reflection, in [0, 1]
    double T_s, T_p;                     // 1 - R_sigma
    std::complex<double> k_perp_in;      // Im >= 0 [1/m]
    double k_perp_ex;                    // >= 0 [1/m]
};

/// Normal wavevector components k sqrt(eps_m - |e_perp x n|^2) on both sides
/// of the interface; interior branch with Im >= 0.
std::pair<std::complex<double>, double> wavevector_normal(const Eigen::Vector3d& n,
                                                          const Eigen::Vector3d& e_perp,
                                                          std::complex<double> eps, double omega);

FresnelSet fresnel(const Eigen::Vector3d& n, const Eigen::Vector3d& e_perp,
                   std::complex<double> eps, double omega);

/// Sum over s/p of |t_sigma / k_perp_in|^2 (e_sigma_in . e_sigma_in*), built
/// from the transmission amplitudes and the interior polarization vectors
/// (with the non-unit p normalization). Collapses to
/// (2 - R_s - R_p)/(k_perp_ex Re k_perp_in); both routes are exposed so the
/// identity can be verified. Throws on grazing or fully evanescent geometry.
double jump_factor(const Eigen::Vector3d& n, const Eigen::Vector3d& e_perp,
                   std::complex<double> eps, double omega);
double jump_factor_fresnel(const Eigen::Vector3d& n, const Eigen::Vector3d& e_perp,
                           std::complex<double> eps, double omega);

/// Emitting surface: either a dielectric with tabulated permittivity or the
/// ideal black body T_s = T_p = 1.
class SurfaceMaterial {
public:
    static SurfaceMaterial black_body();
    static SurfaceMaterial dielectric(PermittivityTable table);

    bool is_black_body() const { return !table_.has_value(); }
    const PermittivityTable& table() const;

    /// T_s + T_p for incidence cosine mu = n . e_perp in (0, 1].
    double transmission_sum(double mu, double omega) const;

    double omega_min() const;
    double omega_max() const;

private:
    SurfaceMaterial() = default;
    std::optional<PermittivityTable> table_;
};

/// Spectral photon intensity per solid angle and surface area,
///   Phi_s = (w^2 / 8 pi^3 c^2) n(w) (T_s + T_p) n_perp Theta(n_perp).
double surface_photon_intensity(const Eigen::Vector3d& n, const SurfacePatch& patch,
                                const SurfaceMaterial& material, double omega, double T);

/// Total photon rate integrated over frequency, emission directions and the
/// whole surface.
double total_surface_emission_rate(const SpheroidSurface& surface,
                                   const SurfaceMaterial& material, double T,
                                   double rel_tol = 1e-8);

/// Surface-limit heating rates from the second moments of the outgoing
/// linear and angular photon momenta.
HeatingRates heating_rates_large(const SpheroidSurface& surface, const SurfaceMaterial& material,
                                 double T, double mass, const Eigen::Vector3d& inertia,
                                 double rel_tol = 1e-8);

/// Decoherence rate of the well-oriented surface-limit generator,
///   F = int Phi_s [1 - exp(-i (w/c) n . (dX + (R - R') r_s))].
/// Callers must keep ||R - 1|| and ||R' - 1|| small for the physics to apply.
ComplexRate well_oriented_generator_rate(const Orientation& r, const Orientation& rp,
                                         const Eigen::Vector3d& dx,
                                         const SpheroidSurface& surface,
                                         const SurfaceMaterial& material, double T,
                                         double rel_tol = 1e-7);

/// Length-scale ratios users need to judge the surface-limit validity.
struct SurfaceValidity {
    double min_extent;         // smallest semi-axis [m]
    double thermal_wavelength; // 2 pi c / omega_peak [m]
    double absorption_length;  // c / (2 omega_peak Im sqrt(eps)) [m]
    double extent_over_wavelength;
    double extent_over_absorption;
};
SurfaceValidity surface_validity(const SpheroidSurface& surface, const SurfaceMaterial& material,
                                 double T);

}  // namespace thermodec
