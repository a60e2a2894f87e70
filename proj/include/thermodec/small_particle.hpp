#pragma once

#include <complex>
#include <functional>
#include <memory>

#include <Eigen/Dense>

#include "thermodec/geometry.hpp"
#include "thermodec/green.hpp"
#include "thermodec/material.hpp"
#include "thermodec/quadrature.hpp"

namespace thermodec {

/// Localization rate with decay (real) and phase (imaginary) parts, 1/s.
struct ComplexRate {
    double re = 0.0;
    double im = 0.0;
};

struct HeatingRates {
    Eigen::Vector3d cm = Eigen::Vector3d::Zero();   // W, per principal axis
    Eigen::Vector3d rot = Eigen::Vector3d::Zero();  // W, per principal axis
};

/// Principal-axis polarizability of a homogeneous dielectric ellipsoid,
///   alpha_i = eps0 V (eps - 1) / (1 + L_i (eps - 1)).
/// Throws on the plasmonic pole 1 + L_i (eps - 1) = 0.
Eigen::Vector3cd polarizability_eigenvalues(const EllipsoidShape& shape,
                                            std::complex<double> eps,
                                            const Eigen::Vector3d& depol);

/// All small-particle-limit quantities for a bound (shape, material) pair at
/// a uniform internal temperature supplied per call.
class SmallParticleModel {
public:
    SmallParticleModel(EllipsoidShape shape, PermittivityTable material,
                       DepolarizationMode mode = DepolarizationMode::Exact);

    const EllipsoidShape& shape() const { return shape_; }
    const PermittivityTable& material() const { return material_; }
    const Eigen::Vector3d& depolarization() const { return depol_; }

    Eigen::Vector3cd polarizability_eigenvalues(double omega) const;
    Eigen::Matrix3cd polarizability(double omega) const;
    /// Imaginary parts alpha_i'' of the principal polarizabilities.
    Eigen::Vector3d alpha_im(double omega) const;

    /// gamma_Ph(omega) = omega^3 n(omega) TR[alpha''] / 3 pi^2 c^3 eps0
    double spectral_photon_rate(double omega, double T) const;

    /// Gamma_Ph = integral of the spectral rate over the thermal window.
    double total_emission_rate(double T, double rel_tol = 1e-9) const;

    /// Pure orientational localization rate F_{R,R'}(0).
    double orientational_localization_rate(const Orientation& r, const Orientation& rp, double T,
                                           double rel_tol = 1e-9) const;

    /// Spatio-orientational localization rate F_{R,R'}(dX) via the closed
    /// small-particle form (imaginary part of the polarizability and of the
    /// free-space Green tensor).
    ComplexRate localization_rate(const Orientation& r, const Orientation& rp,
                                  const Eigen::Vector3d& dx, double T,
                                  double rel_tol = 1e-9) const;

    /// Linear-rotor rate F_{m,m'}(dX) involving alpha_3'' only.
    ComplexRate linear_rotor_rate(const Eigen::Vector3d& m, const Eigen::Vector3d& mp,
                                  const Eigen::Vector3d& dx, double T,
                                  double rel_tol = 1e-9) const;

    /// Gamma_or = int dw w^3 n(w) alpha_3''(w) / 3 pi^2 c^3 eps0, the
    /// orientational decay constant of the linear rotor.
    double gamma_or(double T, double rel_tol = 1e-9) const;

    /// Angular momentum diffusion tensor d<J (x) J>/dt. The caller supplies
    /// the state average <R alpha'' R^T> as a map applied to alpha''(omega);
    /// it must preserve the trace and positive semidefiniteness.
    Eigen::Matrix3d angular_momentum_diffusion(
        const std::function<Eigen::Matrix3d(const Eigen::Matrix3d&)>& orientation_average,
        double T, double rel_tol = 1e-9) const;

    HeatingRates heating_rates(double T, double rel_tol = 1e-9) const;

    /// Seed grid for frequency integration: thermal window clipped to the
    /// material support, with the tabulated nodes merged in.
    FrequencyGrid frequency_grid(double T) const;

    /// False when the peak of omega^3 n(omega) lies outside the tabulated
    /// support (rates are then dominated by missing data).
    bool thermal_peak_in_support(double T) const;

private:
    EllipsoidShape shape_;
    PermittivityTable material_;
    Eigen::Vector3d depol_;
};

/// Small-particle closed-form emission amplitude
///   K^sigma_R(n) = e_sigma^*(n) . R alpha / (4 pi eps0 V (eps - 1)),
/// independent of the source point s.
class SmallParticleAmplitude : public EmissionAmplitudeProvider {
public:
    SmallParticleAmplitude(const SmallParticleModel& model, int basis_pivot_shift = 0);

    Eigen::Vector3cd amplitude(int sigma, const Eigen::Vector3d& n, const Eigen::Vector3d& s,
                               double omega, const Orientation& r) const override;

private:
    const SmallParticleModel* model_;
    int pivot_shift_;
};

/// Direct numerical evaluation of the general emission-amplitude rate
/// (frequency x solid angle x polarization quadrature, with the source
/// integral collapsed to the volume for s-independent amplitudes). Serves as
/// the independent oracle for SmallParticleModel::localization_rate.
ComplexRate localization_rate_via_amplitude(const EmissionAmplitudeProvider& provider,
                                            const Orientation& r, const Orientation& rp,
                                            const Eigen::Vector3d& dx,
                                            const SmallParticleModel& model, double T,
                                            int sphere_order = 0, double rel_tol = 1e-8);

}  // namespace thermodec
