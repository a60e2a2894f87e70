#include "thermodec/small_particle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "thermodec/constants.hpp"

namespace thermodec {

namespace {

using PC = PhysicalConstants;

// 1 / (3 pi^2 c^3 eps0), the prefactor shared by all small-particle rates
const double kRatePrefactor =
    1.0 / (3.0 * pi * pi * PC::c * PC::c * PC::c * PC::eps0);

}  // namespace

Eigen::Vector3cd polarizability_eigenvalues(const EllipsoidShape& shape,
                                            std::complex<double> eps,
                                            const Eigen::Vector3d& depol) {
    if (eps.imag() < 0.0)
        throw std::invalid_argument("polarizability requires Im eps >= 0");
    const double v = shape.volume();
    const std::complex<double> chi = eps - 1.0;
    Eigen::Vector3cd alpha;
    for (int i = 0; i < 3; ++i) {
        const std::complex<double> denom = 1.0 + depol[i] * chi;
        if (std::abs(denom) < 1e-14 * std::max(1.0, std::abs(chi))) {
            std::ostringstream msg;
            msg << "polarizability pole: 1 + L_" << i + 1 << " (eps - 1) = 0 at eps = ("
                << eps.real() << ", " << eps.imag() << ")";
            throw std::domain_error(msg.str());
        }
        alpha[i] = PC::eps0 * v * chi / denom;
    }
    return alpha;
}

SmallParticleModel::SmallParticleModel(EllipsoidShape shape, PermittivityTable material,
                                       DepolarizationMode mode)
    : shape_(shape), material_(std::move(material)),
      depol_(depolarization_factors(shape, mode)) {}

Eigen::Vector3cd SmallParticleModel::polarizability_eigenvalues(double omega) const {
    return thermodec::polarizability_eigenvalues(shape_, material_.permittivity(omega), depol_);
}

Eigen::Matrix3cd SmallParticleModel::polarizability(double omega) const {
    return polarizability_eigenvalues(omega).asDiagonal();
}

Eigen::Vector3d SmallParticleModel::alpha_im(double omega) const {
    return polarizability_eigenvalues(omega).imag();
}

double SmallParticleModel::spectral_photon_rate(double omega, double T) const {
    return kRatePrefactor * thermal_weight(omega, T) * alpha_im(omega).sum();
}

FrequencyGrid SmallParticleModel::frequency_grid(double T) const {
    const auto [x_lo, x_hi] = thermal_window_x();
    const double scale = PC::k_B * T / PC::hbar;
    const double lo = std::max(x_lo * scale, material_.omega_min());
    const double hi = std::min(x_hi * scale, material_.omega_max());
    if (!(hi > lo)) {
        std::ostringstream msg;
        msg << "thermal window at T = " << T
            << " K does not overlap the material support";
        throw std::runtime_error(msg.str());
    }
    FrequencyGrid grid = FrequencyGrid::log_spaced(lo, hi, 96);
    std::vector<double> nodes;
    nodes.reserve(material_.size());
    for (const auto& s : material_.samples()) nodes.push_back(s.omega);
    grid.insert(nodes);
    return grid;
}

bool SmallParticleModel::thermal_peak_in_support(double T) const {
    const double peak = thermal_peak_omega(T);
    return peak >= material_.omega_min() && peak <= material_.omega_max();
}

double SmallParticleModel::total_emission_rate(double T, double rel_tol) const {
    const auto grid = frequency_grid(T);
    const auto res = integrate_frequency(
        std::function<double(double)>([&](double w) { return spectral_photon_rate(w, T); }),
        grid, rel_tol);
    return res.value;
}

double SmallParticleModel::gamma_or(double T, double rel_tol) const {
    const auto grid = frequency_grid(T);
    const auto res = integrate_frequency(
        std::function<double(double)>([&](double w) {
            return kRatePrefactor * thermal_weight(w, T) * alpha_im(w)[2];
        }),
        grid, rel_tol);
    return res.value;
}

double SmallParticleModel::orientational_localization_rate(const Orientation& r,
                                                           const Orientation& rp, double T,
                                                           double rel_tol) const {
    const Eigen::Matrix3d rel = r.matrix().transpose() * rp.matrix();
    const auto grid = frequency_grid(T);
    const auto res = integrate_frequency(
        std::function<double(double)>([&](double w) {
            const Eigen::Vector3d a = alpha_im(w);
            // TR[alpha'' (1 - R^T R')] with diagonal alpha''
            double tr = 0.0;
            for (int i = 0; i < 3; ++i) tr += a[i] * (1.0 - rel(i, i));
            return kRatePrefactor * thermal_weight(w, T) * tr;
        }),
        grid, rel_tol);
    return res.value;
}

ComplexRate SmallParticleModel::localization_rate(const Orientation& r, const Orientation& rp,
                                                  const Eigen::Vector3d& dx, double T,
                                                  double rel_tol) const {
    const Eigen::Matrix3d rmat = r.matrix();
    const Eigen::Matrix3d rp_t = rp.matrix().transpose();
    const auto grid = frequency_grid(T);
    const auto res = integrate_frequency(
        std::function<double(double)>([&](double w) {
            const Eigen::Vector3d a = alpha_im(w);
            const Eigen::Matrix3d g = (6.0 * pi * PC::c / w) * im_free_green(dx, w);
            const Eigen::Matrix3d m = rp_t * g * rmat;
            double tr = 0.0;
            for (int i = 0; i < 3; ++i) tr += a[i] * (1.0 - m(i, i));
            return kRatePrefactor * thermal_weight(w, T) * tr;
        }),
        grid, rel_tol);
    // The phase term of the complex rate cancels for s-independent amplitudes:
    // the sin(k n . dX) part integrates to zero over the sphere by parity.
    return ComplexRate{res.value, 0.0};
}

ComplexRate SmallParticleModel::linear_rotor_rate(const Eigen::Vector3d& m,
                                                  const Eigen::Vector3d& mp,
                                                  const Eigen::Vector3d& dx, double T,
                                                  double rel_tol) const {
    if (std::abs(m.norm() - 1.0) > 1e-12 || std::abs(mp.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("linear_rotor_rate requires unit vectors");
    const auto grid = frequency_grid(T);
    const auto res = integrate_frequency(
        std::function<double(double)>([&](double w) {
            const double a3 = alpha_im(w)[2];
            const Eigen::Matrix3d g = (6.0 * pi * PC::c / w) * im_free_green(dx, w);
            return kRatePrefactor * thermal_weight(w, T) * a3 * (1.0 - m.dot(g * mp));
        }),
        grid, rel_tol);
    return ComplexRate{res.value, 0.0};
}

Eigen::Matrix3d SmallParticleModel::angular_momentum_diffusion(
    const std::function<Eigen::Matrix3d(const Eigen::Matrix3d&)>& orientation_average, double T,
    double rel_tol) const {
    const auto grid = frequency_grid(T);
    const auto res = integrate_frequency(
        std::function<Eigen::Matrix3d(double)>([&](double w) -> Eigen::Matrix3d {
            const Eigen::Vector3d a = alpha_im(w);
            const Eigen::Matrix3d avg = orientation_average(Eigen::Matrix3d(a.asDiagonal()));
            const double tr = a.sum();
            if (std::abs(avg.trace() - tr) > 1e-6 * std::max(tr, 1e-300))
                throw std::invalid_argument(
                    "orientation average does not preserve TR[alpha'']");
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (avg + avg.transpose()));
            if (es.eigenvalues().minCoeff() < -1e-9 * std::max(tr, 1e-300))
                throw std::invalid_argument("orientation average is not positive semidefinite");
            const double weight = PC::hbar * PC::hbar * kRatePrefactor * thermal_weight(w, T);
            return weight * (tr * Eigen::Matrix3d::Identity() - avg);
        }),
        grid, rel_tol);
    return res.value;
}

HeatingRates SmallParticleModel::heating_rates(double T, double rel_tol) const {
    const auto grid = frequency_grid(T);
    const auto res = integrate_frequency(
        std::function<Eigen::VectorXd(double)>([&](double w) -> Eigen::VectorXd {
            const Eigen::Vector3d a = alpha_im(w);
            const double tr = a.sum();
            const double wt3 = kRatePrefactor * thermal_weight(w, T);
            const double wt5 = wt3 * w * w / (5.0 * PC::c * PC::c);
            Eigen::VectorXd out(6);
            for (int i = 0; i < 3; ++i) {
                out[i] = wt3 * (tr - a[i]);            // rotational, before hbar^2/2I
                out[3 + i] = wt5 * (2.0 * tr - a[i]);  // center of mass, before hbar^2/2m
            }
            return out;
        }),
        grid, rel_tol);
    const Eigen::Vector3d inertia = shape_.moments_of_inertia();
    HeatingRates h;
    const double h2 = PC::hbar * PC::hbar;
    for (int i = 0; i < 3; ++i) {
        h.rot[i] = h2 / (2.0 * inertia[i]) * res.value[i];
        h.cm[i] = h2 / (2.0 * shape_.mass) * res.value[3 + i];
    }
    return h;
}

SmallParticleAmplitude::SmallParticleAmplitude(const SmallParticleModel& model,
                                               int basis_pivot_shift)
    : model_(&model), pivot_shift_(basis_pivot_shift) {}

Eigen::Vector3cd SmallParticleAmplitude::amplitude(int sigma, const Eigen::Vector3d& n,
                                                   const Eigen::Vector3d& /*s*/, double omega,
                                                   const Orientation& r) const {
    const std::complex<double> eps = model_->material().permittivity(omega);
    if (std::abs(eps - 1.0) < 1e-14)
        throw std::domain_error("emission amplitude undefined at eps = 1");
    const PolarizationBasis basis = polarization_basis(n, pivot_shift_);
    const Eigen::Vector3cd e = sigma == 0 ? basis.e1 : basis.e2;
    const Eigen::Vector3cd alpha = model_->polarizability_eigenvalues(omega);
    const std::complex<double> scale =
        1.0 / (4.0 * pi * PC::eps0 * model_->shape().volume() * (eps - 1.0));
    // e_sigma^* . (R alpha) = alpha R^T e_sigma^* for diagonal alpha
    const Eigen::Vector3cd rte =
        r.matrix().transpose().cast<std::complex<double>>() * e.conjugate();
    return scale * alpha.cwiseProduct(rte);
}

ComplexRate localization_rate_via_amplitude(const EmissionAmplitudeProvider& provider,
                                            const Orientation& r, const Orientation& rp,
                                            const Eigen::Vector3d& dx,
                                            const SmallParticleModel& model, double T,
                                            int sphere_order, double rel_tol) {
    const auto grid = model.frequency_grid(T);
    if (sphere_order <= 0) {
        const double k_max = grid.upper() / PC::c;
        sphere_order = std::max(24, static_cast<int>(std::ceil(0.55 * k_max * dx.norm())) + 8);
    }
    const SphereQuadrature sq = sphere_quadrature(sphere_order);
    const double volume = model.shape().volume();
    const Eigen::Vector3d source = Eigen::Vector3d::Zero();

    const auto res = integrate_frequency(
        std::function<std::complex<double>(double)>([&](double w) -> std::complex<double> {
            const std::complex<double> eps = model.material().permittivity(w);
            const double weight = 2.0 * w * w * w /
                                  (pi * PC::c * PC::c * PC::c) * bose_occupation(w, T) *
                                  eps.imag() * volume;
            const double k = w / PC::c;
            std::complex<double> sum(0.0, 0.0);
            for (std::size_t i = 0; i < sq.size(); ++i) {
                const Eigen::Vector3d& n = sq.directions[i];
                const std::complex<double> phase =
                    std::exp(std::complex<double>(0.0, -k * n.dot(dx)));
                std::complex<double> cell(0.0, 0.0);
                for (int sigma = 0; sigma < 2; ++sigma) {
                    const Eigen::Vector3cd ka = provider.amplitude(sigma, n, source, w, r);
                    const Eigen::Vector3cd kb = provider.amplitude(sigma, n, source, w, rp);
                    const Eigen::Vector3cd diff = phase * ka - kb;
                    // Eigen dot conjugates its first factor, so kb.dot(x) = sum x_i kb_i^*
                    const std::complex<double> cross = kb.dot(phase * ka);
                    cell += std::complex<double>(0.5 * diff.squaredNorm(), cross.imag());
                }
                sum += sq.weights[i] * cell;
            }
            return weight * sum;
        }),
        grid, rel_tol);
    return ComplexRate{res.value.real(), res.value.imag()};
}

}  // namespace thermodec
