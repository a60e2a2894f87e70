#include "thermodec/rotor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "thermodec/constants.hpp"

namespace thermodec {

namespace {

double factln(int n) { return std::lgamma(n + 1.0); }

using Complex = std::complex<double>;
using Triplet = Eigen::Triplet<Complex>;

}  // namespace

double wigner3j(int l1, int l2, int l3, int m1, int m2, int m3) {
    if (l1 < 0 || l2 < 0 || l3 < 0) return 0.0;
    if (m1 + m2 + m3 != 0) return 0.0;
    if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(m3) > l3) return 0.0;
    if (l3 < std::abs(l1 - l2) || l3 > l1 + l2) return 0.0;

    // Racah sum, log-gamma stabilized
    const double log_delta = factln(l1 + l2 - l3) + factln(l1 - l2 + l3) +
                             factln(-l1 + l2 + l3) - factln(l1 + l2 + l3 + 1);
    const double log_norm = factln(l1 + m1) + factln(l1 - m1) + factln(l2 + m2) +
                            factln(l2 - m2) + factln(l3 + m3) + factln(l3 - m3);

    const int t_min = std::max({0, l2 - l3 - m1, l1 - l3 + m2});
    const int t_max = std::min({l1 + l2 - l3, l1 - m1, l2 + m2});
    double sum = 0.0;
    for (int t = t_min; t <= t_max; ++t) {
        const double log_term = factln(t) + factln(l3 - l2 + m1 + t) +
                                factln(l3 - l1 - m2 + t) + factln(l1 + l2 - l3 - t) +
                                factln(l1 - m1 - t) + factln(l2 + m2 - t);
        const double term = std::exp(0.5 * (log_delta + log_norm) - log_term);
        sum += (t % 2 == 0 ? term : -term);
    }
    const int phase = l1 - l2 - m3;
    return (phase % 2 == 0 ? sum : -sum);
}

double wignerD_element(int l, int m, int k, int lp, int mp, int kp, int lpp, int mpp, int kpp) {
    const double a = wigner3j(l, lp, lpp, -m, mp, mpp);
    if (a == 0.0) return 0.0;
    const double b = wigner3j(l, lp, lpp, -k, kp, kpp);
    if (b == 0.0) return 0.0;
    const double norm = std::sqrt((2.0 * l + 1.0) * (2.0 * lp + 1.0));
    const int phase = m - k;
    return (phase % 2 == 0 ? 1.0 : -1.0) * norm * a * b;
}

namespace {

// All normalized spherical harmonics up to lmax at one direction,
// flat-indexed as l^2 + l + m.
Eigen::VectorXcd sph_harm_all(int lmax, const Eigen::Vector3d& direction) {
    const double r = direction.norm();
    if (!(r > 0.0)) throw std::invalid_argument("spherical harmonic of zero vector");
    const double ct = std::clamp(direction.z() / r, -1.0, 1.0);
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double phi = std::atan2(direction.y(), direction.x());

    Eigen::VectorXcd out((lmax + 1) * (lmax + 1));
    // normalized associated Legendre, Condon-Shortley phase included
    std::vector<std::vector<double>> p(lmax + 1, std::vector<double>(lmax + 1, 0.0));
    p[0][0] = std::sqrt(1.0 / (4.0 * pi));
    for (int m = 1; m <= lmax; ++m)
        p[m][m] = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * p[m - 1][m - 1];
    for (int m = 0; m < lmax; ++m) p[m + 1][m] = std::sqrt(2.0 * m + 3.0) * ct * p[m][m];
    for (int m = 0; m <= lmax; ++m)
        for (int l = m + 2; l <= lmax; ++l) {
            const double a = std::sqrt((4.0 * l * l - 1.0) / (l * l - m * m));
            const double b =
                std::sqrt(((l - 1.0) * (l - 1.0) - m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
            p[l][m] = a * (ct * p[l - 1][m] - b * p[l - 2][m]);
        }

    for (int l = 0; l <= lmax; ++l) {
        out[l * l + l] = p[l][0];
        for (int m = 1; m <= l; ++m) {
            const Complex e = std::exp(Complex(0.0, m * phi));
            const Complex y = p[l][m] * e;
            out[l * l + l + m] = y;
            out[l * l + l - m] = (m % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
        }
    }
    return out;
}

}  // namespace

std::complex<double> spherical_harmonic(int l, int m, const Eigen::Vector3d& direction) {
    if (l < 0 || std::abs(m) > l) throw std::invalid_argument("invalid quantum numbers");
    return sph_harm_all(l, direction)[l * l + l + m];
}

AngularBasis::AngularBasis(int lmax) : lmax_(lmax) {
    if (lmax < 0) throw std::invalid_argument("lmax must be non-negative");
}

int AngularBasis::index(int l, int m) const {
    if (l < 0 || l > lmax_ || std::abs(m) > l)
        throw std::out_of_range("quantum numbers outside basis");
    return l * l + l + m;
}

std::pair<int, int> AngularBasis::quantum_numbers(int index) const {
    if (index < 0 || index >= dim()) throw std::out_of_range("index outside basis");
    const int l = static_cast<int>(std::sqrt(static_cast<double>(index)));
    return {l, index - l * l - l};
}

BodyAxisOperators body_axis_operators(int lmax) {
    if (lmax < 1) throw std::invalid_argument("body_axis_operators requires lmax >= 1");
    const AngularBasis basis(lmax);
    const int dim = basis.dim();
    std::vector<Triplet> tp, tm, tz;
    for (int l = 0; l < lmax; ++l) {
        const double pref = 1.0 / std::sqrt(2.0 * (2.0 * l + 1.0) * (2.0 * l + 3.0));
        for (int m = -l; m <= l; ++m) {
            // m_+ couplings out of |l, m>
            tp.emplace_back(basis.index(l + 1, m + 1), basis.index(l, m),
                            pref * std::sqrt((l + m + 1.0) * (l + m + 2.0)));
            tp.emplace_back(basis.index(l, m), basis.index(l + 1, m - 1),
                            -pref * std::sqrt((l - m + 1.0) * (l - m + 2.0)));
            // m_-
            tm.emplace_back(basis.index(l + 1, m - 1), basis.index(l, m),
                            pref * std::sqrt((l - m + 1.0) * (l - m + 2.0)));
            tm.emplace_back(basis.index(l, m), basis.index(l + 1, m + 1),
                            -pref * std::sqrt((l + m + 1.0) * (l + m + 2.0)));
            // m_0
            const double c0 =
                std::sqrt(((l + 1.0) * (l + 1.0) - m * m) / ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
            tz.emplace_back(basis.index(l, m), basis.index(l + 1, m), c0);
            tz.emplace_back(basis.index(l + 1, m), basis.index(l, m), c0);
        }
    }
    BodyAxisOperators ops;
    ops.lmax = lmax;
    ops.m_plus.resize(dim, dim);
    ops.m_minus.resize(dim, dim);
    ops.m_zero.resize(dim, dim);
    ops.m_plus.setFromTriplets(tp.begin(), tp.end());
    ops.m_minus.setFromTriplets(tm.begin(), tm.end());
    ops.m_zero.setFromTriplets(tz.begin(), tz.end());
    const Complex i(0.0, 1.0);
    const double s2 = std::sqrt(2.0);
    ops.mx = ((ops.m_minus - ops.m_plus) / s2).pruned();
    ops.my = ((ops.m_plus + ops.m_minus) * (i / s2)).pruned();
    ops.mz = ops.m_zero;
    return ops;
}

double hermiticity_defect(const Eigen::MatrixXcd& rho) {
    return (rho - rho.adjoint()).norm() / std::max(rho.norm(), 1e-300);
}

double trace_defect(const Eigen::MatrixXcd& rho) { return std::abs(rho.trace() - 1.0); }

LindbladGenerator::LindbladGenerator(int lmax, double gamma_or)
    : ops_(body_axis_operators(lmax)), gamma_(gamma_or) {
    if (gamma_or < 0.0) throw std::invalid_argument("Gamma_or must be non-negative");
}

Eigen::MatrixXcd LindbladGenerator::apply(const Eigen::MatrixXcd& rho) const {
    Eigen::MatrixXcd out = -rho;
    out.noalias() += ops_.mx * (rho * ops_.mx);
    out.noalias() += ops_.my * (rho * ops_.my);
    out.noalias() += ops_.mz * (rho * ops_.mz);
    return gamma_ * out;
}

Eigen::VectorXcd orientation_wavepacket(const AngularBasis& basis,
                                        const Eigen::Vector3d& direction, double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    const Eigen::VectorXcd y = sph_harm_all(basis.lmax(), direction);
    Eigen::VectorXcd psi(basis.dim());
    for (int l = 0; l <= basis.lmax(); ++l) {
        const double damp = std::exp(-l * (l + 1.0) / (2.0 * kappa));
        for (int m = -l; m <= l; ++m) {
            const int i = basis.index(l, m);
            psi[i] = std::conj(y[i]) * damp;
        }
    }
    return psi / psi.norm();
}

Eigen::MatrixXcd superposition_state(const AngularBasis& basis, const Eigen::Vector3d& m,
                                     const Eigen::Vector3d& mp, double kappa) {
    const Eigen::VectorXcd a = orientation_wavepacket(basis, m, kappa);
    const Eigen::VectorXcd b = orientation_wavepacket(basis, mp, kappa);
    Eigen::VectorXcd psi = a + b;
    psi /= psi.norm();
    return psi * psi.adjoint();
}

std::complex<double> orientation_kernel(const AngularBasis& basis, const Eigen::MatrixXcd& rho,
                                        const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    const Eigen::VectorXcd ya = sph_harm_all(basis.lmax(), a);
    const Eigen::VectorXcd yb = sph_harm_all(basis.lmax(), b);
    return ya.transpose() * (rho * yb.conjugate());
}

namespace {

struct AngularMomentumOps {
    SparseOp jx, jy, jz;
    Eigen::VectorXd jsq;  // diagonal l(l+1)
};

AngularMomentumOps angular_momentum_ops(const AngularBasis& basis) {
    const int lmax = basis.lmax();
    std::vector<Triplet> tp, tm, tz;
    Eigen::VectorXd jsq(basis.dim());
    for (int l = 0; l <= lmax; ++l) {
        for (int m = -l; m <= l; ++m) {
            const int i = basis.index(l, m);
            jsq[i] = l * (l + 1.0);
            tz.emplace_back(i, i, static_cast<double>(m));
            if (m + 1 <= l)
                tp.emplace_back(basis.index(l, m + 1), i,
                                std::sqrt(l * (l + 1.0) - m * (m + 1.0)));
            if (m - 1 >= -l)
                tm.emplace_back(basis.index(l, m - 1), i,
                                std::sqrt(l * (l + 1.0) - m * (m - 1.0)));
        }
    }
    SparseOp jp(basis.dim(), basis.dim()), jm(basis.dim(), basis.dim());
    AngularMomentumOps ops;
    ops.jz.resize(basis.dim(), basis.dim());
    jp.setFromTriplets(tp.begin(), tp.end());
    jm.setFromTriplets(tm.begin(), tm.end());
    ops.jz.setFromTriplets(tz.begin(), tz.end());
    const Complex i(0.0, 1.0);
    ops.jx = ((jp + jm) * Complex(0.5, 0.0)).pruned();
    ops.jy = ((jp - jm) * (-0.5 * i)).pruned();
    ops.jsq = jsq;
    return ops;
}

double trace_product(const SparseOp& a, const Eigen::MatrixXcd& rho) {
    Complex tr(0.0, 0.0);
    for (int k = 0; k < a.outerSize(); ++k)
        for (SparseOp::InnerIterator it(a, k); it; ++it) tr += it.value() * rho(k, it.row());
    return tr.real();
}

// Tr[a b rho] without forming a dense a*b
Complex trace_ab_rho(const SparseOp& a, const SparseOp& b, const Eigen::MatrixXcd& rho) {
    const Eigen::MatrixXcd brho = b * rho;
    Complex tr(0.0, 0.0);
    for (int k = 0; k < a.outerSize(); ++k)
        for (SparseOp::InnerIterator it(a, k); it; ++it) tr += it.value() * brho(k, it.row());
    return tr;
}

}  // namespace

RotorObservables rotor_observables(const AngularBasis& basis, const Eigen::MatrixXcd& rho) {
    const AngularMomentumOps ops = angular_momentum_ops(basis);
    RotorObservables obs;
    obs.J = Eigen::Vector3d(trace_product(ops.jx, rho), trace_product(ops.jy, rho),
                            trace_product(ops.jz, rho));
    const SparseOp* js[3] = {&ops.jx, &ops.jy, &ops.jz};
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
            obs.JJ(a, b) =
                0.5 * (trace_ab_rho(*js[a], *js[b], rho) + trace_ab_rho(*js[b], *js[a], rho))
                          .real();
            obs.JJ(b, a) = obs.JJ(a, b);
        }
    if (basis.lmax() >= 1) {
        const BodyAxisOperators body = body_axis_operators(basis.lmax());
        obs.m_axis = Eigen::Vector3d(trace_product(body.mx, rho), trace_product(body.my, rho),
                                     trace_product(body.mz, rho));
    }
    return obs;
}

RotorTrajectory propagate(const Eigen::MatrixXcd& rho0, const LindbladGenerator& gen,
                          double t_final, double dt, const PropagationOptions& opts) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (gen.gamma() * dt > 0.1 + 1e-12)
        throw std::invalid_argument("propagate requires dt * Gamma_or <= 0.1");
    const AngularBasis basis(gen.lmax());
    if (rho0.rows() != basis.dim() || rho0.cols() != basis.dim())
        throw std::invalid_argument("state dimension does not match generator basis");

    const AngularMomentumOps jops = angular_momentum_ops(basis);
    const double b_rate = opts.free_rotation_rate;

    auto rhs = [&](const Eigen::MatrixXcd& rho) -> Eigen::MatrixXcd {
        Eigen::MatrixXcd d = gen.apply(rho);
        if (b_rate != 0.0) {
            // -i B [L^2, rho], L^2 diagonal
            for (int i = 0; i < rho.rows(); ++i)
                for (int j = 0; j < rho.cols(); ++j)
                    d(i, j) -= Complex(0.0, b_rate * (jops.jsq[i] - jops.jsq[j])) * rho(i, j);
        }
        return d;
    };

    const int steps = static_cast<int>(std::ceil(t_final / dt - 1e-12));
    RotorTrajectory traj;
    traj.lmax = gen.lmax();
    traj.steps.reserve(steps + 1);

    Eigen::MatrixXcd rho = rho0;
    const int i00 = basis.index(0, 0);
    const int i10 = basis.lmax() >= 1 ? basis.index(1, 0) : i00;
    for (int s = 0; s <= steps; ++s) {
        RotorStep rec;
        rec.t = s * dt;
        rec.obs = rotor_observables(basis, rho);
        rec.jsq = (jops.jsq.array() * rho.diagonal().real().array()).sum();
        double leak = 0.0;
        for (int m = -basis.lmax(); m <= basis.lmax(); ++m)
            leak += rho(basis.index(basis.lmax(), m), basis.index(basis.lmax(), m)).real();
        rec.leakage = leak;
        rec.trace_defect = trace_defect(rho);
        rec.herm_defect = hermiticity_defect(rho);
        rec.rho_entries = {rho(i00, i00), rho(i10, i10), rho(i10, i00)};
        if (opts.probe)
            rec.coherence = orientation_kernel(basis, rho, opts.probe_m, opts.probe_mp);
        traj.steps.push_back(rec);

        if (rec.trace_defect > 1e-6) {
            std::ostringstream msg;
            msg << "trace drift " << rec.trace_defect << " at t = " << rec.t
                << "; reduce dt or increase lmax";
            throw std::runtime_error(msg.str());
        }
        if (s == steps) break;

        const Eigen::MatrixXcd k1 = rhs(rho);
        const Eigen::MatrixXcd k2 = rhs(rho + 0.5 * dt * k1);
        const Eigen::MatrixXcd k3 = rhs(rho + 0.5 * dt * k2);
        const Eigen::MatrixXcd k4 = rhs(rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    traj.final_state = std::move(rho);
    return traj;
}

CoherenceFit coherence_decay_rate(const RotorTrajectory& traj, double max_residual) {
    if (traj.steps.size() < 3)
        throw std::invalid_argument("coherence fit needs at least 3 recorded steps");
    const double c0 = std::abs(traj.steps.front().coherence);
    if (!(c0 > 0.0)) throw std::runtime_error("initial coherence vanishes; nothing to fit");

    std::vector<double> t, y;
    for (const auto& s : traj.steps) {
        const double c = std::abs(s.coherence);
        if (c < c0 * std::exp(-3.0)) break;  // keep the fit in the early-decay window
        t.push_back(s.t);
        y.push_back(std::log(c));
    }
    if (t.size() < 3) throw std::runtime_error("coherence decays too fast for the step size");

    const std::size_t n = t.size();
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < n; ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    const double denom = n * stt - st * st;
    const double slope = (n * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (slope * t[i] + intercept);
        rss += r * r;
    }
    CoherenceFit fit;
    fit.rate = -slope;
    fit.residual = std::sqrt(rss / n);
    fit.points = n;
    if (fit.residual > max_residual) {
        std::ostringstream msg;
        msg << "coherence fit residual " << fit.residual << " exceeds " << max_residual;
        throw std::runtime_error(msg.str());
    }
    return fit;
}

}  // namespace thermodec
