#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace thermodec {

/// Wigner 3-j symbol, log-gamma stabilized Racah sum. Arguments violating the
/// selection rules return exactly 0.
double wigner3j(int l1, int l2, int l3, int m1, int m2, int m3);

/// <l m k| D^{l''*}_{m'' k''} |l' m' k'> =
///   (-1)^{m-k} sqrt((2l+1)(2l'+1)) 3j(l l' l''; -m m' m'') 3j(l l' l''; -k k' k'')
double wignerD_element(int l, int m, int k, int lp, int mp, int kp, int lpp, int mpp, int kpp);

/// Normalized spherical harmonic Y_l^m(direction), Condon-Shortley phase.
std::complex<double> spherical_harmonic(int l, int m, const Eigen::Vector3d& direction);

/// Truncated |l,m> basis, 0 <= l <= lmax, flat index l^2 + l + m.
class AngularBasis {
public:
    explicit AngularBasis(int lmax);
    int lmax() const { return lmax_; }
    int dim() const { return (lmax_ + 1) * (lmax_ + 1); }
    int index(int l, int m) const;
    std::pair<int, int> quantum_numbers(int index) const;

private:
    int lmax_;
};

using SparseOp = Eigen::SparseMatrix<std::complex<double>>;

/// Body-fixed symmetry-axis operator truncated at lmax, in the conjugate
/// spherical basis (m_+, m_-, m_0) and Cartesian components (mx, my, mz).
/// On the interior block l <= lmax - 1: m0^dag = m0, m_pm^dag = -m_mp and
/// sum_j mj^dag mj = 1.
struct BodyAxisOperators {
    int lmax = 0;
    SparseOp m_plus, m_minus, m_zero;
    SparseOp mx, my, mz;
};
BodyAxisOperators body_axis_operators(int lmax);

/// Validation helpers for rotor density matrices.
double hermiticity_defect(const Eigen::MatrixXcd& rho);
double trace_defect(const Eigen::MatrixXcd& rho);

/// Collapsed thermal-emission generator of the linear rotor at fixed center
/// of mass: D rho = Gamma_or (sum_j mj rho mj - rho).
class LindbladGenerator {
public:
    LindbladGenerator(int lmax, double gamma_or);

    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
    double gamma() const { return gamma_; }
    int lmax() const { return ops_.lmax; }
    const BodyAxisOperators& operators() const { return ops_; }

private:
    BodyAxisOperators ops_;
    double gamma_;
};

/// Fisher-concentrated orientation wavepacket about `direction`:
/// amplitudes Y_l^m(direction)^* exp(-l(l+1)/2 kappa), normalized.
Eigen::VectorXcd orientation_wavepacket(const AngularBasis& basis,
                                        const Eigen::Vector3d& direction, double kappa);

/// Normalized equal superposition of two wavepackets.
Eigen::MatrixXcd superposition_state(const AngularBasis& basis, const Eigen::Vector3d& m,
                                     const Eigen::Vector3d& mp, double kappa);

/// Orientation-representation kernel rho(a, b) = <a| rho |b> evaluated at two
/// points of the sphere.
std::complex<double> orientation_kernel(const AngularBasis& basis, const Eigen::MatrixXcd& rho,
                                        const Eigen::Vector3d& a, const Eigen::Vector3d& b);

struct RotorObservables {
    Eigen::Vector3d J = Eigen::Vector3d::Zero();        // [hbar]
    Eigen::Matrix3d JJ = Eigen::Matrix3d::Zero();       // [hbar^2]
    Eigen::Vector3d m_axis = Eigen::Vector3d::Zero();   // <m>
};
RotorObservables rotor_observables(const AngularBasis& basis, const Eigen::MatrixXcd& rho);

struct RotorStep {
    double t = 0.0;
    std::complex<double> coherence;  // kernel at the probe pair
    RotorObservables obs;
    double jsq = 0.0;                // <J^2> [hbar^2]
    double leakage = 0.0;            // population of the top shell l = lmax
    double trace_defect = 0.0;
    double herm_defect = 0.0;
    std::array<std::complex<double>, 3> rho_entries;  // (00|00), (10|10), (10|00)
};

struct RotorTrajectory {
    std::vector<RotorStep> steps;
    Eigen::MatrixXcd final_state;
    int lmax = 0;
};

struct PropagationOptions {
    double free_rotation_rate = 0.0;  // B in H = hbar B L^2; 0 disables
    bool probe = false;               // record the orientation kernel at (m, mp)
    Eigen::Vector3d probe_m = Eigen::Vector3d::UnitZ();
    Eigen::Vector3d probe_mp = Eigen::Vector3d::UnitZ();
};

/// Fixed-step RK4 propagation of d rho/dt = D rho (- i B [L^2, rho]).
/// Requires dt * Gamma_or <= 0.1; aborts when the trace drifts beyond 1e-6.
RotorTrajectory propagate(const Eigen::MatrixXcd& rho0, const LindbladGenerator& gen,
                          double t_final, double dt, const PropagationOptions& opts = {});

struct CoherenceFit {
    double rate = 0.0;        // 1/s
    double residual = 0.0;    // rms residual of the log-linear fit
    std::size_t points = 0;
};

/// Exponential decay rate of the recorded coherence observable, from a linear
/// least-squares fit of log|C(t)|. Throws when the fit residual exceeds
/// max_residual.
CoherenceFit coherence_decay_rate(const RotorTrajectory& traj, double max_residual = 0.05);

}  // namespace thermodec
