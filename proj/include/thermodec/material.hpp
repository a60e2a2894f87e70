#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace thermodec {

/// Tabulated complex relative permittivity of a bulk material, stored on a
/// strictly increasing angular-frequency grid. Immutable after construction.
class PermittivityTable {
public:
    struct Sample {
        double omega;   // rad/s
        double eps_re;  // dimensionless
        double eps_im;  // dimensionless, >= 0
    };

    /// Parse a CSV stream. Accepted headers:
    ///   lambda_m,n,k            (wavelength in m, refractive index, extinction)
    ///   omega_rad_s,eps_re,eps_im
    /// Lines starting with '#' are comments. Wavelengths/frequencies must be
    /// strictly monotonic; rows are re-sorted to increasing omega.
    static PermittivityTable load(std::istream& in, std::string name = "");
    static PermittivityTable load_file(const std::string& path);

    PermittivityTable(std::vector<Sample> samples, std::string name, std::string source);

    /// Linear interpolation in omega; exact at nodes. Throws std::out_of_range
    /// outside the tabulated support.
    std::complex<double> permittivity(double omega) const;

    double omega_min() const { return samples_.front().omega; }
    double omega_max() const { return samples_.back().omega; }
    std::size_t size() const { return samples_.size(); }
    const std::vector<Sample>& samples() const { return samples_; }
    const std::string& name() const { return name_; }
    const std::string& source() const { return source_; }

    /// Write in omega_rad_s,eps_re,eps_im format with round-trip-exact floats.
    void save(std::ostream& out) const;

private:
    std::vector<Sample> samples_;
    std::string name_;
    std::string source_;
};

/// Bose-Einstein occupation 1/(exp(hbar w / kB T) - 1), stable for
/// hbar w << kB T and underflow-safe for hbar w >> kB T.
double bose_occupation(double omega, double T);

/// omega^3 * bose_occupation(omega, T)  [rad^3/s^3]
double thermal_weight(double omega, double T);

/// Location x* = hbar w / kB T of the maximum of omega^3 n(omega), solving
/// 3 (1 - exp(-x)) = x.
double thermal_peak_x();
double thermal_peak_omega(double T);

/// Dimensionless window [x_lo, x_hi] outside which omega^3 n(omega) is below
/// `drop` times its peak value.
std::pair<double, double> thermal_window_x(double drop = 1e-12);

}  // namespace thermodec
