#pragma once

namespace thermodec {

// CODATA 2018 values, SI units.
struct PhysicalConstants {
    static constexpr double hbar = 1.054571817e-34;  // J s
    static constexpr double c = 2.99792458e8;        // m/s
    static constexpr double k_B = 1.380649e-23;      // J/K
    static constexpr double eps0 = 8.8541878128e-12; // F/m
    static constexpr double amu = 1.66053906660e-27; // kg
};

inline constexpr double pi = 3.14159265358979323846;

}  // namespace thermodec
