#pragma once

// Reference implementations used only by the tests. Everything here is kept
// deliberately independent of the code paths under test.

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace oracles {

// Composite Gauss-Legendre reference quadrature with many fixed panels;
// order and panel count are chosen so the result is good to ~1e-13 for the
// smooth integrands it is used on.
inline double reference_integral(const std::function<double(double)>& f, double a, double b,
                                 int panels = 200, int order = 24) {
    // Newton-iterated Legendre nodes, independent of the library routine
    std::vector<double> x(order), w(order);
    for (int i = 0; i < order; ++i) {
        double xi = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = xi;
            for (int l = 2; l <= order; ++l) {
                const double p2 = ((2.0 * l - 1.0) * xi * p1 - (l - 1.0) * p0) / l;
                p0 = p1;
                p1 = p2;
            }
            const double dp = order * (xi * p1 - p0) / (xi * xi - 1.0);
            const double dx = p1 / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = xi;
        for (int l = 2; l <= order; ++l) {
            const double p2 = ((2.0 * l - 1.0) * xi * p1 - (l - 1.0) * p0) / l;
            p0 = p1;
            p1 = p2;
        }
        const double dp = order * (xi * p1 - p0) / (xi * xi - 1.0);
        x[i] = xi;
        w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double pa = a + (b - a) * p / panels;
        const double pb = a + (b - a) * (p + 1) / panels;
        const double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
        for (int i = 0; i < order; ++i) sum += half * w[i] * f(mid + half * x[i]);
    }
    return sum;
}

// Quaternion-log extraction of the rotation angle between two orientations.
inline double quaternion_angle(const Eigen::Matrix3d& r, const Eigen::Matrix3d& rp) {
    const Eigen::Quaterniond q(Eigen::Matrix3d(r.transpose() * rp));
    const double v = Eigen::Vector3d(q.x(), q.y(), q.z()).norm();
    return 2.0 * std::atan2(v, std::abs(q.w()));
}

// Free-space Green tensor via numerical second derivatives of the scalar
// Helmholtz Green function, G_ij = (delta_ij + d_i d_j / k^2) g(r) with
// g = exp(ikr)/4 pi r. Long-double central differences with Richardson
// extrapolation; independent of the closed-form implementation.
inline Eigen::Matrix3cd green_by_differentiation(const Eigen::Vector3d& dr, double k) {
    using C = std::complex<long double>;
    auto g = [&](long double x, long double y, long double z) -> C {
        const long double r = std::sqrt(x * x + y * y + z * z);
        const C iu(0.0L, 1.0L);
        return std::exp(iu * (long double)(k)*r) / (4.0L * (long double)M_PI * r);
    };
    const long double r0 = dr.norm();
    auto second = [&](int i, int j, long double h) -> C {
        long double p[3] = {(long double)dr.x(), (long double)dr.y(), (long double)dr.z()};
        auto at = [&](long double di, long double dj) {
            long double q[3] = {p[0], p[1], p[2]};
            q[i] += di;
            q[j] += dj;
            return g(q[0], q[1], q[2]);
        };
        if (i == j)
            return (at(h, 0) - (long double)2.0 * at(0, 0) + at(-h, 0)) / (h * h);
        return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / ((long double)4.0 * h * h);
    };
    Eigen::Matrix3cd out;
    const long double h1 = r0 * 1e-4L, h2 = h1 / 2.0L;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const C d1 = second(i, j, h1);
            const C d2 = second(i, j, h2);
            const C extrap = ((long double)4.0 * d2 - d1) / (long double)3.0;  // Richardson
            C val = extrap / (C)((long double)(k)*k);
            if (i == j) val += g(dr.x(), dr.y(), dr.z());
            out(i, j) = std::complex<double>((double)val.real(), (double)val.imag());
        }
    return out;
}

// Exact Wigner 3-j values computed offline with exact rational arithmetic
// (Racah formula over the rationals); stored as signed squares to keep the
// entries exact: value = sign * sqrt(num/den).
struct Wigner3jCase {
    int l1, l2, l3, m1, m2, m3;
    int sign;
    long long num, den;
};

inline constexpr Wigner3jCase wigner3j_cases[] = {
    {1, 1, 0, 0, 0, 0, -1, 1, 3},
    {1, 1, 2, 0, 0, 0, 1, 2, 15},
    {1, 1, 2, 1, -1, 0, 1, 1, 30},
    {2, 2, 4, 0, 0, 0, 1, 2, 35},
    {2, 1, 1, 0, 0, 0, 1, 2, 15},
    {2, 1, 1, -1, 0, 1, -1, 1, 10},
    {2, 1, 1, -2, 1, 1, 1, 1, 5},
    {3, 2, 1, 0, 0, 0, -1, 3, 35},
    {3, 2, 1, -1, -1, 2, 0, 0, 1},
    {3, 3, 0, 2, -2, 0, -1, 1, 7},
    {4, 2, 2, 0, 0, 0, 1, 2, 35},
    {5, 4, 1, 0, 0, 0, -1, 5, 99},
    {6, 4, 2, 0, 0, 0, 1, 5, 143},
    {10, 10, 0, 3, -3, 0, -1, 1, 21},
    {8, 6, 2, 2, -3, 1, 1, 10, 1547},
};

}  // namespace oracles
