#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "thermodec/constants.hpp"
#include "thermodec/green.hpp"

using namespace thermodec;
using PC = PhysicalConstants;

TEST_CASE("free-space Green tensor reciprocity") {
    const double omega = 3e14;
    const Eigen::Vector3d dr(1.3e-6, -0.4e-6, 2.2e-6);
    const auto g = free_green(dr, omega);
    const auto gt = free_green(-dr, omega);
    CHECK((g - gt.transpose()).norm() < 1e-13 * g.norm());
    CHECK((g - g.transpose()).norm() < 1e-13 * g.norm());
    CHECK_THROWS_AS(free_green(Eigen::Vector3d::Zero(), omega), std::domain_error);
}

TEST_CASE("far-field transversality") {
    const double omega = 2e14;
    const double k = omega / PC::c;
    const Eigen::Vector3d n(0.6, 0.64, 0.48);
    const Eigen::Vector3d dir = n.normalized();
    const Eigen::Vector3d r = 1e3 / k * dir;
    const auto g = free_green(r, omega);
    const Eigen::Vector3cd ng = dir.cast<std::complex<double>>().transpose() * g;
    CHECK(ng.norm() / g.norm() <= 2e-3);
}

TEST_CASE("Green tensor against derivative-of-scalar oracle at kr = 1") {
    const double k = 2.0e6;
    const double omega = k * PC::c;
    const Eigen::Vector3d dir = Eigen::Vector3d(0.2, -0.5, 0.9).normalized();
    const Eigen::Vector3d r = dir / k;  // kr = 1
    const auto g = free_green(r, omega);
    const auto ref = oracles::green_by_differentiation(r, k);
    CHECK((g - ref).norm() < 1e-7 * ref.norm());
}

TEST_CASE("imaginary part at the origin and far away") {
    const double omega = 5e14;
    const auto g0 = im_free_green(Eigen::Vector3d::Zero(), omega);
    const Eigen::Matrix3d expect =
        omega / (6.0 * pi * PC::c) * Eigen::Matrix3d::Identity();
    CHECK((g0 - expect).norm() < 1e-15 * expect.norm());

    const double k = omega / PC::c;
    const Eigen::Vector3d far = 1e5 / k * Eigen::Vector3d::UnitX();
    const Eigen::Matrix3d scaled = 6.0 * pi * PC::c / omega * im_free_green(far, omega);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(scaled);
    CHECK(es.eigenvalues().cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("series and direct branches agree across the switch") {
    for (double u : {0.01, 0.05, 0.099, 0.1001, 0.2}) {
        const double fa_direct = (std::sin(u) * (u * u - 1.0) + u * std::cos(u)) / (u * u * u);
        const double fb_direct =
            (std::sin(u) * (3.0 - u * u) - 3.0 * u * std::cos(u)) / (u * u * u);
        CHECK(im_green_fa(u) == doctest::Approx(fa_direct).epsilon(1e-10));
        CHECK(im_green_fb(u) == doctest::Approx(fb_direct).epsilon(1e-9));
    }
}

TEST_CASE("im_free_green is even and symmetric") {
    std::mt19937 rng(3);
    std::normal_distribution<double> g;
    const double omega = 4e14;
    for (int i = 0; i < 30; ++i) {
        const Eigen::Vector3d dr = 1e-6 * Eigen::Vector3d(g(rng), g(rng), g(rng));
        const auto a = im_free_green(dr, omega);
        const auto b = im_free_green(-dr, omega);
        CHECK((a - b).norm() < 1e-14 * a.norm());
        CHECK((a - a.transpose()).norm() < 1e-14 * a.norm());
    }
}

TEST_CASE("polarization basis") {
    const auto b = polarization_basis(Eigen::Vector3d::UnitZ());
    CHECK(std::abs(b.e1.dot(b.e2)) < 1e-14);
    CHECK(std::abs(b.e1.norm() - 1.0) < 1e-14);
    CHECK(std::abs(b.e2.norm() - 1.0) < 1e-14);
    CHECK(std::abs(b.e1[2]) < 1e-14);  // spans the xy plane
    CHECK(std::abs(b.e2[2]) < 1e-14);

    CHECK_THROWS_AS(polarization_basis(Eigen::Vector3d(0, 0, 2)), std::invalid_argument);

    std::mt19937 rng(17);
    std::normal_distribution<double> g;
    for (int i = 0; i < 100; ++i) {
        const Eigen::Vector3d n = Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized();
        for (int shift : {0, 1, 2}) {
            const auto basis = polarization_basis(n, shift);
            const Eigen::Vector3cd nc = n.cast<std::complex<double>>();
            CHECK(std::abs(basis.e1.conjugate().dot(nc)) < 1e-14);
            CHECK(std::abs(basis.e2.conjugate().dot(nc)) < 1e-14);
            // transverse completeness e1 e1* + e2 e2* = 1 - n n
            const Eigen::Matrix3cd completeness =
                basis.e1 * basis.e1.adjoint() + basis.e2 * basis.e2.adjoint();
            const Eigen::Matrix3cd expect =
                (Eigen::Matrix3d::Identity() - n * n.transpose()).cast<std::complex<double>>();
            CHECK((completeness - expect).norm() < 1e-14);
        }
    }
}
