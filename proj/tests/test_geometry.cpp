#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "thermodec/constants.hpp"
#include "thermodec/geometry.hpp"

using namespace thermodec;

namespace {
Eigen::Vector3d random_unit(std::mt19937& rng) {
    std::normal_distribution<double> g;
    Eigen::Vector3d v(g(rng), g(rng), g(rng));
    return v.normalized();
}
}  // namespace

TEST_CASE("axis-angle rotations") {
    const auto id = Orientation::axis_angle(Eigen::Vector3d::UnitZ(), 0.0);
    CHECK((id.matrix() - Eigen::Matrix3d::Identity()).norm() < 1e-15);

    const auto half = Orientation::axis_angle(Eigen::Vector3d::UnitZ(), pi);
    Eigen::Matrix3d expect = Eigen::Vector3d(-1.0, -1.0, 1.0).asDiagonal();
    CHECK((half.matrix() - expect).norm() < 1e-14);

    CHECK_THROWS_AS(Orientation::axis_angle(Eigen::Vector3d(0, 0, 2), 0.3),
                    std::invalid_argument);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        const Eigen::Vector3d a = random_unit(rng);
        const double t1 = u(rng), t2 = u(rng);
        const auto lhs = Orientation::axis_angle(a, t1) * Orientation::axis_angle(a, t2);
        const auto rhs = Orientation::axis_angle(a, t1 + t2);
        CHECK((lhs.matrix() - rhs.matrix()).norm() < 1e-12);
    }
}

TEST_CASE("orientation matrix validation") {
    Eigen::Matrix3d bad = Eigen::Matrix3d::Identity();
    bad(0, 0) = 1.1;
    CHECK_THROWS_AS(Orientation::from_matrix(bad), std::invalid_argument);
    Eigen::Matrix3d reflect = Eigen::Vector3d(1.0, 1.0, -1.0).asDiagonal();
    CHECK_THROWS_AS(Orientation::from_matrix(reflect), std::invalid_argument);
}

TEST_CASE("rotation angle") {
    const auto r = Orientation::axis_angle(Eigen::Vector3d(1, 2, 2).normalized(), 0.9);
    CHECK(rotation_angle(r, r) == 0.0);

    const auto rp = r * Orientation::axis_angle(Eigen::Vector3d::UnitX(), pi / 2.0);
    CHECK(rotation_angle(r, rp) == doctest::Approx(pi / 2.0).epsilon(1e-13));

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-pi, pi);
    for (int i = 0; i < 100; ++i) {
        const auto a = Orientation::axis_angle(random_unit(rng), u(rng));
        const auto b = Orientation::axis_angle(random_unit(rng), u(rng));
        const double ours = rotation_angle(a, b);
        const double ref = oracles::quaternion_angle(a.matrix(), b.matrix());
        CHECK(ours == doctest::Approx(ref).epsilon(1e-10));
        CHECK(ours >= 0.0);
        CHECK(ours <= pi);
    }
}

TEST_CASE("moments of inertia") {
    const double m = 3.2e-18;
    const auto sphere = EllipsoidShape::sphere(50e-9, m);
    const Eigen::Vector3d i_sphere = sphere.moments_of_inertia();
    for (int i = 0; i < 3; ++i)
        CHECK(i_sphere[i] == doctest::Approx(0.4 * m * 50e-9 * 50e-9).epsilon(1e-15));

    // 10^9 amu sphere of 113 nm diameter
    const double mass = 1e9 * PhysicalConstants::amu;
    const double a = 113e-9 / 2.0;
    const auto fig = EllipsoidShape::sphere(a, mass);
    CHECK(fig.moments_of_inertia()[0] == doctest::Approx(0.4 * mass * a * a).epsilon(1e-15));
    CHECK(fig.moments_of_inertia()[0] == doctest::Approx(2.1204e-33).epsilon(1e-4));

    const auto e = EllipsoidShape(1e-7, 2e-7, 3e-7, m);
    const auto scaled = e.scaled(1.7);
    CHECK((scaled.moments_of_inertia() - 1.7 * 1.7 * e.moments_of_inertia()).norm() <
          1e-15 * e.moments_of_inertia().norm());

    CHECK_THROWS_AS(EllipsoidShape(0.0, 1e-7, 1e-7, m), std::invalid_argument);
    CHECK_THROWS_AS(EllipsoidShape(1e-7, 1e-7, 1e-7, -1.0), std::invalid_argument);
}

TEST_CASE("depolarization factors of a sphere") {
    const auto s = EllipsoidShape::sphere(1e-7, 1e-18);
    const auto exact = depolarization_factors(s, DepolarizationMode::Exact);
    const auto approx = depolarization_factors(s, DepolarizationMode::Approximate);
    for (int i = 0; i < 3; ++i) {
        CHECK(approx[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(exact[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    }
}

TEST_CASE("depolarization sum rule and range") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.3, 3.0);
    for (int i = 0; i < 12; ++i) {
        const auto s = EllipsoidShape(u(rng) * 1e-7, u(rng) * 1e-7, u(rng) * 1e-7, 1e-18);
        const auto L = depolarization_factors(s, DepolarizationMode::Exact);
        CHECK(L.sum() == doctest::Approx(1.0).epsilon(1e-10));
        for (int j = 0; j < 3; ++j) {
            CHECK(L[j] > 0.0);
            CHECK(L[j] < 1.0);
        }
    }
}

TEST_CASE("approximate depolarization of a 2:1:1 prolate") {
    const auto s = EllipsoidShape(2e-7, 1e-7, 1e-7, 1e-18);
    const auto L = depolarization_factors(s, DepolarizationMode::Approximate);
    CHECK(L[0] == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("exact and approximate depolarization agree within the sanity band") {
    for (double aspect : {1.0 / 3.0, 0.5, 0.8, 1.5, 2.3, 3.0}) {
        const auto s = EllipsoidShape::spheroid(1e-7, aspect * 1e-7, 1e-18);
        const auto le = depolarization_factors(s, DepolarizationMode::Exact);
        const auto la = depolarization_factors(s, DepolarizationMode::Approximate);
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(le[i] - la[i]) / le[i] < 0.05);
    }
}

TEST_CASE("exact depolarization is permutation equivariant") {
    const double l[3] = {0.7e-7, 1.3e-7, 2.9e-7};
    const auto base =
        depolarization_factors(EllipsoidShape(l[0], l[1], l[2], 1e-18), DepolarizationMode::Exact);
    const auto perm =
        depolarization_factors(EllipsoidShape(l[2], l[0], l[1], 1e-18), DepolarizationMode::Exact);
    CHECK(perm[0] == doctest::Approx(base[2]).epsilon(1e-10));
    CHECK(perm[1] == doctest::Approx(base[0]).epsilon(1e-10));
    CHECK(perm[2] == doctest::Approx(base[1]).epsilon(1e-10));
}

TEST_CASE("shape helpers") {
    const auto s = EllipsoidShape(1e-7, 2e-7, 4e-7, 1e-18);
    CHECK(s.volume() == doctest::Approx(4.0 / 3.0 * pi * 8e-21).epsilon(1e-15));
    CHECK(s.mean_radius() == doctest::Approx(2e-7).epsilon(1e-15));
}
