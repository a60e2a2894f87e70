#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "thermodec/constants.hpp"
#include "thermodec/green.hpp"
#include "thermodec/quadrature.hpp"

using namespace thermodec;

TEST_CASE("frequency grid validation") {
    CHECK_THROWS_AS(FrequencyGrid({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(FrequencyGrid({-1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(FrequencyGrid({2.0, 2.0}), std::invalid_argument);
    const auto g = FrequencyGrid::log_spaced(1.0, 100.0, 11);
    CHECK(g.nodes().size() == 11);
    CHECK(g.lower() == 1.0);
    CHECK(g.upper() == 100.0);
}

TEST_CASE("zero integrand integrates to zero") {
    const auto g = FrequencyGrid::log_spaced(1.0, 10.0, 8);
    const auto res =
        integrate_frequency(std::function<double(double)>([](double) { return 0.0; }), g, 1e-9);
    CHECK(res.value == 0.0);
    CHECK(res.error == 0.0);
    CHECK(res.converged);
}

TEST_CASE("constant integrand on [1,2]") {
    const FrequencyGrid g({1.0, 2.0});
    const auto res =
        integrate_frequency(std::function<double(double)>([](double) { return 1.0; }), g, 1e-9);
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Bose integral against reference quadrature") {
    auto f = [](double w) { return w * w * w / std::expm1(w); };
    const auto g = FrequencyGrid::log_spaced(1e-3, 50.0, 32);
    const auto res = integrate_frequency(std::function<double(double)>(f), g, 1e-9);
    const double ref = oracles::reference_integral(f, 1e-3, 50.0, 400, 24);
    CHECK(res.value == doctest::Approx(ref).epsilon(1e-8));
    // pi^4/15 after adding the analytically known tail pieces is approached
    // from below; the clipped interval already carries almost all the weight
    CHECK(res.value == doctest::Approx(std::pow(pi, 4) / 15.0).epsilon(1e-6));
}

TEST_CASE("integrand faults are reported with the offending node") {
    const FrequencyGrid g({1.0, 2.0});
    CHECK_THROWS_WITH_AS(
        integrate_frequency(
            std::function<double(double)>([](double w) {
                return w > 1.4 && w < 1.6 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
            }),
            g, 1e-9),
        doctest::Contains("not finite"), std::runtime_error);
    CHECK_THROWS_AS(integrate_frequency(std::function<double(double)>([](double) { return 1.0; }),
                                        g, 2.0),
                    std::invalid_argument);
}

TEST_CASE("grid refinement leaves the result invariant") {
    auto f = [](double w) { return std::sin(w) / (1.0 + w * w); };
    const auto coarse = integrate_frequency(std::function<double(double)>(f),
                                            FrequencyGrid::log_spaced(0.1, 30.0, 8), 1e-10);
    const auto fine = integrate_frequency(std::function<double(double)>(f),
                                          FrequencyGrid::log_spaced(0.1, 30.0, 301), 1e-10);
    CHECK(coarse.value == doctest::Approx(fine.value).epsilon(1e-9));
}

TEST_CASE("sphere quadrature basics") {
    CHECK_THROWS_AS(sphere_quadrature(1), std::invalid_argument);
    const auto q = sphere_quadrature(8);
    double sum = 0.0;
    Eigen::Matrix3d nn = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < q.size(); ++i) {
        CHECK(q.weights[i] > 0.0);
        CHECK(std::abs(q.directions[i].norm() - 1.0) < 1e-12);
        sum += q.weights[i];
        nn += q.weights[i] * q.directions[i] * q.directions[i].transpose();
    }
    CHECK(sum == doctest::Approx(4.0 * pi).epsilon(1e-10));
    CHECK((nn - 4.0 * pi / 3.0 * Eigen::Matrix3d::Identity()).norm() < 1e-12);
}

TEST_CASE("solid-angle integral of the transverse plane wave kernel") {
    // int dO e^{ik n.r} (1 - n n) = (16 pi^2 / k) Im G0(r)
    const double k = 1.0;
    const double omega = k * PhysicalConstants::c;
    for (double kr : {0.3, 1.0, 2.5, 5.0}) {
        const Eigen::Vector3d r = kr / k * Eigen::Vector3d(0.36, -0.48, 0.8).normalized();
        const auto q = sphere_quadrature(24);
        Eigen::Matrix3d lhs_re = Eigen::Matrix3d::Zero();
        Eigen::Matrix3d lhs_im = Eigen::Matrix3d::Zero();
        for (std::size_t i = 0; i < q.size(); ++i) {
            const Eigen::Vector3d& n = q.directions[i];
            const double phase = k * n.dot(r);
            const Eigen::Matrix3d t =
                Eigen::Matrix3d::Identity() - n * n.transpose();
            lhs_re += q.weights[i] * std::cos(phase) * t;
            lhs_im += q.weights[i] * std::sin(phase) * t;
        }
        const Eigen::Matrix3d rhs = 16.0 * pi * pi / k * im_free_green(r, omega);
        CHECK((lhs_re - rhs).norm() < 1e-8 * rhs.norm());
        CHECK(lhs_im.norm() < 1e-10 * rhs.norm());
    }
}

TEST_CASE("doubling the sphere order stays within the error estimate") {
    // smooth test integrand with mild anisotropy
    auto f = [](const Eigen::Vector3d& n) {
        return std::exp(0.7 * n.z()) * (1.0 + 0.3 * n.x() * n.x());
    };
    auto eval = [&](int order) {
        const auto q = sphere_quadrature(order);
        double s = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * f(q.directions[i]);
        return s;
    };
    const double v1 = eval(16), v2 = eval(32);
    CHECK(std::abs(v1 - v2) < 1e-12 * std::abs(v1));
}

TEST_CASE("aligned sphere quadrature matches the default on invariants") {
    const auto q = sphere_quadrature_aligned(12, 20, Eigen::Vector3d(1, 1, 1).normalized());
    double sum = 0.0;
    Eigen::Vector3d first = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < q.size(); ++i) {
        sum += q.weights[i];
        first += q.weights[i] * q.directions[i];
    }
    CHECK(sum == doctest::Approx(4.0 * pi).epsilon(1e-12));
    CHECK(first.norm() < 1e-12);
}
