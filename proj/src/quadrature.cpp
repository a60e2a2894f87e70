#include "thermodec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "thermodec/constants.hpp"

namespace thermodec {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename T>
double value_norm(const T& v) {
    return std::abs(v);
}
double value_norm(const Eigen::Matrix3d& v) { return v.norm(); }
double value_norm(const Eigen::VectorXd& v) { return v.norm(); }

template <typename T>
bool value_finite(const T& v) {
    return std::isfinite(value_norm(v));
}

template <typename T>
struct Panel {
    double a, b;
    T value;
    double error;
};

template <typename T>
Panel<T> gk15(const std::function<T(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    auto eval = [&](double x) {
        T y = f(x);
        if (!value_finite(y)) {
            std::ostringstream msg;
            msg << "integrand not finite at x = " << x;
            throw std::runtime_error(msg.str());
        }
        return y;
    };

    T fc = eval(mid);
    T kronrod = kWgk[7] * fc;
    T gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        T ylo = eval(mid - dx);
        T yhi = eval(mid + dx);
        T pair = ylo + yhi;
        kronrod = kronrod + kWgk[i] * pair;
        if (i % 2 == 1) gauss = gauss + kWg[i / 2] * pair;
    }
    kronrod = half * kronrod;
    gauss = half * gauss;
    return Panel<T>{a, b, kronrod, value_norm(T(kronrod - gauss))};
}

template <typename T>
QuadratureResult<T> integrate_panels(const std::function<T(double)>& f,
                                     const std::vector<double>& nodes, double rel_tol,
                                     std::size_t max_panels) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw std::invalid_argument("rel_tol must lie in (0, 1)");

    std::vector<Panel<T>> panels;
    panels.reserve(nodes.size());
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        panels.push_back(gk15<T>(f, nodes[i], nodes[i + 1]));

    auto worse = [](const Panel<T>& x, const Panel<T>& y) { return x.error < y.error; };
    std::make_heap(panels.begin(), panels.end(), worse);

    T running = T(0.0 * panels.front().value);
    double running_err = 0.0;
    for (const auto& p : panels) {
        running = running + p.value;
        running_err += p.error;
    }

    while (panels.size() < max_panels &&
           running_err > rel_tol * std::max(value_norm(running), 1e-300)) {
        std::pop_heap(panels.begin(), panels.end(), worse);
        Panel<T> top = panels.back();
        panels.pop_back();
        const double mid = 0.5 * (top.a + top.b);
        if (mid <= top.a || mid >= top.b) {
            // interval exhausted at machine precision
            panels.push_back(top);
            std::push_heap(panels.begin(), panels.end(), worse);
            break;
        }
        Panel<T> left = gk15<T>(f, top.a, mid);
        Panel<T> right = gk15<T>(f, mid, top.b);
        running = running + (left.value + right.value - top.value);
        running_err += left.error + right.error - top.error;
        panels.push_back(left);
        std::push_heap(panels.begin(), panels.end(), worse);
        panels.push_back(right);
        std::push_heap(panels.begin(), panels.end(), worse);
    }

    // deterministic reduction: sum in interval order
    std::sort(panels.begin(), panels.end(),
              [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
    T value = T(0.0 * panels.front().value);
    double err = 0.0;
    for (const auto& p : panels) {
        value = value + p.value;
        err += p.error;
    }
    QuadratureResult<T> out;
    out.value = value;
    out.error = err;
    out.converged = err <= rel_tol * std::max(value_norm(value), 1e-300);
    return out;
}

}  // namespace

FrequencyGrid::FrequencyGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) throw std::invalid_argument("frequency grid needs at least 2 nodes");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!(nodes_[i] > 0.0)) throw std::invalid_argument("frequency nodes must be positive");
        if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
            throw std::invalid_argument("frequency nodes must be strictly increasing");
    }
}

FrequencyGrid FrequencyGrid::log_spaced(double omega_lo, double omega_hi, std::size_t count) {
    if (!(omega_lo > 0.0 && omega_hi > omega_lo))
        throw std::invalid_argument("log_spaced requires 0 < omega_lo < omega_hi");
    if (count < 2) throw std::invalid_argument("log_spaced requires count >= 2");
    std::vector<double> nodes(count);
    const double la = std::log(omega_lo), lb = std::log(omega_hi);
    for (std::size_t i = 0; i < count; ++i)
        nodes[i] = std::exp(la + (lb - la) * static_cast<double>(i) /
                                     static_cast<double>(count - 1));
    nodes.front() = omega_lo;
    nodes.back() = omega_hi;
    return FrequencyGrid(std::move(nodes));
}

void FrequencyGrid::insert(const std::vector<double>& extra) {
    const double lo = lower(), hi = upper();
    for (double x : extra)
        if (x > lo && x < hi) nodes_.push_back(x);
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
}

QuadratureResult<double> integrate_frequency(const std::function<double(double)>& f,
                                             const FrequencyGrid& grid, double rel_tol,
                                             std::size_t max_panels) {
    return integrate_panels<double>(f, grid.nodes(), rel_tol, max_panels);
}

QuadratureResult<std::complex<double>> integrate_frequency(
    const std::function<std::complex<double>(double)>& f, const FrequencyGrid& grid,
    double rel_tol, std::size_t max_panels) {
    return integrate_panels<std::complex<double>>(f, grid.nodes(), rel_tol, max_panels);
}

QuadratureResult<Eigen::Matrix3d> integrate_frequency(
    const std::function<Eigen::Matrix3d(double)>& f, const FrequencyGrid& grid, double rel_tol,
    std::size_t max_panels) {
    return integrate_panels<Eigen::Matrix3d>(f, grid.nodes(), rel_tol, max_panels);
}

QuadratureResult<Eigen::VectorXd> integrate_frequency(
    const std::function<Eigen::VectorXd(double)>& f, const FrequencyGrid& grid, double rel_tol,
    std::size_t max_panels) {
    return integrate_panels<Eigen::VectorXd>(f, grid.nodes(), rel_tol, max_panels);
}

QuadratureResult<double> integrate_adaptive(const std::function<double(double)>& f, double a,
                                            double b, double rel_tol, std::size_t max_panels) {
    if (!(b > a)) throw std::invalid_argument("integrate_adaptive requires b > a");
    return integrate_panels<double>(f, {a, b}, rel_tol, max_panels);
}

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre requires n >= 1");
    GaussLegendre gl;
    gl.x.resize(n);
    gl.w.resize(n);
    // Newton iteration on P_n, symmetric nodes
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, p1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int l = 2; l <= n; ++l) {
                const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        p0 = 1.0;
        p1 = x;
        for (int l = 2; l <= n; ++l) {
            const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.x[i] = -x;
        gl.w[i] = w;
        gl.x[n - 1 - i] = x;
        gl.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) gl.x[n / 2] = 0.0;
    return gl;
}

SphereQuadrature sphere_quadrature(int order) {
    if (order < 2) throw std::invalid_argument("sphere_quadrature requires order >= 2");
    return sphere_quadrature_aligned(order, 2 * order, Eigen::Vector3d::UnitZ());
}

SphereQuadrature sphere_quadrature_aligned(int polar_order, int azimuth_count,
                                           const Eigen::Vector3d& axis) {
    if (polar_order < 2 || azimuth_count < 2)
        throw std::invalid_argument("sphere quadrature orders must be >= 2");
    const double norm = axis.norm();
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("sphere quadrature axis must be a unit vector");

    // orthonormal frame with w3 = axis
    Eigen::Vector3d w3 = axis / norm;
    int pivot = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(w3[i]) < std::abs(w3[pivot])) pivot = i;
    Eigen::Vector3d w1 = Eigen::Vector3d::Unit(pivot).cross(w3).normalized();
    Eigen::Vector3d w2 = w3.cross(w1);

    const GaussLegendre gl = gauss_legendre(polar_order);
    SphereQuadrature q;
    q.directions.reserve(static_cast<std::size_t>(polar_order) * azimuth_count);
    q.weights.reserve(q.directions.capacity());
    const double wphi = 2.0 * pi / azimuth_count;
    for (int i = 0; i < polar_order; ++i) {
        const double mu = gl.x[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int j = 0; j < azimuth_count; ++j) {
            const double phi = wphi * j;
            q.directions.push_back(s * std::cos(phi) * w1 + s * std::sin(phi) * w2 + mu * w3);
            q.weights.push_back(gl.w[i] * wphi);
        }
    }
    return q;
}

}  // namespace thermodec
