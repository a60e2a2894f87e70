#include "thermodec/material.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "thermodec/constants.hpp"

namespace thermodec {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_row(const std::string& line, std::size_t line_no) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        field = trim(field);
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(field, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != field.size() || field.empty()) {
            std::ostringstream msg;
            msg << "line " << line_no << ": cannot parse '" << field << "' as a number";
            throw std::runtime_error(msg.str());
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace

PermittivityTable::PermittivityTable(std::vector<Sample> samples, std::string name,
                                     std::string source)
    : samples_(std::move(samples)), name_(std::move(name)), source_(std::move(source)) {
    if (samples_.size() < 1) throw std::invalid_argument("permittivity table is empty");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!(samples_[i].omega > 0.0))
            throw std::invalid_argument("permittivity table frequencies must be positive");
        if (i > 0 && !(samples_[i].omega > samples_[i - 1].omega))
            throw std::invalid_argument("permittivity table frequencies must be increasing");
        if (samples_[i].eps_im < 0.0)
            throw std::invalid_argument("Im eps_r must be non-negative");
    }
}

PermittivityTable PermittivityTable::load(std::istream& in, std::string name) {
    std::string line;
    std::size_t line_no = 0;
    std::string header;
    std::string source;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (source.empty()) source = trim(t.substr(1));
            continue;
        }
        header = t;
        break;
    }

    enum class Format { LambdaNk, OmegaEps } format;
    {
        std::string h = header;
        h.erase(std::remove_if(h.begin(), h.end(),
                               [](char c) { return c == ' ' || c == '\t'; }),
                h.end());
        if (h == "lambda_m,n,k")
            format = Format::LambdaNk;
        else if (h == "omega_rad_s,eps_re,eps_im")
            format = Format::OmegaEps;
        else {
            std::ostringstream msg;
            msg << "line " << line_no << ": unrecognized header '" << header
                << "' (expected lambda_m,n,k or omega_rad_s,eps_re,eps_im)";
            throw std::runtime_error(msg.str());
        }
    }

    std::vector<Sample> samples;
    double prev_x = 0.0;
    int direction = 0;  // sign of the monotonic trend of the first column
    bool have_prev = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::vector<double> row = parse_row(t, line_no);
        if (row.size() != 3) {
            std::ostringstream msg;
            msg << "line " << line_no << ": expected 3 columns, got " << row.size();
            throw std::runtime_error(msg.str());
        }
        const double x = row[0];
        if (have_prev) {
            if (x == prev_x) {
                std::ostringstream msg;
                msg << "line " << line_no << ": duplicate abscissa " << x;
                throw std::runtime_error(msg.str());
            }
            const int dir = x > prev_x ? 1 : -1;
            if (direction == 0) direction = dir;
            if (dir != direction) {
                std::ostringstream msg;
                msg << "line " << line_no << ": non-monotonic abscissa";
                throw std::runtime_error(msg.str());
            }
        }
        prev_x = x;
        have_prev = true;

        Sample s{};
        if (format == Format::LambdaNk) {
            const double lam = row[0], n = row[1], k = row[2];
            if (!(lam > 0.0)) {
                std::ostringstream msg;
                msg << "line " << line_no << ": wavelength must be positive";
                throw std::runtime_error(msg.str());
            }
            if (!(n > 0.0)) {
                std::ostringstream msg;
                msg << "line " << line_no << ": refractive index n must be positive";
                throw std::runtime_error(msg.str());
            }
            if (k < 0.0) {
                std::ostringstream msg;
                msg << "line " << line_no << ": extinction k must be non-negative";
                throw std::runtime_error(msg.str());
            }
            s.omega = 2.0 * pi * PhysicalConstants::c / lam;
            s.eps_re = n * n - k * k;
            s.eps_im = 2.0 * n * k;
        } else {
            s.omega = row[0];
            s.eps_re = row[1];
            s.eps_im = row[2];
            if (!(s.omega > 0.0)) {
                std::ostringstream msg;
                msg << "line " << line_no << ": frequency must be positive";
                throw std::runtime_error(msg.str());
            }
            if (s.eps_im < 0.0) {
                std::ostringstream msg;
                msg << "line " << line_no << ": Im eps_r must be non-negative";
                throw std::runtime_error(msg.str());
            }
        }
        samples.push_back(s);
    }
    if (samples.empty()) throw std::runtime_error("permittivity table has no data rows");

    std::sort(samples.begin(), samples.end(),
              [](const Sample& a, const Sample& b) { return a.omega < b.omega; });
    return PermittivityTable(std::move(samples), std::move(name), std::move(source));
}

PermittivityTable PermittivityTable::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open material file: " + path);
    std::string name = path;
    const auto slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot != std::string::npos) name = name.substr(0, dot);
    return load(in, name);
}

std::complex<double> PermittivityTable::permittivity(double omega) const {
    if (omega < omega_min() || omega > omega_max()) {
        std::ostringstream msg;
        msg << "frequency " << omega << " rad/s outside tabulated support ["
            << omega_min() << ", " << omega_max() << "]";
        throw std::out_of_range(msg.str());
    }
    auto it = std::lower_bound(samples_.begin(), samples_.end(), omega,
                               [](const Sample& s, double w) { return s.omega < w; });
    if (it == samples_.begin()) return {it->eps_re, it->eps_im};
    if (it->omega == omega) return {it->eps_re, it->eps_im};
    const Sample& hi = *it;
    const Sample& lo = *(it - 1);
    const double t = (omega - lo.omega) / (hi.omega - lo.omega);
    return {lo.eps_re + t * (hi.eps_re - lo.eps_re), lo.eps_im + t * (hi.eps_im - lo.eps_im)};
}

void PermittivityTable::save(std::ostream& out) const {
    if (!source_.empty()) out << "# " << source_ << "\n";
    out << "omega_rad_s,eps_re,eps_im\n";
    char buf[128];
    for (const Sample& s : samples_) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", s.omega, s.eps_re, s.eps_im);
        out << buf;
    }
}

double bose_occupation(double omega, double T) {
    if (!(omega > 0.0)) throw std::invalid_argument("bose_occupation requires omega > 0");
    if (!(T > 0.0)) throw std::invalid_argument("bose_occupation requires T > 0");
    const double x = PhysicalConstants::hbar * omega / (PhysicalConstants::k_B * T);
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

double thermal_weight(double omega, double T) {
    return omega * omega * omega * bose_occupation(omega, T);
}

double thermal_peak_x() {
    // fixed point of x = 3 (1 - exp(-x))
    double x = 2.8;
    for (int i = 0; i < 64; ++i) {
        const double next = 3.0 * (1.0 - std::exp(-x));
        if (std::abs(next - x) < 1e-15) return next;
        x = next;
    }
    return x;
}

double thermal_peak_omega(double T) {
    if (!(T > 0.0)) throw std::invalid_argument("thermal_peak_omega requires T > 0");
    return thermal_peak_x() * PhysicalConstants::k_B * T / PhysicalConstants::hbar;
}

std::pair<double, double> thermal_window_x(double drop) {
    const double xs = thermal_peak_x();
    const double peak = xs * xs * xs / std::expm1(xs);
    const double target = drop * peak;
    // low side: x^3/(e^x - 1) ~ x^2
    double lo = std::sqrt(target);
    for (int i = 0; i < 64; ++i) lo = std::sqrt(target * std::expm1(lo) / lo);
    // high side: bisection on decreasing branch
    double a = xs, b = 1000.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (a + b);
        const double v = mid * mid * mid / std::expm1(mid);
        (v > target ? a : b) = mid;
    }
    return {lo, 0.5 * (a + b)};
}

}  // namespace thermodec
