#include "vare/benchmarks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <stdexcept>

namespace vare {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> unit_grid(std::size_t count) {
    std::vector<double> u(count, 0.0);
    if (count == 1) return u;
    for (std::size_t i = 0; i < count; ++i)
        u[i] = static_cast<double>(i) / static_cast<double>(count - 1);
    return u;
}

void require_dimension(int n, int minimum, const char* problem) {
    if (n < minimum)
        throw std::invalid_argument(std::string(problem) + ": too few decision variables");
}

}  // namespace

Vector DynamicProblem::evaluate(const Vector& x, double t) const {
    if (!bounds_.contains(x))
        throw std::domain_error(name() + ": decision vector outside the problem bounds");
    return objectives_at(x, t);
}

// --- DF1 -------------------------------------------------------------------

DF1::DF1(int n) : DynamicProblem(Bounds::uniform(n, 0.0, 1.0)) { require_dimension(n, 2, "DF1"); }

Vector DF1::objectives_at(const Vector& x, double t) const {
    const double G = std::abs(std::sin(0.5 * kPi * t));
    const double H = 0.75 * std::sin(0.5 * kPi * t) + 1.25;
    const double g = 1.0 + (x.tail(x.size() - 1).array() - G).square().sum();
    Vector f(2);
    f[0] = x[0];
    f[1] = g * (1.0 - std::pow(x[0] / g, H));
    return f;
}

std::vector<Vector> DF1::sample_true_pf(double t, std::size_t count) const {
    const double H = 0.75 * std::sin(0.5 * kPi * t) + 1.25;
    std::vector<Vector> out;
    for (double u : unit_grid(count)) out.push_back(Vector{{u, 1.0 - std::pow(u, H)}});
    return out;
}

ObjectiveBounds DF1::true_bounds(double) const { return {Vector::Zero(2), Vector::Ones(2)}; }

// --- DF4 -------------------------------------------------------------------

namespace {

struct Df4Params {
    double a, b, c, H;
};

Df4Params df4_params(double t) {
    const double a = std::sin(0.5 * kPi * t);
    const double b = 1.0 + std::abs(std::cos(0.5 * kPi * t));
    return {a, b, std::max(std::abs(a), a + b), 1.5 + a};
}

}  // namespace

DF4::DF4(int n) : DynamicProblem(Bounds::uniform(n, -2.0, 2.0)) { require_dimension(n, 2, "DF4"); }

Vector DF4::objectives_at(const Vector& x, double t) const {
    const auto [a, b, c, H] = df4_params(t);
    double g = 1.0;
    for (Eigen::Index i = 1; i < x.size(); ++i) {
        const double target = a * x[0] * x[0] / (static_cast<double>(i + 1) * c * c);
        g += (x[i] - target) * (x[i] - target);
    }
    Vector f(2);
    f[0] = g * std::pow(std::abs(x[0] - a), H);
    f[1] = g * std::pow(std::abs(x[0] - a - b), H);
    return f;
}

std::vector<Vector> DF4::sample_true_pf(double t, std::size_t count) const {
    const auto [a, b, c, H] = df4_params(t);
    std::vector<Vector> out;
    for (double u : unit_grid(count)) {
        const double x1 = a + u * b;
        out.push_back(Vector{{std::pow(std::abs(x1 - a), H), std::pow(std::abs(x1 - a - b), H)}});
    }
    return out;
}

ObjectiveBounds DF4::true_bounds(double t) const {
    const auto [a, b, c, H] = df4_params(t);
    const double hi = std::pow(b, H);
    return {Vector::Zero(2), Vector::Constant(2, hi)};
}

// --- DF5 -------------------------------------------------------------------

namespace {

Bounds df5_bounds(int n) {
    Vector lo = Vector::Constant(n, -1.0);
    Vector hi = Vector::Constant(n, 1.0);
    lo[0] = 0.0;
    return {lo, hi};
}

}  // namespace

DF5::DF5(int n) : DynamicProblem(df5_bounds(std::max(n, 1))) { require_dimension(n, 2, "DF5"); }

Vector DF5::objectives_at(const Vector& x, double t) const {
    const double G = std::sin(0.5 * kPi * t);
    const double w = std::floor(10.0 * G);
    const double g = 1.0 + (x.tail(x.size() - 1).array() - G).square().sum();
    const double wiggle = 0.02 * std::sin(w * kPi * x[0]);
    Vector f(2);
    f[0] = g * (x[0] + wiggle);
    f[1] = g * (1.0 - x[0] + wiggle);
    return f;
}

std::vector<Vector> DF5::sample_true_pf(double t, std::size_t count) const {
    const double w = std::floor(10.0 * std::sin(0.5 * kPi * t));
    std::vector<Vector> out;
    for (double u : unit_grid(count)) {
        const double wiggle = 0.02 * std::sin(w * kPi * u);
        out.push_back(Vector{{u + wiggle, 1.0 - u + wiggle}});
    }
    return out;
}

// f1 increases and f2 decreases monotonically in x1 (|w| <= 10 keeps 0.02 w pi < 1), and the
// wiggle vanishes at both ends.
ObjectiveBounds DF5::true_bounds(double) const { return {Vector::Zero(2), Vector::Ones(2)}; }

// --- FDA4 ------------------------------------------------------------------

FDA4::FDA4(int n) : DynamicProblem(Bounds::uniform(n, 0.0, 1.0)) { require_dimension(n, 3, "FDA4"); }

Vector FDA4::objectives_at(const Vector& x, double t) const {
    const double G = std::abs(std::sin(0.5 * kPi * t));
    const double g = (x.tail(x.size() - 2).array() - G).square().sum();
    const double c1 = std::cos(0.5 * kPi * x[0]);
    Vector f(3);
    f[0] = (1.0 + g) * c1 * std::cos(0.5 * kPi * x[1]);
    f[1] = (1.0 + g) * c1 * std::sin(0.5 * kPi * x[1]);
    f[2] = (1.0 + g) * std::sin(0.5 * kPi * x[0]);
    return f;
}

// Simplex lattice projected onto the sphere, thinned to exactly `count` points.
std::vector<Vector> FDA4::sample_true_pf(double, std::size_t count) const {
    int divisions = 1;
    while (binomial(divisions + 2, 2) < count) ++divisions;
    const auto lattice = generate_reference_directions(3, divisions);
    std::vector<Vector> out;
    out.reserve(count);
    if (count == 1) {
        out.push_back(Vector::Constant(3, 1.0 / std::sqrt(3.0)));
        return out;
    }
    const std::size_t total = lattice.size();
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = i * (total - 1) / (count - 1);
        out.push_back(lattice[k].normalized());
    }
    return out;
}

ObjectiveBounds FDA4::true_bounds(double) const { return {Vector::Zero(3), Vector::Ones(3)}; }

// --- registry ----------------------------------------------------------------

std::unique_ptr<DynamicProblem> make_problem(std::string_view name, int n) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (key == "DF1") return std::make_unique<DF1>(n > 0 ? n : 10);
    if (key == "DF4") return std::make_unique<DF4>(n > 0 ? n : 10);
    if (key == "DF5") return std::make_unique<DF5>(n > 0 ? n : 10);
    if (key == "FDA4") return std::make_unique<FDA4>(n > 0 ? n : 12);
    throw std::invalid_argument("unknown problem: " + std::string(name));
}

std::vector<std::string> problem_names() { return {"DF1", "DF4", "DF5", "FDA4"}; }

std::shared_ptr<const std::vector<Vector>> PfCache::reference(long environment, double t) {
    std::lock_guard lock(mutex_);
    auto it = sets_.find(environment);
    if (it != sets_.end()) return it->second;
    auto set = std::make_shared<const std::vector<Vector>>(problem_.sample_true_pf(t, samples_));
    sets_.emplace(environment, set);
    return set;
}

void write_points_csv(const std::filesystem::path& path, const std::vector<Vector>& points) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << std::setprecision(17);
    for (const auto& p : points) {
        for (Eigen::Index j = 0; j < p.size(); ++j) out << (j ? "," : "") << p[j];
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace vare
