#pragma once

#include "vare/core.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace vare {

/// A time-dependent multi-objective test problem (minimization).
class DynamicProblem {
public:
    virtual ~DynamicProblem() = default;

    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual int objectives() const = 0;
    [[nodiscard]] int variables() const { return bounds_.dimension(); }
    [[nodiscard]] const Bounds& bounds() const { return bounds_; }

    /// Rejects decision vectors outside the box.
    [[nodiscard]] Vector evaluate(const Vector& x, double t) const;

    /// `count` points on the analytic front at time t, uniform in its natural parameterization.
    [[nodiscard]] virtual std::vector<Vector> sample_true_pf(double t, std::size_t count) const = 0;

    /// Ideal and nadir point of the true front at time t.
    [[nodiscard]] virtual ObjectiveBounds true_bounds(double t) const = 0;

protected:
    explicit DynamicProblem(Bounds bounds) : bounds_(std::move(bounds)) {}
    [[nodiscard]] virtual Vector objectives_at(const Vector& x, double t) const = 0;

private:
    Bounds bounds_;
};

// G(t) = |sin(0.5 pi t)|, H(t) = 0.75 sin(0.5 pi t) + 1.25; PF f2 = 1 - f1^H.
class DF1 final : public DynamicProblem {
public:
    explicit DF1(int n = 10);
    std::string name() const override { return "DF1"; }
    int objectives() const override { return 2; }
    std::vector<Vector> sample_true_pf(double t, std::size_t count) const override;
    ObjectiveBounds true_bounds(double t) const override;

protected:
    Vector objectives_at(const Vector& x, double t) const override;
};

// Variable linkage: x_i tracks a * x1^2 / (i c^2); PF f2 = (b - f1^(1/H))^H.
class DF4 final : public DynamicProblem {
public:
    explicit DF4(int n = 10);
    std::string name() const override { return "DF4"; }
    int objectives() const override { return 2; }
    std::vector<Vector> sample_true_pf(double t, std::size_t count) const override;
    ObjectiveBounds true_bounds(double t) const override;

protected:
    Vector objectives_at(const Vector& x, double t) const override;
};

// Knee count w = floor(10 sin(0.5 pi t)) varies the front's wiggles.
class DF5 final : public DynamicProblem {
public:
    explicit DF5(int n = 10);
    std::string name() const override { return "DF5"; }
    int objectives() const override { return 2; }
    std::vector<Vector> sample_true_pf(double t, std::size_t count) const override;
    ObjectiveBounds true_bounds(double t) const override;

protected:
    Vector objectives_at(const Vector& x, double t) const override;
};

// Three objectives; the PF is the positive octant of the unit sphere for every t.
class FDA4 final : public DynamicProblem {
public:
    explicit FDA4(int n = 12);
    std::string name() const override { return "FDA4"; }
    int objectives() const override { return 3; }
    std::vector<Vector> sample_true_pf(double t, std::size_t count) const override;
    ObjectiveBounds true_bounds(double t) const override;

protected:
    Vector objectives_at(const Vector& x, double t) const override;
};

/// Case-insensitive lookup; n = 0 selects the problem's default dimension.
std::unique_ptr<DynamicProblem> make_problem(std::string_view name, int n = 0);
std::vector<std::string> problem_names();

/// True-PF reference sets keyed by environment index. Each entry is written once and
/// shared read-only afterwards.
class PfCache {
public:
    PfCache(const DynamicProblem& problem, std::size_t samples)
        : problem_(problem), samples_(samples) {}

    std::shared_ptr<const std::vector<Vector>> reference(long environment, double t);
    [[nodiscard]] std::size_t samples() const { return samples_; }

private:
    const DynamicProblem& problem_;
    std::size_t samples_;
    std::mutex mutex_;
    std::map<long, std::shared_ptr<const std::vector<Vector>>> sets_;
};

void write_points_csv(const std::filesystem::path& path, const std::vector<Vector>& points);

}  // namespace vare
