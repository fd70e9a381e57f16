#pragma once

#include "vare/benchmarks.hpp"
#include "vare/core.hpp"
#include "vare/forecast.hpp"
#include "vare/rng.hpp"
#include "vare/variation.hpp"

#include <array>
#include <deque>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace vare {

enum class Strategy { prediction, mutation };

/// Which change responses are enabled: both (adaptive), prediction only, hypermutation only.
enum class Variant { vare, var_only, eah_only };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);

class InsufficientHistory : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyHistory : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-direction archive: one decision vector per completed environment, in environment order.
class DirectionHistory {
public:
    DirectionHistory() = default;
    explicit DirectionHistory(std::size_t directions);

    /// Throws std::invalid_argument unless `environment` is newer than the direction's last entry.
    void record(std::size_t direction, long environment, Vector x);

    [[nodiscard]] std::size_t directions() const { return entries_.size(); }
    [[nodiscard]] std::size_t size(std::size_t direction) const { return entries_.at(direction).size(); }
    [[nodiscard]] const std::vector<Vector>& entries(std::size_t direction) const { return entries_.at(direction); }
    [[nodiscard]] const std::vector<long>& environments(std::size_t direction) const {
        return environments_.at(direction);
    }
    /// Most recent archived solution; throws EmptyHistory.
    [[nodiscard]] const Vector& latest(std::size_t direction) const;

private:
    std::vector<std::vector<Vector>> entries_;
    std::vector<std::vector<long>> environments_;
};

/// Sliding-window success counts of both strategies for every direction.
class ResponseStats {
public:
    struct Cell {
        long environment = 0;
        int attempts = 0;
        int successes = 0;
    };

    ResponseStats() = default;
    ResponseStats(std::size_t directions, int window);

    void record(std::size_t direction, Strategy strategy, long environment, bool success);
    /// Drops cells more than `window` environments older than `current_environment`.
    void prune(long current_environment);

    [[nodiscard]] int window() const { return window_; }
    [[nodiscard]] std::size_t directions() const { return cells_.size(); }
    [[nodiscard]] int attempts(std::size_t direction, Strategy strategy) const;
    [[nodiscard]] int successes(std::size_t direction, Strategy strategy) const;
    /// successes / attempts over the window, 0 without attempts.
    [[nodiscard]] double success_rate(std::size_t direction, Strategy strategy) const;

private:
    const std::deque<Cell>& cells(std::size_t direction, Strategy strategy) const;

    int window_ = 1;
    // [direction][strategy]
    std::vector<std::array<std::deque<Cell>, 2>> cells_;
};

/// Probability of choosing prediction for a direction: rho_p / (rho_p + rho_m), 0 if both are 0.
double update_pi(const ResponseStats& stats, std::size_t direction);

/// PCA-reduced VAR(lag) forecast of the next archived solution for `direction`, clamped to
/// `bounds`. Throws InsufficientHistory when fewer than lag + 2 entries exist.
Vector var_predict(const DirectionHistory& history, std::size_t direction, int lag,
                   const Bounds& bounds, double variance_threshold = kDefaultVarianceThreshold);

constexpr double kSeverityEpsilon = 1e-6;

/// Mean relative objective change; `before[i]` and `after[i]` belong to the same decision vector.
double severity_objective(std::span<const Vector> before, std::span<const Vector> after);

/// Mean relative decision-space distance between each old member and its best partner among the
/// re-evaluated members sharing its reference direction.
double severity_decision(const Population& previous, const Population& reevaluated,
                         const ReferenceDirectionSet& dirs, const ObjectiveBounds& previous_bounds,
                         const ObjectiveBounds& current_bounds);

/// eta = 20 * max(exp(-(delta_f + delta_x)), 0.1), always within [2, 20].
double mutation_index(double delta_f, double delta_x);

/// Hypermutates the direction's most recent archived solution with p_m = 1/n.
template <UniformSource F>
Vector eah_mutate(const DirectionHistory& history, std::size_t direction, double eta,
                  const Bounds& bounds, F&& draw) {
    return polynomial_mutate(history.latest(direction), bounds, eta, std::forward<F>(draw));
}

struct ResponseConfig {
    Variant variant = Variant::vare;
    int lag = 5;
    double variance_threshold = kDefaultVarianceThreshold;
};

/// Everything known at the moment a change is detected.
struct ChangeContext {
    const Population& previous;     // evaluated in the old environment
    const Population& reevaluated;  // same decision vectors, new environment
    const ReferenceDirectionSet& dirs;
    ObjectiveBounds previous_bounds;
    ObjectiveBounds current_bounds;
    double time = 0.0;
    long environment = 0;
};

struct TaggedOffspring {
    Individual individual;
    Strategy strategy = Strategy::mutation;
    std::size_t direction = 0;
};

struct ChangeResponse {
    std::vector<TaggedOffspring> offspring;
    double delta_f = 0.0;
    double delta_x = 0.0;
    double eta = 20.0;
};

/// One offspring per direction, by prediction or hypermutation, evaluated in the new environment.
ChangeResponse respond_to_change(const DynamicProblem& problem, const ChangeContext& ctx,
                                 const DirectionHistory& history, const ResponseStats& stats,
                                 const ResponseConfig& config, Rng& rng);

}  // namespace vare
