#pragma once

#include "vare/benchmarks.hpp"
#include "vare/core.hpp"
#include "vare/metrics.hpp"
#include "vare/response.hpp"
#include "vare/rng.hpp"
#include "vare/variation.hpp"

#include <chrono>
#include <cstdint>
#include <vector>

namespace vare {

struct EngineConfig {
    int changes = 49;  // environments = changes + 1
    int change_frequency = 10;
    int change_severity = 10;
    ResponseConfig response;
    int window_multiplier = 1;  // L = window_multiplier * lag
    VariationConfig variation;
    int divisions = 0;  // 0 selects default_divisions(M)
    std::uint64_t seed = 1;
    std::size_t pf_samples = 10000;

    /// Throws std::invalid_argument describing the first inconsistency.
    void validate() const;
    [[nodiscard]] int environments() const { return changes + 1; }
};

struct EnvironmentRecord {
    long environment = 0;
    double time = 0.0;
    double igd = 0.0;
    double hv = 0.0;
    double wall_ms = 0.0;
    std::vector<Vector> approximation;  // nondominated objective vectors right before the change
    /// Mean retained PCA rank over direction histories with at least two entries, NaN if none.
    double mean_pca_rank = 0.0;
    int prediction_attempts = 0;
    int prediction_successes = 0;
    int mutation_attempts = 0;
    int mutation_successes = 0;
    double eta = 20.0;
};

/// Ideal from the whole set, nadir from its first nondominated front.
ObjectiveBounds selection_bounds(std::span<const Vector> objectives);

/// Indices (into `objectives`) of the `count` survivors of layered, diversity-first selection:
/// layer r holds the r-th best member (by PBI) of every occupied subspace, layers are taken in
/// order, and the last partial layer is cut by PBI. Result is in selection order.
std::vector<std::size_t> diversity_centred_select(std::span<const Vector> objectives,
                                                  const ReferenceDirectionSet& dirs,
                                                  const ObjectiveBounds& bounds, std::size_t count);

Population diversity_centred_sort(const Population& candidates, const ReferenceDirectionSet& dirs,
                                  const ObjectiveBounds& bounds, std::size_t count);

/// For every direction, the best (PBI) member associated with it; directions without members take
/// the angularly nearest member. Returns population indices.
std::vector<std::size_t> direction_representatives(const Population& pop,
                                                   const ReferenceDirectionSet& dirs,
                                                   const ObjectiveBounds& bounds);

class Optimizer {
public:
    Optimizer(const DynamicProblem& problem, EngineConfig config, PfCache* cache = nullptr);

    /// Re-evaluates the sentinel members (indices 0, 10, 20, ...) at the current time.
    bool detect_change();
    /// Runs one generation and advances the clock.
    void step();
    std::vector<EnvironmentRecord> run();

    [[nodiscard]] const Population& population() const { return population_; }
    [[nodiscard]] const TimeContext& clock() const { return clock_; }
    [[nodiscard]] const DirectionHistory& history() const { return history_; }
    [[nodiscard]] const ResponseStats& stats() const { return stats_; }
    [[nodiscard]] const ReferenceDirectionSet& directions() const { return dirs_; }
    [[nodiscard]] const std::vector<EnvironmentRecord>& records() const { return records_; }
    [[nodiscard]] long total_generations() const;

private:
    Individual make_individual(Vector x);
    void respond(long environment, double t);
    void evolve(long environment, double t);
    void archive();
    void finish_environment(long environment, double t);

    const DynamicProblem& problem_;
    EngineConfig config_;
    PfCache* cache_;
    ReferenceDirectionSet dirs_;
    Rng rng_;
    TimeContext clock_;
    Population population_;
    DirectionHistory history_;
    ResponseStats stats_;
    std::vector<EnvironmentRecord> records_;
    EnvironmentRecord pending_;
    std::chrono::steady_clock::time_point environment_started_;
};

std::vector<EnvironmentRecord> run(const DynamicProblem& problem, const EngineConfig& config,
                                   PfCache* cache = nullptr);

}  // namespace vare
