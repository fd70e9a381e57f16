#pragma once

#include "vare/core.hpp"

#include <span>
#include <vector>

namespace vare {

struct MetricRecord {
    long environment = 0;
    double igd = 0.0;
    double hv = 0.0;
    double wall_ms = 0.0;
};

/// Max-min normalization; coordinates with zero range map to 0.
std::vector<Vector> normalize(std::span<const Vector> points, const ObjectiveBounds& bounds);

/// Mean distance from each reference point to its nearest approximation point.
/// Throws std::invalid_argument on an empty set.
double igd(std::span<const Vector> reference, std::span<const Vector> approximation);

/// Dominated hypervolume for two or three objectives; points not strictly better than the
/// reference point in every coordinate contribute nothing.
double hypervolume(std::span<const Vector> points, const Vector& reference_point);

struct DynamicMetrics {
    double migd = 0.0;
    double mhv = 0.0;
};

DynamicMetrics aggregate(std::span<const MetricRecord> records);

/// Front number (1-based) of each algorithm's (MIGD, MHV) pair under nondominated sorting of
/// (MIGD, -MHV).
std::vector<int> rank_algorithms(std::span<const DynamicMetrics> paired);

/// IGD and HV of an approximation at one environment: both sets are normalized with the true
/// front bounds and HV uses the reference point (1.1, ..., 1.1).
struct EnvironmentScore {
    double igd = 0.0;
    double hv = 0.0;
};

EnvironmentScore score_environment(std::span<const Vector> approximation,
                                   std::span<const Vector> true_front, const ObjectiveBounds& bounds);

}  // namespace vare
