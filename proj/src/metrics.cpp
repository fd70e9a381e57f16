#include "vare/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vare {

std::vector<Vector> normalize(std::span<const Vector> points, const ObjectiveBounds& bounds) {
    std::vector<Vector> out;
    out.reserve(points.size());
    const Vector range = bounds.nadir - bounds.ideal;
    for (const auto& p : points) {
        Vector q(p.size());
        for (Eigen::Index j = 0; j < p.size(); ++j)
            q[j] = range[j] > 0.0 ? (p[j] - bounds.ideal[j]) / range[j] : 0.0;
        out.push_back(std::move(q));
    }
    return out;
}

double igd(std::span<const Vector> reference, std::span<const Vector> approximation) {
    if (reference.empty()) throw std::invalid_argument("igd: empty reference set");
    if (approximation.empty()) throw std::invalid_argument("igd: empty approximation set");

    // Nearest neighbour by a sweep over the approximation sorted on the first coordinate.
    std::vector<std::size_t> order(approximation.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return approximation[a][0] < approximation[b][0];
    });
    std::vector<double> keys(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) keys[i] = approximation[order[i]][0];

    double total = 0.0;
    for (const auto& r : reference) {
        const auto start = static_cast<std::ptrdiff_t>(
            std::lower_bound(keys.begin(), keys.end(), r[0]) - keys.begin());
        double best = std::numeric_limits<double>::infinity();
        auto visit = [&](std::ptrdiff_t i) {
            const double gap = keys[static_cast<std::size_t>(i)] - r[0];
            if (gap * gap > best) return false;
            best = std::min(best, (approximation[order[static_cast<std::size_t>(i)]] - r).squaredNorm());
            return true;
        };
        for (std::ptrdiff_t i = start; i < static_cast<std::ptrdiff_t>(keys.size()); ++i)
            if (!visit(i)) break;
        for (std::ptrdiff_t i = start - 1; i >= 0; --i)
            if (!visit(i)) break;
        total += std::sqrt(best);
    }
    return total / static_cast<double>(reference.size());
}

namespace {

double hypervolume_2d(std::vector<Vector> pts, double ref0, double ref1) {
    std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    double area = 0.0;
    double ceiling = ref1;
    for (const auto& p : pts) {
        if (p[1] < ceiling) {
            area += (ref0 - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    return area;
}

}  // namespace

double hypervolume(std::span<const Vector> points, const Vector& reference_point) {
    const auto M = reference_point.size();
    if (M != 2 && M != 3) throw std::invalid_argument("hypervolume: only 2 or 3 objectives");

    std::vector<Vector> inside;
    for (const auto& p : points) {
        if (p.size() != M) throw std::invalid_argument("hypervolume: dimension mismatch");
        if ((p.array() < reference_point.array()).all()) inside.push_back(p);
    }
    if (inside.empty()) return 0.0;

    // Dominated and duplicate points never add volume; dropping them keeps the slicing identical.
    std::vector<Vector> front;
    for (auto i : nondominated_indices(inside)) {
        bool duplicate = false;
        for (const auto& q : front) duplicate = duplicate || q == inside[i];
        if (!duplicate) front.push_back(inside[i]);
    }

    if (M == 2) return hypervolume_2d(std::move(front), reference_point[0], reference_point[1]);

    std::sort(front.begin(), front.end(), [](const Vector& a, const Vector& b) { return a[2] < b[2]; });
    double volume = 0.0;
    std::vector<Vector> slice;
    for (std::size_t i = 0; i < front.size(); ++i) {
        slice.push_back(front[i].head(2));
        const double top = i + 1 < front.size() ? front[i + 1][2] : reference_point[2];
        const double depth = top - front[i][2];
        if (depth > 0.0) volume += depth * hypervolume_2d(slice, reference_point[0], reference_point[1]);
    }
    return volume;
}

DynamicMetrics aggregate(std::span<const MetricRecord> records) {
    if (records.empty()) throw std::invalid_argument("aggregate: no records");
    DynamicMetrics m;
    for (const auto& r : records) {
        m.migd += r.igd;
        m.mhv += r.hv;
    }
    m.migd /= static_cast<double>(records.size());
    m.mhv /= static_cast<double>(records.size());
    return m;
}

std::vector<int> rank_algorithms(std::span<const DynamicMetrics> paired) {
    std::vector<Vector> points;
    points.reserve(paired.size());
    for (const auto& p : paired) points.push_back(Vector{{p.migd, -p.mhv}});
    std::vector<int> rank(paired.size(), 0);
    const auto fronts = nondominated_fronts(points);
    for (std::size_t r = 0; r < fronts.size(); ++r)
        for (auto i : fronts[r]) rank[i] = static_cast<int>(r + 1);
    return rank;
}

EnvironmentScore score_environment(std::span<const Vector> approximation,
                                   std::span<const Vector> true_front, const ObjectiveBounds& bounds) {
    const auto approx = normalize(approximation, bounds);
    const auto reference = normalize(true_front, bounds);
    const Vector ref_point = Vector::Constant(bounds.objectives(), 1.1);
    return {igd(reference, approx), hypervolume(approx, ref_point)};
}

}  // namespace vare
