#include "vare/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vare {

Bounds::Bounds(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size())
        throw std::invalid_argument("bounds: lower and upper have different lengths");
    if ((lower.array() > upper.array()).any())
        throw std::invalid_argument("bounds: lower exceeds upper");
}

Bounds Bounds::uniform(int n, double lo, double hi) {
    return Bounds(Vector::Constant(n, lo), Vector::Constant(n, hi));
}

bool Bounds::contains(const Vector& x) const {
    if (x.size() != lower.size()) return false;
    return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
}

Vector Bounds::clamp(const Vector& x) const {
    return x.cwiseMax(lower).cwiseMin(upper);
}

Vector ObjectiveBounds::normalize(const Vector& f) const {
    Vector range = nadir - ideal;
    for (Eigen::Index j = 0; j < range.size(); ++j)
        if (!(range[j] > 0.0)) range[j] = 1.0;
    return ((f - ideal).array() / range.array()).matrix();
}

ObjectiveBounds ObjectiveBounds::of(std::span<const Vector> points) {
    if (points.empty()) throw std::invalid_argument("objective bounds of an empty set");
    ObjectiveBounds b{points.front(), points.front()};
    for (const auto& p : points) {
        b.ideal = b.ideal.cwiseMin(p);
        b.nadir = b.nadir.cwiseMax(p);
    }
    return b;
}

std::vector<Vector> objectives_of(const Population& pop) {
    std::vector<Vector> out;
    out.reserve(pop.size());
    for (const auto& ind : pop) out.push_back(ind.f);
    return out;
}

ReferenceDirectionSet::ReferenceDirectionSet(std::vector<Vector> directions)
    : directions_(std::move(directions)) {}

int ReferenceDirectionSet::objectives() const {
    return directions_.empty() ? 0 : static_cast<int>(directions_.front().size());
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

void lattice(int objectives, int divisions, int remaining, std::vector<int>& prefix,
             std::vector<Vector>& out) {
    if (static_cast<int>(prefix.size()) == objectives - 1) {
        Vector d(objectives);
        for (int j = 0; j < objectives - 1; ++j) d[j] = static_cast<double>(prefix[j]) / divisions;
        d[objectives - 1] = static_cast<double>(remaining) / divisions;
        out.push_back(std::move(d));
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        prefix.push_back(v);
        lattice(objectives, divisions, remaining - v, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

ReferenceDirectionSet generate_reference_directions(int objectives, int divisions) {
    if (objectives < 2) throw std::invalid_argument("reference directions need at least 2 objectives");
    if (divisions < 1) throw std::invalid_argument("reference directions need at least 1 division");
    std::vector<Vector> out;
    out.reserve(binomial(divisions + objectives - 1, objectives - 1));
    std::vector<int> prefix;
    lattice(objectives, divisions, divisions, prefix, out);
    return ReferenceDirectionSet(std::move(out));
}

int default_divisions(int objectives) {
    switch (objectives) {
        case 2: return 99;
        case 3: return 13;
        default: throw std::invalid_argument("no default lattice resolution for this objective count");
    }
}

double cosine(const Vector& a, const Vector& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return a.dot(b) / (na * nb);
}

std::size_t associate_normalized(const Vector& normalized, const ReferenceDirectionSet& dirs) {
    std::size_t best = 0;
    double best_cos = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const double c = cosine(normalized, dirs[i]);
        if (c > best_cos) {
            best_cos = c;
            best = i;
        }
    }
    return best;
}

std::size_t associate(const Individual& ind, const ReferenceDirectionSet& dirs,
                      const ObjectiveBounds& bounds) {
    return associate_normalized(bounds.normalize(ind.f), dirs);
}

double pbi(const Vector& normalized, const Vector& direction, double theta) {
    const Vector unit = direction / direction.norm();
    const double d1 = normalized.dot(unit);
    const double d2 = (normalized - d1 * unit).norm();
    return d1 + theta * d2;
}

bool dominates(const Vector& a, const Vector& b) {
    bool strictly = false;
    for (Eigen::Index j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) return false;
        if (a[j] < b[j]) strictly = true;
    }
    return strictly;
}

std::vector<std::size_t> nondominated_indices(std::span<const Vector> points) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j)
            dominated = j != i && dominates(points[j], points[i]);
        if (!dominated) out.push_back(i);
    }
    return out;
}

std::vector<std::vector<std::size_t>> nondominated_fronts(std::span<const Vector> points) {
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<int> count(n, 0);
    std::vector<std::vector<std::size_t>> fronts(1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(points[i], points[j])) {
                dominated_by[i].push_back(j);
                ++count[j];
            } else if (dominates(points[j], points[i])) {
                dominated_by[j].push_back(i);
                ++count[i];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (count[i] == 0) fronts[0].push_back(i);
    while (!fronts.back().empty()) {
        std::vector<std::size_t> next;
        for (auto i : fronts.back())
            for (auto j : dominated_by[i])
                if (--count[j] == 0) next.push_back(j);
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(next));
    }
    fronts.pop_back();
    return fronts;
}

double TimeContext::time() const {
    if (change_severity <= 0) return 0.0;
    return static_cast<double>(environment_index()) / change_severity;
}

TimeContext advance_time(const TimeContext& ctx) {
    TimeContext next = ctx;
    ++next.generation;
    return next;
}

}  // namespace vare
