#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace vare {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Box constraints of the decision space.
struct Bounds {
    Vector lower;
    Vector upper;

    Bounds() = default;
    Bounds(Vector lo, Vector hi);
    static Bounds uniform(int n, double lo, double hi);

    [[nodiscard]] int dimension() const { return static_cast<int>(lower.size()); }
    [[nodiscard]] bool contains(const Vector& x) const;
    [[nodiscard]] Vector clamp(const Vector& x) const;
};

/// Per-coordinate minimum (ideal) and maximum (nadir) of an objective set.
struct ObjectiveBounds {
    Vector ideal;
    Vector nadir;

    [[nodiscard]] int objectives() const { return static_cast<int>(ideal.size()); }
    /// (f - ideal) / (nadir - ideal); a zero range is replaced by 1.
    [[nodiscard]] Vector normalize(const Vector& f) const;
    static ObjectiveBounds of(std::span<const Vector> points);
};

/// A decision vector with its objective vector and the environment it was evaluated in.
struct Individual {
    Vector x;
    Vector f;
    int eval_env = 0;
};

using Population = std::vector<Individual>;

std::vector<Vector> objectives_of(const Population& pop);

/// Das-Dennis simplex lattice; every direction has nonnegative components summing to 1.
class ReferenceDirectionSet {
public:
    ReferenceDirectionSet() = default;
    explicit ReferenceDirectionSet(std::vector<Vector> directions);

    [[nodiscard]] std::size_t size() const { return directions_.size(); }
    [[nodiscard]] int objectives() const;
    [[nodiscard]] const Vector& operator[](std::size_t i) const { return directions_[i]; }
    [[nodiscard]] const std::vector<Vector>& directions() const { return directions_; }

    [[nodiscard]] auto begin() const { return directions_.begin(); }
    [[nodiscard]] auto end() const { return directions_.end(); }

private:
    std::vector<Vector> directions_;
};

/// All lattice points {0, 1/H, ..., 1}^M on the unit simplex, in lexicographic order
/// of the first M-1 components, C(H+M-1, M-1) of them.
ReferenceDirectionSet generate_reference_directions(int objectives, int divisions);

/// Default lattice resolution: 99 for two objectives (N=100), 13 for three (N=105).
int default_divisions(int objectives);

std::size_t binomial(std::size_t n, std::size_t k);

/// Cosine of the angle between two vectors; 0 if either is the zero vector.
double cosine(const Vector& a, const Vector& b);

/// Index of the direction with the smallest acute angle to `normalized`; lowest index on ties.
std::size_t associate_normalized(const Vector& normalized, const ReferenceDirectionSet& dirs);

std::size_t associate(const Individual& ind, const ReferenceDirectionSet& dirs,
                      const ObjectiveBounds& bounds);

/// Penalty-boundary intersection d1 + theta * d2 of a normalized objective vector along `direction`.
double pbi(const Vector& normalized, const Vector& direction, double theta = 5.0);

// Pareto dominance (minimization).
bool dominates(const Vector& a, const Vector& b);
std::vector<std::size_t> nondominated_indices(std::span<const Vector> points);
/// Fast nondominated sort; returns fronts of indices, best first.
std::vector<std::vector<std::size_t>> nondominated_fronts(std::span<const Vector> points);

/// Discrete time bookkeeping: environment K = floor(tau / tau_t), time t = K / n_t.
struct TimeContext {
    long generation = 0;
    int change_frequency = 10;
    int change_severity = 10;

    /// A severity of 0 is treated as the n_t -> infinity limit, freezing t at 0.
    [[nodiscard]] long environment_index() const { return generation / change_frequency; }
    [[nodiscard]] double time() const;
};

TimeContext advance_time(const TimeContext& ctx);

}  // namespace vare
