#pragma once

#include "vare/core.hpp"
#include "vare/rng.hpp"

#include <concepts>
#include <utility>

namespace vare {

template <class F>
concept UniformSource = requires(F f) {
    { f() } -> std::convertible_to<double>;
};

/// Bounded polynomial mutation of one coordinate for a given uniform draw u.
/// u = 0.5 leaves the value unchanged.
double polynomial_mutate_value(double value, double lower, double upper, double eta, double u);

/// Each coordinate mutates with probability `rate` (default 1/n). Draws two uniforms per
/// coordinate from `draw`: the gate, then the perturbation (only when the gate passes).
template <UniformSource F>
Vector polynomial_mutate(const Vector& x, const Bounds& bounds, double eta, F&& draw,
                         double rate = -1.0) {
    const auto n = x.size();
    if (rate < 0.0) rate = 1.0 / static_cast<double>(n);
    Vector y = x;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (static_cast<double>(draw()) >= rate) continue;
        y[j] = polynomial_mutate_value(y[j], bounds.lower[j], bounds.upper[j], eta,
                                       static_cast<double>(draw()));
    }
    return bounds.clamp(y);
}

/// Simulated binary crossover spread factor for a uniform draw u (beta = 1 at u = 0.5).
double sbx_beta(double u, double eta);

/// SBX on every coordinate using one uniform per coordinate; children are clamped.
template <UniformSource F>
std::pair<Vector, Vector> sbx_crossover(const Vector& p1, const Vector& p2, const Bounds& bounds,
                                        double eta, F&& draw) {
    Vector c1 = p1;
    Vector c2 = p2;
    for (Eigen::Index j = 0; j < p1.size(); ++j) {
        const double beta = sbx_beta(static_cast<double>(draw()), eta);
        c1[j] = 0.5 * ((1.0 + beta) * p1[j] + (1.0 - beta) * p2[j]);
        c2[j] = 0.5 * ((1.0 - beta) * p1[j] + (1.0 + beta) * p2[j]);
    }
    return {bounds.clamp(c1), bounds.clamp(c2)};
}

enum class Operator { rm_meda, sbx };

struct VariationConfig {
    Operator op = Operator::rm_meda;
    int clusters = 5;
    double extension = 0.25;
    double sbx_eta = 20.0;
    double sbx_rate = 1.0;
    double mutation_eta = 20.0;
};

/// RM-MEDA style model of a population's decision vectors: local PCA clusters, each an
/// (M-1)-dimensional manifold with isotropic residual noise.
struct ManifoldCluster {
    Vector mean;
    Matrix basis;        // n x (M-1) principal directions, empty for degenerate clusters
    Vector lower, upper; // latent extent along `basis`
    double noise_variance = 0.0;
    std::vector<std::size_t> members;
};

std::vector<ManifoldCluster> local_pca_clusters(const std::vector<Vector>& points, int latent_dim,
                                                int clusters, Rng& rng);

/// Produces |parents| unevaluated, bound-clamped offspring decision vectors.
std::vector<Vector> vary(const std::vector<Vector>& parents, const Bounds& bounds, int objectives,
                         const VariationConfig& config, Rng& rng);

}  // namespace vare
