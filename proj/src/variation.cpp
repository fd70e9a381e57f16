#include "vare/variation.hpp"

#include "vare/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vare {

double polynomial_mutate_value(double value, double lower, double upper, double eta, double u) {
    const double range = upper - lower;
    if (!(range > 0.0)) return value;
    const double delta1 = (value - lower) / range;
    const double delta2 = (upper - value) / range;
    const double power = 1.0 / (eta + 1.0);
    double deltaq;
    if (u <= 0.5) {
        const double xy = 1.0 - delta1;
        const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
        deltaq = std::pow(val, power) - 1.0;
    } else {
        const double xy = 1.0 - delta2;
        const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
        deltaq = 1.0 - std::pow(val, power);
    }
    return std::clamp(value + deltaq * range, lower, upper);
}

double sbx_beta(double u, double eta) {
    if (u <= 0.5) return std::pow(2.0 * u, 1.0 / (eta + 1.0));
    return std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
}

namespace {

struct LocalModel {
    Vector mean;
    Matrix principal;  // n x latent_dim, empty until fitted
    Vector eigenvalues;
};

double residual_distance(const LocalModel& model, const Vector& x) {
    const Vector d = x - model.mean;
    if (model.principal.cols() == 0) return d.squaredNorm();
    const Vector along = model.principal.transpose() * d;
    return d.squaredNorm() - along.squaredNorm();
}

}  // namespace

std::vector<ManifoldCluster> local_pca_clusters(const std::vector<Vector>& points, int latent_dim,
                                                int clusters, Rng& rng) {
    const std::size_t N = points.size();
    if (N == 0) return {};
    const auto K = static_cast<std::size_t>(std::clamp<int>(clusters, 1, static_cast<int>(N)));
    const Eigen::Index n = points.front().size();

    // Distinct random seeds for the cluster means.
    std::vector<std::size_t> perm(N);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = 0; i < K; ++i) std::swap(perm[i], perm[i + rng.index(N - i)]);
    std::vector<LocalModel> models(K);
    for (std::size_t k = 0; k < K; ++k) models[k].mean = points[perm[k]];

    std::vector<std::size_t> partition(N, 0);
    for (int iteration = 0; iteration < 50; ++iteration) {
        for (std::size_t i = 0; i < N; ++i) {
            double best = residual_distance(models[0], points[i]);
            partition[i] = 0;
            for (std::size_t k = 1; k < K; ++k) {
                const double d = residual_distance(models[k], points[i]);
                if (d < best) {
                    best = d;
                    partition[i] = k;
                }
            }
        }
        bool updated = false;
        for (std::size_t k = 0; k < K; ++k) {
            std::vector<Vector> members;
            for (std::size_t i = 0; i < N; ++i)
                if (partition[i] == k) members.push_back(points[i]);
            const Vector old_mean = models[k].mean;
            if (members.size() < 2) {
                models[k].mean = members.empty() ? points[rng.index(N)] : members.front();
                models[k].principal.resize(n, 0);
                models[k].eigenvalues.resize(0);
                updated = updated || members.empty() || (old_mean - models[k].mean).norm() > 1e-5;
                continue;
            }
            Vector mean = Vector::Zero(n);
            for (const auto& m : members) mean += m;
            mean /= static_cast<double>(members.size());
            Matrix scatter = Matrix::Zero(n, n);
            for (const auto& m : members) scatter.noalias() += (m - mean) * (m - mean).transpose();
            const auto eig = jacobi_eigen(scatter);
            models[k].mean = mean;
            models[k].eigenvalues = eig.values / static_cast<double>(members.size() - 1);
            models[k].principal = eig.vectors.leftCols(std::min<Eigen::Index>(latent_dim, n));
            updated = updated || (old_mean - models[k].mean).norm() > 1e-5;
        }
        if (!updated) break;
    }

    std::vector<ManifoldCluster> out(K);
    for (std::size_t i = 0; i < N; ++i) out[partition[i]].members.push_back(i);
    for (std::size_t k = 0; k < K; ++k) {
        auto& c = out[k];
        c.mean = models[k].mean;
        if (c.members.size() < static_cast<std::size_t>(latent_dim + 1) || models[k].principal.cols() == 0)
            continue;
        c.basis = models[k].principal;
        const Eigen::Index d = c.basis.cols();
        c.lower = Vector::Constant(d, std::numeric_limits<double>::infinity());
        c.upper = Vector::Constant(d, -std::numeric_limits<double>::infinity());
        for (auto i : c.members) {
            const Vector y = c.basis.transpose() * (points[i] - c.mean);
            c.lower = c.lower.cwiseMin(y);
            c.upper = c.upper.cwiseMax(y);
        }
        const auto& ev = models[k].eigenvalues;
        if (ev.size() > d) c.noise_variance = ev.tail(ev.size() - d).cwiseAbs().mean();
    }
    return out;
}

namespace {

std::vector<Vector> vary_rm_meda(const std::vector<Vector>& parents, const Bounds& bounds,
                                 int objectives, const VariationConfig& config, Rng& rng) {
    const int latent = objectives - 1;
    const auto clusters = local_pca_clusters(parents, latent, config.clusters, rng);

    std::vector<double> weight(clusters.size(), 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < clusters.size(); ++k) {
        if (clusters[k].basis.cols() == 0) continue;
        weight[k] = (clusters[k].upper - clusters[k].lower).prod();
        total += weight[k];
    }
    if (!(total > 0.0)) {
        total = 0.0;
        for (std::size_t k = 0; k < clusters.size(); ++k) {
            weight[k] = static_cast<double>(clusters[k].members.size());
            total += weight[k];
        }
    }

    std::vector<Vector> out;
    out.reserve(parents.size());
    while (out.size() < parents.size()) {
        double r = rng.uniform() * total;
        std::size_t k = 0;
        while (k + 1 < clusters.size() && (weight[k] == 0.0 || r >= weight[k])) r -= weight[k++];
        const auto& c = clusters[k];
        if (c.members.empty()) continue;
        if (c.basis.cols() == 0) {
            const auto& member = parents[c.members[rng.index(c.members.size())]];
            out.push_back(polynomial_mutate(member, bounds, config.mutation_eta, rng));
            continue;
        }
        const Vector span = c.upper - c.lower;
        const Vector lo = c.lower - config.extension * span;
        const Vector hi = c.upper + config.extension * span;
        Vector latent_point(lo.size());
        for (Eigen::Index j = 0; j < lo.size(); ++j) latent_point[j] = rng.uniform(lo[j], hi[j]);
        Vector x = c.mean + c.basis * latent_point;
        const double sigma = std::sqrt(c.noise_variance);
        for (Eigen::Index j = 0; j < x.size(); ++j) x[j] += sigma * rng.normal();
        out.push_back(bounds.clamp(x));
    }
    return out;
}

std::vector<Vector> vary_sbx(const std::vector<Vector>& parents, const Bounds& bounds,
                             const VariationConfig& config, Rng& rng) {
    const std::size_t N = parents.size();
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = N; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);

    std::vector<Vector> out;
    out.reserve(N);
    for (std::size_t i = 0; out.size() < N; i += 2) {
        const auto& a = parents[order[i % N]];
        const auto& b = parents[order[(i + 1) % N]];
        std::pair<Vector, Vector> children{a, b};
        if (rng.uniform() < config.sbx_rate)
            children = sbx_crossover(a, b, bounds, config.sbx_eta, rng);
        out.push_back(polynomial_mutate(children.first, bounds, config.mutation_eta, rng));
        if (out.size() < N)
            out.push_back(polynomial_mutate(children.second, bounds, config.mutation_eta, rng));
    }
    return out;
}

}  // namespace

std::vector<Vector> vary(const std::vector<Vector>& parents, const Bounds& bounds, int objectives,
                         const VariationConfig& config, Rng& rng) {
    if (parents.empty()) throw std::invalid_argument("vary: empty parent population");
    switch (config.op) {
        case Operator::rm_meda: return vary_rm_meda(parents, bounds, objectives, config, rng);
        case Operator::sbx: return vary_sbx(parents, bounds, config, rng);
    }
    throw std::invalid_argument("vary: unknown operator");
}

}  // namespace vare
