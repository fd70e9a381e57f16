#include "vare/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vare {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::vare: return "vare";
        case Variant::var_only: return "var-only";
        case Variant::eah_only: return "eah-only";
    }
    return "unknown";
}

Variant parse_variant(std::string_view name) {
    if (name == "vare") return Variant::vare;
    if (name == "var-only") return Variant::var_only;
    if (name == "eah-only") return Variant::eah_only;
    throw std::invalid_argument("unknown variant: " + std::string(name));
}

DirectionHistory::DirectionHistory(std::size_t directions)
    : entries_(directions), environments_(directions) {}

void DirectionHistory::record(std::size_t direction, long environment, Vector x) {
    auto& envs = environments_.at(direction);
    if (!envs.empty() && environment <= envs.back())
        throw std::invalid_argument("direction history: environments must be strictly increasing");
    envs.push_back(environment);
    entries_[direction].push_back(std::move(x));
}

const Vector& DirectionHistory::latest(std::size_t direction) const {
    const auto& e = entries_.at(direction);
    if (e.empty()) throw EmptyHistory("no archived solution for this direction");
    return e.back();
}

ResponseStats::ResponseStats(std::size_t directions, int window)
    : window_(window), cells_(directions) {
    if (window < 1) throw std::invalid_argument("response stats: window must be at least 1");
}

void ResponseStats::record(std::size_t direction, Strategy strategy, long environment, bool success) {
    auto& q = cells_.at(direction)[static_cast<std::size_t>(strategy)];
    if (q.empty() || q.back().environment != environment) q.push_back({environment, 0, 0});
    ++q.back().attempts;
    if (success) ++q.back().successes;
}

void ResponseStats::prune(long current_environment) {
    for (auto& per_direction : cells_)
        for (auto& q : per_direction)
            while (!q.empty() && current_environment - q.front().environment > window_) q.pop_front();
}

const std::deque<ResponseStats::Cell>& ResponseStats::cells(std::size_t direction,
                                                            Strategy strategy) const {
    return cells_.at(direction)[static_cast<std::size_t>(strategy)];
}

int ResponseStats::attempts(std::size_t direction, Strategy strategy) const {
    int total = 0;
    for (const auto& c : cells(direction, strategy)) total += c.attempts;
    return total;
}

int ResponseStats::successes(std::size_t direction, Strategy strategy) const {
    int total = 0;
    for (const auto& c : cells(direction, strategy)) total += c.successes;
    return total;
}

double ResponseStats::success_rate(std::size_t direction, Strategy strategy) const {
    const int a = attempts(direction, strategy);
    return a == 0 ? 0.0 : static_cast<double>(successes(direction, strategy)) / a;
}

double update_pi(const ResponseStats& stats, std::size_t direction) {
    const double rp = stats.success_rate(direction, Strategy::prediction);
    const double rm = stats.success_rate(direction, Strategy::mutation);
    if (rp + rm <= 0.0) return 0.0;
    return rp / (rp + rm);
}

Vector var_predict(const DirectionHistory& history, std::size_t direction, int lag,
                   const Bounds& bounds, double variance_threshold) {
    const auto& archive = history.entries(direction);
    if (archive.size() < static_cast<std::size_t>(lag) + 2)
        throw InsufficientHistory("var_predict: archive shorter than lag + 2");

    const PcaBasis basis = fit_pca(archive, variance_threshold);
    std::vector<Vector> latent;
    latent.reserve(archive.size());
    for (const auto& a : archive) latent.push_back(project(basis, a));

    const VarCoefficients coeffs = fit_var(latent, lag);
    std::vector<Vector> recent(latent.rbegin(), latent.rbegin() + lag);
    return bounds.clamp(reconstruct(basis, forecast_one_step(coeffs, recent)));
}

double severity_objective(std::span<const Vector> before, std::span<const Vector> after) {
    if (before.size() != after.size())
        throw std::invalid_argument("severity_objective: populations differ in size");
    if (before.empty()) return 0.0;
    double sum = 0.0;
    Eigen::Index M = before.front().size();
    for (std::size_t i = 0; i < before.size(); ++i)
        for (Eigen::Index j = 0; j < M; ++j)
            sum += std::abs((after[i][j] - before[i][j]) / (std::abs(before[i][j]) + kSeverityEpsilon));
    return sum / (static_cast<double>(M) * static_cast<double>(before.size()));
}

namespace {

std::size_t nearest_by_angle(const std::vector<Vector>& normalized, const Vector& direction) {
    std::size_t best = 0;
    double best_cos = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < normalized.size(); ++k) {
        const double c = cosine(normalized[k], direction);
        if (c > best_cos) {
            best_cos = c;
            best = k;
        }
    }
    return best;
}

}  // namespace

double severity_decision(const Population& previous, const Population& reevaluated,
                         const ReferenceDirectionSet& dirs, const ObjectiveBounds& previous_bounds,
                         const ObjectiveBounds& current_bounds) {
    if (previous.size() != reevaluated.size())
        throw std::invalid_argument("severity_decision: populations differ in size");
    if (previous.empty()) return 0.0;

    std::vector<Vector> normalized;
    std::vector<std::size_t> assoc;
    normalized.reserve(reevaluated.size());
    for (const auto& ind : reevaluated) {
        normalized.push_back(current_bounds.normalize(ind.f));
        assoc.push_back(associate_normalized(normalized.back(), dirs));
    }

    const Eigen::Index n = previous.front().x.size();
    double sum = 0.0;
    for (const auto& old : previous) {
        const std::size_t d = associate(old, dirs, previous_bounds);
        std::size_t partner = reevaluated.size();
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < reevaluated.size(); ++k) {
            if (assoc[k] != d) continue;
            const double s = pbi(normalized[k], dirs[d]);
            if (s < best) {
                best = s;
                partner = k;
            }
        }
        if (partner == reevaluated.size()) partner = nearest_by_angle(normalized, dirs[d]);
        const Vector& xhat = reevaluated[partner].x;
        for (Eigen::Index j = 0; j < n; ++j)
            sum += std::abs((xhat[j] - old.x[j]) / (std::abs(old.x[j]) + kSeverityEpsilon));
    }
    return sum / (static_cast<double>(n) * static_cast<double>(previous.size()));
}

double mutation_index(double delta_f, double delta_x) {
    return 20.0 * std::max(std::exp(-(delta_f + delta_x)), 0.1);
}

ChangeResponse respond_to_change(const DynamicProblem& problem, const ChangeContext& ctx,
                                 const DirectionHistory& history, const ResponseStats& stats,
                                 const ResponseConfig& config, Rng& rng) {
    const auto before = objectives_of(ctx.previous);
    const auto after = objectives_of(ctx.reevaluated);

    ChangeResponse out;
    out.delta_f = severity_objective(before, after);
    out.delta_x = severity_decision(ctx.previous, ctx.reevaluated, ctx.dirs, ctx.previous_bounds,
                                    ctx.current_bounds);
    out.eta = mutation_index(out.delta_f, out.delta_x);

    std::vector<Vector> normalized;
    normalized.reserve(after.size());
    for (const auto& f : after) normalized.push_back(ctx.current_bounds.normalize(f));

    const Bounds& bounds = problem.bounds();
    const auto required = static_cast<std::size_t>(config.lag) + 2;
    out.offspring.reserve(ctx.dirs.size());
    for (std::size_t i = 0; i < ctx.dirs.size(); ++i) {
        const bool feasible = history.directions() > i && history.size(i) >= required;
        bool predict = false;
        switch (config.variant) {
            case Variant::eah_only: break;
            case Variant::var_only: predict = true; break;
            case Variant::vare: {
                const double r = rng.uniform();
                // A strategy with no attempts in the window has no rate to compare; prediction is
                // tried once it becomes feasible so that its rate can be learned.
                predict = update_pi(stats, i) > r ||
                          (feasible && stats.attempts(i, Strategy::prediction) == 0);
                break;
            }
        }

        TaggedOffspring child;
        child.direction = i;
        if (predict && feasible) {
            child.strategy = Strategy::prediction;
            child.individual.x = var_predict(history, i, config.lag, bounds, config.variance_threshold);
        } else {
            child.strategy = Strategy::mutation;
            if (history.directions() > i && history.size(i) > 0) {
                child.individual.x = eah_mutate(history, i, out.eta, bounds, rng);
            } else {
                const auto& stand_in = ctx.reevaluated[nearest_by_angle(normalized, ctx.dirs[i])];
                child.individual.x = polynomial_mutate(stand_in.x, bounds, out.eta, rng);
            }
        }
        child.individual.f = problem.evaluate(child.individual.x, ctx.time);
        child.individual.eval_env = static_cast<int>(ctx.environment);
        out.offspring.push_back(std::move(child));
    }
    return out;
}

}  // namespace vare
