#include "vare/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vare {

void EngineConfig::validate() const {
    if (changes < 0) throw std::invalid_argument("changes must be nonnegative");
    if (change_frequency < 1) throw std::invalid_argument("change frequency must be at least 1");
    if (change_severity < 0) throw std::invalid_argument("change severity must be nonnegative");
    if (response.lag < 1) throw std::invalid_argument("lag must be at least 1");
    if (window_multiplier < 1) throw std::invalid_argument("window multiplier must be at least 1");
    if (divisions < 0) throw std::invalid_argument("lattice divisions must be nonnegative");
    if (pf_samples < 1) throw std::invalid_argument("PF sample size must be at least 1");
    if (!(response.variance_threshold > 0.0 && response.variance_threshold <= 1.0))
        throw std::invalid_argument("variance threshold must lie in (0, 1]");
    if (variation.clusters < 1) throw std::invalid_argument("cluster count must be at least 1");
}

ObjectiveBounds selection_bounds(std::span<const Vector> objectives) {
    ObjectiveBounds b = ObjectiveBounds::of(objectives);
    const auto front = nondominated_indices(objectives);
    b.nadir = objectives[front.front()];
    for (auto i : front) b.nadir = b.nadir.cwiseMax(objectives[i]);
    return b;
}

std::vector<std::size_t> diversity_centred_select(std::span<const Vector> objectives,
                                                  const ReferenceDirectionSet& dirs,
                                                  const ObjectiveBounds& bounds, std::size_t count) {
    const std::size_t total = objectives.size();
    if (total == 0) throw std::invalid_argument("diversity_centred_select: empty candidate set");
    count = std::min(count, total);

    std::vector<double> fitness(total);
    std::vector<std::vector<std::size_t>> subspace(dirs.size());
    for (std::size_t i = 0; i < total; ++i) {
        const Vector z = bounds.normalize(objectives[i]);
        const std::size_t d = associate_normalized(z, dirs);
        fitness[i] = pbi(z, dirs[d]);
        subspace[d].push_back(i);
    }
    auto better = [&](std::size_t a, std::size_t b) {
        return fitness[a] < fitness[b] || (fitness[a] == fitness[b] && a < b);
    };
    std::size_t depth = 0;
    for (auto& members : subspace) {
        std::sort(members.begin(), members.end(), better);
        depth = std::max(depth, members.size());
    }

    std::vector<std::size_t> selected;
    selected.reserve(count);
    for (std::size_t layer = 0; layer < depth && selected.size() < count; ++layer) {
        std::vector<std::size_t> members;
        for (const auto& s : subspace)
            if (s.size() > layer) members.push_back(s[layer]);
        if (selected.size() + members.size() > count) {
            std::sort(members.begin(), members.end(), better);
            members.resize(count - selected.size());
        }
        selected.insert(selected.end(), members.begin(), members.end());
    }
    return selected;
}

Population diversity_centred_sort(const Population& candidates, const ReferenceDirectionSet& dirs,
                                  const ObjectiveBounds& bounds, std::size_t count) {
    const auto objectives = objectives_of(candidates);
    Population out;
    for (auto i : diversity_centred_select(objectives, dirs, bounds, count)) out.push_back(candidates[i]);
    return out;
}

std::vector<std::size_t> direction_representatives(const Population& pop,
                                                   const ReferenceDirectionSet& dirs,
                                                   const ObjectiveBounds& bounds) {
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best(dirs.size(), none);
    std::vector<double> best_fitness(dirs.size(), std::numeric_limits<double>::infinity());
    std::vector<Vector> normalized;
    normalized.reserve(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        normalized.push_back(bounds.normalize(pop[i].f));
        const std::size_t d = associate_normalized(normalized.back(), dirs);
        const double fit = pbi(normalized.back(), dirs[d]);
        if (fit < best_fitness[d]) {
            best_fitness[d] = fit;
            best[d] = i;
        }
    }
    for (std::size_t d = 0; d < dirs.size(); ++d) {
        if (best[d] != none) continue;
        double best_cos = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pop.size(); ++i) {
            const double c = cosine(normalized[i], dirs[d]);
            if (c > best_cos) {
                best_cos = c;
                best[d] = i;
            }
        }
    }
    return best;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

EnvironmentRecord fresh_record() {
    EnvironmentRecord r;
    r.mean_pca_rank = std::numeric_limits<double>::quiet_NaN();
    return r;
}

}  // namespace

Optimizer::Optimizer(const DynamicProblem& problem, EngineConfig config, PfCache* cache)
    : problem_(problem), config_(std::move(config)), cache_(cache), rng_(config_.seed) {
    config_.validate();
    const int M = problem_.objectives();
    dirs_ = generate_reference_directions(M, config_.divisions > 0 ? config_.divisions : default_divisions(M));
    clock_ = TimeContext{0, config_.change_frequency, config_.change_severity};
    history_ = DirectionHistory(dirs_.size());
    stats_ = ResponseStats(dirs_.size(), config_.response.lag * config_.window_multiplier);
    pending_ = fresh_record();
    environment_started_ = std::chrono::steady_clock::now();

    const Bounds& b = problem_.bounds();
    population_.reserve(dirs_.size());
    for (std::size_t i = 0; i < dirs_.size(); ++i) {
        Vector x(b.dimension());
        for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = rng_.uniform(b.lower[j], b.upper[j]);
        population_.push_back(make_individual(std::move(x)));
    }
}

long Optimizer::total_generations() const {
    return static_cast<long>(config_.environments()) * config_.change_frequency;
}

Individual Optimizer::make_individual(Vector x) {
    Individual ind;
    ind.f = problem_.evaluate(x, clock_.time());
    ind.x = std::move(x);
    ind.eval_env = static_cast<int>(clock_.environment_index());
    return ind;
}

bool Optimizer::detect_change() {
    const double t = clock_.time();
    const std::size_t sentinels = (population_.size() + 9) / 10;
    for (std::size_t s = 0; s < sentinels; ++s) {
        const std::size_t i = 10 * s;
        if (i >= population_.size()) break;
        const Vector f = problem_.evaluate(population_[i].x, t);
        if (((f - population_[i].f).array().abs() > 1e-12).any()) return true;
    }
    return false;
}

void Optimizer::step() {
    const long env = clock_.environment_index();
    const double t = clock_.time();
    if (clock_.generation > 0 && detect_change())
        respond(env, t);
    else
        evolve(env, t);
    if ((clock_.generation + 1) % config_.change_frequency == 0) finish_environment(env, t);
    clock_ = advance_time(clock_);
}

void Optimizer::archive() {
    const long completed = population_.front().eval_env;
    const auto objectives = objectives_of(population_);
    const auto reps = direction_representatives(population_, dirs_, selection_bounds(objectives));
    for (std::size_t d = 0; d < dirs_.size(); ++d) history_.record(d, completed, population_[reps[d]].x);

    double rank_sum = 0.0;
    int fitted = 0;
    for (std::size_t d = 0; d < dirs_.size(); ++d) {
        if (history_.size(d) < 2) continue;
        rank_sum += fit_pca(history_.entries(d), config_.response.variance_threshold).rank();
        ++fitted;
    }
    if (fitted > 0) pending_.mean_pca_rank = rank_sum / fitted;
}

void Optimizer::respond(long environment, double t) {
    archive();

    Population reevaluated = population_;
    for (auto& ind : reevaluated) {
        ind.f = problem_.evaluate(ind.x, t);
        ind.eval_env = static_cast<int>(environment);
    }
    const auto old_objectives = objectives_of(population_);
    const auto new_objectives = objectives_of(reevaluated);

    stats_.prune(environment);
    const ChangeContext ctx{population_,
                            reevaluated,
                            dirs_,
                            selection_bounds(old_objectives),
                            selection_bounds(new_objectives),
                            t,
                            environment};
    ChangeResponse response = respond_to_change(problem_, ctx, history_, stats_, config_.response, rng_);
    pending_.eta = response.eta;

    Population candidates = std::move(reevaluated);
    const std::size_t offset = candidates.size();
    for (const auto& child : response.offspring) candidates.push_back(child.individual);
    const auto objectives = objectives_of(candidates);
    const auto selected =
        diversity_centred_select(objectives, dirs_, selection_bounds(objectives), dirs_.size());

    std::vector<char> survived(candidates.size(), 0);
    for (auto i : selected) survived[i] = 1;
    for (std::size_t k = 0; k < response.offspring.size(); ++k) {
        const auto& child = response.offspring[k];
        const bool success = survived[offset + k] != 0;
        stats_.record(child.direction, child.strategy, environment, success);
        if (child.strategy == Strategy::prediction) {
            ++pending_.prediction_attempts;
            pending_.prediction_successes += success;
        } else {
            ++pending_.mutation_attempts;
            pending_.mutation_successes += success;
        }
    }

    Population next;
    next.reserve(selected.size());
    for (auto i : selected) next.push_back(std::move(candidates[i]));
    population_ = std::move(next);
}

void Optimizer::evolve(long, double) {
    std::vector<Vector> parents;
    parents.reserve(population_.size());
    for (const auto& ind : population_) parents.push_back(ind.x);
    auto children = vary(parents, problem_.bounds(), problem_.objectives(), config_.variation, rng_);

    Population candidates = population_;
    for (auto& x : children) candidates.push_back(make_individual(std::move(x)));
    const auto objectives = objectives_of(candidates);
    population_ = diversity_centred_sort(candidates, dirs_, selection_bounds(objectives), dirs_.size());
}

void Optimizer::finish_environment(long environment, double t) {
    const auto objectives = objectives_of(population_);
    std::vector<Vector> approximation;
    for (auto i : nondominated_indices(objectives)) approximation.push_back(objectives[i]);

    std::shared_ptr<const std::vector<Vector>> reference;
    if (cache_ != nullptr)
        reference = cache_->reference(environment, t);
    else
        reference = std::make_shared<const std::vector<Vector>>(problem_.sample_true_pf(t, config_.pf_samples));

    const auto score = score_environment(approximation, *reference, problem_.true_bounds(t));
    EnvironmentRecord record = std::move(pending_);
    record.environment = environment;
    record.time = t;
    record.igd = score.igd;
    record.hv = score.hv;
    record.approximation = std::move(approximation);
    record.wall_ms = elapsed_ms(environment_started_);
    records_.push_back(std::move(record));

    pending_ = fresh_record();
    environment_started_ = std::chrono::steady_clock::now();
}

std::vector<EnvironmentRecord> Optimizer::run() {
    while (clock_.generation < total_generations()) step();
    return records_;
}

std::vector<EnvironmentRecord> run(const DynamicProblem& problem, const EngineConfig& config,
                                   PfCache* cache) {
    Optimizer optimizer(problem, config, cache);
    return optimizer.run();
}

}  // namespace vare
