#include "vare/benchmarks.hpp"
#include "vare/response.hpp"

#include <doctest.h>

#include <cmath>

using namespace vare;

namespace {

Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }

struct Scenario {
    DF1 problem{10};
    ReferenceDirectionSet dirs = generate_reference_directions(2, 3);
    Population previous;
    Population reevaluated;
    double t_new = 0.1;

    Scenario() {
        Rng rng(21);
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            Vector x(10);
            for (int j = 0; j < 10; ++j) x[j] = rng.uniform();
            Individual ind{x, problem.evaluate(x, 0.0), 0};
            previous.push_back(ind);
            ind.f = problem.evaluate(x, t_new);
            ind.eval_env = 1;
            reevaluated.push_back(ind);
        }
    }

    ChangeContext context() const {
        return {previous,
                reevaluated,
                dirs,
                ObjectiveBounds::of(objectives_of(previous)),
                ObjectiveBounds::of(objectives_of(reevaluated)),
                t_new,
                1};
    }

    DirectionHistory history(int entries) const {
        DirectionHistory h(dirs.size());
        for (std::size_t d = 0; d < dirs.size(); ++d)
            for (int e = 0; e < entries; ++e) h.record(d, e, previous[d].x * (1.0 - 0.01 * e));
        return h;
    }
};

}  // namespace

TEST_CASE("mutation index") {
    CHECK(mutation_index(0.0, 0.0) == 20.0);
    CHECK(mutation_index(3.0, 2.0) == 2.0);
    CHECK(mutation_index(std::log(2.0), 0.0) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(mutation_index(1e6, 1e6) == 2.0);
    double previous = 21.0;
    for (int i = 0; i <= 100; ++i) {
        const double eta = mutation_index(0.05 * i, 0.0);
        CHECK(eta >= 2.0);
        CHECK(eta <= 20.0);
        CHECK(eta <= previous);
        previous = eta;
    }
}

TEST_CASE("objective severity") {
    const std::vector<Vector> ones(3, v2(1, 1));
    CHECK(severity_objective(ones, ones) == 0.0);
    const std::vector<Vector> twos(3, v2(2, 2));
    CHECK(severity_objective(ones, twos) == doctest::Approx(1.0 / (1.0 + 1e-6)).epsilon(1e-12));
    CHECK(severity_objective(std::vector<Vector>{v2(1, 2)}, std::vector<Vector>{v2(1.5, 2)}) ==
          doctest::Approx(0.25).epsilon(1e-5));
    CHECK_THROWS(severity_objective(ones, std::vector<Vector>{v2(1, 1)}));
}

TEST_CASE("decision severity") {
    const auto dirs = generate_reference_directions(2, 1);
    const ObjectiveBounds b{v2(0, 0), v2(1, 1)};
    const Population before{{v2(1, 1), v2(1, 0), 0}};
    const Population after{{v2(1.5, 1), v2(1, 0), 1}};
    // one changed coordinate of relative size 0.5, averaged over n = 2
    CHECK(severity_decision(before, after, dirs, b, b) == doctest::Approx(0.25).epsilon(1e-5));

    const Population uniform_after{{v2(1.1, 1.1), v2(1, 0), 1}};
    CHECK(severity_decision(before, uniform_after, dirs, b, b) == doctest::Approx(0.1).epsilon(1e-5));

    Scenario s;
    Population shifted = s.previous;
    for (auto& ind : shifted) ind.f = ind.f * 2.0 + Vector::Constant(2, 0.5);
    const auto ctx = s.context();
    CHECK(severity_decision(s.previous, shifted, s.dirs, ctx.previous_bounds,
                            ObjectiveBounds::of(objectives_of(shifted))) == 0.0);
}

TEST_CASE("decision severity picks the lowest-PBI partner in the same subspace") {
    const auto dirs = generate_reference_directions(2, 1);  // (0,1), (1,0)
    const ObjectiveBounds b{v2(0, 0), v2(1, 1)};
    const Population before{{v2(1, 1), v2(0.1, 0.9), 0}};
    // both candidates associate with (0,1); the second is closer to the ideal
    const Population after{{v2(3, 1), v2(0.1, 0.9), 1}, {v2(2, 1), v2(0.05, 0.5), 1}};
    const Population before2{before[0], before[0]};
    const double expected = (std::abs(1.0 / (1 + 1e-6)) + 0.0) / 2.0;
    CHECK(severity_decision(before2, after, dirs, b, b) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("direction history") {
    DirectionHistory h(2);
    CHECK_THROWS_AS(h.latest(0), EmptyHistory);
    h.record(0, 0, v2(1, 1));
    h.record(0, 3, v2(2, 2));
    CHECK_THROWS(h.record(0, 3, v2(3, 3)));
    CHECK_THROWS(h.record(0, 1, v2(3, 3)));
    CHECK(h.size(0) == 2);
    CHECK(h.latest(0) == v2(2, 2));
    CHECK(h.environments(0) == std::vector<long>{0, 3});
    CHECK(h.size(1) == 0);
}

TEST_CASE("sliding-window success statistics and pi") {
    ResponseStats stats(1, 2);
    CHECK(update_pi(stats, 0) == 0.0);

    for (int k = 0; k < 10; ++k) stats.record(0, Strategy::prediction, 1, k < 6);
    for (int k = 0; k < 10; ++k) stats.record(0, Strategy::mutation, 1, k < 2);
    CHECK(update_pi(stats, 0) == doctest::Approx(0.75));

    ResponseStats only_prediction(1, 2);
    only_prediction.record(0, Strategy::prediction, 1, true);
    only_prediction.record(0, Strategy::prediction, 1, false);
    CHECK(update_pi(only_prediction, 0) == 1.0);

    // entries older than the window disappear
    stats.record(0, Strategy::mutation, 3, true);
    stats.prune(3);
    CHECK(stats.attempts(0, Strategy::prediction) == 10);
    stats.prune(4);
    CHECK(stats.attempts(0, Strategy::prediction) == 0);
    CHECK(stats.attempts(0, Strategy::mutation) == 1);
    CHECK(update_pi(stats, 0) == 0.0);
    CHECK_THROWS(ResponseStats(1, 0));
}

TEST_CASE("pi stays in [0, 1] and is zero without prediction successes") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        ResponseStats stats(1, 3);
        for (int k = 0; k < 20; ++k)
            stats.record(0, rng.uniform() < 0.5 ? Strategy::prediction : Strategy::mutation, rng.index(4),
                         rng.uniform() < 0.4);
        const double pi = update_pi(stats, 0);
        CHECK(pi >= 0.0);
        CHECK(pi <= 1.0);
        if (stats.successes(0, Strategy::prediction) == 0) CHECK(pi == 0.0);
    }
}

TEST_CASE("VAR prediction") {
    const Bounds b = Bounds::uniform(3, -10.0, 10.0);
    DirectionHistory constant(1);
    const Vector c = (Vector(3) << 0.3, -1.0, 2.0).finished();
    for (int e = 0; e < 8; ++e) constant.record(0, e, c);
    CHECK((var_predict(constant, 0, 1, b) - c).cwiseAbs().maxCoeff() < 1e-6);

    DirectionHistory drift(1);
    const double delta = 0.2;
    for (int e = 0; e < 10; ++e) drift.record(0, e, (Vector(3) << 0.5 + delta * e, 1.0, -1.0).finished());
    const Vector q = var_predict(drift, 0, 1, b);
    const double last = 0.5 + delta * 9;
    CHECK(std::abs(q[0] - (last + delta)) < 0.1 * delta);

    DirectionHistory short_history(1);
    for (int e = 0; e < 6; ++e) short_history.record(0, e, c);
    CHECK_THROWS_AS(var_predict(short_history, 0, 5, b), InsufficientHistory);
    CHECK_NOTHROW(var_predict(short_history, 0, 4, b));

    const Bounds tight = Bounds::uniform(3, 0.0, 2.0);
    CHECK(tight.contains(var_predict(drift, 0, 1, tight)));
}

TEST_CASE("hypermutation of the archived solution") {
    DirectionHistory h(2);
    const Vector a = Vector::Constant(10, 0.0);
    h.record(0, 0, a);
    const Bounds b = Bounds::uniform(10, 0.0, 1.0);
    int calls = 0;
    auto half = [&calls] { return (calls++ % 2 == 0) ? 0.0 : 0.5; };
    CHECK(eah_mutate(h, 0, 20.0, b, half) == a);
    Rng rng(3);
    for (int k = 0; k < 200; ++k) CHECK(b.contains(eah_mutate(h, 0, 2.0, b, rng)));
    CHECK_THROWS_AS(eah_mutate(h, 1, 20.0, b, rng), EmptyHistory);
}

TEST_CASE("change response with zero pi is all hypermutation") {
    Scenario s;
    const auto history = s.history(1);
    const ResponseStats stats(s.dirs.size(), 5);
    Rng rng(1);
    const ResponseConfig cfg{Variant::vare, 5};
    const auto r = respond_to_change(s.problem, s.context(), history, stats, cfg, rng);
    REQUIRE(r.offspring.size() == s.dirs.size());
    for (std::size_t i = 0; i < r.offspring.size(); ++i) {
        CHECK(r.offspring[i].strategy == Strategy::mutation);
        CHECK(r.offspring[i].direction == i);
        CHECK(r.offspring[i].individual.eval_env == 1);
        CHECK(r.offspring[i].individual.f == s.problem.evaluate(r.offspring[i].individual.x, s.t_new));
    }
    CHECK(r.eta >= 2.0);
    CHECK(r.eta <= 20.0);
}

TEST_CASE("change response with pi = 1 and enough history is all prediction") {
    Scenario s;
    const auto history = s.history(8);
    ResponseStats stats(s.dirs.size(), 5);
    for (std::size_t i = 0; i < s.dirs.size(); ++i) stats.record(i, Strategy::prediction, 0, true);
    Rng rng(1);
    const auto r = respond_to_change(s.problem, s.context(), history, stats, ResponseConfig{Variant::vare, 5}, rng);
    for (const auto& child : r.offspring) {
        CHECK(child.strategy == Strategy::prediction);
        CHECK(s.problem.bounds().contains(child.individual.x));
        CHECK(child.individual.x ==
              var_predict(history, child.direction, 5, s.problem.bounds()));
    }
}

TEST_CASE("change response with pi = 1 but short history falls back to hypermutation") {
    Scenario s;
    const auto history = s.history(2);
    ResponseStats stats(s.dirs.size(), 5);
    for (std::size_t i = 0; i < s.dirs.size(); ++i) stats.record(i, Strategy::prediction, 0, true);
    Rng rng(1);
    for (Variant v : {Variant::vare, Variant::var_only}) {
        const auto r = respond_to_change(s.problem, s.context(), history, stats, ResponseConfig{v, 5}, rng);
        for (const auto& child : r.offspring) CHECK(child.strategy == Strategy::mutation);
    }
}

TEST_CASE("variants") {
    Scenario s;
    const auto history = s.history(9);
    const ResponseStats stats(s.dirs.size(), 5);
    Rng rng(1);
    auto r = respond_to_change(s.problem, s.context(), history, stats, ResponseConfig{Variant::eah_only, 5}, rng);
    for (const auto& child : r.offspring) CHECK(child.strategy == Strategy::mutation);
    r = respond_to_change(s.problem, s.context(), history, stats, ResponseConfig{Variant::var_only, 5}, rng);
    for (const auto& child : r.offspring) CHECK(child.strategy == Strategy::prediction);

    CHECK(parse_variant("var-only") == Variant::var_only);
    CHECK(to_string(Variant::eah_only) == "eah-only");
    CHECK_THROWS(parse_variant("VARE2"));
}

TEST_CASE("change response without any archive mutates the nearest member") {
    Scenario s;
    const DirectionHistory empty(s.dirs.size());
    const ResponseStats stats(s.dirs.size(), 5);
    Rng rng(2);
    const auto r = respond_to_change(s.problem, s.context(), empty, stats, ResponseConfig{}, rng);
    CHECK(r.offspring.size() == s.dirs.size());
    for (const auto& child : r.offspring) CHECK(child.strategy == Strategy::mutation);
}

TEST_CASE("unchanged environment gives zero severity and eta = 20") {
    Scenario s;
    const ChangeContext ctx{s.previous,
                            s.previous,
                            s.dirs,
                            ObjectiveBounds::of(objectives_of(s.previous)),
                            ObjectiveBounds::of(objectives_of(s.previous)),
                            0.0,
                            1};
    Rng rng(3);
    const auto r = respond_to_change(s.problem, ctx, s.history(1), ResponseStats(s.dirs.size(), 5),
                                     ResponseConfig{}, rng);
    CHECK(r.delta_f == 0.0);
    CHECK(r.delta_x == 0.0);
    CHECK(r.eta == 20.0);
}
