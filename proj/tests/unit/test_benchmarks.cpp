#include "vare/benchmarks.hpp"
#include "vare/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace vare;

namespace {

constexpr double kPi = std::numbers::pi;

Vector constant(int n, double v) { return Vector::Constant(n, v); }

bool mutually_nondominated(const std::vector<Vector>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (i != j && dominates(pts[i], pts[j])) return false;
    return true;
}

Vector random_inside(const Bounds& b, Rng& rng) {
    Vector x(b.dimension());
    for (int j = 0; j < x.size(); ++j) x[j] = rng.uniform(b.lower[j], b.upper[j]);
    return x;
}

}  // namespace

TEST_CASE("DF1 evaluation by direct substitution") {
    const DF1 p;
    Vector x = constant(10, 0.0);
    x[0] = 0.5;
    const Vector f = p.evaluate(x, 0.0);
    CHECK(f[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(f[1] == doctest::Approx(1.0 - std::pow(0.5, 1.25)).epsilon(1e-14));

    const Vector origin = p.evaluate(constant(10, 0.0), 0.0);
    CHECK(origin[0] == 0.0);
    CHECK(origin[1] == 1.0);

    const Vector end = p.evaluate(constant(10, 1.0), 1.0);
    CHECK(end[0] == doctest::Approx(1.0));
    CHECK(end[1] == doctest::Approx(0.0));

    // off the PS: x_i = 0.3 at t = 0 gives g = 1 + 9 * 0.09
    Vector y = constant(10, 0.3);
    y[0] = 0.2;
    const double g = 1.0 + 9 * 0.09;
    const Vector fy = p.evaluate(y, 0.0);
    CHECK(fy[1] == doctest::Approx(g * (1.0 - std::pow(0.2 / g, 1.25))));
}

TEST_CASE("DF1 Pareto set points land on the analytic front") {
    const DF1 p;
    Rng rng(11);
    for (int k = 0; k < 50; ++k) {
        const double t = rng.uniform(0.0, 5.0);
        const double G = std::abs(std::sin(0.5 * kPi * t));
        const double H = 0.75 * std::sin(0.5 * kPi * t) + 1.25;
        Vector x = constant(10, G);
        x[0] = rng.uniform();
        const Vector f = p.evaluate(x, t);
        CHECK(f[1] == doctest::Approx(1.0 - std::pow(f[0], H)).epsilon(1e-12));
    }
}

TEST_CASE("DF4 Pareto set points land on the analytic front") {
    const DF4 p;
    for (double t : {0.0, 0.3, 2.1, 3.7}) {
        const double a = std::sin(0.5 * kPi * t);
        const double b = 1.0 + std::abs(std::cos(0.5 * kPi * t));
        const double c = std::max(std::abs(a), a + b);
        const double H = 1.5 + a;
        for (double u : {0.0, 0.25, 0.5}) {
            const double x1 = a + u * b;
            if (x1 < -2.0 || x1 > 2.0) continue;
            Vector x(10);
            x[0] = x1;
            for (int i = 1; i < 10; ++i) x[i] = a * x1 * x1 / ((i + 1) * c * c);
            const Vector f = p.evaluate(x, t);
            CHECK(f[0] == doctest::Approx(std::pow(u * b, H)));
            CHECK(f[1] == doctest::Approx(std::pow((1.0 - u) * b, H)));
        }
        const auto tb = p.true_bounds(t);
        CHECK(tb.nadir[0] == doctest::Approx(std::pow(b, H)));
    }
}

TEST_CASE("DF5 and FDA4 Pareto sets") {
    const DF5 p5;
    const double t = 0.7;
    const double G = std::sin(0.5 * kPi * t);
    const double w = std::floor(10 * G);
    Vector x = constant(10, G);
    x[0] = 0.3;
    const Vector f = p5.evaluate(x, t);
    CHECK(f[0] == doctest::Approx(0.3 + 0.02 * std::sin(w * kPi * 0.3)));
    CHECK(f[1] == doctest::Approx(0.7 + 0.02 * std::sin(w * kPi * 0.3)));

    const FDA4 p4;
    const double G4 = std::abs(std::sin(0.5 * kPi * t));
    Vector y = constant(12, G4);
    y[0] = 0.4;
    y[1] = 0.9;
    CHECK(p4.evaluate(y, t).squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evaluation rejects out-of-bounds vectors and is reproducible") {
    for (const auto& name : problem_names()) {
        const auto p = make_problem(name);
        Rng rng(5);
        const Vector x = random_inside(p->bounds(), rng);
        const Vector f1 = p->evaluate(x, 0.4);
        const Vector f2 = p->evaluate(x, 0.4);
        CHECK(f1.size() == p->objectives());
        CHECK(f1.allFinite());
        CHECK(f1 == f2);
        Vector bad = x;
        bad[0] = p->bounds().upper[0] + 0.5;
        CHECK_THROWS_AS((void)p->evaluate(bad, 0.4), std::domain_error);
    }
}

TEST_CASE("true front samples") {
    const DF1 p;
    const auto pf = p.sample_true_pf(0.0, 3);
    REQUIRE(pf.size() == 3);
    CHECK(pf[0].isApprox(Vector{{0.0, 1.0}}));
    CHECK(pf[1][0] == doctest::Approx(0.5));
    CHECK(pf[1][1] == doctest::Approx(1.0 - std::pow(0.5, 1.25)));
    CHECK(pf[2].isApprox(Vector{{1.0, 0.0}}));

    for (const auto& name : problem_names()) {
        const auto prob = make_problem(name);
        CHECK(prob->sample_true_pf(0.3, 1).size() == 1);
        for (double t : {0.0, 0.3, 1.1, 2.6}) {
            const auto pts = prob->sample_true_pf(t, 120);
            CHECK(pts.size() == 120);
            CHECK(mutually_nondominated(pts));
            const auto tb = prob->true_bounds(t);
            const auto sb = ObjectiveBounds::of(pts);
            CHECK((sb.ideal - tb.ideal).cwiseAbs().maxCoeff() < 1e-9);
            CHECK((sb.nadir - tb.nadir).cwiseAbs().maxCoeff() < 1e-9);
        }
    }

    const FDA4 p4;
    for (std::size_t k : {1u, 7u, 500u}) {
        const auto pts = p4.sample_true_pf(1.3, k);
        CHECK(pts.size() == k);
        for (const auto& q : pts) {
            CHECK(std::abs(q.squaredNorm() - 1.0) < 1e-9);
            CHECK(q.minCoeff() >= 0.0);
        }
    }
}

TEST_CASE("problem registry") {
    CHECK(make_problem("df4")->name() == "DF4");
    CHECK(make_problem("DF1")->variables() == 10);
    CHECK(make_problem("fda4")->variables() == 12);
    CHECK(make_problem("FDA4")->objectives() == 3);
    CHECK(make_problem("DF5", 14)->variables() == 14);
    CHECK_THROWS_AS(make_problem("ZDT1"), std::invalid_argument);
}

TEST_CASE("PF cache shares one set per environment") {
    const DF1 p;
    PfCache cache(p, 50);
    const auto a = cache.reference(3, 0.3);
    const auto b = cache.reference(3, 0.3);
    CHECK(a.get() == b.get());
    CHECK(a->size() == 50);

    const auto path = std::filesystem::temp_directory_path() / "vare_pf_test.csv";
    write_points_csv(path, *a);
    std::ifstream in(path);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows >= 50);
    std::filesystem::remove(path);
}
