#include "vare/core.hpp"
#include "vare/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

using namespace vare;

namespace {

Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }

ReferenceDirectionSet three_dirs() { return ReferenceDirectionSet({v2(0, 1), v2(0.5, 0.5), v2(1, 0)}); }

std::size_t brute_force_angle(const Vector& z, const ReferenceDirectionSet& dirs) {
    std::size_t best = 0;
    double best_angle = 10.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const double c = z.dot(dirs[i]) / (z.norm() * dirs[i].norm());
        const double angle = std::acos(std::clamp(c, -1.0, 1.0));
        if (angle < best_angle - 1e-15) {
            best_angle = angle;
            best = i;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("reference directions: lattice sizes and endpoints") {
    const auto two = generate_reference_directions(2, 99);
    CHECK(two.size() == 100);
    CHECK(two[0].isApprox(v2(0, 1)));
    CHECK(two[99].isApprox(v2(1, 0)));

    CHECK(generate_reference_directions(3, 13).size() == 105);
    CHECK(generate_reference_directions(3, 13).size() == binomial(15, 2));

    const auto unit = generate_reference_directions(2, 1);
    REQUIRE(unit.size() == 2);
    CHECK(unit[0] == v2(0, 1));
    CHECK(unit[1] == v2(1, 0));
}

TEST_CASE("reference directions: simplex membership and distinctness") {
    for (int M : {2, 3, 4}) {
        const auto dirs = generate_reference_directions(M, 7);
        CHECK(dirs.size() == binomial(7 + M - 1, M - 1));
        std::set<std::vector<double>> seen;
        for (const auto& d : dirs) {
            CHECK(d.size() == M);
            CHECK(std::abs(d.sum() - 1.0) < 1e-12);
            CHECK(d.minCoeff() >= 0.0);
            seen.insert(std::vector<double>(d.data(), d.data() + d.size()));
        }
        CHECK(seen.size() == dirs.size());
    }
}

TEST_CASE("reference directions: rejected arguments") {
    CHECK_THROWS_AS(generate_reference_directions(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(generate_reference_directions(2, 0), std::invalid_argument);
    CHECK(default_divisions(2) == 99);
    CHECK(default_divisions(3) == 13);
}

TEST_CASE("association by acute angle") {
    const auto dirs = three_dirs();
    CHECK(associate_normalized(v2(0, 1), dirs) == 0);
    CHECK(associate_normalized(v2(0.5, 0.5), dirs) == 1);
    CHECK(associate_normalized(v2(0.4, 0.6), dirs) == 1);

    // exactly between (0,1) and (0.5,0.5) in angle: lowest index wins
    const double half = std::numbers::pi / 8.0;
    CHECK(associate_normalized(v2(std::sin(half), std::cos(half)), dirs) <= 1);
}

TEST_CASE("association matches a brute-force angle oracle and is scale invariant") {
    Rng rng(7);
    for (int M : {2, 3}) {
        const auto dirs = generate_reference_directions(M, M == 2 ? 20 : 8);
        for (int trial = 0; trial < 500; ++trial) {
            Vector z(M);
            for (int j = 0; j < M; ++j) z[j] = rng.uniform();
            const auto expected = brute_force_angle(z, dirs);
            const auto got = associate_normalized(z, dirs);
            // angles can tie only on measure-zero sets; accept equal-angle alternatives
            if (got != expected) CHECK(std::abs(cosine(z, dirs[got]) - cosine(z, dirs[expected])) < 1e-14);
            CHECK(associate_normalized(z * 3.7, dirs) == got);
        }
    }
}

TEST_CASE("association normalizes with ideal and nadir; degenerate ranges become 1") {
    const auto dirs = three_dirs();
    const ObjectiveBounds b{v2(0, 0), v2(2, 4)};
    CHECK(b.normalize(v2(1, 2)).isApprox(v2(0.5, 0.5)));
    const Individual ind{v2(0, 0), v2(1, 2), 0};
    CHECK(associate(ind, dirs, b) == 1);

    const ObjectiveBounds flat{v2(1, 1), v2(1, 3)};
    CHECK(flat.normalize(v2(2, 3)).isApprox(v2(1, 1)));
}

TEST_CASE("objective bounds of a set") {
    const std::vector<Vector> pts{v2(1, 5), v2(3, 2), v2(2, 4)};
    const auto b = ObjectiveBounds::of(pts);
    CHECK(b.ideal == v2(1, 2));
    CHECK(b.nadir == v2(3, 5));
    CHECK_THROWS(ObjectiveBounds::of(std::vector<Vector>{}));
}

TEST_CASE("pbi along a direction") {
    const Vector d = v2(0.5, 0.5);
    CHECK(pbi(v2(0.5, 0.5), d) == doctest::Approx(std::sqrt(0.5)));
    // d1 = 1/sqrt2 * (1) = 0.7071, d2 = distance to the diagonal = 0.7071
    CHECK(pbi(v2(1, 0), d, 5.0) == doctest::Approx(std::sqrt(0.5) * 6.0));
}

TEST_CASE("dominance and nondominated sorting vs brute force") {
    CHECK(dominates(v2(1, 1), v2(1, 2)));
    CHECK_FALSE(dominates(v2(1, 1), v2(1, 1)));
    CHECK_FALSE(dominates(v2(0, 2), v2(1, 1)));

    Rng rng(3);
    std::vector<Vector> pts;
    for (int i = 0; i < 60; ++i) pts.push_back(v2(std::floor(rng.uniform() * 8), std::floor(rng.uniform() * 8)));
    const auto fronts = nondominated_fronts(pts);
    std::vector<int> rank(pts.size(), -1);
    for (std::size_t r = 0; r < fronts.size(); ++r)
        for (auto i : fronts[r]) rank[i] = static_cast<int>(r);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        REQUIRE(rank[i] >= 0);
        int expected = 0;  // 1 + max rank of dominators
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (dominates(pts[j], pts[i])) expected = std::max(expected, rank[j] + 1);
        CHECK(rank[i] == expected);
    }
    std::vector<std::size_t> first(fronts[0].begin(), fronts[0].end());
    auto nd = nondominated_indices(pts);
    std::sort(first.begin(), first.end());
    std::sort(nd.begin(), nd.end());
    CHECK(first == nd);
}

TEST_CASE("time context") {
    TimeContext a{25, 10, 10};
    CHECK(a.time() == doctest::Approx(0.2));
    CHECK(a.environment_index() == 2);
    TimeContext b{9, 10, 10};
    CHECK(b.time() == 0.0);
    CHECK(b.environment_index() == 0);
    TimeContext c{100, 10, 5};
    CHECK(c.time() == doctest::Approx(2.0));
    TimeContext frozen{55, 10, 0};
    CHECK(frozen.time() == 0.0);

    const auto next = advance_time(TimeContext{29, 10, 10});
    CHECK(next.generation == 30);
    CHECK(next.environment_index() == 3);
    CHECK(next.time() == doctest::Approx(0.3));
}

TEST_CASE("bounds clamp and contain") {
    const Bounds b = Bounds::uniform(3, -1.0, 2.0);
    const Vector x = (Vector(3) << -4.0, 0.5, 9.0).finished();
    const Vector c = b.clamp(x);
    CHECK(c == (Vector(3) << -1.0, 0.5, 2.0).finished());
    CHECK(b.contains(c));
    CHECK_FALSE(b.contains(x));
    CHECK_THROWS(Bounds(v2(1, 0), v2(0, 1)));
}
