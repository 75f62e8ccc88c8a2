#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "phc/diagram_metrics.hpp"

using phc::PersistenceDiagram;
using phc::PersistencePoint;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PersistenceDiagram diagram(std::vector<PersistencePoint> points, double cap = 255.0) {
    PersistenceDiagram d;
    d.points = std::move(points);
    d.cap = cap;
    return d;
}

// random diagram with points spread over both dimensions
PersistenceDiagram random_diagram(std::mt19937& rng, int max_points, double scale = 10.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PersistenceDiagram d;
    int count = static_cast<int>(rng() % (max_points + 1));
    for (int i = 0; i < count; ++i) {
        double birth = unit(rng) * scale;
        double pers = unit(rng) * scale * 0.5;
        d.points.push_back({birth, birth + pers, static_cast<int>(rng() % 2)});
    }
    return d;
}

}  // namespace

TEST_CASE("distances of identical diagrams vanish") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        PersistenceDiagram d = random_diagram(rng, 6);
        CHECK(phc::wasserstein1(d, d) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(phc::bottleneck(d, d) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(phc::betti_distance(d, d) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("a lone point is projected to the diagonal") {
    PersistenceDiagram d1 = diagram({{0.0, 2.0, 0}});
    PersistenceDiagram d2 = diagram({});
    CHECK(phc::wasserstein1(d1, d2) == doctest::Approx(1.0));
    CHECK(phc::bottleneck(d1, d2) == doctest::Approx(1.0));
}

TEST_CASE("small mixed matching equals exhaustive enumeration") {
    PersistenceDiagram d1 = diagram({{0.0, 2.0, 0}, {1.0, 3.0, 0}});
    PersistenceDiagram d2 = diagram({{0.0, 2.5, 0}});
    double expected = oracle::brute_w1_diagram(d1, d2);
    CHECK(phc::wasserstein1(d1, d2) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("W1 and bottleneck equal exhaustive enumeration on random pairs") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        PersistenceDiagram d1 = random_diagram(rng, 4);
        PersistenceDiagram d2 = random_diagram(rng, 4);
        double w1 = phc::wasserstein1(d1, d2);
        double bn = phc::bottleneck(d1, d2);
        CHECK(w1 == doctest::Approx(oracle::brute_w1_diagram(d1, d2)).epsilon(1e-9));
        CHECK(bn == doctest::Approx(oracle::brute_bottleneck_diagram(d1, d2)).epsilon(1e-9));
        CHECK(bn <= w1 + 1e-12);
    }
}

TEST_CASE("the reduced solver matches the full augmented assignment on larger diagrams") {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        PersistenceDiagram d1 = random_diagram(rng, 40);
        PersistenceDiagram d2 = random_diagram(rng, 12);
        CHECK(phc::wasserstein1(d1, d2) ==
              doctest::Approx(oracle::assignment_w1_diagram(d1, d2)).epsilon(1e-9));
    }
    // heavy duplication exercises the multiplicity collapse
    PersistenceDiagram dup;
    for (int i = 0; i < 200; ++i) dup.points.push_back({1.0, 3.0, 1});
    for (int i = 0; i < 50; ++i) dup.points.push_back({0.0, 2.0, 1});
    PersistenceDiagram other = diagram({{1.0, 2.9, 1}, {0.5, 2.0, 1}, {4.0, 4.4, 1}});
    CHECK(phc::wasserstein1(dup, other) ==
          doctest::Approx(oracle::assignment_w1_diagram(dup, other)).epsilon(1e-9));
}

TEST_CASE("distances are symmetric") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        PersistenceDiagram d1 = random_diagram(rng, 8);
        PersistenceDiagram d2 = random_diagram(rng, 8);
        CHECK(phc::wasserstein1(d1, d2) == doctest::Approx(phc::wasserstein1(d2, d1)).epsilon(1e-12));
        CHECK(phc::bottleneck(d1, d2) == doctest::Approx(phc::bottleneck(d2, d1)).epsilon(1e-12));
        CHECK(phc::betti_distance(d1, d2) == doctest::Approx(phc::betti_distance(d2, d1)).epsilon(1e-12));
    }
}

TEST_CASE("triangle inequality holds on random triples") {
    std::mt19937 rng(10);
    for (int trial = 0; trial < 25; ++trial) {
        PersistenceDiagram a = random_diagram(rng, 6);
        PersistenceDiagram b = random_diagram(rng, 6);
        PersistenceDiagram c = random_diagram(rng, 6);
        CHECK(phc::wasserstein1(a, c) <= phc::wasserstein1(a, b) + phc::wasserstein1(b, c) + 1e-9);
        CHECK(phc::bottleneck(a, c) <= phc::bottleneck(a, b) + phc::bottleneck(b, c) + 1e-9);
    }
}

TEST_CASE("any explicit matching upper-bounds W1") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        PersistenceDiagram d1 = random_diagram(rng, 5);
        PersistenceDiagram d2 = random_diagram(rng, 5);
        double w1 = phc::wasserstein1(d1, d2);

        // random valid matching: points of d1 paired to shuffled points of d2
        // (same dimension only), leftovers to the diagonal
        double cost = 0.0;
        std::vector<const PersistencePoint*> left, right;
        for (const auto& p : d1.points) left.push_back(&p);
        for (const auto& p : d2.points) right.push_back(&p);
        std::shuffle(right.begin(), right.end(), rng);
        std::vector<char> used(right.size(), 0);
        for (const auto* p : left) {
            bool matched = false;
            for (std::size_t j = 0; j < right.size() && !matched; ++j) {
                if (!used[j] && right[j]->dim == p->dim && (rng() % 2 == 0)) {
                    used[j] = 1;
                    matched = true;
                    cost += std::max(std::abs(p->birth - right[j]->birth),
                                     std::abs(p->death - right[j]->death));
                }
            }
            if (!matched) cost += (p->death - p->birth) / 2.0;
        }
        for (std::size_t j = 0; j < right.size(); ++j) {
            if (!used[j]) cost += (right[j]->death - right[j]->birth) / 2.0;
        }
        CHECK(w1 <= cost + 1e-9);
    }
}

TEST_CASE("dimensions never cross-match") {
    PersistenceDiagram d1 = diagram({{0.0, 2.0, 0}});
    PersistenceDiagram d2 = diagram({{0.0, 2.0, 1}});
    // identical coordinates but different dimensions: both go to the diagonal
    CHECK(phc::wasserstein1(d1, d2) == doctest::Approx(2.0));
    CHECK(phc::bottleneck(d1, d2) == doctest::Approx(1.0));
}

TEST_CASE("infinite deaths are capped before matching") {
    PersistenceDiagram d1 = diagram({{0.0, kInf, 0}});
    PersistenceDiagram d2 = diagram({{5.0, kInf, 0}});
    CHECK(phc::wasserstein1(d1, d2) == doctest::Approx(5.0));
    CHECK(phc::bottleneck(d1, d2) == doctest::Approx(5.0));
}

TEST_CASE("the reported matching is consistent") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        PersistenceDiagram d1 = random_diagram(rng, 5);
        PersistenceDiagram d2 = random_diagram(rng, 5);
        phc::Matching m = phc::wasserstein1_matching(d1, d2);
        CHECK(m.total_cost == doctest::Approx(phc::wasserstein1(d1, d2)).epsilon(1e-12));

        // every off-diagonal point appears exactly once per side
        std::size_t left_count = 0, right_count = 0;
        double recomputed = 0.0;
        for (const auto& [a, b] : m.pairs) {
            REQUIRE((a.has_value() || b.has_value()));
            if (a && b) {
                CHECK(a->dim == b->dim);
                recomputed += std::max(std::abs(a->birth - b->birth), std::abs(a->death - b->death));
            } else if (a) {
                recomputed += (a->death - a->birth) / 2.0;
            } else {
                recomputed += (b->death - b->birth) / 2.0;
            }
            left_count += a.has_value();
            right_count += b.has_value();
        }
        CHECK(left_count == d1.points.size());
        CHECK(right_count == d2.points.size());
        CHECK(recomputed == doctest::Approx(m.total_cost).epsilon(1e-12));
    }
}

TEST_CASE("betti distance on hand-worked examples") {
    // curves differ by one on [1, 2)
    CHECK(phc::betti_distance(diagram({{0.0, 2.0, 0}}), diagram({{0.0, 1.0, 0}})) == doctest::Approx(1.0));
    // essential classes born at different times differ on [0, 5)
    CHECK(phc::betti_distance(diagram({{0.0, kInf, 0}}), diagram({{5.0, kInf, 0}})) == doctest::Approx(5.0));
    // p = 2: curves differ by 2 on [0, 3), integral (2^2 * 3)^(1/2)
    CHECK(phc::betti_distance(diagram({{0.0, 3.0, 0}, {0.0, 3.0, 0}}), diagram({}), 2.0) ==
          doctest::Approx(std::sqrt(12.0)));
    // dimensions integrate separately and then add
    CHECK(phc::betti_distance(diagram({{0.0, 2.0, 0}, {0.0, 3.0, 1}}), diagram({})) ==
          doctest::Approx(2.0 + 3.0));
    CHECK_THROWS_AS(phc::betti_distance(diagram({}), diagram({}), 0.5), std::invalid_argument);
}
