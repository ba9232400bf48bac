#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nnrec/lp.hpp"
#include "nnrec/rng.hpp"
#include "test_helpers.hpp"

using namespace nnrec;
using nnrec::testing::lp_feasible;
using nnrec::testing::random_lp;

namespace {

// min w1 s.t. w1 >= 1
LpProblem lp_simple() {
    LpProblem p(1);
    p.objective = {1.0};
    p.add_le({-1.0}, -1.0);
    return p;
}

// min 0 s.t. w1 >= 1, w1 <= 0
LpProblem lp_infeasible() {
    LpProblem p(1);
    p.add_le({-1.0}, -1.0);
    p.add_le({1.0}, 0.0);
    return p;
}

// min -w1-w2 s.t. w1+2w2 <= 4, 0 <= w <= 3. The polygon has vertices
// (0,0), (3,0), (3,1/2), (0,2); enumeration gives the optimum -3.5 at
// (3, 1/2).
LpProblem lp_polygon() {
    LpProblem p(2);
    p.objective = {-1.0, -1.0};
    p.add_le({1.0, 2.0}, 4.0);
    p.set_bounds(0, 0.0, 3.0);
    p.set_bounds(1, 0.0, 3.0);
    return p;
}

}  // namespace

TEST_CASE("solve: spec examples") {
    LpSolution s1 = solve(lp_simple());
    CHECK(s1.status == LpStatus::optimal);
    CHECK(s1.objective == doctest::Approx(1.0));
    CHECK(s1.point[0] == doctest::Approx(1.0));

    CHECK(solve(lp_infeasible()).status == LpStatus::infeasible);

    LpSolution s3 = solve(lp_polygon());
    CHECK(s3.status == LpStatus::optimal);
    CHECK(s3.objective == doctest::Approx(-3.5));
    CHECK(s3.point[0] == doctest::Approx(3.0));
    CHECK(s3.point[1] == doctest::Approx(0.5));
}

TEST_CASE("vertex_oracle: spec examples") {
    LpSolution s1 = vertex_oracle(lp_simple());
    CHECK(s1.status == LpStatus::optimal);
    CHECK(s1.objective == doctest::Approx(1.0));

    CHECK(vertex_oracle(lp_infeasible()).status == LpStatus::infeasible);

    LpSolution s3 = vertex_oracle(lp_polygon());
    CHECK(s3.status == LpStatus::optimal);
    CHECK(s3.objective == doctest::Approx(-3.5));

    // duplicate constraint degeneracy
    LpProblem dup(1);
    dup.objective = {1.0};
    dup.add_le({-1.0}, 0.0);
    dup.add_le({-1.0}, 0.0);
    LpSolution sd = vertex_oracle(dup);
    CHECK(sd.status == LpStatus::optimal);
    CHECK(sd.objective == doctest::Approx(0.0));
    CHECK(solve(dup).status == LpStatus::optimal);
    CHECK(solve(dup).objective == doctest::Approx(0.0));

    // unbounded ray
    LpProblem ub(1);
    ub.objective = {-1.0};
    ub.set_bounds(0, 0.0, lp_inf);
    CHECK(vertex_oracle(ub).status == LpStatus::unbounded);
    CHECK(solve(ub).status == LpStatus::unbounded);

    // size guard
    LpProblem big(7);
    CHECK_THROWS(vertex_oracle(big));
}

TEST_CASE("solve agrees with the vertex oracle on 100 seeded random LPs") {
    Rng rng(2024);
    int optimal_seen = 0, infeasible_seen = 0, unbounded_seen = 0;
    for (int t = 0; t < 100; ++t) {
        LpProblem p = random_lp(rng);
        LpSolution got = solve(p);
        LpSolution want = vertex_oracle(p);
        INFO("case ", t);
        CHECK(to_string(got.status) == to_string(want.status));
        if (want.status == LpStatus::optimal) {
            ++optimal_seen;
            CHECK(std::fabs(got.objective - want.objective) <=
                  1e-7 * (1.0 + std::fabs(want.objective)));
            CHECK(lp_feasible(p, got.point, 1e-9));
        } else if (want.status == LpStatus::infeasible) {
            ++infeasible_seen;
        } else {
            ++unbounded_seen;
        }
    }
    // the generator must exercise all three statuses
    CHECK(optimal_seen > 0);
    CHECK(infeasible_seen > 0);
    CHECK(unbounded_seen > 0);
}

TEST_CASE("optimality: no random feasible point beats the reported optimum") {
    Rng rng(77);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        int d = 1 + rng.uniform_int(4);
        LpProblem p(d);
        for (int j = 0; j < d; ++j) {
            p.objective[j] = rng.uniform_int(7) - 3;
            p.set_bounds(j, 0.0, 3.0);
        }
        int rows = 1 + rng.uniform_int(4);
        for (int r = 0; r < rows; ++r) {
            std::vector<double> a(d);
            for (int j = 0; j < d; ++j) a[j] = rng.uniform_int(7) - 3;
            p.add_le(a, 1.0 + rng.uniform_int(4));  // origin stays feasible
        }
        LpSolution sol = solve(p);
        REQUIRE(sol.status == LpStatus::optimal);
        int found = 0;
        for (int k = 0; k < 20000 && found < 100; ++k) {
            std::vector<double> w(d);
            for (int j = 0; j < d; ++j) w[j] = rng.uniform(0.0, 3.0);
            if (!lp_feasible(p, w, 0.0)) continue;
            ++found;
            double obj = 0.0;
            for (int j = 0; j < d; ++j) obj += p.objective[j] * w[j];
            CHECK(sol.objective <= obj + 1e-9 * (1.0 + std::fabs(obj)));
        }
        checked += found;
    }
    CHECK(checked >= 100);
}

TEST_CASE("determinism: identical inputs give identical outputs") {
    Rng rng(99);
    for (int t = 0; t < 20; ++t) {
        LpProblem p = random_lp(rng);
        LpSolution a = solve(p);
        LpSolution b = solve(p);
        CHECK(a.status == b.status);
        CHECK(a.iterations == b.iterations);
        CHECK(a.objective == b.objective);
        CHECK(a.point == b.point);
    }
}

TEST_CASE("free variables and equality rows") {
    // A^T v = 1 style feasibility with free variables
    LpProblem p(2);
    p.add_eq({1.0, 0.0}, 1.0);
    p.add_eq({1.0, 1.0}, 1.0);
    LpSolution s = solve(p);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.point[0] == doctest::Approx(1.0));
    CHECK(s.point[1] == doctest::Approx(0.0));

    // fixed variables fold away
    LpProblem q(2);
    q.objective = {0.0, 1.0};
    q.set_bounds(0, 2.0, 2.0);
    q.set_bounds(1, 0.0, lp_inf);
    q.add_le({-1.0, -1.0}, -3.0);  // w0 + w1 >= 3
    LpSolution sq = solve(q);
    REQUIRE(sq.status == LpStatus::optimal);
    CHECK(sq.point[0] == 2.0);
    CHECK(sq.point[1] == doctest::Approx(1.0));
}

TEST_CASE("iteration limit reports instead of lying") {
    LpProblem p = lp_polygon();
    LpOptions opts;
    opts.max_iters = 1;
    LpSolution s = solve(p, opts);
    CHECK(s.status == LpStatus::iteration_limit);
}
