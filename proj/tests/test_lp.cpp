#include <doctest.h>

#include <cmath>

#include "volnotify/errors.hpp"
#include "volnotify/lp.hpp"
#include "volnotify/rng.hpp"

using namespace volnotify;

TEST_CASE("single bounded variable") {
    LpProblem lp;
    const int x = lp.add_variable(1.0);
    lp.add_constraint({{x, 1.0}}, 1.0);
    const auto sol = solve_lp(lp);
    CHECK(sol.value == doctest::Approx(1.0));
    CHECK(sol.x[0] == doctest::Approx(1.0));
}

TEST_CASE("two variables sharing a budget") {
    LpProblem lp;
    const int x = lp.add_variable(1.0, 0.0, 1.0);
    const int y = lp.add_variable(1.0, 0.0, 1.0);
    lp.add_constraint({{x, 1.0}, {y, 1.0}}, 1.0);
    const auto sol = solve_lp(lp);
    CHECK(sol.value == doctest::Approx(1.0));
    CHECK(lp.max_violation(sol.x) <= 1e-9);
}

TEST_CASE("nonzero lower bounds and negative right-hand sides") {
    // max -x - y  s.t. x + y >= 3 (as -x - y <= -3), 1 <= x <= 2, y >= 0.5
    LpProblem lp;
    const int x = lp.add_variable(-1.0, 1.0, 2.0);
    const int y = lp.add_variable(-1.0, 0.5);
    lp.add_constraint({{x, -1.0}, {y, -1.0}}, -3.0);
    const auto sol = solve_lp(lp);
    CHECK(sol.value == doctest::Approx(-3.0));
    CHECK(lp.max_violation(sol.x) <= 1e-9);
}

TEST_CASE("infeasible problems name a witness row") {
    LpProblem lp;
    const int x = lp.add_variable(1.0, 0.0, 1.0);
    lp.add_constraint({{x, 1.0}}, 1.0);
    lp.add_constraint({{x, -1.0}}, -2.0); // x >= 2
    try {
        solve_lp(lp);
        FAIL("expected infeasibility");
    } catch (const InfeasibleError& e) {
        CHECK(e.witness_row() == 1);
    }
}

TEST_CASE("unbounded problems are reported") {
    LpProblem lp;
    const int x = lp.add_variable(1.0);
    const int y = lp.add_variable(0.0);
    lp.add_constraint({{x, 1.0}, {y, -1.0}}, 1.0);
    CHECK_THROWS_AS(solve_lp(lp), UnboundedError);
}

TEST_CASE("invalid input") {
    LpProblem lp;
    CHECK_THROWS_AS(lp.add_variable(1.0, -kInfinity), ValidationError);
    CHECK_THROWS_AS(lp.add_variable(1.0, 2.0, 1.0), ValidationError);
    lp.add_variable(1.0, 0.0, 1.0);
    CHECK_THROWS_AS(lp.add_constraint({{3, 1.0}}, 1.0), ValidationError);
}

TEST_CASE("degenerate vertex") {
    // Several constraints tight at the optimum (2, 2).
    LpProblem lp;
    const int x = lp.add_variable(1.0);
    const int y = lp.add_variable(1.0);
    lp.add_constraint({{x, 1.0}}, 2.0);
    lp.add_constraint({{y, 1.0}}, 2.0);
    lp.add_constraint({{x, 1.0}, {y, 1.0}}, 4.0);
    lp.add_constraint({{x, 2.0}, {y, 1.0}}, 6.0);
    lp.add_constraint({{x, 1.0}, {y, 2.0}}, 6.0);
    const auto sol = solve_lp(lp);
    CHECK(sol.value == doctest::Approx(4.0));
}

namespace {

// Optimum of a 2-variable LP by enumerating intersections of every pair of
// constraint or bound lines.
double vertex_oracle(const LpProblem& lp) {
    struct Line {
        double a, b, c; // a x + b y = c
    };
    std::vector<Line> lines;
    for (const auto& row : lp.rows()) {
        double a = 0, b = 0;
        for (const auto& t : row.terms) (t.var == 0 ? a : b) += t.coef;
        lines.push_back({a, b, row.rhs});
    }
    lines.push_back({1, 0, lp.lower()[0]});
    lines.push_back({0, 1, lp.lower()[1]});
    if (std::isfinite(lp.upper()[0])) lines.push_back({1, 0, lp.upper()[0]});
    if (std::isfinite(lp.upper()[1])) lines.push_back({0, 1, lp.upper()[1]});
    double best = -1e300;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const double det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
            if (std::abs(det) < 1e-12) continue;
            const std::vector<double> pt{(lines[i].c * lines[j].b - lines[j].c * lines[i].b) / det,
                                         (lines[i].a * lines[j].c - lines[j].a * lines[i].c) / det};
            if (lp.max_violation(pt) <= 1e-9) best = std::max(best, lp.evaluate(pt));
        }
    }
    return best;
}

} // namespace

TEST_CASE("random two-variable programs match vertex enumeration") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        LpProblem lp;
        lp.add_variable(rng.uniform() * 2 - 0.5, 0.0, 1.0 + 2 * rng.uniform());
        lp.add_variable(rng.uniform() * 2 - 0.5, 0.0, 1.0 + 2 * rng.uniform());
        const int rows = 1 + static_cast<int>(rng.below(4));
        for (int r = 0; r < rows; ++r) {
            lp.add_constraint({{0, rng.uniform() * 2 - 0.5}, {1, rng.uniform() * 2 - 0.5}}, 0.2 + rng.uniform());
        }
        const auto sol = solve_lp(lp);
        CHECK(lp.max_violation(sol.x) <= 1e-7);
        CHECK(std::abs(sol.value - vertex_oracle(lp)) <= 1e-6);
    }
}

TEST_CASE("identical input gives identical output") {
    Rng rng(32);
    LpProblem lp;
    for (int j = 0; j < 12; ++j) lp.add_variable(rng.uniform(), 0.0, 1.0);
    for (int r = 0; r < 8; ++r) {
        std::vector<LpProblem::Term> terms;
        for (int j = 0; j < 12; ++j) terms.push_back({j, rng.uniform()});
        lp.add_constraint(terms, 1.0 + rng.uniform());
    }
    const auto a = solve_lp(lp);
    const auto b = solve_lp(lp);
    CHECK(a.x == b.x);
    CHECK(a.value == b.value);
}
