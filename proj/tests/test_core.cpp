#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "volnotify/bounds.hpp"
#include "volnotify/errors.hpp"
#include "volnotify/fractional.hpp"

using namespace volnotify;
using Dist = InterActivityDistribution;

TEST_CASE("pmf of each family") {
    CHECK(Dist::geometric(0.5).pmf(2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(Dist::deterministic(7).pmf(7) == 1.0);
    CHECK(Dist::deterministic(7).pmf(6) == 0.0);
    CHECK(Dist::tabulated({0.2, 0.8}).pmf(3) == 0.0);
    CHECK_THROWS_AS(Dist::geometric(0.5).pmf(0), ValidationError);
}

TEST_CASE("distribution constructors reject bad parameters") {
    CHECK_THROWS_AS(Dist::geometric(0.0), ValidationError);
    CHECK_THROWS_AS(Dist::geometric(1.5), ValidationError);
    CHECK_THROWS_AS(Dist::deterministic(0), ValidationError);
    CHECK_THROWS_AS(Dist::tabulated({}), ValidationError);
    CHECK_THROWS_AS(Dist::tabulated({0.5, 0.4}), ValidationError);
    CHECK_THROWS_AS(Dist::tabulated({1.2, -0.2}), ValidationError);
}

TEST_CASE("mdhr") {
    CHECK(Dist::geometric(0.3).mdhr() == 0.3);
    CHECK(Dist::deterministic(2).mdhr() == 0.0);
    CHECK(Dist::deterministic(1).mdhr() == 1.0);
    CHECK(Dist::tabulated({1.0}).mdhr() == 1.0);
    // hazards 0.2, 0.3/0.8, 0.5/0.5
    CHECK(Dist::tabulated({0.2, 0.3, 0.5}).mdhr() == doctest::Approx(0.2));
    CHECK(Dist::tabulated({0.0, 1.0}).mdhr() == 0.0);
}

TEST_CASE("sampling") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        CHECK(Dist::deterministic(7).sample(rng) == 7);
        CHECK(Dist::tabulated({0.0, 1.0}).sample(rng) == 2);
    }
    const auto geo = Dist::geometric(0.5);
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = geo.sample(rng);
        CHECK(z >= 1);
        sum += z;
        sum_sq += z * z;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(std::abs(mean - 2.0) <= 3.0 * se);
}

TEST_CASE("cdf and pmf agree, mdhr lies in [0, 1]") {
    Rng rng(11);
    for (int i = 0; i < 60; ++i) {
        const auto dist = random_distribution(static_cast<Dist::Kind>(i % 3), 6, rng);
        double running = 0.0;
        for (int tau = 1; tau <= 12; ++tau) {
            running += dist.pmf(tau);
            CHECK(std::abs(dist.cdf(tau) - dist.cdf(tau - 1) - dist.pmf(tau)) <= 1e-12);
            CHECK(std::abs(dist.cdf(tau) - running) <= 1e-12);
            CHECK(std::abs(dist.survival(tau) - (1.0 - dist.cdf(tau))) <= 1e-12);
        }
        CHECK(dist.cdf(0) == 0.0);
        CHECK(dist.mdhr() >= 0.0);
        CHECK(dist.mdhr() <= 1.0);
        if (const auto top = dist.support_max()) CHECK(dist.cdf(*top) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("instance validation") {
    const auto d = Dist::geometric(0.5);
    CHECK_THROWS_AS(Instance(Matrix(2, 2, 0.6), Matrix(1, 2, 0.5), d), ValidationError);
    CHECK_THROWS_AS(Instance(Matrix(2, 2, 0.3), Matrix(1, 2, 1.5), d), ValidationError);
    CHECK_THROWS_AS(Instance(Matrix(2, 2, -0.1), Matrix(1, 2, 0.5), d), ValidationError);
    CHECK_THROWS_AS(Instance(Matrix(2, 3, 0.1), Matrix(1, 2, 0.5), d), DimensionError);
    const Instance ok(Matrix(2, 2, 0.5), Matrix(1, 2, 0.5), d);
    CHECK(ok.no_arrival(0) == doctest::Approx(0.0));
    // Zero-arrival periods are valid.
    const Instance quiet(Matrix(3, 1, 0.0), Matrix(2, 1, 0.5), d);
    CHECK(quiet.no_arrival(1) == 1.0);
}

TEST_CASE("check_feasible") {
    CanonicalInstanceSpec spec;
    spec.kind = CanonicalInstanceSpec::Kind::I2;
    spec.n = 4;
    const Instance i2 = make_instance(spec);
    CHECK(check_feasible(i2, FractionalSolution::zeros(i2)).feasible());

    const FractionalSolution ones(i2.volunteers(), 1, i2.horizon(), 1.0);
    CHECK(check_feasible(i2, ones).feasible());
    for (int v = 0; v < i2.volunteers(); ++v)
        for (int t = 0; t < i2.horizon(); ++t) CHECK(capacity_lhs(i2, ones, v, t) == doctest::Approx(1.0).epsilon(1e-12));

    FractionalSolution bad = FractionalSolution::zeros(i2);
    bad(1, 0, 3) = 1.5;
    const auto report = check_feasible(i2, bad);
    REQUIRE_FALSE(report.feasible());
    bool found = false;
    for (const auto& viol : report.violations) {
        if (viol.kind == Violation::Kind::range && viol.v == 1 && viol.s == 0 && viol.t == 3) found = true;
    }
    CHECK(found);
    CHECK_THROWS_AS(check_feasible(i2, FractionalSolution(1, 1, 1)), DimensionError);
}

TEST_CASE("capacity violations are reported with their left-hand side") {
    const Instance inst(Matrix(2, 1, 1.0), Matrix(1, 1, 0.5), Dist::deterministic(2));
    const FractionalSolution x(1, 1, 2, 1.0);
    const auto report = check_feasible(inst, x);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == Violation::Kind::capacity);
    CHECK(report.violations[0].t == 1);
    CHECK(report.violations[0].value == doctest::Approx(2.0));
}

TEST_CASE("f and f_v on the two-volunteer example") {
    CanonicalInstanceSpec spec;
    spec.kind = CanonicalInstanceSpec::Kind::I5;
    spec.epsilon = 0.01;
    const Instance i5 = make_instance(spec);
    FractionalSolution lp = FractionalSolution::zeros(i5);
    lp(0, 0, 0) = 1.0;
    lp(1, 0, 0) = 1.0;
    CHECK(evaluate_f(i5, lp) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(evaluate_f(i5, FractionalSolution::zeros(i5)) == 0.0);

    FractionalSolution sq = FractionalSolution::zeros(i5);
    sq(0, 0, 0) = 1.0;
    sq(1, 1, 1) = 1.0;
    CHECK(evaluate_fv(i5, sq, 0) == doctest::Approx(0.5));
    CHECK(evaluate_fv(i5, sq, 1) == doctest::Approx(0.49));
    CHECK_THROWS_AS(evaluate_fv(i5, sq, 2), ValidationError);
}

TEST_CASE("f matches the outcome-enumeration oracle") {
    Rng rng(21);
    RandomInstanceOptions opt;
    opt.volunteers = 2;
    opt.types = 2;
    opt.horizon = 3;
    for (int i = 0; i < 20; ++i) {
        const Instance inst = random_instance(opt, rng);
        const auto x = testsupport::random_tensor(inst, rng);
        CHECK(std::abs(evaluate_f(inst, x) - testsupport::oracle_f(inst, x)) <= 1e-12);
        for (int v = 0; v < 2; ++v) CHECK(std::abs(evaluate_fv(inst, x, v) - testsupport::oracle_fv(inst, x, v)) <= 1e-12);
    }
}

TEST_CASE("f_1 has no priority discount") {
    Rng rng(22);
    const Instance inst = random_instance(RandomInstanceOptions{}, rng);
    const auto x = testsupport::random_tensor(inst, rng);
    double direct = 0.0;
    for (int s = 0; s < inst.task_types(); ++s)
        for (int t = 0; t < inst.horizon(); ++t) direct += inst.arrival(s, t) * inst.match(0, s) * x(0, s, t);
    CHECK(evaluate_fv(inst, x, 0) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("decomposition identity over 200 random instances") {
    Rng rng(23);
    for (int i = 0; i < 200; ++i) {
        const Instance inst = random_instance(RandomInstanceOptions{}, rng);
        const auto x = testsupport::random_tensor(inst, rng);
        double total = 0.0;
        for (int v = 0; v < inst.volunteers(); ++v) total += evaluate_fv(inst, x, v);
        CHECK(std::abs(evaluate_f(inst, x) - total) <= 1e-10);
    }
}

TEST_CASE("f is monotone in every entry") {
    Rng rng(24);
    for (int i = 0; i < 50; ++i) {
        const Instance inst = random_instance(RandomInstanceOptions{}, rng);
        auto x = testsupport::random_tensor(inst, rng);
        const double before = evaluate_f(inst, x);
        const int v = static_cast<int>(rng.below(static_cast<std::size_t>(inst.volunteers())));
        const int s = static_cast<int>(rng.below(static_cast<std::size_t>(inst.task_types())));
        const int t = static_cast<int>(rng.below(static_cast<std::size_t>(inst.horizon())));
        x(v, s, t) = std::min(1.0, x(v, s, t) + 0.3 * rng.uniform());
        CHECK(evaluate_f(inst, x) >= before - 1e-15);
    }
}

TEST_CASE("gradient matches finite differences") {
    Rng rng(25);
    const Instance inst = random_instance(RandomInstanceOptions{}, rng);
    auto x = testsupport::random_tensor(inst, rng);
    const auto grad = gradient_f(inst, x);
    const double h = 1e-6;
    for (int v = 0; v < inst.volunteers(); ++v) {
        for (int s = 0; s < inst.task_types(); ++s) {
            for (int t = 0; t < inst.horizon(); ++t) {
                auto up = x;
                up(v, s, t) += h;
                const double fd = (evaluate_f(inst, up) - evaluate_f(inst, x)) / h;
                CHECK(std::abs(fd - grad(v, s, t)) <= 1e-6);
            }
        }
    }
}
