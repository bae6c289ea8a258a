#include <cmath>

#include <doctest.h>

#include "gvcrand/measures.hpp"
#include "gvcrand/oracle.hpp"

using namespace gvcrand;

namespace {

IoTable random_table(int n, double mu, double mu_f, std::uint64_t seed, std::uint64_t inst = 0) {
    ModelParams p;
    p.n_sectors = n;
    p.mu = mu;
    p.mu_f = mu_f;
    p.seed = seed;
    return sample_table_instance(p, inst);
}

} // namespace

TEST_CASE("zero matrix gives all-ones upstreamness and downstreamness") {
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(4, 4);
    CHECK(upstreamness_true(zero).values == Eigen::VectorXd::Ones(4));
    CHECK(downstreamness_true(zero).values == Eigen::VectorXd::Ones(4));
}

TEST_CASE("scalar case is the geometric series 1/(1-r)") {
    Eigen::MatrixXd m(1, 1);
    m << 0.25;
    CHECK(upstreamness_true(m).values(0) == doctest::Approx(1.0 / 0.75).epsilon(1e-14));
    m << 0.9;
    CHECK(downstreamness_true(m).values(0) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("solve matches the Neumann oracle on a fixed instance") {
    const IoTable t = random_table(5, 1.0, 0.01, 42);
    const SubstochasticPair pair = build_pair(t);
    const Eigen::VectorXd u1 = upstreamness_true(pair.a_u).values;
    const Eigen::VectorXd d1 = downstreamness_true(pair.a_d).values;
    const Eigen::VectorXd u_series = neumann_measure(pair.a_u, 500);
    const Eigen::VectorXd d_series = neumann_measure(pair.a_d, 500);
    CHECK((u1 - u_series).lpNorm<Eigen::Infinity>() < 1e-10);
    CHECK((d1 - d_series).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("solution satisfies the residual bound") {
    const IoTable t = random_table(80, 1.0, 0.05, 7);
    const SubstochasticPair pair = build_pair(t);
    const Eigen::VectorXd u1 = upstreamness_true(pair.a_u).values;
    const Eigen::MatrixXd system =
        Eigen::MatrixXd::Identity(80, 80) - pair.a_u;
    const Eigen::VectorXd residual = system * u1 - Eigen::VectorXd::Ones(80);
    CHECK(residual.lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("a genuinely singular system is rejected naming the worst row") {
    Eigen::MatrixXd m(2, 2);
    m << 0.5, 0.5, 0.5, 0.5;  // row-stochastic, rho = 1, I - M singular
    CHECK_THROWS_WITH_AS(upstreamness_true(m), doctest::Contains("row 0"), std::runtime_error);

    // a spectral radius above 1 solves but violates the measure floor
    Eigen::MatrixXd hot(2, 2);
    hot << 0.9, 0.9, 0.9, 0.9;
    CHECK_THROWS_AS(downstreamness_true(hot), std::runtime_error);

    // a row sum of exactly 1 with spectral radius < 1 is still solvable;
    // the contract gates on the validity of the result, not on row sums
    Eigen::MatrixXd nilpotent = Eigen::MatrixXd::Zero(3, 3);
    nilpotent(1, 0) = 0.6;
    nilpotent(1, 2) = 0.4;
    const Eigen::VectorXd x = upstreamness_true(nilpotent).values;
    CHECK(x(1) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("negative entries are rejected") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 1) = -0.5;
    CHECK_THROWS_AS(upstreamness_true(m), std::invalid_argument);
}

TEST_CASE("Fally iteration equals the linear solve") {
    SUBCASE("zero flows") {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
        Eigen::VectorXd f(3);
        f << 1, 1, 1;
        const IoTable t = IoTable::from_flows(a, f);
        CHECK(upstreamness_fally(t).values == Eigen::VectorXd::Ones(3));
        CHECK(downstreamness_fally(t).values == Eigen::VectorXd::Ones(3));
    }
    SUBCASE("scalar: a=2, f=1 gives U2 = D2 = 3") {
        Eigen::MatrixXd a(1, 1);
        a << 2.0;
        Eigen::VectorXd f(1);
        f << 1.0;
        const IoTable t = IoTable::from_flows(a, f);
        CHECK(upstreamness_fally(t).values(0) == doctest::Approx(3.0).epsilon(1e-11));
        CHECK(downstreamness_fally(t).values(0) == doctest::Approx(3.0).epsilon(1e-11));
    }
    SUBCASE("random instances") {
        for (std::uint64_t inst = 0; inst < 5; ++inst) {
            const IoTable t = random_table(40, 1.0, 0.02, 1234, inst);
            const SubstochasticPair pair = build_pair(t);
            const Eigen::VectorXd u1 = upstreamness_true(pair.a_u).values;
            const Eigen::VectorXd u2 = upstreamness_fally(t).values;
            CHECK((u1 - u2).lpNorm<Eigen::Infinity>() < 1e-9);
            const Eigen::VectorXd d1 = downstreamness_true(pair.a_d).values;
            const Eigen::VectorXd d2 = downstreamness_fally(t).values;
            CHECK((d1 - d2).lpNorm<Eigen::Infinity>() < 1e-9);
        }
    }
}

TEST_CASE("Fally iteration reports non-convergence") {
    Eigen::MatrixXd a(1, 1);
    a << 2.0;
    Eigen::VectorXd f(1);
    f << 1.0;
    const IoTable t = IoTable::from_flows(a, f);
    FixedPointOptions opts;
    opts.max_iterations = 3;  // far too few for rho = 2/3
    CHECK_THROWS_AS(upstreamness_fally(t, opts), std::runtime_error);
}

TEST_CASE("rank-1 estimators") {
    SUBCASE("zero matrix gives all ones") {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
        Eigen::VectorXd f(3);
        f << 1, 1, 1;
        const auto [u, d] = rank1_estimators(build_pair(IoTable::from_flows(a, f)));
        CHECK(u.values == Eigen::VectorXd::Ones(3));
        CHECK(d.values == Eigen::VectorXd::Ones(3));
    }
    SUBCASE("exact at N=1") {
        Eigen::MatrixXd a(1, 1);
        a << 2.0;
        Eigen::VectorXd f(1);
        f << 1.0;
        const SubstochasticPair pair = build_pair(IoTable::from_flows(a, f));
        const auto [u, d] = rank1_estimators(pair);
        const double direct = upstreamness_true(pair.a_u).values(0);
        CHECK(u.values(0) == doctest::Approx(direct).epsilon(1e-15));
        CHECK(d.values(0) == doctest::Approx(direct).epsilon(1e-15));
    }
    SUBCASE("mean row sum at 1 is an error") {
        SubstochasticPair pair;
        pair.a_u = Eigen::MatrixXd::Identity(2, 2);  // every row sums to 1
        pair.a_d = pair.a_u;
        CHECK_THROWS_AS(rank1_estimators(pair), std::runtime_error);
    }
}

TEST_CASE("all measures are >= 1 on valid instances") {
    for (std::uint64_t inst = 0; inst < 10; ++inst) {
        const IoTable t = random_table(30, 1.0, 0.01, 999, inst);
        const SubstochasticPair pair = build_pair(t);
        CHECK((upstreamness_true(pair.a_u).values.array() >= 1.0 - 1e-12).all());
        CHECK((downstreamness_true(pair.a_d).values.array() >= 1.0 - 1e-12).all());
        const auto [u, d] = rank1_estimators(pair);
        CHECK((u.values.array() >= 1.0).all());
        CHECK((d.values.array() >= 1.0).all());
    }
}

TEST_CASE("Neumann partial sums increase monotonically to the solve") {
    const IoTable t = random_table(10, 1.0, 0.1, 2718);
    const SubstochasticPair pair = build_pair(t);
    const Eigen::VectorXd solved = upstreamness_true(pair.a_u).values;
    Eigen::VectorXd previous = neumann_measure(pair.a_u, 1);
    for (int terms = 2; terms <= 40; ++terms) {
        const Eigen::VectorXd current = neumann_measure(pair.a_u, terms);
        CHECK((current.array() >= previous.array() - 1e-15).all());
        CHECK((current.array() <= solved.array() + 1e-12).all());
        previous = current;
    }
}
