#include <doctest.h>

#include <algorithm>

#include "blindcomp/distribution.hpp"

using namespace blindcomp;

TEST_CASE("uniform distribution") {
    const RatDistribution u4 = uniform<Rat>(4);
    for (int c = 0; c < 4; ++c) CHECK(u4[c] == Rat(1, 4));

    const RatDistribution u1 = uniform<Rat>(1);
    CHECK(u1.dim() == 1);
    CHECK(u1[0] == 1);

    // Matches the two-state worked example's first state.
    const RatDistribution u2 = uniform<Rat>(2);
    CHECK(u2[0] == Rat(1, 2));
    CHECK(u2[1] == Rat(1, 2));

    CHECK_THROWS_AS(uniform<Rat>(0), InvalidInput);
    CHECK_THROWS_AS(uniform<double>(-3), InvalidInput);
}

TEST_CASE("staircase distribution") {
    const RatDistribution s2 = staircase<Rat>(2);
    CHECK(s2[0] == Rat(2, 3));
    CHECK(s2[1] == Rat(1, 3));

    const RatDistribution s4 = staircase<Rat>(4);
    CHECK(s4[0] == Rat(4, 10));
    CHECK(s4[1] == Rat(3, 10));
    CHECK(s4[2] == Rat(2, 10));
    CHECK(s4[3] == Rat(1, 10));

    Rat sum3(0);
    for (int c = 0; c < 3; ++c) sum3 += staircase<Rat>(3)[c];
    CHECK(sum3 == 1);

    CHECK_THROWS_AS(staircase<Rat>(0), InvalidInput);
}

TEST_CASE("staircase entries strictly decrease with extremes d/eta and 1/eta") {
    for (int d : {2, 3, 5, 16, 64}) {
        const RatDistribution v = staircase<Rat>(d);
        const Rat eta(staircase_eta(d));
        CHECK(v[0] == Rat(d) / eta);
        CHECK(v[d - 1] == Rat(1) / eta);
        for (int c = 0; c + 1 < d; ++c) CHECK(v[c] > v[c + 1]);
        // Exact normalization is checked by the constructor; recheck the sum.
        Rat s(0);
        for (int c = 0; c < d; ++c) s += v[c];
        CHECK(s == 1);
    }
}

TEST_CASE("product distribution") {
    const RatDistribution q = product(uniform<Rat>(2), uniform<Rat>(2));
    for (int c = 0; c < 4; ++c) CHECK(q[c] == Rat(1, 4));

    const RatDistribution p({Rat(1, 3), Rat(2, 3)});
    const RatDistribution pp = product(p, p);
    CHECK(pp[0] == Rat(1, 9));
    CHECK(pp[1] == Rat(2, 9));
    CHECK(pp[2] == Rat(2, 9));
    CHECK(pp[3] == Rat(4, 9));

    const RatDistribution point({Rat(1), Rat(0)});
    const RatDistribution rel = product(point, p);
    CHECK(rel[0] == p[0]);
    CHECK(rel[1] == p[1]);
    CHECK(rel[2] == 0);
    CHECK(rel[3] == 0);
}

TEST_CASE("product marginals recover the factors exactly") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int dp = 2 + rng.uniform_int(4), dq = 2 + rng.uniform_int(4);
        const RatDistribution p = random_rat_distribution(rng, dp);
        const RatDistribution q = random_rat_distribution(rng, dq);
        const RatDistribution pq = product(p, q);
        for (int a = 0; a < dp; ++a) {
            Rat row(0);
            for (int b = 0; b < dq; ++b) row += pq[a * dq + b];
            CHECK(row == p[a]);
        }
        for (int b = 0; b < dq; ++b) {
            Rat col(0);
            for (int a = 0; a < dp; ++a) col += pq[a * dq + b];
            CHECK(col == q[b]);
        }
    }
}

TEST_CASE("sampling is deterministic and unbiased") {
    const Distribution point({0.0, 1.0, 0.0});
    for (int idx : sample(point, 99, 5)) CHECK(idx == 1);

    const auto a = sample(uniform<double>(6), 1234, 1000);
    const auto b = sample(uniform<double>(6), 1234, 1000);
    CHECK(a == b);

    // Binomial 3-sigma band: sigma = sqrt(1/4 / 1e5) ~ 1.6e-3.
    const auto draws = sample(uniform<double>(2), 42, 100000);
    const double freq0 = static_cast<double>(std::count(draws.begin(), draws.end(), 0)) / 1e5;
    CHECK(std::abs(freq0 - 0.5) < 5e-3);
}

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(Distribution({0.5, 0.6}), InvalidInput);
    CHECK_THROWS_AS(Distribution({-0.1, 1.1}), InvalidInput);
    CHECK_THROWS_AS(Distribution(std::vector<double>{}), InvalidInput);
    CHECK_THROWS_AS(RatDistribution({Rat(1, 2), Rat(1, 3)}), InvalidInput);
    // Compensated summation keeps large alphabets inside the 1e-12 budget.
    CHECK_NOTHROW(staircase<double>(1 << 20));
}

TEST_CASE("ensemble validation and average") {
    CHECK_THROWS_AS(ClassicalEnsemble(uniform<double>(2), {uniform<double>(3)}), DimensionMismatch);
    CHECK_THROWS_AS(ClassicalEnsemble(uniform<double>(2), {uniform<double>(3), uniform<double>(4)}),
                    DimensionMismatch);

    const ClassicalEnsemble e = uniform_staircase_ensemble(2);
    const Distribution avg = e.average();  // (1/2)(1/2,1/2) + (1/2)(2/3,1/3)
    CHECK(avg[0] == doctest::Approx(7.0 / 12.0).epsilon(1e-15));
    CHECK(avg[1] == doctest::Approx(5.0 / 12.0).epsilon(1e-15));
}

TEST_CASE("rational parsing") {
    CHECK(rat_from_string("7/36") == Rat(7, 36));
    CHECK(rat_from_string("-3/9") == Rat(-1, 3));
    CHECK(rat_from_string("0.25") == Rat(1, 4));
    CHECK(rat_from_string("1e-3") == Rat(1, 1000));
    CHECK(rat_from_string("-2.5e2") == Rat(-250));
    CHECK(rat_from_string("42") == Rat(42));
    CHECK(rat_to_string(Rat(7, 36)) == "7/36");
    CHECK_THROWS_AS(rat_from_string("abc"), InvalidInput);
    CHECK_THROWS_AS(rat_from_string("1/0"), InvalidInput);
}

TEST_CASE("joint distribution accessors") {
    // tau(x,c,c') for a copy channel on the two-state example ensemble.
    const ClassicalEnsemble e(uniform<double>(2),
                              {uniform<double>(2), Distribution({1.0 / 3.0, 2.0 / 3.0})});
    const JointDistribution tau = JointDistribution::from_channel(e, {{1.0, 0.0}, {0.0, 1.0}});
    CHECK(tau.label_mass(0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tau.at(1, 1, 1) == doctest::Approx(0.5 * 2.0 / 3.0).epsilon(1e-15));
    const auto m0 = tau.cond_c_marginal(0);
    CHECK(m0[0] == doctest::Approx(0.5).epsilon(1e-14));
    const auto m1p = tau.cond_cp_marginal(1);
    CHECK(m1p[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}
