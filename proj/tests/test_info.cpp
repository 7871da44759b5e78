#include <doctest.h>

#include <cmath>

#include "blindcomp/info.hpp"

using namespace blindcomp;

TEST_CASE("entropy") {
    CHECK(entropy(uniform<double>(4)).value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(entropy(Distribution({0.0, 1.0, 0.0})).value == 0.0);

    // staircase(2) = (2/3, 1/3): direct evaluation of -sum v log2 v.
    const double expected = -(2.0 / 3.0) * std::log2(2.0 / 3.0) - (1.0 / 3.0) * std::log2(1.0 / 3.0);
    CHECK(expected == doctest::Approx(0.9182958340544896).epsilon(1e-12));
    CHECK(entropy(staircase<double>(2)).value == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("trace distance is exact on the rational backend") {
    const RatDistribution r0 = uniform<Rat>(2);
    const RatDistribution r1({Rat(1, 3), Rat(2, 3)});
    CHECK(trace_distance(r0, r1) == Rat(1, 6));
    CHECK(trace_distance(product(r0, r0), product(r1, r1)) == Rat(7, 36));
    CHECK(trace_distance(r0, r0) == 0);
    CHECK_THROWS_AS(trace_distance(uniform<Rat>(2), uniform<Rat>(3)), DimensionMismatch);
}

TEST_CASE("fidelity") {
    const Distribution p({0.3, 0.7});
    CHECK(fidelity(p, p) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fidelity(Distribution({1.0, 0.0}), Distribution({0.0, 1.0})) == 0.0);

    const double expected = std::sqrt(1.0 / 6.0) + std::sqrt(1.0 / 3.0);
    CHECK(fidelity(uniform<double>(2), Distribution({1.0 / 3.0, 2.0 / 3.0})) ==
          doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("kl divergence") {
    const Distribution p = uniform<double>(2);
    const Distribution q({1.0 / 3.0, 2.0 / 3.0});
    CHECK(kl_divergence(p, p).value == 0.0);

    const double expected = 0.5 * std::log2(3.0 / 2.0) + 0.5 * std::log2(3.0 / 4.0);
    CHECK(kl_divergence(p, q).value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.08496250072115618).epsilon(1e-12));

    for (int d : {2, 5, 16}) {
        std::vector<double> point(static_cast<std::size_t>(d), 0.0);
        point[0] = 1.0;
        CHECK(kl_divergence(Distribution(point), uniform<double>(d)).value ==
              doctest::Approx(std::log2(static_cast<double>(d))).epsilon(1e-14));
    }

    CHECK_THROWS_AS(kl_divergence(Distribution({0.5, 0.5}), Distribution({1.0, 0.0})),
                    DivergenceUndefined);
}

TEST_CASE("holevo information") {
    const ClassicalEnsemble same(uniform<double>(3),
                                 {staircase<double>(4), staircase<double>(4), staircase<double>(4)});
    CHECK(holevo_information(same).value == doctest::Approx(0.0).epsilon(1e-12));

    const ClassicalEnsemble orth(uniform<double>(2),
                                 {Distribution({1.0, 0.0}), Distribution({0.0, 1.0})});
    CHECK(holevo_information(orth).value == doctest::Approx(1.0).epsilon(1e-14));

    // Uniform/staircase at d = 16: direct evaluation of S(avg) - avg of S.
    const int d = 16;
    const ClassicalEnsemble e = uniform_staircase_ensemble(d);
    double avg_entropy = 0.0;
    std::vector<double> avg(static_cast<std::size_t>(d), 0.0);
    for (int c = 0; c < d; ++c) avg[static_cast<std::size_t>(c)] = 0.5 / d + 0.5 * (d - c) / staircase_eta(d);
    for (double v : avg) avg_entropy -= v * std::log2(v);
    double mean_cond = 0.5 * std::log2(static_cast<double>(d));
    for (int c = 0; c < d; ++c) {
        const double v = static_cast<double>(d - c) / staircase_eta(d);
        mean_cond -= 0.5 * v * std::log2(v);
    }
    const double expected = avg_entropy - mean_cond;
    CHECK(holevo_information(e).value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(holevo_information(e).value <= 1.0);
}

TEST_CASE("conditional entropy of C given X") {
    // d = 4: 1 + (1/2) H(0.4, 0.3, 0.2, 0.1), evaluated directly.
    double h = 0.0;
    for (double v : {0.4, 0.3, 0.2, 0.1}) h -= v * std::log2(v);
    const double expected = 1.0 + 0.5 * h;
    CHECK(conditional_entropy_c_given_x(uniform_staircase_ensemble(4)).value ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(1.9232196723355077).epsilon(1e-12));

    for (int d = 2; d <= 64; ++d)
        CHECK(conditional_entropy_c_given_x(uniform_staircase_ensemble(d)).value >=
              std::log2(static_cast<double>(d)) - 1.0 - 1e-10);

    const ClassicalEnsemble det(uniform<double>(2),
                                {Distribution({1.0, 0.0}), Distribution({0.0, 1.0})});
    CHECK(conditional_entropy_c_given_x(det).value == 0.0);
}

TEST_CASE("conditional mutual information I(C:C'|X)") {
    // C' independent of C given X: product of marginals per label.
    {
        const ClassicalEnsemble e = uniform_staircase_ensemble(3);
        std::vector<double> table;
        for (int x = 0; x < 2; ++x)
            for (int c = 0; c < 3; ++c)
                for (int cp = 0; cp < 3; ++cp)
                    table.push_back(0.5 * e.conditional(x)[c] * e.conditional(x)[cp]);
        CHECK(cond_mutual_info_c_cp_given_x(JointDistribution(2, 3, 3, table)).value ==
              doctest::Approx(0.0).epsilon(1e-12));
    }

    // Cloning a point-mass pair carries no conditional correlation.
    {
        const ClassicalEnsemble e(uniform<double>(2),
                                  {Distribution({1.0, 0.0}), Distribution({0.0, 1.0})});
        const JointDistribution tau = JointDistribution::from_channel(e, {{1.0, 0.0}, {0.0, 1.0}});
        CHECK(cond_mutual_info_c_cp_given_x(tau).value == doctest::Approx(0.0).epsilon(1e-12));
    }

    // Perfect copy of a uniform bit under a single label: 1 bit.
    {
        const ClassicalEnsemble e(Distribution({1.0}), {uniform<double>(2)});
        const JointDistribution tau = JointDistribution::from_channel(e, {{1.0, 0.0}, {0.0, 1.0}});
        CHECK(cond_mutual_info_c_cp_given_x(tau).value == doctest::Approx(1.0).epsilon(1e-12));
    }
}
