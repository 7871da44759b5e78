// Randomized executable forms of the standard information-theoretic facts
// (triangle inequality, data processing, Pinsker, dimension bound, the
// Alicki-Fannes-Winter continuity bound, Fano).  Joint-distribution
// quantities are computed from first principles here, independent of the
// library's expansion-based routines.

#include <doctest.h>

#include <cmath>
#include <vector>

#include "blindcomp/info.hpp"
#include "blindcomp/stochastic.hpp"

using namespace blindcomp;

namespace {

constexpr double kSlack = 1e-9;

double h_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs)
        if (x > 0.0) s -= x * std::log2(x);
    return s;
}

double tv(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

// Random joint p(a,b) = marginal(b) * conditional(a|b); returns the flat
// na x nb table (a-major).
std::vector<double> random_joint(Rng& rng, int na, int nb) {
    const Distribution pb = random_distribution(rng, nb);
    std::vector<double> table(static_cast<std::size_t>(na) * nb, 0.0);
    for (int b = 0; b < nb; ++b) {
        const Distribution cond = random_distribution(rng, na);
        for (int a = 0; a < na; ++a) table[static_cast<std::size_t>(a) * nb + b] = pb[b] * cond[a];
    }
    return table;
}

double mutual_info(const std::vector<double>& joint, int na, int nb) {
    std::vector<double> ma(static_cast<std::size_t>(na), 0.0), mb(static_cast<std::size_t>(nb), 0.0);
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
            ma[static_cast<std::size_t>(a)] += joint[static_cast<std::size_t>(a) * nb + b];
            mb[static_cast<std::size_t>(b)] += joint[static_cast<std::size_t>(a) * nb + b];
        }
    return h_of(ma) + h_of(mb) - h_of(joint);
}

}  // namespace

TEST_CASE("triangle inequality for total variation") {
    Rng rng(101);
    for (int t = 0; t < 10000; ++t) {
        const int d = 2 + rng.uniform_int(6);
        const Distribution p = random_distribution(rng, d);
        const Distribution q = random_distribution(rng, d);
        const Distribution r = random_distribution(rng, d);
        REQUIRE(trace_distance(p, r) <= trace_distance(p, q) + trace_distance(q, r) + kSlack);
    }
}

TEST_CASE("data processing for total variation and KL") {
    Rng rng(102);
    for (int t = 0; t < 10000; ++t) {
        const int d = 2 + rng.uniform_int(5);
        const Distribution p = random_distribution(rng, d);
        const Distribution q = random_distribution(rng, d);
        const StochasticMatrix m = random_stochastic_matrix(rng, d);
        REQUIRE(trace_distance(apply(p, m), apply(q, m)) <= trace_distance(p, q) + kSlack);
        REQUIRE(kl_divergence(apply(p, m), apply(q, m)).value <= kl_divergence(p, q).value + kSlack);
    }
}

TEST_CASE("pinsker inequality") {
    Rng rng(103);
    for (int t = 0; t < 10000; ++t) {
        const int d = 2 + rng.uniform_int(6);
        const Distribution p = random_distribution(rng, d);
        const Distribution q = random_distribution(rng, d);
        const double delta = trace_distance(p, q);
        REQUIRE(delta * delta <= 0.5 * kl_divergence(p, q).value + kSlack);
    }
}

TEST_CASE("dimension bound for conditional mutual information") {
    Rng rng(104);
    for (int t = 0; t < 10000; ++t) {
        const int na = 2 + rng.uniform_int(3);
        const int nx = 2 + rng.uniform_int(3);
        const int nb = 2 + rng.uniform_int(3);
        // I(A:X|B) = H(AB) + H(XB) - H(B) - H(AXB) from a random 3-way joint.
        std::vector<double> joint(static_cast<std::size_t>(na) * nx * nb);
        double total = 0.0;
        for (double& v : joint) total += v = rng.exponential();
        for (double& v : joint) v /= total;

        std::vector<double> ab(static_cast<std::size_t>(na) * nb, 0.0);
        std::vector<double> xb(static_cast<std::size_t>(nx) * nb, 0.0);
        std::vector<double> b(static_cast<std::size_t>(nb), 0.0);
        for (int a = 0; a < na; ++a)
            for (int x = 0; x < nx; ++x)
                for (int bb = 0; bb < nb; ++bb) {
                    const double v = joint[(static_cast<std::size_t>(a) * nx + x) * nb + bb];
                    ab[static_cast<std::size_t>(a) * nb + bb] += v;
                    xb[static_cast<std::size_t>(x) * nb + bb] += v;
                    b[static_cast<std::size_t>(bb)] += v;
                }
        const double cmi = h_of(ab) + h_of(xb) - h_of(b) - h_of(joint);
        REQUIRE(cmi <= std::log2(static_cast<double>(nx)) + kSlack);
        REQUIRE(cmi >= -kSlack);
    }
}

TEST_CASE("alicki-fannes-winter continuity, classical form") {
    Rng rng(105);
    for (int t = 0; t < 10000; ++t) {
        const int na = 2 + rng.uniform_int(3);
        const int nb = 2 + rng.uniform_int(3);
        // Equal B-marginals by construction: shared p(b), fresh p(a|b).
        const Distribution pb = random_distribution(rng, nb);
        std::vector<double> rho(static_cast<std::size_t>(na) * nb), sigma(rho.size());
        for (int b = 0; b < nb; ++b) {
            const Distribution ca = random_distribution(rng, na);
            const Distribution cb = random_distribution(rng, na);
            for (int a = 0; a < na; ++a) {
                rho[static_cast<std::size_t>(a) * nb + b] = pb[b] * ca[a];
                sigma[static_cast<std::size_t>(a) * nb + b] = pb[b] * cb[a];
            }
        }
        const double gap = std::abs(mutual_info(rho, na, nb) - mutual_info(sigma, na, nb));
        REQUIRE(gap <= tv(rho, sigma) * std::log2(static_cast<double>(nb)) + 1.0 + kSlack);
    }
}

TEST_CASE("fano inequality") {
    Rng rng(106);
    for (int t = 0; t < 10000; ++t) {
        const int n = 2 + rng.uniform_int(5);
        const auto joint = random_joint(rng, n, n);

        std::vector<double> mb(static_cast<std::size_t>(n), 0.0);
        double agree = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                mb[static_cast<std::size_t>(b)] += joint[static_cast<std::size_t>(a) * n + b];
                if (a == b) agree += joint[static_cast<std::size_t>(a) * n + b];
            }
        const double cond_entropy = h_of(joint) - h_of(mb);  // S(A|A')
        REQUIRE(cond_entropy <= 1.0 + (1.0 - agree) * std::log2(static_cast<double>(n)) + kSlack);
    }
}

TEST_CASE("holevo bounded by both alphabet logs") {
    Rng rng(107);
    for (int t = 0; t < 2000; ++t) {
        const int nx = 2 + rng.uniform_int(4);
        const int d = 2 + rng.uniform_int(5);
        std::vector<Distribution> conds;
        for (int x = 0; x < nx; ++x) conds.push_back(random_distribution(rng, d));
        const ClassicalEnsemble e(random_distribution(rng, nx), std::move(conds));
        const double chi = holevo_information(e);
        REQUIRE(chi <= std::log2(static_cast<double>(nx)) + kSlack);
        REQUIRE(chi <= std::log2(static_cast<double>(d)) + kSlack);
    }
}

TEST_CASE("expansion route matches the entropy route for I(C:C'|X)") {
    Rng rng(108);
    for (int t = 0; t < 500; ++t) {
        const int nx = 2 + rng.uniform_int(2);
        const int d = 2 + rng.uniform_int(3);
        std::vector<Distribution> conds;
        for (int x = 0; x < nx; ++x) conds.push_back(random_distribution(rng, d));
        const ClassicalEnsemble e(random_distribution(rng, nx), std::move(conds));
        Rng fork = rng.fork(static_cast<std::uint64_t>(t));
        const StochasticMatrix m = random_stochastic_matrix(fork, d);
        std::vector<std::vector<double>> rows(static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(d)));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m.at(r, c);
        const JointDistribution tau = JointDistribution::from_channel(e, rows);

        // Oracle: I(C:C'|X) = H(XC) + H(XC') - H(X) - H(XCC').
        std::vector<double> xc, xcp, xmass, full;
        xc.assign(static_cast<std::size_t>(nx) * d, 0.0);
        xcp.assign(static_cast<std::size_t>(nx) * d, 0.0);
        xmass.assign(static_cast<std::size_t>(nx), 0.0);
        full = tau.table();
        for (int x = 0; x < nx; ++x)
            for (int c = 0; c < d; ++c)
                for (int cp = 0; cp < d; ++cp) {
                    const double v = tau.at(x, c, cp);
                    xc[static_cast<std::size_t>(x) * d + c] += v;
                    xcp[static_cast<std::size_t>(x) * d + cp] += v;
                    xmass[static_cast<std::size_t>(x)] += v;
                }
        const double oracle = h_of(xc) + h_of(xcp) - h_of(xmass) - h_of(full);
        REQUIRE(cond_mutual_info_c_cp_given_x(tau).value == doctest::Approx(oracle).epsilon(1e-10));
    }
}
