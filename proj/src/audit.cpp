#include "blindcomp/audit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <future>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "blindcomp/birkhoff.hpp"
#include "blindcomp/distribution.hpp"
#include "blindcomp/info.hpp"
#include "blindcomp/lp.hpp"
#include "blindcomp/stochastic.hpp"

namespace blindcomp {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BLINDCOMP_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

namespace {

// Runs check(instance_index) over [0, count) on a small pool; results merge
// by instance index so the report is thread-count independent.
template <class Fn>
SuiteResult run_instances(const std::string& name, long count, int threads, Fn&& check) {
    std::vector<std::string> failures(static_cast<std::size_t>(count));
    std::vector<char> failed(static_cast<std::size_t>(count), 0);
    std::atomic<long> cursor{0};

    const auto worker = [&] {
        for (;;) {
            const long i = cursor.fetch_add(1);
            if (i >= count) return;
            std::string why;
            try {
                why = check(i);
            } catch (const std::exception& ex) {
                why = std::string("exception: ") + ex.what();
            }
            if (!why.empty()) {
                failed[static_cast<std::size_t>(i)] = 1;
                failures[static_cast<std::size_t>(i)] = std::move(why);
            }
        }
    };

    const int n = std::min<long>(std::max(1, threads), count);
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::future<void>> futs;
        for (int t = 0; t < n; ++t) futs.push_back(std::async(std::launch::async, worker));
        for (auto& f : futs) f.get();
    }

    SuiteResult res;
    res.name = name;
    res.checks = count;
    for (long i = 0; i < count; ++i)
        if (failed[static_cast<std::size_t>(i)]) {
            ++res.violations;
            if (res.first_failure.empty()) res.first_failure = failures[static_cast<std::size_t>(i)];
        }
    return res;
}

double l1_diff(const Distribution& a, const Distribution& b) {
    double s = 0.0;
    for (int c = 0; c < a.dim(); ++c) s += std::abs(a[c] - b[c]);
    return s;
}

}  // namespace

SuiteResult stochastic_rounding_audit(std::uint64_t seed, int trials, int d_lo, int d_hi,
                                      double factor, int threads) {
    const int dims = d_hi - d_lo + 1;
    const long count = static_cast<long>(trials) * dims;
    const Rng base(seed);

    return run_instances("stochastic-rounding", count, resolve_threads(threads), [=](long i) -> std::string {
        const int d = d_lo + static_cast<int>(i % dims);
        Rng rng = base.fork(static_cast<std::uint64_t>(i));
        const StochasticMatrix m = random_stochastic_matrix(rng, d);

        const Distribution u = uniform<double>(d);
        const Distribution v = staircase<double>(d);
        const double udev = l1_diff(u, apply(u, m));
        const double vdev = l1_diff(v, apply(v, m));
        const double eps = std::max(udev, vdev) / 4.0;

        const StochasticMatrix n = approx_doubly_stochastic(m, eps);
        std::ostringstream why;
        if (!is_doubly_stochastic(n, 1e-12)) {
            why << "d=" << d << " trial=" << i << ": N not doubly stochastic within 1e-12";
            return why.str();
        }
        for (int r = 0; r < d; ++r) {
            std::vector<double> row(n.entries().begin() + static_cast<std::ptrdiff_t>(r) * d,
                                    n.entries().begin() + static_cast<std::ptrdiff_t>(r + 1) * d);
            double s = 0.0;
            for (double x : row) s += x;
            if (std::abs(s - 1.0) > 1e-12) {
                why << "d=" << d << " trial=" << i << ": row sum off by " << std::abs(s - 1.0);
                return why.str();
            }
        }
        const double bound = factor * d * eps + 1e-12;
        if (max_abs_entry_diff(n, m) > bound) {
            why << "d=" << d << " trial=" << i << ": |N-M|_inf = " << max_abs_entry_diff(n, m)
                << " > " << factor << "*d*eps = " << factor * d * eps;
            return why.str();
        }
        if (l1_diff(apply(v, n), apply(v, m)) > bound) {
            why << "d=" << d << " trial=" << i << ": ||vN-vM||_1 > " << factor << "*d*eps";
            return why.str();
        }
        if (l1_diff(v, apply(v, n)) > 16.0 * d * eps + 1e-12) {
            why << "d=" << d << " trial=" << i << ": ||v-vN||_1 > 16*d*eps";
            return why.str();
        }
        return {};
    });
}

SuiteResult diagonal_rigidity_audit(std::uint64_t seed, int trials, int d_lo, int d_hi, int threads) {
    const int dims = d_hi - d_lo + 1;
    const long count = static_cast<long>(trials) * dims;
    const Rng base(seed);

    return run_instances("diagonal-rigidity", count, resolve_threads(threads), [=](long i) -> std::string {
        const int d = d_lo + static_cast<int>(i % dims);
        Rng rng = base.fork(static_cast<std::uint64_t>(i) | (1ULL << 40));

        // Mostly near-identity channels (the regime where the bound bites),
        // with a fully random channel every eighth draw.
        const StochasticMatrix noise = random_stochastic_matrix(rng, d);
        StochasticMatrix m = noise;
        if (i % 8 != 0) {
            const double t = std::pow(10.0, -6.0 * rng.uniform01());
            std::vector<double> e(noise.entries());
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) {
                    double& val = e[static_cast<std::size_t>(r) * d + c];
                    val = (1.0 - t) * (r == c ? 1.0 : 0.0) + t * val;
                }
            m = StochasticMatrix(d, std::move(e));
        }

        const Distribution u = uniform<double>(d);
        const Distribution v = staircase<double>(d);
        const double eps = std::max(l1_diff(u, apply(u, m)), l1_diff(v, apply(v, m))) / 4.0;
        try {
            diagonal_rigidity_bound(m, eps);
        } catch (const Error& err) {
            std::ostringstream why;
            why << "d=" << d << " trial=" << i << ": " << err.what();
            return why.str();
        }
        return {};
    });
}

SuiteResult hull_bound_audit(std::uint64_t seed, int trials, int d_max, int max_vertices) {
    SuiteResult res;
    res.name = "hull-distance-bound";
    Rng rng(seed);

    for (int t = 0; t < trials; ++t) {
        const int d = 2 + rng.uniform_int(std::max(1, d_max - 1));
        const int s = 1 + rng.uniform_int(max_vertices);

        // Sorted random rational v (largest entry first) and a mixed vertex
        // family: permutations of v plus fresh random rational points.
        RatDistribution v = [&] {
            const RatDistribution raw = random_rat_distribution(rng, d);
            std::vector<Rat> xs(raw.probs());
            std::sort(xs.begin(), xs.end(), std::greater<Rat>());
            return RatDistribution(std::move(xs));
        }();

        std::vector<RatDistribution> ws;
        for (int i = 0; i < s; ++i) {
            if (rng.uniform01() < 0.5) {
                const auto perm = random_permutation(rng, d);
                std::vector<Rat> xs(static_cast<std::size_t>(d));
                for (int c = 0; c < d; ++c) xs[static_cast<std::size_t>(perm[static_cast<std::size_t>(c)])] = v[c];
                ws.emplace_back(std::move(xs));
            } else {
                ws.push_back(random_rat_distribution(rng, d));
            }
        }

        ++res.checks;
        try {
            const Rat bound = l1_dist_to_hull_lower_bound(v, ws);
            const Rat exact = lp::l1_distance_to_hull(v, ws);
            if (bound > exact) {
                ++res.violations;
                if (res.first_failure.empty()) {
                    std::ostringstream why;
                    why << "d=" << d << " s=" << s << ": bound " << rat_to_string(bound) << " > LP "
                        << rat_to_string(exact);
                    res.first_failure = why.str();
                }
            }
        } catch (const std::exception& ex) {
            ++res.violations;
            if (res.first_failure.empty()) res.first_failure = std::string("exception: ") + ex.what();
        }
    }
    return res;
}

SuiteResult perm_overlap_audit(int d_max) {
    SuiteResult res;
    res.name = "perm-overlap-closed-form";

    for (int d = 2; d <= std::min(d_max, 7); ++d) {
        const RatDistribution v = staircase<Rat>(d);
        Rat best(0);
        bool first = true;
        std::vector<int> perm(static_cast<std::size_t>(d));
        for (int c = 0; c < d; ++c) perm[static_cast<std::size_t>(c)] = c;
        while (std::next_permutation(perm.begin(), perm.end())) {
            // (v Pi)_j = v_{Pi^{-1}(j)}, so sum_j v_j (v Pi)_j = sum_r v_r v_{perm(r)}.
            Rat overlap(0);
            for (int c = 0; c < d; ++c) overlap += v[c] * v[perm[static_cast<std::size_t>(c)]];
            if (first || overlap > best) {
                best = overlap;
                first = false;
            }
        }

        ++res.checks;
        if (perm_overlap_max(v) != best) {
            ++res.violations;
            if (res.first_failure.empty()) {
                std::ostringstream why;
                why << "d=" << d << ": closed form " << rat_to_string(perm_overlap_max(v))
                    << " != brute force " << rat_to_string(best);
                res.first_failure = why.str();
            }
        }
    }
    return res;
}

SuiteResult birkhoff_audit(std::uint64_t seed, int trials, int d_lo, int d_hi, int threads) {
    const int dims = d_hi - d_lo + 1;
    const long count = static_cast<long>(trials) * dims;
    const Rng base(seed);

    return run_instances("birkhoff-decomposition", count, resolve_threads(threads), [=](long i) -> std::string {
        const int d = d_lo + static_cast<int>(i % dims);
        Rng rng = base.fork(static_cast<std::uint64_t>(i) | (1ULL << 41));
        const StochasticMatrix m = random_doubly_stochastic(rng, d);

        const BirkhoffDecomposition dec = birkhoff_decompose(m);
        std::ostringstream why;

        double wsum = 0.0;
        for (double w : dec.weights) {
            if (w < 0.0) {
                why << "d=" << d << " trial=" << i << ": negative weight";
                return why.str();
            }
            wsum += w;
        }
        if (std::abs(wsum - 1.0) > 1e-12) {
            why << "d=" << d << " trial=" << i << ": weights sum off by " << std::abs(wsum - 1.0);
            return why.str();
        }
        const std::size_t max_terms = static_cast<std::size_t>(d - 1) * (d - 1) + 1;
        if (dec.perms.size() > max_terms) {
            why << "d=" << d << " trial=" << i << ": " << dec.perms.size() << " permutations exceed "
                << max_terms;
            return why.str();
        }
        for (std::size_t a = 0; a < dec.perms.size(); ++a)
            for (std::size_t b = a + 1; b < dec.perms.size(); ++b)
                if (dec.perms[a] == dec.perms[b]) {
                    why << "d=" << d << " trial=" << i << ": duplicate permutation";
                    return why.str();
                }
        if (max_abs_entry_diff(dec.reconstruct(), m) > 1e-9) {
            why << "d=" << d << " trial=" << i << ": reconstruction error "
                << max_abs_entry_diff(dec.reconstruct(), m);
            return why.str();
        }
        return {};
    });
}

AuditReport run_audit(const AuditConfig& config) {
    AuditReport report;
    const int d_hi = std::min(config.d_max, 6);
    report.suites.push_back(stochastic_rounding_audit(config.seed, config.trials, 2, d_hi,
                                                      config.lemma1_factor, config.threads));
    report.suites.push_back(diagonal_rigidity_audit(config.seed, config.trials, 2, d_hi, config.threads));
    report.suites.push_back(hull_bound_audit(config.seed, config.claim_trials, std::min(config.d_max, 6),
                                             config.max_vertices));
    report.suites.push_back(perm_overlap_audit(std::min(config.d_max, 7)));
    report.suites.push_back(birkhoff_audit(config.seed, config.trials, 3, std::max(3, std::min(config.d_max + 2, 8)),
                                           config.threads));
    return report;
}

}  // namespace blindcomp
