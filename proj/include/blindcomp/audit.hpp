#pragma once

// Randomized invariant suites: the doubly stochastic rounding bounds, the
// diagonal rigidity bound, the hull-distance bound against the exact LP, the
// permutation-overlap closed form against brute force, and the Birkhoff
// decomposition contract.

#include <cstdint>
#include <string>
#include <vector>

namespace blindcomp {

struct SuiteResult {
    std::string name;
    long checks = 0;
    long violations = 0;
    std::string first_failure;  // empty when clean

    bool pass() const { return violations == 0; }
};

struct AuditConfig {
    std::uint64_t seed = 12345;
    int trials = 1000;        // per dimension, rounding/rigidity/Birkhoff suites
    int d_max = 6;            // brute-force permutation suite caps at 7
    int claim_trials = 100;   // hull-distance instances
    int max_vertices = 8;
    double lemma1_factor = 12.0;  // entrywise/L1 constant checked, in units of d*eps
    int threads = 0;
};

struct AuditReport {
    std::vector<SuiteResult> suites;

    bool pass() const {
        for (const auto& s : suites)
            if (!s.pass()) return false;
        return true;
    }
};

SuiteResult stochastic_rounding_audit(std::uint64_t seed, int trials, int d_lo, int d_hi,
                                      double factor = 12.0, int threads = 0);
SuiteResult diagonal_rigidity_audit(std::uint64_t seed, int trials, int d_lo, int d_hi,
                                    int threads = 0);
SuiteResult hull_bound_audit(std::uint64_t seed, int trials, int d_max, int max_vertices);
SuiteResult perm_overlap_audit(int d_max);
SuiteResult birkhoff_audit(std::uint64_t seed, int trials, int d_lo, int d_hi, int threads = 0);

AuditReport run_audit(const AuditConfig& config);

// Thread count resolution: explicit argument, else BLINDCOMP_THREADS, else
// hardware concurrency (capped at 8).
int resolve_threads(int requested);

}  // namespace blindcomp
