#pragma once

// Bucketing compression protocol for a pair of commuting states: symbols are
// grouped by geometric probability levels under both inputs, the sender
// transmits the bucket index, and the receiver resamples uniformly within the
// bucket.

#include <cstdint>
#include <utility>
#include <vector>

#include "blindcomp/distribution.hpp"
#include "blindcomp/info.hpp"

namespace blindcomp {

class BucketProtocol {
  public:
    // Partitions {0..d-1} by level pairs (i,j) in {1..u+1}^2, where level i
    // holds masses in ((1-delta)^i, (1-delta)^{i-1}] and level u+1 holds
    // masses <= (1-delta)^u.  Requires delta in (0,1/2), gamma in (0,1).
    static BucketProtocol build(const Distribution& rho, const Distribution& sigma,
                                double delta, double gamma);

    int dim() const { return d_; }
    int levels() const { return u_; }  // u; bucket indices run to u+1
    double delta() const { return delta_; }
    double gamma() const { return gamma_; }

    // Bucket (i,j) of a symbol, 1-based level indices.
    std::pair<int, int> encode(int symbol) const;

    // Uniform draw from bucket (i,j); deterministic given the seed.
    int decode(int i, int j, std::uint64_t seed) const;

    const std::vector<int>& bucket(int i, int j) const;
    const std::vector<std::pair<int, int>>& symbol_buckets() const { return bucket_of_; }

    // Exact per-copy output: each bucket's input mass spread uniformly over
    // the bucket.
    template <class T>
    BasicDistribution<T> induced_output(const BasicDistribution<T>& input) const {
        if (input.dim() != d_) throw DimensionMismatch("induced_output: dimension mismatch");
        std::vector<T> mass(buckets_.size(), T(0));
        for (int a = 0; a < d_; ++a) mass[flat_index(a)] += input[a];
        std::vector<T> out(static_cast<std::size_t>(d_));
        for (int a = 0; a < d_; ++a) {
            const std::size_t b = flat_index(a);
            out[static_cast<std::size_t>(a)] = mass[b] / T(static_cast<std::int64_t>(buckets_[b].size()));
        }
        return BasicDistribution<T>(std::move(out));
    }

    // Input mass landing in truncation row u+1 (all columns).
    double truncation_mass(const Distribution& input) const;

  private:
    BucketProtocol() = default;

    std::size_t flat_index(int symbol) const {
        const auto [i, j] = bucket_of_[static_cast<std::size_t>(symbol)];
        return static_cast<std::size_t>(i - 1) * (u_ + 1) + (j - 1);
    }

    int d_ = 0;
    int u_ = 0;
    double delta_ = 0.0, gamma_ = 0.0;
    std::vector<std::pair<int, int>> bucket_of_;   // symbol -> (i,j)
    std::vector<std::vector<int>> buckets_;        // flat (u+1)^2 grid of symbol lists
};

struct ProtocolReport {
    int d;
    double delta, gamma;
    int u;
    double bits_sent;      // 2 log2(u+1)
    int bits_sent_int;     // ceil(2 log2(u+1)), a concrete code length
    double rate_bound;     // 2 log2 log2(d/gamma) + 2 log2(1/delta) + 3
    Distribution induced_rho;
    Distribution induced_sigma;
    double local_error_rho;    // exact Delta(rho, rho')
    double local_error_sigma;  // exact Delta(sigma, sigma')
    double truncation_rho, truncation_sigma;
    double spreading_bound;    // delta / (2 (1 - delta))
    // Monte Carlo cross-check of the local errors (0 samples disables it).
    std::int64_t mc_samples;
    double mc_error_rho, mc_sigma_rho;
    double mc_error_sigma, mc_sigma_sigma;
};

ProtocolReport protocol_report(const Distribution& rho, const Distribution& sigma, double delta,
                               double gamma, std::uint64_t seed = 1,
                               std::int64_t mc_samples = 100000);

// Error functionals of the protocol channel on an equiprobable two-state
// ensemble: f = 1 - average output fidelity; lambda = average diagonal
// leakage on the average state; g = H(lambda) + lambda log2(d-1).
struct KiErrors {
    double f;
    double lambda;
    double g;
    bool degenerate;  // d = 1: log2(d-1) undefined, g reported as 0
};

KiErrors ki_error_functions(const Distribution& rho, const Distribution& sigma,
                            const BucketProtocol& protocol);

}  // namespace blindcomp
