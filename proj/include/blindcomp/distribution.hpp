#pragma once

// Finite probability vectors, classical ensembles and three-register joints.
// Every type here is immutable after construction and safe to share across
// threads.  Alphabets are 0-based internally.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "blindcomp/errors.hpp"
#include "blindcomp/rational.hpp"
#include "blindcomp/rng.hpp"

namespace blindcomp {

inline constexpr double kSumTol = 1e-12;

namespace detail {

// Neumaier-compensated sum; keeps validation meaningful at large alphabets.
inline double neumaier_sum(const std::vector<double>& xs) {
    double s = 0.0, c = 0.0;
    for (double x : xs) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    return s + c;
}

inline bool sums_to_one(const std::vector<double>& xs) {
    return std::abs(neumaier_sum(xs) - 1.0) <= kSumTol;
}

inline bool sums_to_one(const std::vector<Rat>& xs) {
    Rat s = 0;
    for (const Rat& x : xs) s += x;
    return s == 1;
}

template <class T>
bool is_negative(const T& x) {
    return x < T(0);
}

}  // namespace detail

template <class T>
class BasicDistribution {
  public:
    using value_type = T;

    explicit BasicDistribution(std::vector<T> probs) : probs_(std::move(probs)) {
        if (probs_.empty()) throw InvalidInput("distribution needs at least one outcome");
        for (const T& p : probs_)
            if (detail::is_negative(p)) throw InvalidInput("distribution entry is negative");
        if (!detail::sums_to_one(probs_)) throw InvalidInput("distribution entries do not sum to 1");
    }

    int dim() const { return static_cast<int>(probs_.size()); }
    const T& operator[](int c) const { return probs_[static_cast<std::size_t>(c)]; }
    const std::vector<T>& probs() const { return probs_; }

    bool operator==(const BasicDistribution& other) const { return probs_ == other.probs_; }

  private:
    std::vector<T> probs_;
};

using Distribution = BasicDistribution<double>;
using RatDistribution = BasicDistribution<Rat>;

inline Distribution to_double(const RatDistribution& p) {
    std::vector<double> xs(static_cast<std::size_t>(p.dim()));
    for (int c = 0; c < p.dim(); ++c) xs[static_cast<std::size_t>(c)] = to_double(p[c]);
    // Entry-wise rounding keeps the sum within ~2^-53; revalidated by the ctor.
    return Distribution(std::move(xs));
}

// Flat distribution 1/d on {0..d-1}.
template <class T>
BasicDistribution<T> uniform(int d) {
    if (d < 1) throw InvalidInput("uniform: dimension must be >= 1");
    return BasicDistribution<T>(std::vector<T>(static_cast<std::size_t>(d), T(1) / T(d)));
}

// Linearly decreasing distribution (d-c+1)/eta with eta = d(d+1)/2.
template <class T>
BasicDistribution<T> staircase(int d) {
    if (d < 1) throw InvalidInput("staircase: dimension must be >= 1");
    const std::int64_t eta = static_cast<std::int64_t>(d) * (d + 1) / 2;
    std::vector<T> xs(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) xs[static_cast<std::size_t>(c)] = T(d - c) / T(eta);
    return BasicDistribution<T>(std::move(xs));
}

inline std::int64_t staircase_eta(int d) {
    return static_cast<std::int64_t>(d) * (d + 1) / 2;
}

// Independent pair; outcome (a,b) maps to index a*q.dim()+b.
template <class T>
BasicDistribution<T> product(const BasicDistribution<T>& p, const BasicDistribution<T>& q) {
    std::vector<T> xs;
    xs.reserve(static_cast<std::size_t>(p.dim()) * static_cast<std::size_t>(q.dim()));
    for (int a = 0; a < p.dim(); ++a)
        for (int b = 0; b < q.dim(); ++b) xs.push_back(p[a] * q[b]);
    return BasicDistribution<T>(std::move(xs));
}

// n i.i.d. draws, deterministic given the seed.
std::vector<int> sample(const Distribution& p, std::uint64_t seed, std::size_t n);

class ClassicalEnsemble {
  public:
    ClassicalEnsemble(Distribution priors, std::vector<Distribution> conditionals)
        : priors_(std::move(priors)), conditionals_(std::move(conditionals)) {
        if (priors_.dim() != static_cast<int>(conditionals_.size()))
            throw DimensionMismatch("ensemble: prior size must match number of conditionals");
        for (const auto& c : conditionals_)
            if (c.dim() != conditionals_.front().dim())
                throw DimensionMismatch("ensemble: conditionals must share one alphabet");
    }

    int num_labels() const { return priors_.dim(); }
    int dim() const { return conditionals_.front().dim(); }
    const Distribution& prior() const { return priors_; }
    const Distribution& conditional(int x) const { return conditionals_[static_cast<std::size_t>(x)]; }

    // Average state sum_x p(x) rho^x.
    Distribution average() const;

  private:
    Distribution priors_;
    std::vector<Distribution> conditionals_;
};

// Equiprobable {uniform(d), staircase(d)} pair.
ClassicalEnsemble uniform_staircase_ensemble(int d);

// Dense joint over (x, c, c'), row-major.
class JointDistribution {
  public:
    JointDistribution(int nx, int nc, int ncp, std::vector<double> table);

    int nx() const { return nx_; }
    int nc() const { return nc_; }
    int ncp() const { return ncp_; }
    double at(int x, int c, int cp) const {
        return table_[(static_cast<std::size_t>(x) * nc_ + c) * ncp_ + cp];
    }
    const std::vector<double>& table() const { return table_; }

    // tau = p(x) rho^x(c) M(c,c'); the channel form used throughout.
    static JointDistribution from_channel(const ClassicalEnsemble& e,
                                          const std::vector<std::vector<double>>& channel_rows);

    double label_mass(int x) const;                    // p(x)
    std::vector<double> cond_c_marginal(int x) const;  // tau^x_C (normalized)
    std::vector<double> cond_cp_marginal(int x) const; // tau^x_C' (normalized)
    std::vector<double> cond_joint(int x) const;       // tau^x_CC' (normalized, row-major)

  private:
    int nx_, nc_, ncp_;
    std::vector<double> table_;
};

// Simplex / matrix samplers shared by property tests and audits.
Distribution random_distribution(Rng& rng, int d);
RatDistribution random_rat_distribution(Rng& rng, int d, int resolution = 1000);
std::vector<int> random_permutation(Rng& rng, int d);

}  // namespace blindcomp
