#pragma once

// Row-stochastic matrix algebra: transition matrices, the doubly stochastic
// rounding N of an almost doubly stochastic M, rigidity checks for the
// uniform/staircase fixed-point pair, and the hull-distance lower bound.

#include <string>
#include <utility>
#include <vector>

#include "blindcomp/distribution.hpp"
#include "blindcomp/rational.hpp"
#include "blindcomp/rng.hpp"

namespace blindcomp {

template <class T>
class BasicStochasticMatrix {
  public:
    using value_type = T;

    // Row-major entries of a d x d matrix; every row must sum to 1.
    BasicStochasticMatrix(int d, std::vector<T> entries) : d_(d), entries_(std::move(entries)) {
        if (d_ < 1) throw InvalidInput("stochastic matrix: dimension must be >= 1");
        if (entries_.size() != static_cast<std::size_t>(d_) * static_cast<std::size_t>(d_))
            throw InvalidInput("stochastic matrix: entry count does not match dimension");
        for (const T& v : entries_)
            if (detail::is_negative(v)) throw InvalidInput("stochastic matrix: negative entry");
        for (int r = 0; r < d_; ++r) {
            std::vector<T> row(entries_.begin() + static_cast<std::ptrdiff_t>(r) * d_,
                               entries_.begin() + static_cast<std::ptrdiff_t>(r + 1) * d_);
            if (!detail::sums_to_one(row)) throw InvalidInput("stochastic matrix: row does not sum to 1");
        }
    }

    static BasicStochasticMatrix identity(int d) {
        std::vector<T> e(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), T(0));
        for (int i = 0; i < d; ++i) e[static_cast<std::size_t>(i) * d + i] = T(1);
        return BasicStochasticMatrix(d, std::move(e));
    }

    // Permutation matrix with row r carrying a 1 in column perm[r].
    static BasicStochasticMatrix permutation(const std::vector<int>& perm) {
        const int d = static_cast<int>(perm.size());
        std::vector<T> e(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), T(0));
        for (int r = 0; r < d; ++r) e[static_cast<std::size_t>(r) * d + perm[static_cast<std::size_t>(r)]] = T(1);
        return BasicStochasticMatrix(d, std::move(e));
    }

    int dim() const { return d_; }
    const T& at(int r, int c) const { return entries_[static_cast<std::size_t>(r) * d_ + c]; }
    const std::vector<T>& entries() const { return entries_; }

    bool operator==(const BasicStochasticMatrix& other) const {
        return d_ == other.d_ && entries_ == other.entries_;
    }

  private:
    int d_;
    std::vector<T> entries_;
};

using StochasticMatrix = BasicStochasticMatrix<double>;
using RatStochasticMatrix = BasicStochasticMatrix<Rat>;

// Row-vector action p -> pM.
template <class T>
BasicDistribution<T> apply(const BasicDistribution<T>& p, const BasicStochasticMatrix<T>& m) {
    if (p.dim() != m.dim()) throw DimensionMismatch("apply: dimension mismatch");
    std::vector<T> out(static_cast<std::size_t>(m.dim()), T(0));
    for (int c = 0; c < m.dim(); ++c)
        for (int cp = 0; cp < m.dim(); ++cp) out[static_cast<std::size_t>(cp)] += p[c] * m.at(c, cp);
    return BasicDistribution<T>(std::move(out));
}

// alpha_{c'} = sum_c M_{c,c'} - 1; all zero iff M is doubly stochastic.
template <class T>
std::vector<T> column_deviation(const BasicStochasticMatrix<T>& m) {
    std::vector<T> alpha(static_cast<std::size_t>(m.dim()), T(0));
    for (int cp = 0; cp < m.dim(); ++cp) {
        T s(0);
        for (int c = 0; c < m.dim(); ++c) s += m.at(c, cp);
        alpha[static_cast<std::size_t>(cp)] = s - T(1);
    }
    return alpha;
}

double l1_row_distance(const std::vector<double>& a, const std::vector<double>& b);
double max_abs_entry_diff(const StochasticMatrix& a, const StochasticMatrix& b);
bool is_doubly_stochastic(const StochasticMatrix& m, double tol);

// Doubly stochastic N with N = (M + (4 d eps - alpha_{c'})/d) / (1 + 4 d eps).
// Requires ||u - uM||_1 <= 4 eps for u uniform and d >= 2.
StochasticMatrix approx_doubly_stochastic(const StochasticMatrix& m, double eps);

// Exact-backend fixed-point rigidity: with uM = u, vM = v and v strictly
// decreasing, the only solution is the identity.  Returns M == identity.
bool zero_error_rigidity_check(const RatStochasticMatrix& m, const RatDistribution& v);

// Largest overlap sum_j v_j (v Pi)_j over non-identity permutations, for the
// staircase vector: equals sum_j v_j^2 - 1/eta^2.
Rat perm_overlap_max(const RatDistribution& v);

// (1/v_1)(sum_j v_j^2 - max_i <v, w_i>); never exceeds the true L1 distance
// from v to the convex hull of the w_i.
Rat l1_dist_to_hull_lower_bound(const RatDistribution& v, const std::vector<RatDistribution>& ws);

// Diagonal of M together with the guarantee M_{c,c} >= 1 - 24 d^4 eps.
// Requires ||u-uM||_1 <= 4 eps and ||v-vM||_1 <= 4 eps for the
// uniform/staircase pair.
std::vector<double> diagonal_rigidity_bound(const StochasticMatrix& m, double eps);

// Samplers for audits and property tests.
StochasticMatrix random_stochastic_matrix(Rng& rng, int d);
StochasticMatrix random_doubly_stochastic(Rng& rng, int d, double tol = 1e-13);

}  // namespace blindcomp
