#include "blindcomp/birkhoff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blindcomp/rational.hpp"

namespace blindcomp {

namespace {

constexpr double kZeroEntry = 1e-12;  // residual entries below this are dropped

// Kuhn augmenting-path matching on the support graph.  Rows are processed in
// increasing order and columns tried in increasing order, so the matching is
// deterministic and prefers lexicographically small columns.
bool try_augment(int row, const std::vector<double>& a, int d, std::vector<int>& match_col,
                 std::vector<char>& visited) {
    for (int c = 0; c < d; ++c) {
        if (visited[static_cast<std::size_t>(c)] || a[static_cast<std::size_t>(row) * d + c] <= kZeroEntry)
            continue;
        visited[static_cast<std::size_t>(c)] = 1;
        if (match_col[static_cast<std::size_t>(c)] < 0 ||
            try_augment(match_col[static_cast<std::size_t>(c)], a, d, match_col, visited)) {
            match_col[static_cast<std::size_t>(c)] = row;
            return true;
        }
    }
    return false;
}

bool perfect_matching(const std::vector<double>& a, int d, std::vector<int>& perm) {
    std::vector<int> match_col(static_cast<std::size_t>(d), -1);
    for (int r = 0; r < d; ++r) {
        std::vector<char> visited(static_cast<std::size_t>(d), 0);
        if (!try_augment(r, a, d, match_col, visited)) return false;
    }
    perm.assign(static_cast<std::size_t>(d), -1);
    for (int c = 0; c < d; ++c) perm[static_cast<std::size_t>(match_col[static_cast<std::size_t>(c)])] = c;
    return true;
}

// Caratheodory pruning: permutation matrices in excess of (d-1)^2 + 1 are
// affinely dependent, so a weight can always be shifted onto the others and
// one permutation dropped without changing the reconstruction.  The null
// vector is computed over exact rationals (the system is integral), so the
// reconstruction is preserved to the last ulp of the weight updates.
void reduce_to_caratheodory_bound(BirkhoffDecomposition& dec, std::size_t bound) {
    const int d = dec.dim();
    while (dec.perms.size() > bound) {
        const std::size_t k = dec.perms.size();
        const std::size_t rows = static_cast<std::size_t>(d) * d + 1;
        std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(k, Rat(0)));
        for (std::size_t i = 0; i < k; ++i) {
            for (int r = 0; r < d; ++r)
                a[static_cast<std::size_t>(r) * d + dec.perms[i][static_cast<std::size_t>(r)]][i] = 1;
            a[rows - 1][i] = 1;
        }

        // Row-reduce and extract one null vector of A.
        std::vector<std::size_t> pivot_col;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < k && rank < rows; ++col) {
            std::size_t sel = rows;
            for (std::size_t r = rank; r < rows; ++r)
                if (a[r][col] != 0) {
                    sel = r;
                    break;
                }
            if (sel == rows) continue;
            std::swap(a[rank], a[sel]);
            const Rat inv = a[rank][col];
            for (std::size_t c = col; c < k; ++c) a[rank][c] /= inv;
            for (std::size_t r = 0; r < rows; ++r) {
                if (r == rank || a[r][col] == 0) continue;
                const Rat f = a[r][col];
                for (std::size_t c = col; c < k; ++c) a[r][c] -= f * a[rank][c];
            }
            pivot_col.push_back(col);
            ++rank;
        }
        std::size_t free_col = k;
        for (std::size_t col = 0; col < k; ++col)
            if (std::find(pivot_col.begin(), pivot_col.end(), col) == pivot_col.end()) {
                free_col = col;
                break;
            }
        if (free_col == k) break;  // full column rank: nothing to prune

        std::vector<Rat> z(k, Rat(0));
        z[free_col] = 1;
        for (std::size_t r = 0; r < rank; ++r) z[pivot_col[r]] = -a[r][free_col];

        // Step to the boundary of the weight simplex along +/- z.
        double best_t = -1.0;
        std::size_t drop = k;
        int sign = 1;
        for (int s : {1, -1}) {
            double t_max = -1.0;
            std::size_t arg = k;
            for (std::size_t i = 0; i < k; ++i) {
                const double zi = s * to_double(z[i]);
                if (zi >= -1e-18) continue;
                const double t = dec.weights[i] / (-zi);
                if (arg == k || t < t_max) {
                    t_max = t;
                    arg = i;
                }
            }
            if (arg != k && (drop == k || t_max < best_t)) {
                best_t = t_max;
                drop = arg;
                sign = s;
            }
        }
        if (drop == k) break;

        for (std::size_t i = 0; i < k; ++i) {
            dec.weights[i] += best_t * sign * to_double(z[i]);
            if (dec.weights[i] < 0.0) dec.weights[i] = 0.0;
        }
        dec.weights[drop] = 0.0;

        for (std::size_t i = k; i-- > 0;) {
            if (dec.weights[i] <= 1e-15) {
                dec.weights.erase(dec.weights.begin() + static_cast<std::ptrdiff_t>(i));
                dec.perms.erase(dec.perms.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }
}

}  // namespace

StochasticMatrix BirkhoffDecomposition::reconstruct() const {
    const int d = dim();
    std::vector<double> e(static_cast<std::size_t>(d) * d, 0.0);
    for (std::size_t i = 0; i < perms.size(); ++i)
        for (int r = 0; r < d; ++r) e[static_cast<std::size_t>(r) * d + perms[i][static_cast<std::size_t>(r)]] += weights[i];
    return StochasticMatrix(d, std::move(e));
}

BirkhoffDecomposition birkhoff_decompose(const StochasticMatrix& m) {
    const int d = m.dim();
    if (!is_doubly_stochastic(m, 1e-10))
        throw InvalidInput("birkhoff_decompose: matrix is not doubly stochastic");

    std::vector<double> residual = m.entries();
    BirkhoffDecomposition dec;

    const std::size_t max_terms = static_cast<std::size_t>(d - 1) * (d - 1) + 1;
    for (std::size_t round = 0; round < static_cast<std::size_t>(d) * d + 2; ++round) {
        std::vector<int> perm;
        if (!perfect_matching(residual, d, perm)) break;
        double q = 2.0;
        for (int r = 0; r < d; ++r)
            q = std::min(q, residual[static_cast<std::size_t>(r) * d + perm[static_cast<std::size_t>(r)]]);
        if (q <= 0.0) break;

        dec.weights.push_back(q);
        dec.perms.push_back(perm);
        for (int r = 0; r < d; ++r) {
            double& cell = residual[static_cast<std::size_t>(r) * d + perm[static_cast<std::size_t>(r)]];
            cell -= q;
            if (cell < kZeroEntry) cell = 0.0;
        }
    }

    if (dec.weights.empty()) throw InvariantViolation("birkhoff_decompose: no permutation extracted");

    if (dec.perms.size() > max_terms) reduce_to_caratheodory_bound(dec, max_terms);

    // Residual zeroing discards a whisker of mass; rescale so weights sum to 1.
    double total = 0.0;
    for (double w : dec.weights) total += w;
    for (double& w : dec.weights) w /= total;

    return dec;
}

}  // namespace blindcomp
