#include "blindcomp/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace blindcomp {

double l1_row_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

double max_abs_entry_diff(const StochasticMatrix& a, const StochasticMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

bool is_doubly_stochastic(const StochasticMatrix& m, double tol) {
    for (const double a : column_deviation(m))
        if (std::abs(a) > tol) return false;
    return true;
}

namespace {

double l1_action_distance(const Distribution& v, const StochasticMatrix& m) {
    const Distribution vm = apply(v, m);
    double s = 0.0;
    for (int c = 0; c < v.dim(); ++c) s += std::abs(v[c] - vm[c]);
    return s;
}

}  // namespace

StochasticMatrix approx_doubly_stochastic(const StochasticMatrix& m, double eps) {
    const int d = m.dim();
    if (d < 2) throw InvalidInput("approx_doubly_stochastic: dimension must be >= 2");
    if (eps < 0.0) throw InvalidInput("approx_doubly_stochastic: eps must be non-negative");

    const double udev = l1_action_distance(uniform<double>(d), m);
    if (udev > 4.0 * eps + kSumTol) {
        std::ostringstream msg;
        msg << "approx_doubly_stochastic: ||u - uM||_1 = " << udev << " exceeds 4*eps = " << 4.0 * eps;
        throw ConstraintViolated(msg.str());
    }

    const auto alpha = column_deviation(m);
    const double scale = 1.0 + 4.0 * d * eps;
    std::vector<double> out(m.entries().size());
    for (int c = 0; c < d; ++c)
        for (int cp = 0; cp < d; ++cp) {
            double v = (m.at(c, cp) + (4.0 * d * eps - alpha[static_cast<std::size_t>(cp)]) / d) / scale;
            if (v < 0.0) {
                // 4 d eps >= alpha_{c'} under the precondition; only ulp
                // residue can land below zero.
                if (v < -1e-13)
                    throw ConstraintViolated("approx_doubly_stochastic: eps inconsistent with column deviation");
                v = 0.0;
            }
            out[static_cast<std::size_t>(c) * d + cp] = v;
        }
    return StochasticMatrix(d, std::move(out));
}

bool zero_error_rigidity_check(const RatStochasticMatrix& m, const RatDistribution& v) {
    const int d = m.dim();
    if (v.dim() != d) throw DimensionMismatch("zero_error_rigidity_check: dimension mismatch");
    for (int c = 0; c + 1 < d; ++c)
        if (!(v[c] > v[c + 1]))
            throw ConstraintViolated("zero_error_rigidity_check: v is not strictly decreasing");

    const RatDistribution u = uniform<Rat>(d);
    if (!(apply(u, m) == u))
        throw ConstraintViolated("zero_error_rigidity_check: uM != u");
    if (!(apply(v, m) == v))
        throw ConstraintViolated("zero_error_rigidity_check: vM != v");

    return m == RatStochasticMatrix::identity(d);
}

Rat perm_overlap_max(const RatDistribution& v) {
    const int d = v.dim();
    if (d < 2) throw UnsupportedInput("perm_overlap_max: needs dimension >= 2");
    const RatDistribution expected = staircase<Rat>(d);
    if (!(v == expected))
        throw UnsupportedInput("perm_overlap_max: defined for the staircase distribution only");

    Rat sum_sq(0);
    for (int c = 0; c < d; ++c) sum_sq += v[c] * v[c];
    const Rat eta(staircase_eta(d));
    return sum_sq - Rat(1) / (eta * eta);
}

Rat l1_dist_to_hull_lower_bound(const RatDistribution& v, const std::vector<RatDistribution>& ws) {
    if (ws.empty()) throw InvalidInput("l1_dist_to_hull_lower_bound: empty vertex list");
    const int d = v.dim();
    if (v[0] <= 0) throw InvalidInput("l1_dist_to_hull_lower_bound: leading entry must be positive");
    for (int c = 1; c < d; ++c)
        if (v[c] > v[0]) throw InvalidInput("l1_dist_to_hull_lower_bound: leading entry must be largest");

    Rat sum_sq(0);
    for (int c = 0; c < d; ++c) sum_sq += v[c] * v[c];

    bool first = true;
    Rat best(0);
    for (const auto& w : ws) {
        if (w.dim() != d) throw DimensionMismatch("l1_dist_to_hull_lower_bound: vertex dimension mismatch");
        Rat overlap(0);
        for (int c = 0; c < d; ++c) overlap += v[c] * w[c];
        if (first || overlap > best) {
            best = overlap;
            first = false;
        }
    }
    return (sum_sq - best) / v[0];
}

std::vector<double> diagonal_rigidity_bound(const StochasticMatrix& m, double eps) {
    const int d = m.dim();
    if (d < 2) throw InvalidInput("diagonal_rigidity_bound: dimension must be >= 2");

    const double udev = l1_action_distance(uniform<double>(d), m);
    const double vdev = l1_action_distance(staircase<double>(d), m);
    if (udev > 4.0 * eps + kSumTol || vdev > 4.0 * eps + kSumTol) {
        std::ostringstream msg;
        msg << "diagonal_rigidity_bound: measured ||u-uM||_1 = " << udev << ", ||v-vM||_1 = " << vdev
            << " exceed 4*eps = " << 4.0 * eps;
        throw ConstraintViolated(msg.str());
    }

    const double d4 = static_cast<double>(d) * d * d * d;
    const double lower = 1.0 - 24.0 * d4 * eps;
    std::vector<double> diag(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) {
        diag[static_cast<std::size_t>(c)] = m.at(c, c);
        if (m.at(c, c) < lower - kSumTol) {
            std::ostringstream msg;
            msg << "diagonal_rigidity_bound: M[" << c << "][" << c << "] = " << m.at(c, c)
                << " below 1 - 24 d^4 eps = " << lower;
            throw InvariantViolation(msg.str());
        }
    }
    return diag;
}

StochasticMatrix random_stochastic_matrix(Rng& rng, int d) {
    std::vector<double> entries(static_cast<std::size_t>(d) * d);
    for (int r = 0; r < d; ++r) {
        const Distribution row = random_distribution(rng, d);
        for (int c = 0; c < d; ++c) entries[static_cast<std::size_t>(r) * d + c] = row[c];
    }
    return StochasticMatrix(d, std::move(entries));
}

StochasticMatrix random_doubly_stochastic(Rng& rng, int d, double tol) {
    // Sinkhorn normalization of a strictly positive random matrix.
    std::vector<double> a(static_cast<std::size_t>(d) * d);
    for (double& v : a) v = rng.exponential() + 1e-3;

    for (int iter = 0; iter < 10000; ++iter) {
        for (int r = 0; r < d; ++r) {
            double s = 0.0;
            for (int c = 0; c < d; ++c) s += a[static_cast<std::size_t>(r) * d + c];
            for (int c = 0; c < d; ++c) a[static_cast<std::size_t>(r) * d + c] /= s;
        }
        double worst = 0.0;
        for (int c = 0; c < d; ++c) {
            double s = 0.0;
            for (int r = 0; r < d; ++r) s += a[static_cast<std::size_t>(r) * d + c];
            worst = std::max(worst, std::abs(s - 1.0));
            for (int r = 0; r < d; ++r) a[static_cast<std::size_t>(r) * d + c] /= s;
        }
        if (worst < tol) break;
    }
    // Close rows after the final column scaling.
    for (int r = 0; r < d; ++r) {
        double s = 0.0;
        for (int c = 0; c < d; ++c) s += a[static_cast<std::size_t>(r) * d + c];
        for (int c = 0; c < d; ++c) a[static_cast<std::size_t>(r) * d + c] /= s;
    }
    return StochasticMatrix(d, std::move(a));
}

}  // namespace blindcomp
