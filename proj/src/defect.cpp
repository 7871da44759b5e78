#include "blindcomp/defect.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>

#include "blindcomp/audit.hpp"

namespace blindcomp {

namespace {

// log2 with a floor so gradients stay finite on the simplex boundary.
double safe_log2(double x) { return std::log2(x < 1e-300 ? 1e-300 : x); }

struct Workspace {
    const ClassicalEnsemble& e;
    int d;

    explicit Workspace(const ClassicalEnsemble& ensemble) : e(ensemble), d(ensemble.dim()) {}

    // I(C:C'|X) for the channel rows (row-major d*d).
    double objective(const std::vector<double>& m) const {
        double total = 0.0;
        std::vector<double> out(static_cast<std::size_t>(d));
        for (int x = 0; x < e.num_labels(); ++x) {
            const Distribution& rho = e.conditional(x);
            std::fill(out.begin(), out.end(), 0.0);
            for (int c = 0; c < d; ++c)
                for (int cp = 0; cp < d; ++cp) out[static_cast<std::size_t>(cp)] += rho[c] * m[static_cast<std::size_t>(c) * d + cp];
            double div = 0.0;
            for (int c = 0; c < d; ++c) {
                if (rho[c] == 0.0) continue;
                for (int cp = 0; cp < d; ++cp) {
                    const double v = m[static_cast<std::size_t>(c) * d + cp];
                    if (v > 0.0) div += rho[c] * v * std::log2(v / out[static_cast<std::size_t>(cp)]);
                }
            }
            total += e.prior()[x] * div;
        }
        return total < 0.0 ? 0.0 : total;
    }

    // sum_x p_x Delta(rho^x M, rho^x).
    double constraint(const std::vector<double>& m) const {
        double total = 0.0;
        std::vector<double> out(static_cast<std::size_t>(d));
        for (int x = 0; x < e.num_labels(); ++x) {
            const Distribution& rho = e.conditional(x);
            std::fill(out.begin(), out.end(), 0.0);
            for (int c = 0; c < d; ++c)
                for (int cp = 0; cp < d; ++cp) out[static_cast<std::size_t>(cp)] += rho[c] * m[static_cast<std::size_t>(c) * d + cp];
            double tvx = 0.0;
            for (int cp = 0; cp < d; ++cp) tvx += std::abs(out[static_cast<std::size_t>(cp)] - rho[cp]);
            total += e.prior()[x] * 0.5 * tvx;
        }
        return total;
    }

    void objective_gradient(const std::vector<double>& m, std::vector<double>& grad) const {
        std::fill(grad.begin(), grad.end(), 0.0);
        std::vector<double> out(static_cast<std::size_t>(d));
        for (int x = 0; x < e.num_labels(); ++x) {
            const Distribution& rho = e.conditional(x);
            std::fill(out.begin(), out.end(), 0.0);
            for (int c = 0; c < d; ++c)
                for (int cp = 0; cp < d; ++cp) out[static_cast<std::size_t>(cp)] += rho[c] * m[static_cast<std::size_t>(c) * d + cp];
            for (int c = 0; c < d; ++c) {
                if (rho[c] == 0.0) continue;
                const double px_rho = e.prior()[x] * rho[c];
                for (int cp = 0; cp < d; ++cp)
                    grad[static_cast<std::size_t>(c) * d + cp] +=
                        px_rho * (safe_log2(m[static_cast<std::size_t>(c) * d + cp]) - safe_log2(out[static_cast<std::size_t>(cp)]));
            }
        }
    }

    void constraint_gradient(const std::vector<double>& m, std::vector<double>& grad) const {
        std::fill(grad.begin(), grad.end(), 0.0);
        std::vector<double> out(static_cast<std::size_t>(d));
        for (int x = 0; x < e.num_labels(); ++x) {
            const Distribution& rho = e.conditional(x);
            std::fill(out.begin(), out.end(), 0.0);
            for (int c = 0; c < d; ++c)
                for (int cp = 0; cp < d; ++cp) out[static_cast<std::size_t>(cp)] += rho[c] * m[static_cast<std::size_t>(c) * d + cp];
            for (int c = 0; c < d; ++c) {
                const double px_rho = e.prior()[x] * rho[c];
                for (int cp = 0; cp < d; ++cp) {
                    const double diff = out[static_cast<std::size_t>(cp)] - rho[cp];
                    grad[static_cast<std::size_t>(c) * d + cp] += px_rho * 0.5 * (diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0));
                }
            }
        }
    }
};

// Euclidean projection of a row onto the probability simplex.
void project_row(double* row, int d) {
    std::vector<double> sorted(row, row + d);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cum = 0.0, tau = 0.0;
    int rho = 0;
    for (int i = 0; i < d; ++i) {
        cum += sorted[static_cast<std::size_t>(i)];
        const double t = (cum - 1.0) / (i + 1);
        if (sorted[static_cast<std::size_t>(i)] - t > 0.0) {
            rho = i + 1;
            tau = t;
        }
    }
    (void)rho;
    for (int i = 0; i < d; ++i) row[i] = std::max(0.0, row[i] - tau);
}

void project_rows(std::vector<double>& m, int d) {
    for (int r = 0; r < d; ++r) project_row(m.data() + static_cast<std::ptrdiff_t>(r) * d, d);
}

struct SolveOutcome {
    std::vector<double> m;
    double objective = std::numeric_limits<double>::infinity();
    double gap = 0.0;
};

SolveOutcome penalty_solve(const Workspace& ws, double eps, std::vector<double> m) {
    const int d = ws.d;
    const std::size_t nn = static_cast<std::size_t>(d) * d;
    std::vector<double> grad(nn), cgrad(nn), trial(nn);

    for (double mu : {1e2, 1e4, 1e6, 1e8, 1e10, 1e12}) {
        const auto merit = [&](const std::vector<double>& mm) {
            const double slack = std::max(0.0, ws.constraint(mm) - eps);
            return ws.objective(mm) + mu * slack * slack;
        };
        double value = merit(m);
        double step = 0.5;
        int stall = 0;
        for (int iter = 0; iter < 4000 && stall < 100; ++iter) {
            ws.objective_gradient(m, grad);
            const double slack = std::max(0.0, ws.constraint(m) - eps);
            if (slack > 0.0) {
                ws.constraint_gradient(m, cgrad);
                for (std::size_t i = 0; i < nn; ++i) grad[i] += 2.0 * mu * slack * cgrad[i];
            }
            double norm = 0.0;
            for (double g : grad) norm = std::max(norm, std::abs(g));
            if (norm == 0.0) break;

            bool improved = false;
            double t = step;
            for (int back = 0; back < 45; ++back) {
                for (std::size_t i = 0; i < nn; ++i) trial[i] = m[i] - t * grad[i] / norm;
                project_rows(trial, d);
                const double tv = merit(trial);
                if (tv < value - 1e-15) {
                    m = trial;
                    const double drop = value - tv;
                    value = tv;
                    step = std::min(1.0, t * 2.0);
                    improved = true;
                    stall = drop < 1e-9 ? stall + 1 : 0;
                    break;
                }
                t *= 0.5;
            }
            if (!improved) ++stall;
        }
    }

    SolveOutcome out;
    out.gap = ws.constraint(m);
    // Blending toward the identity never leaves the feasible set (the
    // identity has zero marginal error and the error is convex in M).
    if (out.gap > eps) {
        const double lambda = std::min(1.0, (out.gap - eps) / out.gap + 1e-12);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                double& v = m[static_cast<std::size_t>(r) * d + c];
                v = (1.0 - lambda) * v + (r == c ? lambda : 0.0);
            }
        out.gap = ws.constraint(m);
    }
    out.objective = ws.objective(m);
    out.m = std::move(m);
    return out;
}

std::vector<double> renormalized_rows(std::vector<double> m, int d) {
    for (int r = 0; r < d; ++r) {
        double s = 0.0;
        for (int c = 0; c < d; ++c) s += m[static_cast<std::size_t>(r) * d + c];
        for (int c = 0; c < d; ++c) m[static_cast<std::size_t>(r) * d + c] /= s;
    }
    return m;
}

DefectSolution grid_oracle_2x2(const ClassicalEnsemble& e, double eps) {
    const Workspace ws(e);
    const auto channel = [](double a, double b) {
        return std::vector<double>{1.0 - a, a, b, 1.0 - b};
    };

    double best_a = 0.0, best_b = 0.0;
    double best = std::numeric_limits<double>::infinity();
    const auto consider = [&](double a, double b) {
        if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0) return;
        const auto m = channel(a, b);
        if (ws.constraint(m) > eps + 1e-12) return;
        const double v = ws.objective(m);
        if (v < best) {
            best = v;
            best_a = a;
            best_b = b;
        }
    };

    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 100; ++j) consider(i * 1e-2, j * 1e-2);
    for (double scale : {1e-3, 1e-4, 1e-5, 1e-6}) {
        const double a0 = best_a, b0 = best_b;
        for (int i = -12; i <= 12; ++i)
            for (int j = -12; j <= 12; ++j) consider(a0 + i * scale, b0 + j * scale);
    }

    const auto m = channel(best_a, best_b);
    DefectSolution sol{StochasticMatrix(2, m), Bits{best}, ws.constraint(m)};
    return sol;
}

}  // namespace

Bits defect_value(const ClassicalEnsemble& e, const StochasticMatrix& m) {
    if (m.dim() != e.dim()) throw DimensionMismatch("defect_value: channel/ensemble dimension mismatch");
    return Bits{Workspace(e).objective(m.entries())};
}

double marginal_error(const ClassicalEnsemble& e, const StochasticMatrix& m) {
    if (m.dim() != e.dim()) throw DimensionMismatch("marginal_error: channel/ensemble dimension mismatch");
    return Workspace(e).constraint(m.entries());
}

std::vector<double> defect_gradient(const ClassicalEnsemble& e, const StochasticMatrix& m) {
    if (m.dim() != e.dim()) throw DimensionMismatch("defect_gradient: channel/ensemble dimension mismatch");
    std::vector<double> grad(m.entries().size());
    Workspace(e).objective_gradient(m.entries(), grad);
    return grad;
}

DefectSolution minimize_defect(const DefectProblem& problem) {
    if (problem.eps < 0.0 || problem.eps >= 1.0) throw InvalidInput("minimize_defect: eps must lie in [0,1)");
    const ClassicalEnsemble& e = problem.ensemble;
    const int d = e.dim();

    if (problem.backend == DefectBackend::GridOracle) {
        if (d != 2) throw UnsupportedInput("minimize_defect: grid oracle is honest at d = 2 only");
        return grid_oracle_2x2(e, problem.eps);
    }

    const Workspace ws(e);
    const std::size_t nn = static_cast<std::size_t>(d) * d;
    const Rng base(problem.seed);

    // Start list: identity (always feasible), the average-row channel, and
    // Dirichlet-random rows.
    std::vector<std::vector<double>> starts;
    {
        std::vector<double> id(nn, 0.0);
        for (int i = 0; i < d; ++i) id[static_cast<std::size_t>(i) * d + i] = 1.0;
        starts.push_back(std::move(id));

        const Distribution avg = e.average();
        std::vector<double> rows(nn);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) rows[static_cast<std::size_t>(r) * d + c] = avg[c];
        starts.push_back(std::move(rows));
    }
    const int extra = std::max(0, problem.restarts - static_cast<int>(starts.size()));
    for (int k = 0; k < extra; ++k) {
        Rng fork = base.fork(static_cast<std::uint64_t>(k));
        std::vector<double> m(nn);
        for (int r = 0; r < d; ++r) {
            const Distribution row = random_distribution(fork, d);
            for (int c = 0; c < d; ++c) m[static_cast<std::size_t>(r) * d + c] = row[c];
        }
        starts.push_back(std::move(m));
    }

    const int threads = resolve_threads(problem.threads);
    std::vector<SolveOutcome> outcomes(starts.size());
    std::atomic<std::size_t> cursor{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= starts.size()) return;
            outcomes[i] = penalty_solve(ws, problem.eps, starts[i]);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::future<void>> futs;
        for (int t = 0; t < threads; ++t) futs.push_back(std::async(std::launch::async, worker));
        for (auto& f : futs) f.get();
    }

    // Deterministic pick: best feasible objective, earliest start on ties.
    std::size_t best = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i) {
        const bool feas_i = outcomes[i].gap <= problem.eps + 1e-9;
        const bool feas_b = outcomes[best].gap <= problem.eps + 1e-9;
        if ((feas_i && !feas_b) || (feas_i == feas_b && outcomes[i].objective < outcomes[best].objective))
            best = i;
    }

    const auto rows = renormalized_rows(outcomes[best].m, d);
    StochasticMatrix channel(d, rows);
    return DefectSolution{channel, Bits{ws.objective(rows)}, ws.constraint(rows)};
}

}  // namespace blindcomp
