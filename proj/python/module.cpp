// Python bindings for the main operations: distribution generators,
// information measures, stochastic-matrix machinery, rate bounds, defect
// minimization and the bucketing protocol.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blindcomp/audit.hpp"
#include "blindcomp/birkhoff.hpp"
#include "blindcomp/bounds.hpp"
#include "blindcomp/defect.hpp"
#include "blindcomp/info.hpp"
#include "blindcomp/protocol.hpp"
#include "blindcomp/version.hpp"

namespace py = pybind11;
using namespace blindcomp;

namespace {

Distribution make_dist(const std::vector<double>& probs) { return Distribution(probs); }

StochasticMatrix make_matrix(const std::vector<std::vector<double>>& rows) {
    const int d = static_cast<int>(rows.size());
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(d) * d);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != d) throw InvalidInput("matrix rows must be square");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return StochasticMatrix(d, std::move(flat));
}

ClassicalEnsemble make_ensemble(const std::vector<double>& priors,
                                const std::vector<std::vector<double>>& conditionals) {
    std::vector<Distribution> conds;
    conds.reserve(conditionals.size());
    for (const auto& c : conditionals) conds.emplace_back(c);
    return ClassicalEnsemble(Distribution(priors), std::move(conds));
}

std::vector<std::vector<double>> matrix_rows(const StochasticMatrix& m) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.dim()));
    for (int r = 0; r < m.dim(); ++r) {
        rows[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(m.dim()));
        for (int c = 0; c < m.dim(); ++c) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m.at(r, c);
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(blindcomp, m) {
    m.doc() = "Blind-compression lower bounds for classical ensembles";
    m.attr("__version__") = BLINDCOMP_VERSION;

    py::register_exception<Error>(m, "BlindcompError");

    // Distributions
    m.def("uniform", [](int d) { return uniform<double>(d).probs(); }, py::arg("d"));
    m.def("staircase", [](int d) { return staircase<double>(d).probs(); }, py::arg("d"));
    m.def(
        "product",
        [](const std::vector<double>& p, const std::vector<double>& q) {
            return product(make_dist(p), make_dist(q)).probs();
        },
        py::arg("p"), py::arg("q"));
    m.def(
        "sample",
        [](const std::vector<double>& p, std::uint64_t seed, std::size_t n) {
            return sample(make_dist(p), seed, n);
        },
        py::arg("p"), py::arg("seed"), py::arg("n"));

    // Information measures
    m.def("entropy", [](const std::vector<double>& p) { return entropy(make_dist(p)).value; });
    m.def("trace_distance", [](const std::vector<double>& p, const std::vector<double>& q) {
        return trace_distance(make_dist(p), make_dist(q));
    });
    m.def("trace_distance_exact", [](const std::string& p, const std::string& q) {
        // comma-separated "num/den" entries
        const auto parse = [](const std::string& text) {
            std::vector<Rat> xs;
            std::size_t start = 0;
            while (start <= text.size()) {
                const auto comma = text.find(',', start);
                const std::string tok =
                    text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                if (!tok.empty()) xs.push_back(rat_from_string(tok));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            return RatDistribution(std::move(xs));
        };
        return rat_to_string(trace_distance(parse(p), parse(q)));
    });
    m.def("fidelity", [](const std::vector<double>& p, const std::vector<double>& q) {
        return fidelity(make_dist(p), make_dist(q));
    });
    m.def("kl_divergence", [](const std::vector<double>& p, const std::vector<double>& q) {
        return kl_divergence(make_dist(p), make_dist(q)).value;
    });
    m.def("holevo_information",
          [](const std::vector<double>& priors, const std::vector<std::vector<double>>& conds) {
              return holevo_information(make_ensemble(priors, conds)).value;
          });
    m.def("conditional_entropy",
          [](const std::vector<double>& priors, const std::vector<std::vector<double>>& conds) {
              return conditional_entropy_c_given_x(make_ensemble(priors, conds)).value;
          });

    // Stochastic maps
    m.def("apply_channel", [](const std::vector<double>& p, const std::vector<std::vector<double>>& rows) {
        return apply(make_dist(p), make_matrix(rows)).probs();
    });
    m.def("column_deviation", [](const std::vector<std::vector<double>>& rows) {
        return column_deviation(make_matrix(rows));
    });
    m.def(
        "approx_doubly_stochastic",
        [](const std::vector<std::vector<double>>& rows, double eps) {
            return matrix_rows(approx_doubly_stochastic(make_matrix(rows), eps));
        },
        py::arg("rows"), py::arg("eps"));
    m.def("diagonal_rigidity_bound", [](const std::vector<std::vector<double>>& rows, double eps) {
        return diagonal_rigidity_bound(make_matrix(rows), eps);
    });
    m.def("birkhoff_decompose", [](const std::vector<std::vector<double>>& rows) {
        const BirkhoffDecomposition dec = birkhoff_decompose(make_matrix(rows));
        return py::make_tuple(dec.weights, dec.perms);
    });

    // Bounds
    m.def("theorem1_pipeline", [](int d) {
        const Theorem1Result r = theorem1_pipeline(d);
        py::dict out;
        out["value"] = r.bound.value;
        out["vacuous"] = r.bound.vacuous;
        out["eps"] = r.eps;
        out["diag_lower"] = r.diag_lower;
        out["defect_term"] = r.defect_term;
        out["holevo"] = r.holevo;
        out["cond_entropy"] = r.cond_entropy;
        return out;
    });
    m.def("genlowb_bound",
          [](const std::vector<double>& priors, const std::vector<std::vector<double>>& conds,
             const std::vector<std::vector<double>>& rows, double eps) {
              return genlowb_bound(make_ensemble(priors, conds), make_matrix(rows), eps).value;
          });
    m.def("mixedlb_rate",
          [](const std::vector<double>& priors, const std::vector<std::vector<double>>& conds,
             double defect, double eps) {
              const RateBound rb = mixedlb_rate(make_ensemble(priors, conds), Bits{defect}, eps);
              py::dict out;
              out["value"] = rb.value;
              out["vacuous"] = rb.vacuous;
              for (const auto& c : rb.components) out[py::str(c.name)] = c.value;
              return out;
          });

    // Defect
    m.def("defect_value",
          [](const std::vector<double>& priors, const std::vector<std::vector<double>>& conds,
             const std::vector<std::vector<double>>& rows) {
              return defect_value(make_ensemble(priors, conds), make_matrix(rows)).value;
          });
    m.def(
        "minimize_defect",
        [](const std::vector<double>& priors, const std::vector<std::vector<double>>& conds,
           double eps, const std::string& backend, std::uint64_t seed, int restarts) {
            DefectProblem problem{make_ensemble(priors, conds), eps,
                                  backend == "grid" ? DefectBackend::GridOracle
                                                    : DefectBackend::PenaltyGradient,
                                  seed, restarts, 0};
            const DefectSolution sol = minimize_defect(problem);
            py::dict out;
            out["channel"] = matrix_rows(sol.channel);
            out["value"] = sol.value.value;
            out["feasibility_gap"] = sol.feasibility_gap;
            return out;
        },
        py::arg("priors"), py::arg("conditionals"), py::arg("eps") = 0.0,
        py::arg("backend") = "penalty", py::arg("seed") = 1, py::arg("restarts") = 50);

    // Protocol
    m.def(
        "protocol_report",
        [](const std::vector<double>& rho, const std::vector<double>& sigma, double delta,
           double gamma, std::uint64_t seed, std::int64_t mc) {
            const ProtocolReport r = protocol_report(make_dist(rho), make_dist(sigma), delta, gamma, seed, mc);
            py::dict out;
            out["u"] = r.u;
            out["bits_sent"] = r.bits_sent;
            out["bits_sent_int"] = r.bits_sent_int;
            out["rate_bound"] = r.rate_bound;
            out["local_error_rho"] = r.local_error_rho;
            out["local_error_sigma"] = r.local_error_sigma;
            out["truncation_rho"] = r.truncation_rho;
            out["truncation_sigma"] = r.truncation_sigma;
            out["mc_error_rho"] = r.mc_error_rho;
            out["mc_error_sigma"] = r.mc_error_sigma;
            out["induced_rho"] = r.induced_rho.probs();
            out["induced_sigma"] = r.induced_sigma.probs();
            return out;
        },
        py::arg("rho"), py::arg("sigma"), py::arg("delta"), py::arg("gamma"), py::arg("seed") = 1,
        py::arg("mc") = 100000);
    m.def("ki_error_functions", [](const std::vector<double>& rho, const std::vector<double>& sigma,
                                   double delta, double gamma) {
        const Distribution r = make_dist(rho), s = make_dist(sigma);
        const KiErrors k = ki_error_functions(r, s, BucketProtocol::build(r, s, delta, gamma));
        return py::make_tuple(k.f, k.lambda, k.g);
    });

    // Audit
    m.def(
        "run_audit",
        [](std::uint64_t seed, int trials, int d_max) {
            AuditConfig cfg;
            cfg.seed = seed;
            cfg.trials = trials;
            cfg.d_max = d_max;
            const AuditReport report = run_audit(cfg);
            py::list suites;
            for (const auto& s : report.suites) {
                py::dict row;
                row["name"] = s.name;
                row["checks"] = s.checks;
                row["violations"] = s.violations;
                suites.append(row);
            }
            return py::make_tuple(report.pass(), suites);
        },
        py::arg("seed") = 12345, py::arg("trials") = 100, py::arg("d_max") = 5);
}
