// Command-line workbench: exact two-state example values, the rate-separation
// sweep, the bucketing protocol simulator, defect minimization, randomized
// invariant audits, and Birkhoff decomposition of JSON matrices.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "blindcomp/audit.hpp"
#include "blindcomp/birkhoff.hpp"
#include "blindcomp/bounds.hpp"
#include "blindcomp/defect.hpp"
#include "blindcomp/json_io.hpp"
#include "blindcomp/protocol.hpp"
#include "blindcomp/version.hpp"

namespace {

using namespace blindcomp;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInvariant = 3;

std::string csv_header(const std::string& command, std::uint64_t seed) {
    std::ostringstream os;
    os << "# blindcomp " << BLINDCOMP_VERSION << " cmd=" << command << " seed=" << seed << "\n";
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open output file: " + path);
    out << text;
}

std::string fmt(double x) { return double_to_string(x); }

int cmd_example_2x2(const std::string& eps_text, const std::string& output) {
    const Rat eps = rat_from_string(eps_text);
    if (eps < 0 || eps >= 1) throw InvalidInput("eps must lie in [0,1)");

    const RatDistribution r0 = uniform<Rat>(2);
    const RatDistribution r1({Rat(1, 3), Rat(2, 3)});
    const Rat one_copy = trace_distance(r0, r1);
    const Rat two_copy = trace_distance(product(r0, r0), product(r1, r1));
    const Rat gap = two_copy - one_copy;
    const Rat bound = cloning_defect_bound(r0, r1, eps);

    std::ostringstream os;
    os << csv_header("example-2x2", 0);
    os << "quantity,exact,decimal\n";
    os << "one_copy_distance," << rat_to_string(one_copy) << "," << fmt(to_double(one_copy)) << "\n";
    os << "two_copy_distance," << rat_to_string(two_copy) << "," << fmt(to_double(two_copy)) << "\n";
    os << "distance_gap," << rat_to_string(gap) << "," << fmt(to_double(gap)) << "\n";
    os << "eps," << rat_to_string(eps) << "," << fmt(to_double(eps)) << "\n";
    os << "defect_bound," << rat_to_string(bound) << "," << fmt(to_double(bound)) << "\n";
    write_output(output, os.str());
    return kExitOk;
}

int cmd_separation(const std::vector<int>& ds, const std::string& output) {
    std::ostringstream os;
    os << csv_header("separation", 0);
    os << "d,eps,rate_bound,holevo,cond_entropy_c_given_x,defect_term,vacuous\n";
    for (int d : ds) {
        if (d < 2) throw InvalidInput("separation: every d must be >= 2");
        const Theorem1Result r = theorem1_pipeline(d);
        os << d << "," << fmt(r.eps) << "," << fmt(r.bound.value) << "," << fmt(r.holevo) << ","
           << fmt(r.cond_entropy) << "," << fmt(r.defect_term) << "," << (r.bound.vacuous ? 1 : 0)
           << "\n";
    }
    write_output(output, os.str());
    return kExitOk;
}

int cmd_protocol(int d, double delta, double gamma, std::uint64_t seed, std::int64_t mc,
                 const std::string& output, const std::string& buckets_path) {
    const Distribution rho = uniform<double>(d);
    const Distribution sig = staircase<double>(d);
    const ProtocolReport r = protocol_report(rho, sig, delta, gamma, seed, mc);

    std::ostringstream os;
    os << csv_header("protocol", seed);
    os << "d,delta,gamma,u,bits_sent,rate_bound,err_rho,err_sigma,f,lambda,g,"
          "bits_sent_int,truncation_rho,truncation_sigma,mc_err_rho,mc_sigma_rho,"
          "mc_err_sigma,mc_sigma_sigma\n";
    const BucketProtocol protocol = BucketProtocol::build(rho, sig, delta, gamma);
    const KiErrors ki = ki_error_functions(rho, sig, protocol);
    os << r.d << "," << fmt(r.delta) << "," << fmt(r.gamma) << "," << r.u << "," << fmt(r.bits_sent)
       << "," << fmt(r.rate_bound) << "," << fmt(r.local_error_rho) << "," << fmt(r.local_error_sigma)
       << "," << fmt(ki.f) << "," << fmt(ki.lambda) << "," << fmt(ki.g) << "," << r.bits_sent_int
       << "," << fmt(r.truncation_rho) << "," << fmt(r.truncation_sigma) << "," << fmt(r.mc_error_rho)
       << "," << fmt(r.mc_sigma_rho) << "," << fmt(r.mc_error_sigma) << "," << fmt(r.mc_sigma_sigma)
       << "\n";
    write_output(output, os.str());

    if (!buckets_path.empty()) {
        nlohmann::json j = to_json(protocol);
        j["meta"] = {{"version", BLINDCOMP_VERSION}, {"seed", seed}};
        write_output(buckets_path, j.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_defect(const std::string& ensemble_name, int d, const std::string& eps_text,
               const std::string& backend_name, std::uint64_t seed, int restarts,
               const std::string& output) {
    const double eps = to_double(rat_from_string(eps_text));

    ClassicalEnsemble ensemble = [&] {
        if (ensemble_name == "example-2x2")
            return ClassicalEnsemble(uniform<double>(2),
                                     {uniform<double>(2), Distribution({1.0 / 3.0, 2.0 / 3.0})});
        if (ensemble_name == "uniform-staircase") return uniform_staircase_ensemble(d);
        throw InvalidInput("unknown ensemble: " + ensemble_name);
    }();

    DefectProblem problem{ensemble, eps,
                          backend_name == "grid" ? DefectBackend::GridOracle
                                                 : DefectBackend::PenaltyGradient,
                          seed, restarts, 0};
    const DefectSolution sol = minimize_defect(problem);

    nlohmann::json j = to_json(sol);
    j["meta"] = {{"version", BLINDCOMP_VERSION},
                 {"seed", seed},
                 {"ensemble", ensemble_name},
                 {"d", ensemble.dim()},
                 {"eps", eps},
                 {"backend", backend_name}};
    write_output(output, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_audit(std::uint64_t seed, int trials, int d_max, double lemma1_factor, int claim_trials,
              const std::string& output) {
    if (d_max > 7) throw InvalidInput("audit: d-max is capped at 7 (permutation brute force)");
    if (d_max < 2) throw InvalidInput("audit: d-max must be >= 2");

    std::ostringstream os;
    os << csv_header("audit", seed);
    if (trials == 0) {
        os << "warning: trials=0, vacuous pass\n";
        write_output(output, os.str());
        return kExitOk;
    }

    AuditConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.d_max = d_max;
    cfg.claim_trials = claim_trials;
    cfg.lemma1_factor = lemma1_factor;
    const AuditReport report = run_audit(cfg);

    os << "suite,checks,violations,first_failure\n";
    for (const auto& s : report.suites)
        os << s.name << "," << s.checks << "," << s.violations << ",\"" << s.first_failure << "\"\n";
    os << (report.pass() ? "result,PASS\n" : "result,FAIL\n");
    write_output(output, os.str());
    return report.pass() ? kExitOk : kExitInvariant;
}

int cmd_decompose(const std::string& input, const std::string& output) {
    std::ifstream in(input);
    if (!in) throw InvalidInput("cannot open input file: " + input);
    nlohmann::json j;
    in >> j;
    const StochasticMatrix m = stochastic_matrix_from_json(j);
    const BirkhoffDecomposition dec = birkhoff_decompose(m);

    nlohmann::json out = to_json(dec);
    out["meta"] = {{"version", BLINDCOMP_VERSION}, {"d", m.dim()}};
    write_output(output, out.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blind-compression bounds workbench"};
    app.require_subcommand(1);

    std::string eps_text = "0";
    std::string output;
    std::string buckets_path;
    std::string ensemble_name = "example-2x2";
    std::string backend_name = "penalty";
    std::vector<int> ds;
    int d = 2;
    double delta = 0.1, gamma = 0.1;
    std::uint64_t seed = 12345;
    std::int64_t mc = 100000;
    int trials = 1000, d_max = 6, restarts = 50, claim_trials = 100;
    double lemma1_factor = 12.0;

    auto* ex = app.add_subcommand("example-2x2", "exact values of the two-state worked example");
    ex->add_option("--eps", eps_text, "local error parameter (rational or decimal)");
    ex->add_option("-o,--output", output, "output file (default stdout)");

    auto* sep = app.add_subcommand("separation", "rate bound sweep for the uniform/staircase pair");
    sep->add_option("--d", ds, "dimensions (comma separated)")->required()->delimiter(',');
    sep->add_option("-o,--output", output, "output file");

    auto* prot = app.add_subcommand("protocol", "bucketing protocol report for uniform/staircase");
    prot->add_option("--d", d, "alphabet size")->required();
    prot->add_option("--delta", delta, "level width parameter, in (0, 1/2)")->required();
    prot->add_option("--gamma", gamma, "truncation parameter, in (0, 1)")->required();
    prot->add_option("--seed", seed, "Monte Carlo seed");
    prot->add_option("--mc", mc, "Monte Carlo copies (0 disables)");
    prot->add_option("-o,--output", output, "CSV output file");
    prot->add_option("--buckets-json", buckets_path, "bucket table JSON output file");

    auto* def = app.add_subcommand("defect", "minimize the information defect over channels");
    def->add_option("--ensemble", ensemble_name, "example-2x2 | uniform-staircase");
    def->add_option("--d", d, "dimension for uniform-staircase");
    def->add_option("--eps", eps_text, "marginal error budget");
    def->add_option("--backend", backend_name, "penalty | grid");
    def->add_option("--seed", seed, "restart seed");
    def->add_option("--restarts", restarts, "number of restarts");
    def->add_option("-o,--output", output, "JSON output file");

    auto* aud = app.add_subcommand("audit", "randomized invariant suites");
    aud->add_option("--seed", seed, "audit seed");
    aud->add_option("--trials", trials, "trials per dimension");
    aud->add_option("--d-max", d_max, "largest dimension (<= 7)");
    aud->add_option("--claim2-trials", claim_trials, "hull-bound instances");
    aud->add_option("--lemma1-factor", lemma1_factor,
                    "checked rounding constant in units of d*eps (mutation hook)");
    aud->add_option("-o,--output", output, "output file");

    std::string input;
    auto* dec = app.add_subcommand("decompose", "Birkhoff decomposition of a JSON matrix");
    dec->add_option("-i,--input", input, "matrix JSON file")->required();
    dec->add_option("-o,--output", output, "JSON output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (ex->parsed()) return cmd_example_2x2(eps_text, output);
        if (sep->parsed()) return cmd_separation(ds, output);
        if (prot->parsed()) return cmd_protocol(d, delta, gamma, seed, mc, output, buckets_path);
        if (def->parsed()) return cmd_defect(ensemble_name, d, eps_text, backend_name, seed, restarts, output);
        if (aud->parsed()) return cmd_audit(seed, trials, d_max, lemma1_factor, claim_trials, output);
        if (dec->parsed()) return cmd_decompose(input, output);
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
