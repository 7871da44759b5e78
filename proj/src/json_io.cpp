#include "blindcomp/json_io.hpp"

#include <cstdio>

namespace blindcomp {

std::string double_to_string(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::json to_json(const Distribution& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (int c = 0; c < p.dim(); ++c) arr.push_back(double_to_string(p[c]));
    return arr;
}

nlohmann::json to_json(const RatDistribution& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (int c = 0; c < p.dim(); ++c) arr.push_back(rat_to_string(p[c]));
    return arr;
}

Distribution distribution_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw InvalidInput("distribution JSON must be an array");
    std::vector<double> xs;
    xs.reserve(j.size());
    for (const auto& v : j) {
        if (v.is_number())
            xs.push_back(v.get<double>());
        else
            xs.push_back(to_double(rat_from_string(v.get<std::string>())));
    }
    return Distribution(std::move(xs));
}

RatDistribution rat_distribution_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw InvalidInput("distribution JSON must be an array");
    std::vector<Rat> xs;
    xs.reserve(j.size());
    for (const auto& v : j) xs.push_back(rat_from_string(v.get<std::string>()));
    return RatDistribution(std::move(xs));
}

nlohmann::json to_json(const StochasticMatrix& m) {
    nlohmann::json j;
    j["d"] = m.dim();
    j["entries"] = m.entries();  // row-major
    return j;
}

StochasticMatrix stochastic_matrix_from_json(const nlohmann::json& j) {
    if (j.is_array()) {  // nested rows
        std::vector<double> flat;
        const int d = static_cast<int>(j.size());
        for (const auto& row : j)
            for (const auto& v : row) flat.push_back(v.get<double>());
        return StochasticMatrix(d, std::move(flat));
    }
    return StochasticMatrix(j.at("d").get<int>(), j.at("entries").get<std::vector<double>>());
}

nlohmann::json to_json(const BirkhoffDecomposition& b) {
    nlohmann::json j;
    j["weights"] = b.weights;
    j["permutations"] = b.perms;
    return j;
}

BirkhoffDecomposition birkhoff_from_json(const nlohmann::json& j) {
    BirkhoffDecomposition b;
    b.weights = j.at("weights").get<std::vector<double>>();
    b.perms = j.at("permutations").get<std::vector<std::vector<int>>>();
    return b;
}

nlohmann::json to_json(const RateBound& r) {
    nlohmann::json j;
    j["value"] = r.value;
    j["epsilon"] = r.epsilon;
    j["vacuous"] = r.vacuous;
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : r.components) comps.push_back({{"name", c.name}, {"value", c.value}});
    j["components"] = comps;
    return j;
}

nlohmann::json to_json(const PinskerChain& c) {
    return nlohmann::json{
        {"sqrt_defect", c.sqrt_defect},
        {"pinsker_rhs", c.pinsker_rhs},
        {"cloning_distance", c.cloning_distance},
        {"output_gap", c.output_gap},
        {"input_gap", c.input_gap},
        {"two_copy_gap", c.two_copy_gap},
    };
}

nlohmann::json to_json(const Theorem1Result& r) {
    nlohmann::json j;
    j["bound"] = to_json(r.bound);
    j["eps"] = r.eps;
    j["diag_lower"] = r.diag_lower;
    j["defect_term"] = r.defect_term;
    j["cond_entropy_lower"] = r.cond_entropy_lower;
    j["holevo"] = r.holevo;
    j["cond_entropy"] = r.cond_entropy;
    return j;
}

nlohmann::json to_json(const DefectSolution& s) {
    nlohmann::json j;
    j["channel"] = to_json(s.channel);
    j["value"] = s.value.value;
    j["feasibility_gap"] = s.feasibility_gap;
    return j;
}

nlohmann::json to_json(const BucketProtocol& p) {
    nlohmann::json j;
    j["delta"] = p.delta();
    j["gamma"] = p.gamma();
    j["u"] = p.levels();
    j["d"] = p.dim();
    nlohmann::json buckets = nlohmann::json::array();
    for (int i = 1; i <= p.levels() + 1; ++i)
        for (int jj = 1; jj <= p.levels() + 1; ++jj) {
            const auto& b = p.bucket(i, jj);
            if (b.empty()) continue;
            buckets.push_back({{"i", i}, {"j", jj}, {"symbols", b}});
        }
    j["buckets"] = buckets;
    return j;
}

nlohmann::json to_json(const ProtocolReport& r) {
    nlohmann::json j;
    j["d"] = r.d;
    j["delta"] = r.delta;
    j["gamma"] = r.gamma;
    j["u"] = r.u;
    j["bits_sent"] = r.bits_sent;
    j["bits_sent_int"] = r.bits_sent_int;
    j["rate_bound"] = r.rate_bound;
    j["local_error_rho"] = r.local_error_rho;
    j["local_error_sigma"] = r.local_error_sigma;
    j["truncation_rho"] = r.truncation_rho;
    j["truncation_sigma"] = r.truncation_sigma;
    j["spreading_bound"] = r.spreading_bound;
    j["mc_samples"] = r.mc_samples;
    j["mc_error_rho"] = r.mc_error_rho;
    j["mc_sigma_rho"] = r.mc_sigma_rho;
    j["mc_error_sigma"] = r.mc_error_sigma;
    j["mc_sigma_sigma"] = r.mc_sigma_sigma;
    j["induced_rho"] = to_json(r.induced_rho);
    j["induced_sigma"] = to_json(r.induced_sigma);
    return j;
}

}  // namespace blindcomp
