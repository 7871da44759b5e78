#pragma once

// JSON wire formats: distributions as arrays of decimal strings (exact
// rationals as "num/den"), matrices as row-major arrays, decompositions as
// {weights, permutations}.

#include <json.hpp>

#include "blindcomp/birkhoff.hpp"
#include "blindcomp/bounds.hpp"
#include "blindcomp/defect.hpp"
#include "blindcomp/distribution.hpp"
#include "blindcomp/protocol.hpp"

namespace blindcomp {

nlohmann::json to_json(const Distribution& p);
nlohmann::json to_json(const RatDistribution& p);
Distribution distribution_from_json(const nlohmann::json& j);
RatDistribution rat_distribution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const StochasticMatrix& m);
StochasticMatrix stochastic_matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BirkhoffDecomposition& b);
BirkhoffDecomposition birkhoff_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RateBound& r);
nlohmann::json to_json(const PinskerChain& c);
nlohmann::json to_json(const Theorem1Result& r);

nlohmann::json to_json(const DefectSolution& s);

nlohmann::json to_json(const BucketProtocol& p);
nlohmann::json to_json(const ProtocolReport& r);

// 17-significant-digit decimal, round-trips doubles exactly.
std::string double_to_string(double x);

}  // namespace blindcomp
