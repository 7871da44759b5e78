#pragma once

// Numerical minimization of the information defect I(C:C'|X) over classical
// channels C -> C' whose output marginals stay eps-close to the inputs.

#include <cstdint>

#include "blindcomp/distribution.hpp"
#include "blindcomp/info.hpp"
#include "blindcomp/stochastic.hpp"

namespace blindcomp {

enum class DefectBackend {
    PenaltyGradient,  // exterior penalty + projected gradient, random restarts
    GridOracle,       // exhaustive 1e-2 grid with local refinement; d = 2 only
};

struct DefectProblem {
    ClassicalEnsemble ensemble;
    double eps = 0.0;  // allowed average output-marginal error, in [0,1)
    DefectBackend backend = DefectBackend::PenaltyGradient;
    std::uint64_t seed = 1;
    int restarts = 50;
    int threads = 0;  // 0: use BLINDCOMP_THREADS or hardware default
};

struct DefectSolution {
    StochasticMatrix channel;
    Bits value;              // I(C:C'|X) at the returned channel
    double feasibility_gap;  // measured sum_x p_x Delta(rho^x M, rho^x)
};

// I(C:C'|X) of the joint p(x) rho^x(c) M(c,c').
Bits defect_value(const ClassicalEnsemble& e, const StochasticMatrix& m);

// Average output-marginal error sum_x p_x Delta(rho^x M, rho^x).
double marginal_error(const ClassicalEnsemble& e, const StochasticMatrix& m);

DefectSolution minimize_defect(const DefectProblem& problem);

// Analytic gradient of defect_value in the channel entries, row-major.
// Exposed for the finite-difference verification tests.
std::vector<double> defect_gradient(const ClassicalEnsemble& e, const StochasticMatrix& m);

}  // namespace blindcomp
