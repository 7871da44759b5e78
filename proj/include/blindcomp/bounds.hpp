#pragma once

// Rate lower-bound calculators: the Fano-based copy bound, the single-letter
// rate bound, the Pinsker chain for two equiprobable states, and the full
// uniform/staircase separation pipeline.

#include <string>
#include <vector>

#include "blindcomp/distribution.hpp"
#include "blindcomp/info.hpp"
#include "blindcomp/stochastic.hpp"

namespace blindcomp {

// A bits-per-copy lower bound with its additive breakdown.  The component
// values are signed and sum to `value` (within 1e-12), so a violated bound
// can be attributed to the term that produced it.
struct RateBound {
    struct Component {
        std::string name;
        double value;
    };

    double value{};
    double epsilon{};
    bool vacuous{};  // value < 0; reported, never clamped
    std::vector<Component> components;

    double component(const std::string& name) const;
};

// S(C|X) - 2 - (1 - sum_c p_C(c) M_{c,c} + eps) log2 d.
Bits genlowb_bound(const ClassicalEnsemble& e, const StochasticMatrix& m, double eps);

// defect + I(X:C) - eps log2|X| - 1, with component breakdown.
RateBound mixedlb_rate(const ClassicalEnsemble& e, Bits defect, double eps);

// The six successive lower bounds relating the information defect to cloning
// and distinguishability gaps, for a two-state equiprobable ensemble.
struct PinskerChain {
    double sqrt_defect;       // (a) sqrt I(C:C'|X)
    double pinsker_rhs;       // (b) sqrt(Delta_0^2 + Delta_1^2)
    double cloning_distance;  // (c) (Delta_0 + Delta_1)/sqrt 2
    double output_gap;        // (d) product-output vs joint-output distance gap
    double input_gap;         // (e) ideal two-copy distance, protocol outputs, -2eps
    double two_copy_gap;      // (f) ideal two-copy vs one-copy gain, -2eps
};

PinskerChain pinskerlb_chain(const ClassicalEnsemble& e, const JointDistribution& tau, double eps);

// Exact-rational form of the (f)-squared defect bound for two equiprobable
// states: (max(0, D(r0 x r0, r1 x r1) - D(r0, r1) - 2 eps))^2 / 2.
Rat cloning_defect_bound(const RatDistribution& r0, const RatDistribution& r1, const Rat& eps);

// Full separation pipeline for the uniform/staircase ensemble at dimension d:
// eps = 1/(24 d^4 log2 d), diagonal bound 1 - 1/log2 d, defect term
// log2 d - 5, final rate bound log2 d - 7.
struct Theorem1Result {
    RateBound bound;        // value = log2 d - 7 by component algebra
    double eps;             // 1/(24 d^4 log2 d)
    double diag_lower;      // 1 - 24 d^4 eps = 1 - 1/log2 d
    double defect_term;     // log2 d - 5
    double cond_entropy_lower;  // log2 d - 1
    double holevo;          // computed Holevo information (<= 1)
    double cond_entropy;    // computed S(C|X)
};

Theorem1Result theorem1_pipeline(int d);

}  // namespace blindcomp
