#pragma once

// Entropies, divergences and distances for classical states.  All information
// quantities are in bits (base-2 logarithms).

#include <cmath>

#include "blindcomp/distribution.hpp"

namespace blindcomp {

// A real carrying units of bits.
struct Bits {
    double value{};
    operator double() const { return value; }
};

namespace detail {
// x log2 x with the 0 log 0 := 0 convention.
inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }
}  // namespace detail

// Shannon entropy, in [0, log2 d].
Bits entropy(const Distribution& p);

// Half L1 distance; exact under the rational backend.
template <class T>
T trace_distance(const BasicDistribution<T>& p, const BasicDistribution<T>& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("trace_distance: dimension mismatch");
    T s(0);
    for (int c = 0; c < p.dim(); ++c) {
        T diff = p[c] - q[c];
        if (diff < T(0)) diff = -diff;
        s += diff;
    }
    return s / T(2);
}

// Bhattacharyya coefficient sum_c sqrt(p_c q_c); 1 iff p = q.
double fidelity(const Distribution& p, const Distribution& q);

// Relative entropy; requires supp(p) within supp(q).
Bits kl_divergence(const Distribution& p, const Distribution& q);

// S(sum_x p_x rho^x) - sum_x p_x S(rho^x); equals I(X:C).
Bits holevo_information(const ClassicalEnsemble& e);

// sum_x p_x S(rho^x).
Bits conditional_entropy_c_given_x(const ClassicalEnsemble& e);

// I(C:C'|X) via the expansion sum_x p(x) D(tau^x_CC' || tau^x_C x tau^x_C').
Bits cond_mutual_info_c_cp_given_x(const JointDistribution& t);

}  // namespace blindcomp
