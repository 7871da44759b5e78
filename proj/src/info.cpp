#include "blindcomp/info.hpp"

#include <sstream>

namespace blindcomp {

Bits entropy(const Distribution& p) {
    double s = 0.0;
    for (int c = 0; c < p.dim(); ++c) s -= detail::xlog2x(p[c]);
    return Bits{s < 0.0 ? 0.0 : s};
}

double fidelity(const Distribution& p, const Distribution& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("fidelity: dimension mismatch");
    double s = 0.0;
    for (int c = 0; c < p.dim(); ++c) s += std::sqrt(p[c] * q[c]);
    return s > 1.0 ? 1.0 : s;
}

Bits kl_divergence(const Distribution& p, const Distribution& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("kl_divergence: dimension mismatch");
    double s = 0.0;
    for (int c = 0; c < p.dim(); ++c) {
        if (p[c] == 0.0) continue;
        if (q[c] == 0.0) {
            std::ostringstream msg;
            msg << "kl_divergence: supp(p) not within supp(q) at outcome " << c;
            throw DivergenceUndefined(msg.str());
        }
        s += p[c] * std::log2(p[c] / q[c]);
    }
    return Bits{s < 0.0 ? 0.0 : s};
}

Bits holevo_information(const ClassicalEnsemble& e) {
    double s = entropy(e.average());
    for (int x = 0; x < e.num_labels(); ++x) s -= e.prior()[x] * entropy(e.conditional(x));
    return Bits{s < 0.0 ? 0.0 : s};
}

Bits conditional_entropy_c_given_x(const ClassicalEnsemble& e) {
    double s = 0.0;
    for (int x = 0; x < e.num_labels(); ++x) s += e.prior()[x] * entropy(e.conditional(x));
    return Bits{s};
}

Bits cond_mutual_info_c_cp_given_x(const JointDistribution& t) {
    double total = 0.0;
    for (int x = 0; x < t.nx(); ++x) {
        const double px = t.label_mass(x);
        if (px <= 0.0) continue;
        const auto joint = t.cond_joint(x);
        const auto mc = t.cond_c_marginal(x);
        const auto mcp = t.cond_cp_marginal(x);
        double div = 0.0;
        for (int c = 0; c < t.nc(); ++c)
            for (int cp = 0; cp < t.ncp(); ++cp) {
                const double v = joint[static_cast<std::size_t>(c) * t.ncp() + cp];
                if (v > 0.0)
                    div += v * std::log2(v / (mc[static_cast<std::size_t>(c)] * mcp[static_cast<std::size_t>(cp)]));
            }
        total += px * div;
    }
    return Bits{total < 0.0 ? 0.0 : total};
}

}  // namespace blindcomp
