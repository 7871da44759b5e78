#include "blindcomp/bounds.hpp"

#include <cmath>
#include <sstream>

namespace blindcomp {

double RateBound::component(const std::string& name) const {
    for (const auto& c : components)
        if (c.name == name) return c.value;
    throw InvalidInput("RateBound: unknown component '" + name + "'");
}

Bits genlowb_bound(const ClassicalEnsemble& e, const StochasticMatrix& m, double eps) {
    if (m.dim() != e.dim()) throw DimensionMismatch("genlowb_bound: channel/ensemble dimension mismatch");
    const Distribution avg = e.average();
    double diag_mass = 0.0;
    for (int c = 0; c < m.dim(); ++c) diag_mass += avg[c] * m.at(c, c);
    const double scx = conditional_entropy_c_given_x(e);
    return Bits{scx - 2.0 - (1.0 - diag_mass + eps) * std::log2(static_cast<double>(e.dim()))};
}

RateBound mixedlb_rate(const ClassicalEnsemble& e, Bits defect, double eps) {
    if (defect.value < 0.0) throw InvalidInput("mixedlb_rate: defect must be non-negative");
    const double holevo = holevo_information(e);
    const double penalty = eps * std::log2(static_cast<double>(e.num_labels()));

    RateBound rb;
    rb.epsilon = eps;
    rb.components = {
        {"defect", defect.value},
        {"holevo", holevo},
        {"eps_penalty", -penalty},
        {"constant", -1.0},
    };
    rb.value = defect.value + holevo - penalty - 1.0;
    rb.vacuous = rb.value < 0.0;
    return rb;
}

namespace {

double tv(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

std::vector<double> outer(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

}  // namespace

PinskerChain pinskerlb_chain(const ClassicalEnsemble& e, const JointDistribution& tau, double eps) {
    if (e.num_labels() != 2) throw UnsupportedInput("pinskerlb_chain: two-state ensembles only");
    if (std::abs(e.prior()[0] - 0.5) > 1e-12)
        throw UnsupportedInput("pinskerlb_chain: labels must be equiprobable");
    if (tau.nx() != 2 || tau.nc() != e.dim() || tau.ncp() != e.dim())
        throw DimensionMismatch("pinskerlb_chain: joint axes do not match the ensemble");

    std::vector<std::vector<double>> joint(2), mc(2), mcp(2), ideal(2);
    for (int x = 0; x < 2; ++x) {
        joint[static_cast<std::size_t>(x)] = tau.cond_joint(x);
        mc[static_cast<std::size_t>(x)] = tau.cond_c_marginal(x);
        mcp[static_cast<std::size_t>(x)] = tau.cond_cp_marginal(x);
        ideal[static_cast<std::size_t>(x)] = e.conditional(x).probs();
        if (tv(mc[static_cast<std::size_t>(x)], ideal[static_cast<std::size_t>(x)]) > 1e-9)
            throw ConstraintViolated("pinskerlb_chain: tau^x_C must equal rho^x");
    }
    const double marginal_err = 0.5 * (tv(mcp[0], ideal[0]) + tv(mcp[1], ideal[1]));
    if (marginal_err > eps + 1e-12) {
        std::ostringstream msg;
        msg << "pinskerlb_chain: output marginal error " << marginal_err << " exceeds eps = " << eps;
        throw ConstraintViolated(msg.str());
    }

    const double defect = cond_mutual_info_c_cp_given_x(tau);
    const double delta0 = tv(joint[0], outer(mc[0], mcp[0]));
    const double delta1 = tv(joint[1], outer(mc[1], mcp[1]));
    const double joint_gap = tv(joint[0], joint[1]);
    const double tau_product_gap = tv(outer(mc[0], mcp[0]), outer(mc[1], mcp[1]));
    const double ideal_product_gap = tv(outer(ideal[0], ideal[0]), outer(ideal[1], ideal[1]));
    const double one_copy_gap = tv(ideal[0], ideal[1]);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    PinskerChain chain;
    chain.sqrt_defect = std::sqrt(defect);
    chain.pinsker_rhs = std::sqrt(delta0 * delta0 + delta1 * delta1);
    chain.cloning_distance = (delta0 + delta1) * inv_sqrt2;
    chain.output_gap = (tau_product_gap - joint_gap) * inv_sqrt2;
    chain.input_gap = (ideal_product_gap - joint_gap - 2.0 * eps) * inv_sqrt2;
    chain.two_copy_gap = (ideal_product_gap - one_copy_gap - 2.0 * eps) * inv_sqrt2;

    const double slack = 1e-9;
    const double seq[6] = {chain.sqrt_defect,  chain.pinsker_rhs, chain.cloning_distance,
                           chain.output_gap,   chain.input_gap,   chain.two_copy_gap};
    for (int i = 0; i + 1 < 6; ++i)
        if (seq[i] + slack < seq[i + 1]) {
            std::ostringstream msg;
            msg << "pinskerlb_chain: step " << i << " -> " << i + 1 << " reversed (" << seq[i]
                << " < " << seq[i + 1] << ")";
            throw InvariantViolation(msg.str());
        }
    return chain;
}

Rat cloning_defect_bound(const RatDistribution& r0, const RatDistribution& r1, const Rat& eps) {
    const Rat two_copy = trace_distance(product(r0, r0), product(r1, r1));
    const Rat one_copy = trace_distance(r0, r1);
    Rat gain = two_copy - one_copy - 2 * eps;
    if (gain < 0) gain = 0;
    return gain * gain / 2;
}

Theorem1Result theorem1_pipeline(int d) {
    if (d < 2) throw InvalidInput("theorem1_pipeline: dimension must be >= 2");
    const double logd = std::log2(static_cast<double>(d));
    const double d4 = static_cast<double>(d) * d * d * d;

    Theorem1Result r;
    r.eps = 1.0 / (24.0 * d4 * logd);
    r.diag_lower = 1.0 - 24.0 * d4 * r.eps;      // = 1 - 1/log2 d
    r.cond_entropy_lower = logd - 1.0;
    // Copy bound with the worst-case diagonal: S(C|X) - 2 - (1/log d + eps) log d,
    // coarsened by budgeting eps * log d <= 1 and applying the S(C|X) bound.
    r.defect_term = logd - 5.0;

    const ClassicalEnsemble ensemble = uniform_staircase_ensemble(d);
    r.holevo = holevo_information(ensemble);
    r.cond_entropy = conditional_entropy_c_given_x(ensemble);

    RateBound rb;
    rb.epsilon = r.eps;
    rb.components = {
        {"defect", r.defect_term},
        {"holevo", 0.0},           // Holevo >= 0 is all the assembly uses
        {"eps_penalty", -1.0},     // eps * log2|X| <= 1 budget
        {"constant", -1.0},
    };
    rb.value = r.defect_term + 0.0 - 1.0 - 1.0;  // = log2 d - 7
    rb.vacuous = rb.value < 0.0;
    r.bound = rb;
    return r;
}

}  // namespace blindcomp
