#include "blindcomp/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace blindcomp {

namespace {

// Level of a probability mass: i with mass in ((1-delta)^i, (1-delta)^{i-1}],
// half-open below and closed above; masses <= (1-delta)^u land at u+1.
// The log-ratio estimate is corrected by direct power comparisons so exact
// boundary masses resolve deterministically.
int level_of(double mass, double delta, int u) {
    if (mass <= 0.0) return u + 1;
    const double base = 1.0 - delta;
    if (mass <= std::pow(base, u)) return u + 1;
    int lvl = static_cast<int>(std::floor(std::log(mass) / std::log(base))) + 1;
    lvl = std::clamp(lvl, 1, u);
    while (lvl > 1 && mass > std::pow(base, lvl - 1)) --lvl;
    while (lvl < u && mass <= std::pow(base, lvl)) ++lvl;
    return lvl;
}

}  // namespace

BucketProtocol BucketProtocol::build(const Distribution& rho, const Distribution& sigma,
                                     double delta, double gamma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("build_protocol: dimension mismatch");
    if (!(delta > 0.0 && delta < 0.5)) throw InvalidInput("build_protocol: delta must lie in (0, 1/2)");
    if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidInput("build_protocol: gamma must lie in (0, 1)");

    BucketProtocol p;
    p.d_ = rho.dim();
    p.delta_ = delta;
    p.gamma_ = gamma;

    const double ratio = std::log(static_cast<double>(p.d_) / gamma) / std::log(1.0 / (1.0 - delta));
    int u = static_cast<int>(std::ceil(ratio));
    if (u < 1) u = 1;
    // Guard the ceiling against log rounding: need (1-delta)^u <= gamma/d.
    while (std::pow(1.0 - delta, u) > gamma / p.d_) ++u;
    p.u_ = u;

    p.buckets_.assign(static_cast<std::size_t>(u + 1) * (u + 1), {});
    p.bucket_of_.resize(static_cast<std::size_t>(p.d_));
    for (int a = 0; a < p.d_; ++a) {
        const int i = level_of(rho[a], delta, u);
        const int j = level_of(sigma[a], delta, u);
        p.bucket_of_[static_cast<std::size_t>(a)] = {i, j};
        p.buckets_[static_cast<std::size_t>(i - 1) * (u + 1) + (j - 1)].push_back(a);
    }
    return p;
}

std::pair<int, int> BucketProtocol::encode(int symbol) const {
    if (symbol < 0 || symbol >= d_) throw InvalidInput("encode: symbol outside the alphabet");
    return bucket_of_[static_cast<std::size_t>(symbol)];
}

const std::vector<int>& BucketProtocol::bucket(int i, int j) const {
    if (i < 1 || i > u_ + 1 || j < 1 || j > u_ + 1) throw InvalidInput("bucket: index out of range");
    return buckets_[static_cast<std::size_t>(i - 1) * (u_ + 1) + (j - 1)];
}

int BucketProtocol::decode(int i, int j, std::uint64_t seed) const {
    const std::vector<int>& b = bucket(i, j);
    if (b.empty()) throw ProtocolError("decode: empty bucket");
    Rng rng(seed);
    return b[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(b.size())))];
}

double BucketProtocol::truncation_mass(const Distribution& input) const {
    if (input.dim() != d_) throw DimensionMismatch("truncation_mass: dimension mismatch");
    double s = 0.0;
    for (int a = 0; a < d_; ++a)
        if (bucket_of_[static_cast<std::size_t>(a)].first == u_ + 1) s += input[a];
    return s;
}

ProtocolReport protocol_report(const Distribution& rho, const Distribution& sigma, double delta,
                               double gamma, std::uint64_t seed, std::int64_t mc_samples) {
    const BucketProtocol p = BucketProtocol::build(rho, sigma, delta, gamma);
    const int d = p.dim();
    const int u = p.levels();

    const double bits_sent = 2.0 * std::log2(static_cast<double>(u + 1));
    const double rate_bound = 2.0 * std::log2(std::log2(static_cast<double>(d) / gamma)) +
                              2.0 * std::log2(1.0 / delta) + 3.0;
    Distribution induced_rho = p.induced_output(rho);
    Distribution induced_sigma = p.induced_output(sigma);

    ProtocolReport r{d,
                     delta,
                     gamma,
                     u,
                     bits_sent,
                     static_cast<int>(std::ceil(bits_sent - 1e-12)),
                     rate_bound,
                     std::move(induced_rho),
                     std::move(induced_sigma),
                     0.0,
                     0.0,
                     p.truncation_mass(rho),
                     p.truncation_mass(sigma),
                     delta / (2.0 * (1.0 - delta)),
                     0,
                     0.0,
                     0.0,
                     0.0,
                     0.0};
    r.local_error_rho = trace_distance(rho, r.induced_rho);
    r.local_error_sigma = trace_distance(sigma, r.induced_sigma);

    if (r.bits_sent > r.rate_bound + 1e-9) {
        std::ostringstream msg;
        msg << "protocol_report: bits_sent " << r.bits_sent << " exceeds rate bound " << r.rate_bound;
        throw InvariantViolation(msg.str());
    }
    if (r.local_error_rho > delta + gamma + 1e-9 || r.local_error_sigma > delta + gamma + 1e-9)
        throw InvariantViolation("protocol_report: local error exceeds delta + gamma");

    r.mc_samples = mc_samples;
    if (mc_samples > 0) {
        // TV via its maximizing event: Delta = P_input(S) - P_output(S) with
        // S = {a : input(a) > induced(a)}.  Both probabilities estimated from
        // the same simulated copies gives a mean of +/-1/0 differences with a
        // clean binomial-style standard error.
        const auto mc_estimate = [&](const Distribution& input, const Distribution& induced,
                                     std::uint64_t stream, double& est, double& sd) {
            std::vector<char> in_s(static_cast<std::size_t>(d));
            for (int a = 0; a < d; ++a) in_s[static_cast<std::size_t>(a)] = input[a] > induced[a] ? 1 : 0;

            std::vector<double> cdf(static_cast<std::size_t>(d));
            double acc = 0.0;
            for (int a = 0; a < d; ++a) {
                acc += input[a];
                cdf[static_cast<std::size_t>(a)] = acc;
            }
            cdf.back() = 1.0;

            Rng rng = Rng(seed).fork(stream);
            double sum = 0.0, sum_sq = 0.0;
            for (std::int64_t k = 0; k < mc_samples; ++k) {
                const double uu = rng.uniform01();
                const int a = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), uu) - cdf.begin());
                const auto [bi, bj] = p.encode(a);
                const std::vector<int>& bucket = p.bucket(bi, bj);
                const int ap = bucket[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(bucket.size())))];
                const double diff = static_cast<double>(in_s[static_cast<std::size_t>(a)]) -
                                    static_cast<double>(in_s[static_cast<std::size_t>(ap)]);
                sum += diff;
                sum_sq += diff * diff;
            }
            const double n = static_cast<double>(mc_samples);
            est = sum / n;
            const double var = std::max(0.0, sum_sq / n - est * est);
            sd = std::sqrt(var / n);
        };
        mc_estimate(rho, r.induced_rho, 1, r.mc_error_rho, r.mc_sigma_rho);
        mc_estimate(sigma, r.induced_sigma, 2, r.mc_error_sigma, r.mc_sigma_sigma);
    }
    return r;
}

KiErrors ki_error_functions(const Distribution& rho, const Distribution& sigma,
                            const BucketProtocol& protocol) {
    if (rho.dim() != protocol.dim() || sigma.dim() != protocol.dim())
        throw DimensionMismatch("ki_error_functions: dimension mismatch");
    const int d = protocol.dim();

    KiErrors k{};
    k.degenerate = d == 1;

    const Distribution rho_out = protocol.induced_output(rho);
    const Distribution sigma_out = protocol.induced_output(sigma);
    k.f = 1.0 - 0.5 * fidelity(rho, rho_out) - 0.5 * fidelity(sigma, sigma_out);
    if (k.f < 0.0) k.f = 0.0;

    // 1 - lambda = sum over buckets of the mean of r(a) = (p(a)+q(a))/2.
    double keep = 0.0;
    for (int a = 0; a < d; ++a) {
        const auto [i, j] = protocol.encode(a);
        const double r = 0.5 * rho[a] + 0.5 * sigma[a];
        keep += r / static_cast<double>(protocol.bucket(i, j).size());
    }
    k.lambda = 1.0 - keep;
    if (k.lambda < 0.0) k.lambda = 0.0;
    if (k.lambda > 1.0) k.lambda = 1.0;

    if (k.degenerate || k.lambda == 0.0) {
        k.g = 0.0;
    } else {
        const double h = -detail::xlog2x(k.lambda) - detail::xlog2x(1.0 - k.lambda);
        k.g = h + k.lambda * std::log2(static_cast<double>(d - 1));
    }
    return k;
}

}  // namespace blindcomp
