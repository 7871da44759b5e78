#include "blindcomp/distribution.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>

namespace blindcomp {

Rat rat_from_string(const std::string& text) {
    const auto bad = [&] { return InvalidInput("cannot parse rational: '" + text + "'"); };
    if (text.empty()) throw bad();

    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        try {
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            if (den == 0) throw bad();
            return Rat(num, den);
        } catch (const std::exception&) {
            throw bad();
        }
    }

    // Finite decimal with optional exponent; every such literal is rational.
    std::string s = text;
    bool negative = false;
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = s[pos++] == '-';

    std::string digits;
    long long exp10 = 0;
    bool seen_digit = false, seen_dot = false;
    for (; pos < s.size(); ++pos) {
        const char ch = s[pos];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
            seen_digit = true;
            if (seen_dot) --exp10;
        } else if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((ch == 'e' || ch == 'E') && seen_digit) {
            try {
                exp10 += std::stoll(s.substr(pos + 1));
            } catch (const std::exception&) {
                throw bad();
            }
            pos = s.size() - 1;
            break;
        } else {
            throw bad();
        }
    }
    if (!seen_digit) throw bad();

    BigInt num(digits.empty() ? "0" : digits);
    if (negative) num = -num;
    BigInt scale = 1;
    for (long long i = 0; i < std::llabs(exp10); ++i) scale *= 10;
    return exp10 >= 0 ? Rat(num * scale, 1) : Rat(num, scale);
}

std::vector<int> sample(const Distribution& p, std::uint64_t seed, std::size_t n) {
    std::vector<double> cdf(static_cast<std::size_t>(p.dim()));
    double acc = 0.0;
    for (int c = 0; c < p.dim(); ++c) {
        acc += p[c];
        cdf[static_cast<std::size_t>(c)] = acc;
    }
    cdf.back() = 1.0;

    Rng rng(seed);
    std::vector<int> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = rng.uniform01();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        out[k] = static_cast<int>(it - cdf.begin());
    }
    return out;
}

Distribution ClassicalEnsemble::average() const {
    std::vector<double> avg(static_cast<std::size_t>(dim()), 0.0);
    for (int x = 0; x < num_labels(); ++x)
        for (int c = 0; c < dim(); ++c) avg[static_cast<std::size_t>(c)] += priors_[x] * conditional(x)[c];
    return Distribution(std::move(avg));
}

ClassicalEnsemble uniform_staircase_ensemble(int d) {
    return ClassicalEnsemble(uniform<double>(2), {uniform<double>(d), staircase<double>(d)});
}

JointDistribution::JointDistribution(int nx, int nc, int ncp, std::vector<double> table)
    : nx_(nx), nc_(nc), ncp_(ncp), table_(std::move(table)) {
    if (nx_ < 1 || nc_ < 1 || ncp_ < 1) throw InvalidInput("joint distribution: axis sizes must be >= 1");
    if (table_.size() != static_cast<std::size_t>(nx_) * nc_ * ncp_)
        throw InvalidInput("joint distribution: table size does not match axes");
    for (double v : table_)
        if (v < 0.0) throw InvalidInput("joint distribution: negative entry");
    if (!detail::sums_to_one(table_)) throw InvalidInput("joint distribution: entries do not sum to 1");
}

JointDistribution JointDistribution::from_channel(const ClassicalEnsemble& e,
                                                  const std::vector<std::vector<double>>& rows) {
    const int d = e.dim();
    if (static_cast<int>(rows.size()) != d) throw DimensionMismatch("from_channel: wrong channel size");
    std::vector<double> table(static_cast<std::size_t>(e.num_labels()) * d * d, 0.0);
    for (int x = 0; x < e.num_labels(); ++x)
        for (int c = 0; c < d; ++c) {
            if (static_cast<int>(rows[static_cast<std::size_t>(c)].size()) != d)
                throw DimensionMismatch("from_channel: ragged channel row");
            for (int cp = 0; cp < d; ++cp)
                table[(static_cast<std::size_t>(x) * d + c) * d + cp] =
                    e.prior()[x] * e.conditional(x)[c] * rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(cp)];
        }
    return JointDistribution(e.num_labels(), d, d, std::move(table));
}

double JointDistribution::label_mass(int x) const {
    double s = 0.0;
    for (int c = 0; c < nc_; ++c)
        for (int cp = 0; cp < ncp_; ++cp) s += at(x, c, cp);
    return s;
}

std::vector<double> JointDistribution::cond_joint(int x) const {
    const double px = label_mass(x);
    std::vector<double> t(static_cast<std::size_t>(nc_) * ncp_, 0.0);
    if (px <= 0.0) return t;
    for (int c = 0; c < nc_; ++c)
        for (int cp = 0; cp < ncp_; ++cp) t[static_cast<std::size_t>(c) * ncp_ + cp] = at(x, c, cp) / px;
    return t;
}

std::vector<double> JointDistribution::cond_c_marginal(int x) const {
    const auto t = cond_joint(x);
    std::vector<double> m(static_cast<std::size_t>(nc_), 0.0);
    for (int c = 0; c < nc_; ++c)
        for (int cp = 0; cp < ncp_; ++cp) m[static_cast<std::size_t>(c)] += t[static_cast<std::size_t>(c) * ncp_ + cp];
    return m;
}

std::vector<double> JointDistribution::cond_cp_marginal(int x) const {
    const auto t = cond_joint(x);
    std::vector<double> m(static_cast<std::size_t>(ncp_), 0.0);
    for (int c = 0; c < nc_; ++c)
        for (int cp = 0; cp < ncp_; ++cp) m[static_cast<std::size_t>(cp)] += t[static_cast<std::size_t>(c) * ncp_ + cp];
    return m;
}

Distribution random_distribution(Rng& rng, int d) {
    std::vector<double> xs(static_cast<std::size_t>(d));
    double total = 0.0;
    for (double& x : xs) {
        x = rng.exponential();
        total += x;
    }
    for (double& x : xs) x /= total;
    // Normalization leaves a ~1 ulp residue; fold it into the largest entry.
    const double residue = 1.0 - detail::neumaier_sum(xs);
    *std::max_element(xs.begin(), xs.end()) += residue;
    return Distribution(std::move(xs));
}

RatDistribution random_rat_distribution(Rng& rng, int d, int resolution) {
    std::vector<Rat> xs(static_cast<std::size_t>(d));
    BigInt total = 0;
    std::vector<int> raw(static_cast<std::size_t>(d));
    for (int& r : raw) {
        r = 1 + rng.uniform_int(resolution);
        total += r;
    }
    for (int c = 0; c < d; ++c) xs[static_cast<std::size_t>(c)] = Rat(BigInt(raw[static_cast<std::size_t>(c)]), total);
    return RatDistribution(std::move(xs));
}

std::vector<int> random_permutation(Rng& rng, int d) {
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = d - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(rng.uniform_int(i + 1))]);
    return perm;
}

}  // namespace blindcomp
