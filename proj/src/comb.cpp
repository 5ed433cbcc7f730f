#include "doracle/comb.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace doracle {

double clamp_comb_epsilon(double eps) {
    if (eps <= 0.0) throw Error(Error::Code::BadInput, "epsilon must be positive");
    return std::min(eps, 0.5);
}

namespace {

// Largest double x with x * f <= s, for f > 1. The rounded quotient can be
// off by an ulp in either direction; nudge until the product test is tight.
double div_floor(double s, double f) {
    double x = s / f;
    while (x * f > s) x = std::nextafter(x, 0.0);
    for (;;) {
        double up = std::nextafter(x, std::numeric_limits<double>::infinity());
        if (up * f <= s)
            x = up;
        else
            break;
    }
    return x;
}

std::vector<double> checked_sorted_positive(const std::vector<double>& values,
                                            const char* who) {
    std::vector<double> s(values);
    for (double x : s)
        if (!(x > 0.0) || !std::isfinite(x))
            throw Error(Error::Code::BadInput, std::string(who) + ": values must be positive and finite");
    if (!std::is_sorted(s.begin(), s.end()))
        throw Error(Error::Code::BadInput, std::string(who) + ": values must be sorted ascending");
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

}  // namespace

std::vector<double> comb_epsilon(const std::vector<double>& sorted_values, double eps) {
    if (eps <= 0.0) throw Error(Error::Code::BadInput, "epsilon must be positive");
    std::vector<double> s = checked_sorted_positive(sorted_values, "comb_epsilon");
    if (s.empty()) throw Error(Error::Code::BadInput, "comb_epsilon: empty input");

    const double f = 1.0 + eps;
    std::vector<double> kept;  // descending while building
    kept.push_back(s.back());
    std::ptrdiff_t r = std::ptrdiff_t(s.size()) - 2;
    while (r >= 0) {
        double cand = div_floor(kept.back(), f);
        double next = std::min(s[std::size_t(r)], cand);
        kept.push_back(next);
        while (r >= 0 && s[std::size_t(r)] >= next) --r;
    }
    std::reverse(kept.begin(), kept.end());
    return kept;
}

std::uint32_t chain_length(double eps, double alpha) {
    if (eps <= 0.0) throw Error(Error::Code::BadInput, "epsilon must be positive");
    if (alpha < 1.0) throw Error(Error::Code::BadInput, "alpha must be >= 1");
    // The ratio can land an ulp above an exact integer; nudge before ceil.
    double ratio = std::log(2.0 * alpha * (1.0 + eps)) / std::log(1.0 + eps);
    return std::uint32_t(std::ceil(ratio - 1e-9));
}

std::vector<double> expand_chains(const std::vector<double>& sources, double eps, double alpha) {
    std::vector<double> s = checked_sorted_positive(sources, "expand_chains");
    const std::uint32_t imax = chain_length(eps, alpha);
    std::vector<double> out;
    out.reserve(s.size() * (imax + 1));
    for (double d : s) {
        double v = d;
        out.push_back(v);
        for (std::uint32_t i = 0; i < imax; ++i) {
            v /= (1.0 + eps);
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    // Merge chain values that coincide up to rounding.
    std::vector<double> dedup;
    for (double x : out)
        if (dedup.empty() || x > dedup.back() * (1.0 + 1e-12)) dedup.push_back(x);
    return dedup;
}

double tau_lookup(const std::vector<double>& sorted_values, double x) {
    if (sorted_values.empty() || x < sorted_values.front())
        throw Error(Error::Code::BadInput, "tau_lookup: value below the set minimum");
    auto it = std::upper_bound(sorted_values.begin(), sorted_values.end(), x);
    return *(it - 1);
}

EpsComb build_eps_comb(const std::vector<double>& sources, double eps, double alpha) {
    EpsComb c;
    c.eps = eps;
    c.alpha = alpha;
    c.imax = chain_length(eps, alpha);
    c.sources = checked_sorted_positive(sources, "build_eps_comb");
    if (c.sources.empty()) return c;  // degenerate: oracle can never be queried

    c.values = comb_epsilon(expand_chains(c.sources, eps, alpha), eps);
    c.heads.reserve(c.sources.size());
    for (double d : c.sources) {
        auto it = std::lower_bound(c.values.begin(), c.values.end(), d);
        assert(it != c.values.end());
        std::uint32_t idx = std::uint32_t(it - c.values.begin());
        assert(*it < d * (1.0 + eps) && "head must (1+eps)-cover its source");
        assert(idx >= c.imax && "head must carry its full chain of predecessors");
        c.heads.push_back(idx);
    }
    return c;
}

std::uint32_t EpsComb::head_of(double source_value) const {
    auto it = std::lower_bound(sources.begin(), sources.end(), source_value);
    if (it == sources.end() || !(std::abs(*it - source_value) <= 1e-12 * std::abs(*it)))
        throw Error(Error::Code::BadInput, "head_of: value is not a member of the source set");
    return heads[std::size_t(it - sources.begin())];
}

}  // namespace doracle
