#include "doracle/blackbox.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

namespace doracle {

namespace {

// Smallest base * 2^t (t >= 0) that is >= d. Exponent from log2 with an
// adjustment loop so boundary cases land exactly on the grid.
double snap_up(double d, double base) {
    assert(d >= base);
    int t = int(std::ceil(std::log2(d / base)));
    if (t < 0) t = 0;
    double e = base * std::exp2(double(t));
    while (e < d) e *= 2.0;
    while (t > 0 && e * 0.5 >= d) {
        e *= 0.5;
        --t;
    }
    return e;
}

}  // namespace

RoundedExactOracle::RoundedExactOracle(std::shared_ptr<const ExactDistances> exact)
    : exact_(std::move(exact)) {
    base_ = exact_->min_positive();
    const std::uint32_t n = exact_->n();
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            double d = (*exact_)(u, v);
            if (d > 0.0) set_.push_back(snap_up(d, base_));
        }
    std::sort(set_.begin(), set_.end());
    set_.erase(std::unique(set_.begin(), set_.end()), set_.end());
}

double RoundedExactOracle::query(Vertex u, Vertex v) const {
    double d = (*exact_)(u, v);
    if (d == 0.0) return 0.0;
    return snap_up(d, base_);
}

InflatedOracle::InflatedOracle(std::shared_ptr<const BlackBoxOracle> inner, double beta)
    : inner_(std::move(inner)), beta_(beta) {
    if (beta_ < 1.0) throw Error(Error::Code::BadInput, "inflation factor must be >= 1");
    set_.reserve(inner_->distance_set().size());
    for (double d : inner_->distance_set()) set_.push_back(beta_ * d);
}

std::string InflatedOracle::describe() const {
    std::ostringstream os;
    os << "inflated:" << beta_;
    return os.str();
}

BlackBoxSpec BlackBoxSpec::parse(const std::string& text) {
    BlackBoxSpec spec;
    if (text == "rounded") {
        spec.kind = Kind::rounded;
        return spec;
    }
    const std::string prefix = "inflated:";
    if (text.rfind(prefix, 0) == 0) {
        spec.kind = Kind::inflated;
        try {
            spec.beta = std::stod(text.substr(prefix.size()));
        } catch (...) {
            throw Error(Error::Code::BadInput, "bad inflation factor in '" + text + "'");
        }
        if (spec.beta < 1.0) throw Error(Error::Code::BadInput, "inflation factor must be >= 1");
        return spec;
    }
    throw Error(Error::Code::BadInput, "unknown black box '" + text + "' (want rounded | inflated:<beta>)");
}

std::string BlackBoxSpec::to_string() const {
    if (kind == Kind::rounded) return "rounded";
    std::ostringstream os;
    os << "inflated:" << beta;
    return os.str();
}

std::shared_ptr<const BlackBoxOracle> make_black_box(const BlackBoxSpec& spec, const Graph& g) {
    auto exact = std::make_shared<const ExactDistances>(ExactDistances::build(g));
    auto rounded = std::make_shared<const RoundedExactOracle>(exact);
    if (spec.kind == BlackBoxSpec::Kind::rounded) return rounded;
    return std::make_shared<const InflatedOracle>(rounded, spec.beta);
}

}  // namespace doracle
