#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "doracle/graph.hpp"

namespace doracle {

/// Pluggable constant-query estimate source. Estimates never underestimate,
/// never exceed stretch_bound() * d, and (for d > 0) always come from the
/// finite sorted distance_set().
class BlackBoxOracle {
public:
    virtual ~BlackBoxOracle() = default;
    virtual double query(Vertex u, Vertex v) const = 0;
    virtual const std::vector<double>& distance_set() const = 0;
    // Worst-case ratio of an estimate to the true distance.
    virtual double stretch_bound() const = 0;
    virtual std::string describe() const = 0;
};

// The per-k stretch parameter: estimates are within alpha * k * d.
inline double black_box_alpha(const BlackBoxOracle& o, std::uint32_t k) {
    return std::max(1.0, o.stretch_bound() / double(k));
}

/// Reference black box: exact distances snapped up to the power-of-two grid
/// anchored at the smallest positive pairwise distance. Quadratic
/// preprocessing; fine at desk scale.
class RoundedExactOracle : public BlackBoxOracle {
public:
    explicit RoundedExactOracle(std::shared_ptr<const ExactDistances> exact);

    double query(Vertex u, Vertex v) const override;
    const std::vector<double>& distance_set() const override { return set_; }
    double stretch_bound() const override { return 2.0; }
    std::string describe() const override { return "rounded"; }

    double grid_base() const { return base_; }

private:
    std::shared_ptr<const ExactDistances> exact_;
    double base_ = 0.0;
    std::vector<double> set_;
};

/// Scales another black box by a constant factor >= 1; stress path for the
/// large-stretch refinement loop and the no-pointer fallback.
class InflatedOracle : public BlackBoxOracle {
public:
    InflatedOracle(std::shared_ptr<const BlackBoxOracle> inner, double beta);

    double query(Vertex u, Vertex v) const override { return beta_ * inner_->query(u, v); }
    const std::vector<double>& distance_set() const override { return set_; }
    double stretch_bound() const override { return beta_ * inner_->stretch_bound(); }
    std::string describe() const override;

    double beta() const { return beta_; }

private:
    std::shared_ptr<const BlackBoxOracle> inner_;
    double beta_ = 1.0;
    std::vector<double> set_;
};

/// Serializable identity of a black box ("rounded" or "inflated:<beta>").
struct BlackBoxSpec {
    enum class Kind { rounded, inflated };
    Kind kind = Kind::rounded;
    double beta = 1.0;

    static BlackBoxSpec parse(const std::string& text);
    std::string to_string() const;
};

std::shared_ptr<const BlackBoxOracle> make_black_box(const BlackBoxSpec& spec, const Graph& g);

}  // namespace doracle
