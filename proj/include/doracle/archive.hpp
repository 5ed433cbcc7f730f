#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "doracle/blackbox.hpp"
#include "doracle/const_oracle.hpp"
#include "doracle/graph.hpp"
#include "doracle/logk_oracle.hpp"
#include "doracle/tz_core.hpp"

namespace doracle {

enum class Engine { tz, logk, constant };

Engine parse_engine(const std::string& name);
std::string engine_name(Engine e);

/// A built oracle plus everything needed to persist and re-open it. The
/// graph itself is stored so that archives are self-contained (exact checks
/// and black-box reconstruction need it).
struct OracleBundle {
    Engine engine = Engine::tz;
    std::uint32_t k = 2;
    double eps = 0.0;  // 0 for engines that do not take an epsilon
    std::uint64_t seed = 0;
    Graph graph;

    // tz / logk engines
    TzOracle tz;
    DeltaTable delta;     // logk, k >= 3
    SearchPlanSet plans;  // logk

    // constant-time engine
    BlackBoxSpec bb_spec;
    std::optional<ConstOracle> co;

    std::uint32_t n() const { return graph.n; }
    const BunchSet& bunches() const { return co ? co->bunches : tz.bunches; }
};

OracleBundle build_bundle(Graph graph, Engine engine, std::uint32_t k, double eps,
                          const BlackBoxSpec& bb_spec, std::uint64_t seed);

double bundle_query(const OracleBundle& b, Vertex u, Vertex v, QueryStats* stats = nullptr);

// Versioned little-endian container; see README for the layout.
std::vector<std::uint8_t> serialize_bundle(const OracleBundle& b);
OracleBundle deserialize_bundle(const std::vector<std::uint8_t>& bytes);

void write_archive(const OracleBundle& b, const std::string& path);
OracleBundle read_archive(const std::string& path);

}  // namespace doracle
