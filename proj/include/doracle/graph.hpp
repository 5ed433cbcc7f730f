#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace doracle {

using Vertex = std::uint32_t;

struct Error : std::runtime_error {
    enum class Code {
        Parse,
        NegativeWeight,
        SelfLoop,
        Disconnected,
        Infeasible,
        SizeGuard,
        NotApplicable,
        BadInput,
        Io,
        BadArchive,
    };
    Code code;
    Error(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    double w = 0.0;
};

/// Undirected weighted graph in compressed-adjacency form. Immutable after
/// construction; `edges` keeps the canonical (u < v, sorted) edge list.
struct Graph {
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    std::vector<std::uint32_t> offset;  // size n+1
    std::vector<Vertex> adj;            // size 2m
    std::vector<double> wgt;            // size 2m
    std::vector<Edge> edges;            // size m, canonical order

    std::uint32_t degree(Vertex u) const { return offset[u + 1] - offset[u]; }
};

// Validates (no self-loops, non-negative weights, connected) and builds CSR.
Graph graph_from_edges(std::uint32_t n, std::vector<Edge> edges);

// Text format: "n m" header, then m lines "u v w"; '#' starts a comment line.
Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path, const std::string& header_comment = "");

struct GenSpec {
    enum class Model { path, grid, gnm };
    Model model = Model::gnm;
    std::uint32_t n = 0;     // path, gnm
    std::uint32_t m = 0;     // gnm
    std::uint32_t rows = 0;  // grid
    std::uint32_t cols = 0;  // grid
    double wmin = 1.0;
    double wmax = 1.0;
    std::uint64_t seed = 0;
};

Graph generate_graph(const GenSpec& spec);
Graph generate_path(std::uint32_t n, double wmin, double wmax, std::uint64_t seed);
Graph generate_grid(std::uint32_t rows, std::uint32_t cols, double wmin, double wmax, std::uint64_t seed);
Graph generate_gnm(std::uint32_t n, std::uint32_t m, double wmin, double wmax, std::uint64_t seed);

// Exact single-source shortest path distances (binary-heap Dijkstra).
std::vector<double> dijkstra_from(const Graph& g, Vertex s);

/// Full pairwise distance matrix; the test oracle for every stretch bound.
/// Guarded to n <= 4096 to keep the quadratic footprint at desk scale.
class ExactDistances {
public:
    static constexpr std::uint32_t kSizeGuard = 4096;

    static ExactDistances build(const Graph& g);

    double operator()(Vertex u, Vertex v) const { return d_[std::size_t(u) * n_ + v]; }
    std::uint32_t n() const { return n_; }

    // Smallest strictly positive entry (0 when none exists).
    double min_positive() const;
    double max_value() const;

private:
    std::uint32_t n_ = 0;
    std::vector<double> d_;
};

}  // namespace doracle
