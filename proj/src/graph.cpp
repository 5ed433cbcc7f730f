#include "doracle/graph.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "doracle/rng.hpp"

namespace doracle {

namespace {

bool is_connected(const Graph& g) {
    if (g.n == 0) return false;
    std::vector<char> seen(g.n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::uint32_t reached = 1;
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (std::uint32_t e = g.offset[u]; e < g.offset[u + 1]; ++e) {
            Vertex v = g.adj[e];
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == g.n;
}

}  // namespace

Graph graph_from_edges(std::uint32_t n, std::vector<Edge> edges) {
    if (n == 0) throw Error(Error::Code::BadInput, "graph needs at least one vertex");
    for (auto& e : edges) {
        if (e.u >= n || e.v >= n)
            throw Error(Error::Code::BadInput, "edge endpoint out of range");
        if (e.u == e.v) throw Error(Error::Code::SelfLoop, "self-loop rejected");
        if (e.w < 0.0 || !std::isfinite(e.w))
            throw Error(Error::Code::NegativeWeight, "edge weight must be finite and >= 0");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });

    Graph g;
    g.n = n;
    g.m = std::uint32_t(edges.size());
    g.edges = std::move(edges);
    g.offset.assign(n + 1, 0);
    for (const auto& e : g.edges) {
        ++g.offset[e.u + 1];
        ++g.offset[e.v + 1];
    }
    for (std::uint32_t i = 0; i < n; ++i) g.offset[i + 1] += g.offset[i];
    g.adj.resize(std::size_t(2) * g.m);
    g.wgt.resize(std::size_t(2) * g.m);
    std::vector<std::uint32_t> cursor(g.offset.begin(), g.offset.end() - 1);
    for (const auto& e : g.edges) {
        g.adj[cursor[e.u]] = e.v;
        g.wgt[cursor[e.u]++] = e.w;
        g.adj[cursor[e.v]] = e.u;
        g.wgt[cursor[e.v]++] = e.w;
    }

    if (!is_connected(g)) throw Error(Error::Code::Disconnected, "graph is not connected");
    return g;
}

namespace {

struct LineTokens {
    std::vector<std::string> tok;
    std::vector<std::size_t> col;  // 1-based start column per token
};

LineTokens split_tokens(const std::string& line) {
    LineTokens out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.tok.push_back(line.substr(start, i - start));
        out.col.push_back(start + 1);
    }
    return out;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, std::size_t col,
                             const std::string& what) {
    std::ostringstream os;
    os << path << ":" << line << ":" << col << ": " << what;
    throw Error(Error::Code::Parse, os.str());
}

std::uint64_t parse_uint(const std::string& path, std::size_t line, std::size_t col,
                         const std::string& s) {
    char* end = nullptr;
    errno = 0;
    std::uint64_t v = std::strtoull(s.c_str(), &end, 10);
    if (errno != 0 || end == s.c_str() || *end != '\0' || s[0] == '-')
        parse_fail(path, line, col, "expected a non-negative integer, got '" + s + "'");
    return v;
}

double parse_weight(const std::string& path, std::size_t line, std::size_t col,
                    const std::string& s) {
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end == s.c_str() || *end != '\0')
        parse_fail(path, line, col, "expected a decimal weight, got '" + s + "'");
    return v;
}

}  // namespace

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Error::Code::Io, "cannot open " + path);

    std::string line;
    std::size_t lineno = 0;
    std::uint64_t n = 0, m = 0;
    bool have_header = false;
    std::vector<Edge> edges;

    while (std::getline(in, line)) {
        ++lineno;
        LineTokens t = split_tokens(line);
        if (t.tok.empty() || t.tok[0][0] == '#') continue;
        if (!have_header) {
            if (t.tok.size() != 2)
                parse_fail(path, lineno, 1, "header must be 'n m'");
            n = parse_uint(path, lineno, t.col[0], t.tok[0]);
            m = parse_uint(path, lineno, t.col[1], t.tok[1]);
            if (n == 0) parse_fail(path, lineno, t.col[0], "vertex count must be positive");
            have_header = true;
            continue;
        }
        if (t.tok.size() != 3)
            parse_fail(path, lineno, t.col.empty() ? 1 : t.col[0], "edge line must be 'u v w'");
        std::uint64_t u = parse_uint(path, lineno, t.col[0], t.tok[0]);
        std::uint64_t v = parse_uint(path, lineno, t.col[1], t.tok[1]);
        double w = parse_weight(path, lineno, t.col[2], t.tok[2]);
        if (u >= n) parse_fail(path, lineno, t.col[0], "vertex id out of range");
        if (v >= n) parse_fail(path, lineno, t.col[1], "vertex id out of range");
        if (u == v) throw Error(Error::Code::SelfLoop, path + ":" + std::to_string(lineno) + ": self-loop rejected");
        if (w < 0.0)
            throw Error(Error::Code::NegativeWeight,
                        path + ":" + std::to_string(lineno) + ": negative weight");
        edges.push_back({Vertex(u), Vertex(v), w});
        if (edges.size() > m)
            parse_fail(path, lineno, t.col[0], "more edge lines than declared in header");
    }
    if (!have_header) throw Error(Error::Code::Parse, path + ": empty input");
    if (edges.size() != m)
        throw Error(Error::Code::Parse, path + ": header declares " + std::to_string(m) +
                                            " edges, found " + std::to_string(edges.size()));
    return graph_from_edges(std::uint32_t(n), std::move(edges));
}

void save_graph(const Graph& g, const std::string& path, const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw Error(Error::Code::Io, "cannot write " + path);
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    out << g.n << " " << g.m << "\n";
    char buf[64];
    for (const auto& e : g.edges) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.w);
        out << e.u << " " << e.v << " " << buf << "\n";
    }
    if (!out) throw Error(Error::Code::Io, "write failed for " + path);
}

Graph generate_path(std::uint32_t n, double wmin, double wmax, std::uint64_t seed) {
    if (n == 0) throw Error(Error::Code::Infeasible, "path needs n >= 1");
    if (wmin <= 0 || wmax < wmin) throw Error(Error::Code::Infeasible, "bad weight range");
    Rng rng(seed);
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (std::uint32_t i = 0; i + 1 < n; ++i)
        edges.push_back({i, i + 1, rng.uniform(wmin, wmax)});
    return graph_from_edges(n, std::move(edges));
}

Graph generate_grid(std::uint32_t rows, std::uint32_t cols, double wmin, double wmax,
                    std::uint64_t seed) {
    if (rows == 0 || cols == 0) throw Error(Error::Code::Infeasible, "grid needs rows, cols >= 1");
    if (wmin <= 0 || wmax < wmin) throw Error(Error::Code::Infeasible, "bad weight range");
    Rng rng(seed);
    std::vector<Edge> edges;
    auto id = [cols](std::uint32_t r, std::uint32_t c) { return r * cols + c; };
    for (std::uint32_t r = 0; r < rows; ++r)
        for (std::uint32_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), rng.uniform(wmin, wmax)});
            if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), rng.uniform(wmin, wmax)});
        }
    return graph_from_edges(rows * cols, std::move(edges));
}

Graph generate_gnm(std::uint32_t n, std::uint32_t m, double wmin, double wmax,
                   std::uint64_t seed) {
    if (n == 0) throw Error(Error::Code::Infeasible, "gnm needs n >= 1");
    if (wmin <= 0 || wmax < wmin) throw Error(Error::Code::Infeasible, "bad weight range");
    if (n > 1 && m < n - 1) throw Error(Error::Code::Infeasible, "gnm needs m >= n-1");
    if (std::uint64_t(m) > std::uint64_t(n) * (n - 1) / 2)
        throw Error(Error::Code::Infeasible, "gnm needs m <= n(n-1)/2");

    Rng rng(seed);
    // Resample the whole edge set until connected.
    for (;;) {
        std::unordered_set<std::uint64_t> used;
        used.reserve(std::size_t(m) * 2);
        std::vector<Edge> edges;
        edges.reserve(m);
        while (edges.size() < m) {
            Vertex u = Vertex(rng.below(n));
            Vertex v = Vertex(rng.below(n));
            if (u == v) continue;
            if (u > v) std::swap(u, v);
            std::uint64_t key = (std::uint64_t(u) << 32) | v;
            if (!used.insert(key).second) continue;
            edges.push_back({u, v, rng.uniform(wmin, wmax)});
        }
        try {
            return graph_from_edges(n, std::move(edges));
        } catch (const Error& e) {
            if (e.code != Error::Code::Disconnected) throw;
        }
    }
}

Graph generate_graph(const GenSpec& spec) {
    switch (spec.model) {
        case GenSpec::Model::path:
            return generate_path(spec.n, spec.wmin, spec.wmax, spec.seed);
        case GenSpec::Model::grid:
            return generate_grid(spec.rows, spec.cols, spec.wmin, spec.wmax, spec.seed);
        case GenSpec::Model::gnm:
            return generate_gnm(spec.n, spec.m, spec.wmin, spec.wmax, spec.seed);
    }
    throw Error(Error::Code::BadInput, "unknown generator model");
}

std::vector<double> dijkstra_from(const Graph& g, Vertex s) {
    if (s >= g.n) throw Error(Error::Code::BadInput, "source out of range");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.n, inf);
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[s] = 0.0;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (std::uint32_t e = g.offset[u]; e < g.offset[u + 1]; ++e) {
            Vertex v = g.adj[e];
            double nd = d + g.wgt[e];
            if (nd < dist[v]) {
                dist[v] = nd;
                pq.emplace(nd, v);
            }
        }
    }
    return dist;
}

ExactDistances ExactDistances::build(const Graph& g) {
    if (g.n > kSizeGuard)
        throw Error(Error::Code::SizeGuard,
                    "exact distance matrix limited to n <= " + std::to_string(kSizeGuard));
    ExactDistances out;
    out.n_ = g.n;
    out.d_.resize(std::size_t(g.n) * g.n);
    for (Vertex s = 0; s < g.n; ++s) {
        std::vector<double> row = dijkstra_from(g, s);
        std::copy(row.begin(), row.end(), out.d_.begin() + std::size_t(s) * g.n);
    }
    return out;
}

double ExactDistances::min_positive() const {
    double best = 0.0;
    for (double x : d_)
        if (x > 0.0 && (best == 0.0 || x < best)) best = x;
    return best;
}

double ExactDistances::max_value() const {
    double best = 0.0;
    for (double x : d_)
        if (x > best) best = x;
    return best;
}

}  // namespace doracle
