#include "doracle/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "doracle/rng.hpp"
#include "json.hpp"

namespace doracle {

using nlohmann::json;

namespace {

constexpr double kRelTol = 1e-9;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    auto d = std::chrono::steady_clock::now() - start;
    return std::chrono::duration<double, std::milli>(d).count();
}

struct Summary {
    double max = 0.0, mean = 0.0, p99 = 0.0;
};

Summary summarize(std::vector<double> xs) {
    Summary s;
    if (xs.empty()) return s;
    std::sort(xs.begin(), xs.end());
    s.max = xs.back();
    double total = 0.0;
    for (double x : xs) total += x;
    s.mean = total / double(xs.size());
    s.p99 = xs[std::size_t(0.99 * double(xs.size() - 1))];
    return s;
}

// Distances from each queried source, computed lazily, one Dijkstra per
// source.
class ExactChecker {
public:
    explicit ExactChecker(const Graph& g) : g_(g), rows_(g.n) {}

    double operator()(Vertex u, Vertex v) {
        if (rows_[u].empty()) rows_[u] = dijkstra_from(g_, u);
        return rows_[u][v];
    }

private:
    const Graph& g_;
    std::vector<std::vector<double>> rows_;
};

double stretch_ceiling(Engine engine, std::uint32_t k, double eps) {
    if (engine == Engine::constant) return (2.0 + eps) * double(k);
    return 2.0 * double(k) - 1.0;
}

std::vector<std::pair<Vertex, Vertex>> sample_pairs(std::uint32_t n, std::uint32_t count,
                                                    std::uint64_t seed) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::uint64_t all = std::uint64_t(n) * (n - 1) / 2;
    if (all <= count) {
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        return pairs;
    }
    Rng rng(seed ^ 0x517cc1b727220a95ULL);
    pairs.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        Vertex u = Vertex(rng.below(n));
        Vertex v = Vertex(rng.below(n));
        while (v == u) v = Vertex(rng.below(n));
        pairs.emplace_back(u, v);
    }
    return pairs;
}

}  // namespace

int cmd_build(const BuildOptions& opt, std::ostream& out) {
    Graph g = load_graph(opt.graph_path);
    Engine engine = parse_engine(opt.engine);
    BlackBoxSpec bb = BlackBoxSpec::parse(opt.blackbox);

    auto start = std::chrono::steady_clock::now();
    OracleBundle bundle = build_bundle(std::move(g), engine, opt.k, opt.eps, bb, opt.seed);
    double build_ms = elapsed_ms(start);

    std::vector<std::uint8_t> bytes = serialize_bundle(bundle);
    if (!opt.out_path.empty()) {
        std::ofstream f(opt.out_path, std::ios::binary);
        if (!f) throw Error(Error::Code::Io, "cannot write " + opt.out_path);
        f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
        if (!f) throw Error(Error::Code::Io, "write failed for " + opt.out_path);
    }

    json j{{"command", "build"},
           {"engine", engine_name(engine)},
           {"graph", opt.graph_path},
           {"n", bundle.n()},
           {"m", bundle.graph.m},
           {"k", opt.k},
           {"eps", bundle.eps},
           {"seed", opt.seed},
           {"sum_bunch_sizes", bundle.bunches().total_size()},
           {"archive_bytes", bytes.size()},
           {"build_ms", build_ms}};
    if (engine == Engine::constant) {
        j["blackbox"] = bb.to_string();
        j["comb_size"] = bundle.co->comb.values.size();
        j["distance_set_size"] = bundle.co->comb.sources.size();
    }
    if (!opt.out_path.empty()) j["out"] = opt.out_path;
    out << j.dump() << "\n";
    return 0;
}

namespace {

std::vector<std::pair<Vertex, Vertex>> read_pairs(const std::string& spec, std::uint32_t n) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    if (spec == "all-pairs") {
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        return pairs;
    }
    std::ifstream in(spec);
    if (!in) throw Error(Error::Code::Io, "cannot open pairs file " + spec);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream is(line);
        std::string first;
        if (!(is >> first)) continue;
        if (first[0] == '#') continue;
        long long u = -1, v = -1;
        try {
            u = std::stoll(first);
        } catch (...) {
            u = -1;
        }
        if (!(is >> v) || u < 0 || v < 0)
            throw Error(Error::Code::Parse,
                        spec + ":" + std::to_string(lineno) + ": expected 'u v'");
        if (u >= n || v >= n)
            throw Error(Error::Code::BadInput, spec + ":" + std::to_string(lineno) +
                                                   ": vertex out of range (n=" +
                                                   std::to_string(n) + ")");
        pairs.emplace_back(Vertex(u), Vertex(v));
    }
    return pairs;
}

}  // namespace

int cmd_query(const QueryOptions& opt, std::ostream& out) {
    OracleBundle bundle = read_archive(opt.archive_path);
    auto pairs = read_pairs(opt.pairs, bundle.n());

    std::optional<ExactChecker> exact;
    if (opt.exact_check) {
        if (bundle.n() > ExactDistances::kSizeGuard)
            throw Error(Error::Code::SizeGuard, "exact check limited to n <= 4096");
        exact.emplace(bundle.graph);
    }

    std::ofstream csv;
    if (!opt.csv_path.empty()) {
        csv.open(opt.csv_path);
        if (!csv) throw Error(Error::Code::Io, "cannot write " + opt.csv_path);
        csv << std::setprecision(17);
        csv << (opt.exact_check ? "u,v,estimate,probes,exact,stretch\n" : "u,v,estimate,probes\n");
    }

    for (auto [u, v] : pairs) {
        QueryStats stats;
        double est = bundle_query(bundle, u, v, &stats);
        json j{{"u", u}, {"v", v}, {"estimate", est}, {"probes", stats.total()}};
        if (exact) {
            double d = (*exact)(u, v);
            j["exact"] = d;
            if (d > 0.0)
                j["stretch"] = est / d;
            else
                j["stretch"] = nullptr;
        }
        out << j.dump() << "\n";
        if (csv.is_open()) {
            csv << u << "," << v << "," << est << "," << stats.total();
            if (exact) {
                double d = (*exact)(u, v);
                csv << "," << d << ",";
                if (d > 0.0) csv << (est / d);
            }
            csv << "\n";
        }
    }
    return 0;
}

int cmd_bench(const BenchOptions& opt, std::ostream& out) {
    std::ofstream csv;
    if (!opt.csv_path.empty()) {
        csv.open(opt.csv_path);
        if (!csv) throw Error(Error::Code::Io, "cannot write " + opt.csv_path);
        csv << "engine,n,m,k,eps,blackbox,seed,pairs,build_ms,archive_bytes,sum_bunch_sizes,"
               "max_stretch,mean_stretch,p99_stretch,max_probes,mean_probes,p99_probes,"
               "violations\n";
    }

    BlackBoxSpec bb = BlackBoxSpec::parse(opt.blackbox);
    bool any_violation = false;

    for (const std::string& engine_str : opt.engines) {
        Engine engine = parse_engine(engine_str);
        const std::vector<double> eps_list =
            engine == Engine::constant ? opt.epss : std::vector<double>{0.0};
        for (std::uint32_t k : opt.ks) {
            if (engine == Engine::constant && k < 4) continue;  // engine precondition
            for (double eps : eps_list) {
                for (std::uint64_t seed : opt.seeds) {
                    Graph g;
                    if (opt.gen) {
                        GenSpec spec = *opt.gen;
                        spec.seed = seed;
                        g = generate_graph(spec);
                    } else {
                        g = load_graph(opt.graph_path);
                    }
                    if (g.n > ExactDistances::kSizeGuard)
                        throw Error(Error::Code::SizeGuard,
                                    "bench exact checking limited to n <= 4096");

                    auto start = std::chrono::steady_clock::now();
                    OracleBundle bundle =
                        build_bundle(std::move(g), engine, k, eps, bb, seed);
                    double build_ms = elapsed_ms(start);
                    std::size_t archive_bytes = serialize_bundle(bundle).size();

                    ExactChecker exact(bundle.graph);
                    auto pairs = sample_pairs(bundle.n(), opt.sample, seed);
                    double ceiling = stretch_ceiling(engine, k, eps);

                    std::vector<double> stretches, probes;
                    std::size_t violations = 0;
                    for (auto [u, v] : pairs) {
                        QueryStats stats;
                        double est = bundle_query(bundle, u, v, &stats);
                        probes.push_back(double(stats.total()));
                        double d = exact(u, v);
                        if (est < d * (1.0 - kRelTol)) ++violations;
                        if (d > 0.0) {
                            double ratio = est / d;
                            stretches.push_back(ratio);
                            if (ratio > ceiling * (1.0 + kRelTol)) ++violations;
                        } else if (est > 0.0) {
                            ++violations;
                        }
                    }
                    Summary st = summarize(stretches);
                    Summary pr = summarize(probes);
                    if (violations > 0) any_violation = true;

                    json j{{"command", "bench"},
                           {"engine", engine_name(engine)},
                           {"n", bundle.n()},
                           {"m", bundle.graph.m},
                           {"k", k},
                           {"eps", bundle.eps},
                           {"blackbox", engine == Engine::constant ? bb.to_string() : ""},
                           {"seed", seed},
                           {"pairs", pairs.size()},
                           {"build_ms", build_ms},
                           {"archive_bytes", archive_bytes},
                           {"sum_bunch_sizes", bundle.bunches().total_size()},
                           {"stretch_ceiling", ceiling},
                           {"max_stretch", st.max},
                           {"mean_stretch", st.mean},
                           {"p99_stretch", st.p99},
                           {"max_probes", pr.max},
                           {"mean_probes", pr.mean},
                           {"p99_probes", pr.p99},
                           {"violations", violations}};
                    out << j.dump() << "\n";
                    if (csv.is_open()) {
                        csv << engine_name(engine) << "," << bundle.n() << "," << bundle.graph.m
                            << "," << k << "," << bundle.eps << ","
                            << (engine == Engine::constant ? bb.to_string() : "") << "," << seed
                            << "," << pairs.size() << "," << build_ms << "," << archive_bytes
                            << "," << bundle.bunches().total_size() << "," << st.max << ","
                            << st.mean << "," << st.p99 << "," << pr.max << "," << pr.mean << ","
                            << pr.p99 << "," << violations << "\n";
                    }
                }
            }
        }
    }
    return any_violation ? 1 : 0;
}

int cmd_generate(const GenerateOptions& opt, std::ostream& out) {
    Graph g = generate_graph(opt.spec);
    std::ostringstream comment;
    switch (opt.spec.model) {
        case GenSpec::Model::path: comment << "model=path n=" << opt.spec.n; break;
        case GenSpec::Model::grid:
            comment << "model=grid rows=" << opt.spec.rows << " cols=" << opt.spec.cols;
            break;
        case GenSpec::Model::gnm:
            comment << "model=gnm n=" << opt.spec.n << " m=" << opt.spec.m;
            break;
    }
    comment << " wmin=" << opt.spec.wmin << " wmax=" << opt.spec.wmax
            << " seed=" << opt.spec.seed;
    save_graph(g, opt.out_path, comment.str());
    json j{{"command", "generate"}, {"out", opt.out_path}, {"n", g.n}, {"m", g.m},
           {"seed", opt.spec.seed}};
    out << j.dump() << "\n";
    return 0;
}

}  // namespace doracle
