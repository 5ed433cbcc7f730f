#include "doracle/archive.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace doracle {

static_assert(std::endian::native == std::endian::little, "archive format assumes little-endian");
static_assert(sizeof(double) == 8, "archive format assumes IEEE-754 binary64");

namespace {

constexpr char kMagic[8] = {'D', 'O', 'R', 'A', 'C', 'L', 'E', '\0'};
constexpr std::uint32_t kVersion = 1;

struct Writer {
    std::vector<std::uint8_t> buf;

    void raw(const void* p, std::size_t len) {
        const auto* b = static_cast<const std::uint8_t*>(p);
        buf.insert(buf.end(), b, b + len);
    }
    void u8(std::uint8_t x) { raw(&x, 1); }
    void u32(std::uint32_t x) { raw(&x, 4); }
    void u64(std::uint64_t x) { raw(&x, 8); }
    void i32(std::int32_t x) { raw(&x, 4); }
    void f64(double x) { raw(&x, 8); }
};

struct Reader {
    const std::vector<std::uint8_t>& buf;
    std::size_t pos = 0;

    void raw(void* p, std::size_t len) {
        if (pos + len > buf.size())
            throw Error(Error::Code::BadArchive, "archive truncated");
        std::memcpy(p, buf.data() + pos, len);
        pos += len;
    }
    std::uint8_t u8() { std::uint8_t x; raw(&x, 1); return x; }
    std::uint32_t u32() { std::uint32_t x; raw(&x, 4); return x; }
    std::uint64_t u64() { std::uint64_t x; raw(&x, 8); return x; }
    std::int32_t i32() { std::int32_t x; raw(&x, 4); return x; }
    double f64() { double x; raw(&x, 8); return x; }
};

void write_graph(Writer& w, const Graph& g) {
    w.u32(g.n);
    w.u32(g.m);
    for (const auto& e : g.edges) {
        w.u32(e.u);
        w.u32(e.v);
        w.f64(e.w);
    }
}

Graph read_graph(Reader& r) {
    std::uint32_t n = r.u32();
    std::uint32_t m = r.u32();
    std::vector<Edge> edges(m);
    for (auto& e : edges) {
        e.u = r.u32();
        e.v = r.u32();
        e.w = r.f64();
    }
    return graph_from_edges(n, std::move(edges));
}

void write_levels(Writer& w, const LevelHierarchy& h) {
    w.u32(h.k);
    w.u32(std::uint32_t(h.level.size()));
    for (auto l : h.level) w.u32(l);
}

LevelHierarchy read_levels(Reader& r) {
    std::uint32_t k = r.u32();
    std::uint32_t n = r.u32();
    std::vector<std::uint32_t> level(n);
    for (auto& l : level) l = r.u32();
    return levels_from_assignment(std::move(level), k);
}

void write_pivots(Writer& w, const PivotTable& p) {
    w.u32(p.n);
    w.u32(p.k);
    for (std::size_t i = 0; i < p.pivot.size(); ++i) {
        w.u32(p.pivot[i]);
        w.f64(p.dist[i]);
    }
}

PivotTable read_pivots(Reader& r) {
    PivotTable p;
    p.n = r.u32();
    p.k = r.u32();
    std::size_t total = std::size_t(p.n) * p.k;
    p.pivot.resize(total);
    p.dist.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        p.pivot[i] = r.u32();
        p.dist[i] = r.f64();
    }
    return p;
}

void write_bunches(Writer& w, const BunchSet& b) {
    w.u32(std::uint32_t(b.map.size()));
    for (std::size_t u = 0; u < b.map.size(); ++u) {
        // Canonical member order keeps archives byte-reproducible.
        std::vector<std::pair<Vertex, double>> entries(b.map[u].begin(), b.map[u].end());
        std::sort(entries.begin(), entries.end());
        w.u32(std::uint32_t(entries.size()));
        for (const auto& [v, d] : entries) {
            w.u32(v);
            w.f64(d);
        }
        w.u32(std::uint32_t(b.dist_list[u].size()));
        for (double d : b.dist_list[u]) w.f64(d);
    }
}

BunchSet read_bunches(Reader& r) {
    BunchSet b;
    std::uint32_t n = r.u32();
    b.map.resize(n);
    b.dist_list.resize(n);
    for (std::uint32_t u = 0; u < n; ++u) {
        std::uint32_t cnt = r.u32();
        b.map[u].reserve(cnt);
        for (std::uint32_t i = 0; i < cnt; ++i) {
            Vertex v = r.u32();
            double d = r.f64();
            b.map[u][v] = d;
        }
        std::uint32_t lc = r.u32();
        b.dist_list[u].resize(lc);
        for (auto& d : b.dist_list[u]) d = r.f64();
    }
    return b;
}

void write_delta(Writer& w, const DeltaTable& d) {
    w.u32(d.n);
    w.u32(d.k);
    for (double x : d.d_) w.f64(x);
}

DeltaTable read_delta(Reader& r) {
    DeltaTable d;
    d.n = r.u32();
    d.k = r.u32();
    d.d_.resize(std::size_t(d.n) * (d.k - 2));
    for (auto& x : d.d_) x = r.f64();
    return d;
}

void write_plans(Writer& w, const SearchPlanSet& s) {
    w.u32(s.k);
    w.u32(s.leaf_len);
    w.u32(std::uint32_t(s.plans.size()));
    for (const auto& p : s.plans) {
        w.u8(p.trivial ? 1 : 0);
        w.u32(std::uint32_t(p.nodes.size()));
        for (const auto& nd : p.nodes) {
            w.i32(nd.i1);
            w.i32(nd.i2);
            w.i32(nd.i);
            w.i32(nd.j);
            w.i32(nd.on_fail);
            w.i32(nd.on_held);
        }
    }
}

SearchPlanSet read_plans(Reader& r) {
    SearchPlanSet s;
    s.k = r.u32();
    s.leaf_len = r.u32();
    s.plans.resize(r.u32());
    for (auto& p : s.plans) {
        p.trivial = r.u8() != 0;
        p.nodes.resize(r.u32());
        for (auto& nd : p.nodes) {
            nd.i1 = r.i32();
            nd.i2 = r.i32();
            nd.i = r.i32();
            nd.j = r.i32();
            nd.on_fail = r.i32();
            nd.on_held = r.i32();
        }
    }
    return s;
}

void write_comb(Writer& w, const EpsComb& c) {
    w.f64(c.eps);
    w.f64(c.alpha);
    w.u32(c.imax);
    w.u32(std::uint32_t(c.values.size()));
    for (double v : c.values) w.f64(v);
    w.u32(std::uint32_t(c.sources.size()));
    for (double v : c.sources) w.f64(v);
    for (std::uint32_t h : c.heads) w.u32(h);
}

EpsComb read_comb(Reader& r) {
    EpsComb c;
    c.eps = r.f64();
    c.alpha = r.f64();
    c.imax = r.u32();
    c.values.resize(r.u32());
    for (auto& v : c.values) v = r.f64();
    c.sources.resize(r.u32());
    for (auto& v : c.sources) v = r.f64();
    c.heads.resize(c.sources.size());
    for (auto& h : c.heads) h = r.u32();
    return c;
}

void write_pointers(Writer& w, const PointerIndex& p) {
    w.u32(std::uint32_t(p.at.size()));
    for (const auto& m : p.at) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> entries(m.begin(), m.end());
        std::sort(entries.begin(), entries.end());
        w.u32(std::uint32_t(entries.size()));
        for (const auto& [c, iu] : entries) {
            w.u32(c);
            w.u32(iu);
        }
    }
}

PointerIndex read_pointers(Reader& r) {
    PointerIndex p;
    p.at.resize(r.u32());
    for (auto& m : p.at) {
        std::uint32_t cnt = r.u32();
        m.reserve(cnt);
        for (std::uint32_t i = 0; i < cnt; ++i) {
            std::uint32_t c = r.u32();
            std::uint32_t iu = r.u32();
            m[c] = iu;
        }
    }
    return p;
}

}  // namespace

Engine parse_engine(const std::string& name) {
    if (name == "tz") return Engine::tz;
    if (name == "logk") return Engine::logk;
    if (name == "const") return Engine::constant;
    throw Error(Error::Code::BadInput, "unknown engine '" + name + "' (want tz | logk | const)");
}

std::string engine_name(Engine e) {
    switch (e) {
        case Engine::tz: return "tz";
        case Engine::logk: return "logk";
        case Engine::constant: return "const";
    }
    return "?";
}

OracleBundle build_bundle(Graph graph, Engine engine, std::uint32_t k, double eps,
                          const BlackBoxSpec& bb_spec, std::uint64_t seed) {
    if (k < 2) throw Error(Error::Code::BadInput, "k must be >= 2");
    OracleBundle b;
    b.engine = engine;
    b.k = k;
    b.eps = (engine == Engine::constant) ? eps : 0.0;
    b.seed = seed;
    b.graph = std::move(graph);
    b.bb_spec = bb_spec;
    switch (engine) {
        case Engine::tz:
            b.tz = build_tz_oracle(b.graph, k, seed);
            break;
        case Engine::logk: {
            LogkOracle o = build_logk_oracle(b.graph, k, seed);
            b.tz = std::move(o.tz);
            b.delta = std::move(o.delta);
            b.plans = std::move(o.plans);
            break;
        }
        case Engine::constant: {
            auto bb = make_black_box(bb_spec, b.graph);
            b.co = build_const_oracle(b.graph, k, eps, std::move(bb), seed);
            break;
        }
    }
    return b;
}

double bundle_query(const OracleBundle& b, Vertex u, Vertex v, QueryStats* stats) {
    if (u >= b.n() || v >= b.n()) throw Error(Error::Code::BadInput, "vertex out of range");
    switch (b.engine) {
        case Engine::tz:
            return dist_k(u, v, 0, b.tz.bunches, b.tz.pivots, stats);
        case Engine::logk:
            return bdist_k(u, v, b.plans.plans[u], b.tz.bunches, b.tz.pivots, stats);
        case Engine::constant:
            return query_const(u, v, *b.co, stats);
    }
    throw Error(Error::Code::BadInput, "bad engine");
}

std::vector<std::uint8_t> serialize_bundle(const OracleBundle& b) {
    Writer w;
    w.raw(kMagic, sizeof(kMagic));
    w.u32(kVersion);
    w.u8(std::uint8_t(b.engine));
    w.u32(b.k);
    w.f64(b.eps);
    w.u64(b.seed);
    write_graph(w, b.graph);

    if (b.engine == Engine::constant) {
        const ConstOracle& o = *b.co;
        w.u8(std::uint8_t(b.bb_spec.kind));
        w.f64(b.bb_spec.beta);
        write_levels(w, o.levels);
        write_pivots(w, o.pivots);
        write_bunches(w, o.bunches);
        w.u8(1);
        write_delta(w, o.delta);
        w.u8(0);  // no plans
        w.u8(1);
        write_comb(w, o.comb);
        write_pointers(w, o.pointers);
    } else {
        write_levels(w, b.tz.levels);
        write_pivots(w, b.tz.pivots);
        write_bunches(w, b.tz.bunches);
        bool has_delta = b.engine == Engine::logk && !b.delta.empty();
        w.u8(has_delta ? 1 : 0);
        if (has_delta) write_delta(w, b.delta);
        bool has_plans = b.engine == Engine::logk;
        w.u8(has_plans ? 1 : 0);
        if (has_plans) write_plans(w, b.plans);
        w.u8(0);  // no comb
    }
    return std::move(w.buf);
}

OracleBundle deserialize_bundle(const std::vector<std::uint8_t>& bytes) {
    Reader r{bytes};
    char magic[8];
    r.raw(magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw Error(Error::Code::BadArchive, "bad magic: not an oracle archive");
    std::uint32_t version = r.u32();
    if (version != kVersion)
        throw Error(Error::Code::BadArchive,
                    "unsupported archive version " + std::to_string(version));

    OracleBundle b;
    std::uint8_t engine = r.u8();
    if (engine > 2) throw Error(Error::Code::BadArchive, "bad engine tag");
    b.engine = Engine(engine);
    b.k = r.u32();
    b.eps = r.f64();
    b.seed = r.u64();
    b.graph = read_graph(r);

    if (b.engine == Engine::constant) {
        std::uint8_t kind = r.u8();
        if (kind > 1) throw Error(Error::Code::BadArchive, "bad black box tag");
        b.bb_spec.kind = BlackBoxSpec::Kind(kind);
        b.bb_spec.beta = r.f64();

        LevelHierarchy levels = read_levels(r);
        PivotTable pivots = read_pivots(r);
        BunchSet bunches = read_bunches(r);
        if (r.u8() != 1) throw Error(Error::Code::BadArchive, "missing growth table");
        DeltaTable delta = read_delta(r);
        if (r.u8() != 0) throw Error(Error::Code::BadArchive, "unexpected plans section");
        if (r.u8() != 1) throw Error(Error::Code::BadArchive, "missing comb section");
        EpsComb comb = read_comb(r);
        PointerIndex pointers = read_pointers(r);

        // Rebuild the derived pieces the archive does not carry.
        ConstOracle o;
        o.k = b.k;
        o.eps_public = b.eps;
        o.eps_work = clamp_comb_epsilon(b.eps / 2.0);
        o.seed = b.seed;
        o.levels = std::move(levels);
        o.pivots = std::move(pivots);
        o.bunches = std::move(bunches);
        o.delta = std::move(delta);
        o.prefix = build_prefix_argmax(o.delta);
        o.bb = make_black_box(b.bb_spec, b.graph);
        o.alpha_bb = black_box_alpha(*o.bb, b.k);
        o.alpha = (1.0 + o.eps_work) * o.alpha_bb;
        o.comb = std::move(comb);
        o.loop_cap = o.comb.imax;
        o.window = std::uint32_t(
            std::ceil(std::log(2.0 * o.alpha_bb) / std::log(1.0 + o.eps_work) - 1e-9));
        o.intervals = build_interval_sets(o.bunches);
        o.pointers = std::move(pointers);
        b.co = std::move(o);
    } else {
        b.tz.k = b.k;
        b.tz.seed = b.seed;
        b.tz.levels = read_levels(r);
        b.tz.pivots = read_pivots(r);
        b.tz.bunches = read_bunches(r);
        if (r.u8() == 1) b.delta = read_delta(r);
        if (r.u8() == 1) b.plans = read_plans(r);
        if (r.u8() != 0) throw Error(Error::Code::BadArchive, "unexpected comb section");
        if (b.engine == Engine::logk && b.plans.plans.empty())
            throw Error(Error::Code::BadArchive, "missing plans section");
    }
    if (r.pos != bytes.size()) throw Error(Error::Code::BadArchive, "trailing bytes");
    return b;
}

void write_archive(const OracleBundle& b, const std::string& path) {
    std::vector<std::uint8_t> bytes = serialize_bundle(b);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Error::Code::Io, "cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw Error(Error::Code::Io, "write failed for " + path);
}

OracleBundle read_archive(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Error::Code::Io, "cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return deserialize_bundle(bytes);
}

}  // namespace doracle
