#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "doracle/archive.hpp"
#include "doracle/graph.hpp"

namespace doracle {

struct BuildOptions {
    std::string graph_path;
    std::uint32_t k = 2;
    double eps = 1.0;
    std::string engine = "tz";
    std::string blackbox = "rounded";
    std::uint64_t seed = 0;
    std::string out_path;
};

struct QueryOptions {
    std::string archive_path;
    std::string pairs;  // file path or "all-pairs"
    bool exact_check = false;
    std::string csv_path;
};

struct BenchOptions {
    std::string graph_path;             // fixed input graph, or ...
    std::optional<GenSpec> gen;         // ... generated per seed
    std::vector<std::uint32_t> ks{2};
    std::vector<double> epss{1.0};
    std::vector<std::string> engines{"tz"};
    std::string blackbox = "rounded";
    std::vector<std::uint64_t> seeds{0};
    std::uint32_t sample = 10000;
    std::string csv_path;
};

struct GenerateOptions {
    GenSpec spec;
    std::string out_path;
};

// Each command prints JSON lines to `out` and returns a process exit code;
// cmd_bench returns nonzero when a hard stretch ceiling is violated.
int cmd_build(const BuildOptions& opt, std::ostream& out);
int cmd_query(const QueryOptions& opt, std::ostream& out);
int cmd_bench(const BenchOptions& opt, std::ostream& out);
int cmd_generate(const GenerateOptions& opt, std::ostream& out);

}  // namespace doracle
