#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "doracle/bench.hpp"

using namespace doracle;

int main(int argc, char** argv) {
    CLI::App app{"Approximate distance oracles: build, query, and benchmark"};
    app.require_subcommand(1);

    BuildOptions build_opt;
    auto* build = app.add_subcommand("build", "Build an oracle and write an archive");
    build->add_option("--graph", build_opt.graph_path, "Input graph file")->required();
    build->add_option("--k", build_opt.k, "Number of sample levels (>= 2)")->required();
    build->add_option("--eps", build_opt.eps, "Epsilon for the const engine (0, 1]");
    build->add_option("--engine", build_opt.engine, "tz | logk | const")->required();
    build->add_option("--blackbox", build_opt.blackbox, "rounded | inflated:<beta>");
    build->add_option("--seed", build_opt.seed, "Sampling seed");
    build->add_option("--out", build_opt.out_path, "Archive output path")->required();

    QueryOptions query_opt;
    auto* query = app.add_subcommand("query", "Answer distance queries from an archive");
    query->add_option("--archive", query_opt.archive_path, "Oracle archive")->required();
    query->add_option("--pairs", query_opt.pairs, "Pairs file ('u v' per line) or 'all-pairs'")
        ->required();
    query->add_flag("--exact-check", query_opt.exact_check,
                    "Also report exact distance and stretch");
    query->add_option("--csv", query_opt.csv_path, "Also write results as CSV");

    BenchOptions bench_opt;
    std::string bench_gen;
    std::uint32_t bench_n = 256, bench_m = 2048, bench_rows = 16, bench_cols = 16;
    double bench_wmin = 1.0, bench_wmax = 100.0;
    auto* bench = app.add_subcommand("bench", "Sweep configurations, verify stretch ceilings");
    bench->add_option("--graph", bench_opt.graph_path, "Fixed input graph file");
    bench->add_option("--gen", bench_gen, "Generate per seed: path | grid | gnm");
    bench->add_option("--n", bench_n, "Generator: vertex count");
    bench->add_option("--m", bench_m, "Generator: edge count (gnm)");
    bench->add_option("--rows", bench_rows, "Generator: grid rows");
    bench->add_option("--cols", bench_cols, "Generator: grid cols");
    bench->add_option("--wmin", bench_wmin, "Generator: minimum weight");
    bench->add_option("--wmax", bench_wmax, "Generator: maximum weight");
    bench->add_option("--k", bench_opt.ks, "k values")->delimiter(',');
    bench->add_option("--eps", bench_opt.epss, "epsilon values (const engine)")->delimiter(',');
    bench->add_option("--engine", bench_opt.engines, "engines: tz,logk,const")->delimiter(',');
    bench->add_option("--blackbox", bench_opt.blackbox, "rounded | inflated:<beta>");
    bench->add_option("--seeds", bench_opt.seeds, "seeds")->delimiter(',');
    bench->add_option("--sample", bench_opt.sample, "sampled pairs per configuration");
    bench->add_option("--csv", bench_opt.csv_path, "Also write the report as CSV");

    GenerateOptions gen_opt;
    std::string gen_model = "gnm";
    auto* gen = app.add_subcommand("generate", "Write a generated graph to a file");
    gen->add_option("--model", gen_model, "path | grid | gnm")->required();
    gen->add_option("--n", gen_opt.spec.n, "vertex count (path, gnm)");
    gen->add_option("--m", gen_opt.spec.m, "edge count (gnm)");
    gen->add_option("--rows", gen_opt.spec.rows, "grid rows");
    gen->add_option("--cols", gen_opt.spec.cols, "grid cols");
    gen->add_option("--wmin", gen_opt.spec.wmin, "minimum weight");
    gen->add_option("--wmax", gen_opt.spec.wmax, "maximum weight");
    gen->add_option("--seed", gen_opt.spec.seed, "seed");
    gen->add_option("--out", gen_opt.out_path, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) return cmd_build(build_opt, std::cout);
        if (*query) return cmd_query(query_opt, std::cout);
        if (*bench) {
            if (!bench_gen.empty()) {
                GenSpec spec;
                if (bench_gen == "path") spec.model = GenSpec::Model::path;
                else if (bench_gen == "grid") spec.model = GenSpec::Model::grid;
                else if (bench_gen == "gnm") spec.model = GenSpec::Model::gnm;
                else throw Error(Error::Code::BadInput, "unknown generator '" + bench_gen + "'");
                spec.n = bench_n;
                spec.m = bench_m;
                spec.rows = bench_rows;
                spec.cols = bench_cols;
                spec.wmin = bench_wmin;
                spec.wmax = bench_wmax;
                bench_opt.gen = spec;
            } else if (bench_opt.graph_path.empty()) {
                throw Error(Error::Code::BadInput, "bench needs --graph or --gen");
            }
            return cmd_bench(bench_opt, std::cout);
        }
        if (*gen) {
            if (gen_model == "path") gen_opt.spec.model = GenSpec::Model::path;
            else if (gen_model == "grid") gen_opt.spec.model = GenSpec::Model::grid;
            else if (gen_model == "gnm") gen_opt.spec.model = GenSpec::Model::gnm;
            else throw Error(Error::Code::BadInput, "unknown model '" + gen_model + "'");
            return cmd_generate(gen_opt, std::cout);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
