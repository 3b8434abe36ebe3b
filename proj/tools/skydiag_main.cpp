#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "skydiag/bench.hpp"
#include "skydiag/csv.hpp"
#include "skydiag/dynamic.hpp"
#include "skydiag/quadrant.hpp"

namespace {

using namespace skydiag;

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("SKYDIAG_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("SKYDIAG_SEED must be an unsigned integer");
        }
    }
    return flag_seed;
}

// One machine-readable JSON array of ids per query.
void print_ids(const ResultSet& ids) {
    std::cout << nlohmann::json(ids).dump() << "\n";
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

QueryPoint parse_point(const std::string& text, int expected_dim) {
    QueryPoint q;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw UsageError("--point: empty coordinate");
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(cur, &pos);
        } catch (const std::exception&) {
            throw UsageError("--point: '" + cur + "' is not an integer");
        }
        if (pos != cur.size()) throw UsageError("--point: '" + cur + "' is not an integer");
        q.coords.push_back(v);
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',')
            flush();
        else
            cur.push_back(ch);
    }
    flush();
    if (static_cast<int>(q.coords.size()) != expected_dim)
        throw UsageError("--point: expected " + std::to_string(expected_dim) +
                         " comma-separated integers");
    return q;
}

void check_algo(DiagramKind kind, const std::string& algo) {
    static const std::vector<std::string> quadrant{"qbase", "qgraph", "qscan", "qsweep"};
    static const std::vector<std::string> global{"qbase", "qgraph", "qscan"};
    static const std::vector<std::string> dynamic{"dbase", "dsubset", "dscan"};
    const std::vector<std::string>* allowed = nullptr;
    switch (kind) {
        case DiagramKind::Quadrant: allowed = &quadrant; break;
        case DiagramKind::Global: allowed = &global; break;
        case DiagramKind::Dynamic: allowed = &dynamic; break;
    }
    if (std::find(allowed->begin(), allowed->end(), algo) == allowed->end())
        throw std::invalid_argument("unknown algorithm '" + algo + "' for type " +
                                    to_string(kind));
}

int run(int argc, char** argv) {
    CLI::App app{"skyline diagram toolkit"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads for parallel stages");

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic dataset CSV");
    std::string gen_out, gen_dist = "inde";
    long long gen_n = 100, gen_s = 1024;
    int gen_d = 2;
    bool gen_distinct = false;
    std::uint64_t gen_seed = 0;
    gen_cmd->add_option("--out", gen_out, "output CSV path")->required();
    gen_cmd->add_option("--dist", gen_dist, "inde|corr|anti");
    gen_cmd->add_option("--n", gen_n, "point count");
    gen_cmd->add_option("--d", gen_d, "dimensions");
    gen_cmd->add_option("--s", gen_s, "per-axis domain size");
    gen_cmd->add_flag("--distinct", gen_distinct, "all-distinct per-axis coordinates");
    gen_cmd->add_option("--seed", gen_seed, "generator seed (SKYDIAG_SEED overrides)");

    // build
    auto* build_cmd = app.add_subcommand("build", "precompute a skyline diagram");
    std::string build_in, build_out, build_type = "quadrant", build_algo = "qscan";
    build_cmd->add_option("--in", build_in, "input dataset CSV")->required();
    build_cmd->add_option("--out", build_out, "output diagram JSON")->required();
    build_cmd->add_option("--type", build_type, "quadrant|global|dynamic");
    build_cmd->add_option("--algo", build_algo, "backend algorithm");

    // query
    auto* query_cmd = app.add_subcommand("query", "answer a skyline query from a diagram");
    std::string query_diagram, query_point;
    query_cmd->add_option("--diagram", query_diagram, "diagram JSON path")->required();
    query_cmd->add_option("--point", query_point, "comma-separated query coordinates")->required();

    // approx
    auto* approx_cmd = app.add_subcommand("approx", "build a delta-bounded approximate diagram");
    std::string approx_in, approx_out, approx_type = "quadrant", approx_algo = "bum";
    long long approx_delta = 0;
    approx_cmd->add_option("--in", approx_in, "input dataset CSV")->required();
    approx_cmd->add_option("--out", approx_out, "output diagram JSON")->required();
    approx_cmd->add_option("--type", approx_type, "quadrant|global|dynamic");
    approx_cmd->add_option("--algo", approx_algo, "bum|tdp");
    approx_cmd->add_option("--delta", approx_delta, "per-tile result cap")->required();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run measurement suites, emit CSV");
    std::string bench_out, bench_dist = "inde";
    std::vector<std::string> bench_algos{"qbase", "qscan"};
    std::vector<long long> bench_ns{200};
    std::vector<long long> bench_deltas;
    long long bench_s = 1024;
    int bench_d = 2;
    bool bench_distinct = false, bench_lookup = false;
    long long bench_lookup_n = 100000;
    std::uint64_t bench_seed = 0;
    bench_cmd->add_option("--out", bench_out, "output CSV path")->required();
    bench_cmd->add_option("--algos", bench_algos, "algorithms to run")->delimiter(',');
    bench_cmd->add_option("--ns", bench_ns, "point counts")->delimiter(',');
    bench_cmd->add_option("--d", bench_d, "dimensions");
    bench_cmd->add_option("--s", bench_s, "per-axis domain size");
    bench_cmd->add_flag("--distinct", bench_distinct, "distinct-coordinate regime");
    bench_cmd->add_option("--dist", bench_dist, "inde|corr|anti");
    bench_cmd->add_option("--deltas", bench_deltas, "delta values for bum/tdp")->delimiter(',');
    bench_cmd->add_flag("--lookup-compare", bench_lookup,
                        "also time diagram lookups against from-scratch queries");
    bench_cmd->add_option("--lookup-n", bench_lookup_n, "dataset size for --lookup-compare");
    bench_cmd->add_option("--seed", bench_seed, "generator seed (SKYDIAG_SEED overrides)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // any usage problem exits 1
    }

    if (gen_cmd->parsed()) {
        GenConfig cfg;
        cfg.dist = distribution_from_string(gen_dist);
        cfg.n = gen_n;
        cfg.dim = gen_d;
        cfg.domain = gen_s;
        cfg.distinct = gen_distinct;
        cfg.seed = effective_seed(gen_seed);
        Dataset ds = generate(cfg);
        write_dataset_csv(ds, gen_out);
        std::cout << nlohmann::json{{"written", gen_out}, {"n", ds.points.size()}}.dump() << "\n";
        return 0;
    }

    if (build_cmd->parsed()) {
        DiagramKind kind = diagram_kind_from_string(build_type);
        check_algo(kind, build_algo);
        Dataset ds = read_dataset_csv(build_in);
        SkylineDiagram d = build_diagram(ds, kind, build_algo, threads);
        save_diagram(d, build_out);
        std::cout << nlohmann::json{{"written", build_out},
                                    {"cells", d.partition.cell_count()},
                                    {"classes", d.partition.classes.size()}}
                         .dump()
                  << "\n";
        return 0;
    }

    if (query_cmd->parsed()) {
        AnyDiagram d = load_diagram(query_diagram);
        int dim = std::holds_alternative<SkylineDiagram>(d)
                      ? std::get<SkylineDiagram>(d).dim
                      : std::get<ApproxSkylineDiagram>(d).dim;
        QueryPoint q = parse_point(query_point, dim);
        ResultSet ids = std::holds_alternative<SkylineDiagram>(d)
                            ? std::get<SkylineDiagram>(d).query(q)
                            : std::get<ApproxSkylineDiagram>(d).query(q);
        print_ids(ids);
        return 0;
    }

    if (approx_cmd->parsed()) {
        DiagramKind kind = diagram_kind_from_string(approx_type);
        if (approx_algo != "bum" && approx_algo != "tdp")
            throw std::invalid_argument("unknown algorithm '" + approx_algo + "'");
        Dataset ds = read_dataset_csv(approx_in);
        ApproxSkylineDiagram ad;
        ad.kind = kind;
        ad.dim = ds.dim;
        ad.dataset = ds;
        CellResultGrid cells;
        switch (kind) {
            case DiagramKind::Quadrant: {
                CellGrid grid = build_cell_grid(ds);
                ad.axes = grid.axes;
                cells = qscan(ds, grid);
                break;
            }
            case DiagramKind::Global: {
                CellGrid grid = build_cell_grid(ds);
                ad.axes = grid.axes;
                cells = global_cells(ds, grid, QuadrantAlgo::Scan, threads);
                break;
            }
            case DiagramKind::Dynamic: {
                SubcellGrid grid = build_subcell_grid(ds);
                ad.axes = grid.axes;
                cells = dbase(ds, grid, threads);
                break;
            }
        }
        ad.tiling = approx_algo == "bum" ? bum(cells, approx_delta) : tdp(cells, approx_delta);
        save_diagram(ad, approx_out);
        std::cout << nlohmann::json{{"written", approx_out},
                                    {"tiles", ad.tiling.tiles.size()},
                                    {"precision", precision(ad.tiling, cells)}}
                         .dump()
                  << "\n";
        return 0;
    }

    if (bench_cmd->parsed()) {
        BenchSuite suite;
        suite.algos = bench_algos;
        suite.ns = bench_ns;
        suite.dim = bench_d;
        suite.s = bench_s;
        suite.distinct = bench_distinct;
        suite.dist = distribution_from_string(bench_dist);
        suite.deltas = bench_deltas;
        suite.seed = effective_seed(bench_seed);
        suite.threads = threads;
        std::vector<BenchRecord> records = run_bench(suite);
        if (bench_lookup) {
            auto [lookup, scratch] = lookup_vs_scratch(bench_lookup_n, bench_s, 1000, suite.seed);
            records.push_back(lookup);
            records.push_back(scratch);
        }
        write_bench_csv(records, bench_out);
        std::cout << nlohmann::json{{"written", bench_out}, {"records", records.size()}}.dump()
                  << "\n";
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const InfeasibleDeltaError& e) {
        std::cerr << "infeasible delta: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatchError& e) {
        std::cerr << "dimension mismatch: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
