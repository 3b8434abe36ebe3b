#pragma once

#include <cstdint>

#include "skydiag/diagram.hpp"
#include "skydiag/gen.hpp"

namespace skydiag {

// Builds an exact diagram with the named backend. Valid names: qbase,
// qgraph, qscan, qsweep (quadrant); same quadrant backends for global;
// dbase, dsubset, dscan (dynamic). Throws std::invalid_argument for an
// unknown or incompatible name.
SkylineDiagram build_diagram(const Dataset& ds, DiagramKind kind, const std::string& algo,
                             int threads = 1);

struct BenchRecord {
    std::string algo;
    long long n = 0;
    int dim = 2;
    long long s = 0;       // 0 in distinct mode
    long long delta = 0;   // 0 for exact algorithms
    double ms = -1;        // wall time; -1 marks a failed run
    long long cells = 0;   // cell/subcell count
    long long classes = 0; // polyomino (result-class) count
    long long bytes = 0;   // stored result-set bytes
};

struct BenchSuite {
    std::vector<std::string> algos;
    std::vector<long long> ns;
    int dim = 2;
    long long s = 1024;
    bool distinct = false;
    Distribution dist = Distribution::Inde;
    std::vector<long long> deltas;  // consumed by bum/tdp rows only
    std::uint64_t seed = 0;
    int threads = 1;
};

// One record per (algo, n[, delta]) combination; failures land in the
// record rather than aborting the suite.
std::vector<BenchRecord> run_bench(const BenchSuite& suite);

// Diagram-lookup versus from-scratch evaluation of the same random
// queries; returns {lookup, scratch} records with total wall times.
std::pair<BenchRecord, BenchRecord> lookup_vs_scratch(long long n, long long s, int queries,
                                                      std::uint64_t seed);

void write_bench_csv(const std::vector<BenchRecord>& records, const std::string& path);

}  // namespace skydiag
