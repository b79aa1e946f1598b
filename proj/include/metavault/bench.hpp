#pragma once

#include "metavault/catalog.hpp"
#include "metavault/oracle.hpp"
#include "metavault/query.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mv {

struct BenchConfig {
    unsigned repetitions = 100; // timed executions per (backend, query)
    unsigned warmup = 3;        // untimed executions, excluded from statistics
    unsigned scale = 1;         // corpus scale factor
    std::uint64_t seed = 42;
    std::vector<BackendKind> backends = {BackendKind::Relational, BackendKind::Document};
    std::vector<unsigned> queries = {1, 2, 3, 4, 5}; // paper order
    bool stress_readers = false; // concurrent-reader mode; timings unreported

    static BenchConfig from_json(const std::string& json_text);
    void validate() const;
};

struct QueryTiming {
    BackendKind backend = BackendKind::Relational;
    unsigned query = 0;
    std::vector<double> samples_us; // one per repetition

    double mean_us() const;
    double min_us() const;
    double max_us() const;
    double stddev_us() const;
};

struct BenchReport {
    BenchConfig config;
    std::vector<QueryTiming> timings;   // backend-major, query order
    std::vector<StorageReport> storage; // one per configured backend
    std::vector<std::string> warnings;  // e.g. soft-check violations
    std::string environment_note;

    // One row per backend x query x statistic.
    std::string to_csv() const;
    // Two-column series (query index, mean us) per backend.
    std::string to_plot_data() const;
    // Per-entity totals side by side, one column per backend, plus Total.
    std::string storage_csv() const;
};

// Runs the paper's protocol on a freshly generated corpus: warmups, then the
// configured repetitions of each query in order, per backend. Every run's
// result is checked against the oracle before its timing is accepted; a
// mismatch aborts with Error(OracleMismatch).
BenchReport run_benchmark(const BenchConfig& config);

// As above, but against an existing catalog and its flat corpus.
BenchReport run_benchmark_on(const BenchConfig& config, Catalog& catalog,
                             const std::vector<FlatInstance>& flat);

// Writes report CSV, plot data, and the storage comparison under out_dir.
void emit_report(const BenchReport& report, const std::filesystem::path& out_dir);

} // namespace mv
