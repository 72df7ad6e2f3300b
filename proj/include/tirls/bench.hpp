#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tirls/problems.hpp"

namespace tirls {

struct BenchConfig {
    ExampleKind example = ExampleKind::ill_determined_rank;
    Index m = 30;
    std::vector<Index> c_list;
    std::optional<double> lambda;  ///< defaults to the instance's lambda_default
    Index k = 4;
    std::uint64_t seed = 0;
    double delta = 1e-3;  ///< noise level, example 2 only
    int repetitions = 3;
};

struct BenchRow {
    Index c = 0;
    std::string method;  ///< "t-IRLS" or "t-GKT"
    double err = 0.0;    ///< relative error against the exact augmented solution
    Index k = 0;
    double cpu_seconds = 0.0;  ///< median wall time of the solve call
};

/**
 * For every c: generate an instance, solve the base problem exactly, then time
 * (i) irls_update with a t-GKT subsolver and (ii) tgkt_solve from scratch on
 * the grown problem. Both are scored against direct_trls on the grown problem.
 */
std::vector<BenchRow> run_bench(const BenchConfig& config);

inline constexpr const char* kBenchCsvHeader = "c,method,err,k,cpu_seconds";

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace tirls
