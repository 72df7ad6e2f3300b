#include "tirls/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>

#include "tirls/errors.hpp"
#include "tirls/factor.hpp"

namespace tirls {

namespace {

template <typename F>
double median_seconds(int reps, F&& fn) {
    std::vector<double> t;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        t.push_back(std::chrono::duration<double>(stop - start).count());
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

ProblemInstance generate(const BenchConfig& cfg, Index c) {
    if (cfg.example == ExampleKind::ill_determined_rank) {
        return gen_example1(cfg.m, c, cfg.seed);
    }
    return gen_example2(cfg.m, c, cfg.delta, cfg.seed);
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
    if (cfg.c_list.empty()) {
        throw ArgumentError("bench needs at least one value of c");
    }
    if (cfg.k < 1) {
        throw ArgumentError("bench needs k >= 1");
    }
    if (cfg.repetitions < 1) {
        throw ArgumentError("bench needs at least one repetition");
    }
    std::vector<BenchRow> rows;
    for (Index c : cfg.c_list) {
        const ProblemInstance inst = generate(cfg, c);
        TrlsProblem base = inst.problem();
        if (cfg.lambda) {
            base.lambda = *cfg.lambda;
        }
        const Tensor3 x_star = direct_trls(base.a, base.b, base.lambda);
        const TrlsProblem grown = append_sample(base, inst.sample);
        const Tensor3 exact = direct_trls(grown.a, grown.b, grown.lambda);

        const Subsolver sub = Subsolver::gkt(cfg.k, cfg.seed);
        UpdateResult upd;
        const double t_irls = median_seconds(cfg.repetitions, [&] {
            upd = irls_update(base, x_star, inst.sample, sub);
        });
        Tensor3 x_gkt;
        const double t_gkt = median_seconds(cfg.repetitions, [&] {
            x_gkt = tgkt_solve(grown, cfg.k, cfg.seed);
        });

        rows.push_back({c, "t-IRLS", rel_error(upd.x, exact), cfg.k, t_irls});
        rows.push_back({c, "t-GKT", rel_error(x_gkt, exact), cfg.k, t_gkt});
    }
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << kBenchCsvHeader << '\n';
    char buf[128];
    for (const BenchRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%lld,%s,%.6e,%lld,%.6e", static_cast<long long>(r.c),
                      r.method.c_str(), r.err, static_cast<long long>(r.k), r.cpu_seconds);
        out << buf << '\n';
    }
}

}  // namespace tirls
