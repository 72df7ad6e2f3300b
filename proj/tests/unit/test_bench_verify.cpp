#include <doctest.h>

#include <chrono>
#include <sstream>

#include "helpers.hpp"
#include "tirls/bench.hpp"
#include "tirls/errors.hpp"
#include "tirls/tproduct.hpp"
#include "tirls/verify.hpp"

using namespace tirls;

TEST_CASE("bench rows and CSV") {
    BenchConfig cfg;
    cfg.m = 12;
    cfg.c_list = {3, 5};
    cfg.k = 4;
    cfg.seed = 1;
    cfg.repetitions = 1;
    const auto rows = run_bench(cfg);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].c == 3);
    CHECK(rows[0].method == "t-IRLS");
    CHECK(rows[1].method == "t-GKT");
    CHECK(rows[3].c == 5);
    for (const auto& r : rows) {
        CHECK(r.err < 1e-2);
        CHECK(r.cpu_seconds >= 0.0);
        CHECK(r.k == 4);
    }
    std::ostringstream os;
    write_bench_csv(os, rows);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "c,method,err,k,cpu_seconds");
    std::getline(is, line);
    CHECK(line.rfind("3,t-IRLS,", 0) == 0);

    cfg.c_list.clear();
    CHECK_THROWS_AS(run_bench(cfg), ArgumentError);
}

TEST_CASE("verify passes and is deterministic") {
    VerifyOptions opt;
    opt.seed = 4;
    opt.trials = 3;
    const auto a = run_verify(opt);
    const auto b = run_verify(opt);
    REQUIRE(a.size() == b.size());
    std::ostringstream oa, ob;
    CHECK(print_verify_report(oa, a));
    CHECK(print_verify_report(ob, b));
    CHECK(oa.str() == ob.str());
}

TEST_CASE("verify catches a sign flip in transpose") {
    VerifyOptions opt;
    opt.trials = 2;
    opt.transpose_impl = [](const Tensor3& a) { return -1.0 * transpose(a); };
    const auto results = run_verify(opt);
    bool named = false;
    for (const auto& r : results) {
        if (r.name == "transpose anti-homomorphism") {
            named = true;
            CHECK_FALSE(r.passed);
        }
    }
    CHECK(named);
    std::ostringstream os;
    CHECK_FALSE(print_verify_report(os, results));
    CHECK(os.str().find("FAIL transpose anti-homomorphism") != std::string::npos);
}

TEST_CASE("verify with one trial is quick") {
    VerifyOptions opt;
    opt.trials = 1;
    const auto t0 = std::chrono::steady_clock::now();
    (void)run_verify(opt);
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 5.0);
    opt.trials = 0;
    CHECK_THROWS_AS(run_verify(opt), ArgumentError);
}
