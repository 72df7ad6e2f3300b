// tirls: command-line front end for the t-product Tikhonov solvers.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tirls/bench.hpp"
#include "tirls/errors.hpp"
#include "tirls/factor.hpp"
#include "tirls/io.hpp"
#include "tirls/problems.hpp"
#include "tirls/session.hpp"
#include "tirls/solvers.hpp"
#include "tirls/tproduct.hpp"
#include "tirls/verify.hpp"

namespace fs = std::filesystem;
using namespace tirls;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

Subsolver::Kind parse_method(const std::string& s) {
    return s == "direct" ? Subsolver::Kind::direct : Subsolver::Kind::gkt;
}

Tensor3 solve_with(const TrlsProblem& prob, Subsolver::Kind method, Index k, std::uint64_t seed) {
    if (method == Subsolver::Kind::direct) {
        return direct_trls(prob.a, prob.b, prob.lambda);
    }
    return tgkt_solve(prob, k, seed);
}

// --- gen ---------------------------------------------------------------------

struct GenArgs {
    int example = 1;
    Index m = 0;
    Index c = 0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenArgs& g) {
    const ProblemInstance inst = g.example == 1 ? gen_example1(g.m, g.c, g.seed)
                                                : gen_example2(g.m, g.c, g.delta, g.seed);
    const fs::path dir(g.out);
    fs::create_directories(dir);
    write_tensor(dir / "A.t3d", inst.a);
    write_tensor(dir / "B.t3d", inst.b);
    write_tensor(dir / "a1.t3d", inst.sample.a1);
    write_tensor(dir / "b1.t3d", inst.sample.b1);
    if (inst.b_true) {
        write_tensor(dir / "B_true.t3d", *inst.b_true);
    }
    if (inst.x_true) {
        write_tensor(dir / "X_true.t3d", *inst.x_true);
    }
    Manifest m;
    m["example"] = std::to_string(g.example);
    m["m"] = std::to_string(g.m);
    m["c"] = std::to_string(g.c);
    m["delta"] = format_double(inst.delta);
    m["seed"] = std::to_string(g.seed);
    m["lambda_default"] = format_double(inst.lambda_default);
    write_manifest(dir / "manifest.txt", m);
    std::cout << "wrote example " << g.example << " (m=" << g.m << ", c=" << g.c << ") to "
              << dir.string() << '\n';
    return kExitOk;
}

// --- solve -------------------------------------------------------------------

struct SolveArgs {
    std::string a_path, b_path, out;
    double lambda = 0.0;
    std::string method = "gkt";
    std::optional<Index> k;
    std::uint64_t seed = 0;
    bool compare_direct = false;
};

int cmd_solve(const SolveArgs& s) {
    const auto method = parse_method(s.method);
    if (method == Subsolver::Kind::gkt && !s.k) {
        throw UsageError("--k is required with --method gkt");
    }
    TrlsProblem prob{read_tensor(fs::path(s.a_path)), read_tensor(fs::path(s.b_path)), s.lambda};
    prob.validate();

    const auto start = std::chrono::steady_clock::now();
    const Tensor3 x = solve_with(prob, method, s.k.value_or(0), s.seed);
    const double elapsed = seconds_since(start);
    write_tensor(fs::path(s.out), x);

    std::cout << "rel_residual " << sci(rel_error(tprod(prob.a, x), prob.b)) << '\n';
    std::cout << "time_seconds " << sci(elapsed) << '\n';
    if (s.compare_direct) {
        const Tensor3 exact = direct_trls(prob.a, prob.b, prob.lambda);
        std::cout << "rel_error_vs_direct " << sci(rel_error(x, exact)) << '\n';
    }
    return kExitOk;
}

// --- init / update -----------------------------------------------------------

struct InitArgs {
    std::string session, a_path, b_path;
    double lambda = 0.0;
    std::string method = "direct";
    std::optional<Index> k;
    std::uint64_t seed = 0;
};

int cmd_init(const InitArgs& a) {
    const auto method = parse_method(a.method);
    if (method == Subsolver::Kind::gkt && !a.k) {
        throw UsageError("--k is required with --method gkt");
    }
    SessionState st;
    st.problem = {read_tensor(fs::path(a.a_path)), read_tensor(fs::path(a.b_path)), a.lambda};
    st.problem.validate();
    st.sub = method == Subsolver::Kind::gkt ? Subsolver::gkt(*a.k, a.seed) : Subsolver::direct();
    st.seed = a.seed;
    st.x = solve_with(st.problem, method, a.k.value_or(0), a.seed);
    create_session(fs::path(a.session), st);
    std::cout << "created session " << a.session << " (m=" << st.problem.m()
              << ", n=" << st.problem.n() << ", c=" << st.problem.c() << ", p=" << st.problem.p()
              << ")\n";
    return kExitOk;
}

struct UpdateArgs {
    std::string session, a1_path, b1_path;
    std::optional<std::string> method;
    std::optional<Index> k;
};

int cmd_update(const UpdateArgs& u) {
    const fs::path dir(u.session);
    SessionLock lock(dir);
    SessionState st = load_session(dir);

    Subsolver sub = st.sub;
    if (u.method) {
        sub.kind = parse_method(*u.method);
    }
    if (u.k) {
        sub.steps = *u.k;
    }
    if (sub.kind == Subsolver::Kind::gkt && sub.steps < 1) {
        throw UsageError("--k is required with --method gkt");
    }
    const UpdateSample sample{read_tensor(fs::path(u.a1_path)), read_tensor(fs::path(u.b1_path))};

    const auto start = std::chrono::steady_clock::now();
    const UpdateResult r = irls_update(st.problem, st.x, sample, sub);
    const double elapsed = seconds_since(start);

    SessionState next;
    next.problem = append_sample(st.problem, sample);
    next.x = r.x;
    next.sub = sub;
    next.sample_count = st.sample_count + 1;
    next.seed = st.seed;
    commit_session(dir, next);

    if (r.short_circuit) {
        std::cout << "short-circuit: W=0\n";
    } else if (r.fallback) {
        std::cout << "fallback: no invertible tube in W, re-solved from scratch\n";
    } else if (r.choice) {
        std::cout << "index " << r.choice->index << '\n';
        std::cout << "min_magnitude " << sci(r.choice->min_magnitude) << '\n';
    }
    std::cout << "time_seconds " << sci(elapsed) << '\n';
    std::cout << "samples " << next.sample_count << '\n';
    return kExitOk;
}

// --- bench / verify ----------------------------------------------------------

struct BenchArgs {
    int example = 1;
    Index m = 30;
    std::vector<Index> c_list;
    std::optional<double> lambda;
    Index k = 0;
    std::uint64_t seed = 0;
    double delta = 1e-3;
    int reps = 3;
    std::string csv_out = "-";
};

int cmd_bench(const BenchArgs& b) {
    if (b.c_list.empty()) {
        throw UsageError("--c needs at least one value");
    }
    BenchConfig cfg;
    cfg.example = b.example == 1 ? ExampleKind::ill_determined_rank : ExampleKind::baart_prolate;
    cfg.m = b.m;
    cfg.c_list = b.c_list;
    cfg.lambda = b.lambda;
    cfg.k = b.k;
    cfg.seed = b.seed;
    cfg.delta = b.delta;
    cfg.repetitions = b.reps;
    const auto rows = run_bench(cfg);
    if (b.csv_out == "-") {
        write_bench_csv(std::cout, rows);
    } else {
        std::ofstream out(b.csv_out);
        if (!out) {
            throw FormatError("cannot open " + b.csv_out + " for writing");
        }
        write_bench_csv(out, rows);
    }
    return kExitOk;
}

int cmd_verify(std::uint64_t seed, int trials) {
    VerifyOptions opt;
    opt.seed = seed;
    opt.trials = trials;
    return print_verify_report(std::cout, run_verify(opt)) ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor Tikhonov regularization with incremental updates"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate an example problem");
    gen_cmd->add_option("example", gen.example, "Example number")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    gen_cmd->add_option("--m", gen.m, "Tensor size m (A is m x m x m)")->required();
    gen_cmd->add_option("--c", gen.c, "Number of right-hand sides")->required();
    gen_cmd->add_option("--delta", gen.delta, "Relative noise level (example 2)")
        ->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--seed", gen.seed, "RNG seed");
    gen_cmd->add_option("--out", gen.out, "Output directory")->required();

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve a tensor Tikhonov problem");
    solve_cmd->add_option("--A", solve.a_path, "Tensor A")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--B", solve.b_path, "Tensor B")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--lambda", solve.lambda, "Regularization parameter")
        ->required()
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--method", solve.method, "gkt or direct")
        ->check(CLI::IsMember({"gkt", "direct"}));
    solve_cmd->add_option("--k", solve.k, "Bidiagonalization steps (gkt)")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--seed", solve.seed, "RNG seed for breakdown replacements");
    solve_cmd->add_option("--out", solve.out, "Output tensor X")->required();
    solve_cmd->add_flag("--compare-direct", solve.compare_direct,
                        "Also report the error against the direct solution");

    InitArgs init;
    auto* init_cmd = app.add_subcommand("init", "Create a streaming session");
    init_cmd->add_option("session", init.session, "Session directory")->required();
    init_cmd->add_option("--A", init.a_path, "Tensor A")->required()->check(CLI::ExistingFile);
    init_cmd->add_option("--B", init.b_path, "Tensor B")->required()->check(CLI::ExistingFile);
    init_cmd->add_option("--lambda", init.lambda, "Regularization parameter")
        ->required()
        ->check(CLI::PositiveNumber);
    init_cmd->add_option("--method", init.method, "Solver for the base problem and updates")
        ->check(CLI::IsMember({"gkt", "direct"}));
    init_cmd->add_option("--k", init.k, "Bidiagonalization steps (gkt)")
        ->check(CLI::PositiveNumber);
    init_cmd->add_option("--seed", init.seed, "RNG seed");

    UpdateArgs update;
    auto* update_cmd = app.add_subcommand("update", "Fold a new horizontal sample into a session");
    update_cmd->add_option("session", update.session, "Session directory")->required();
    update_cmd->add_option("--a1", update.a1_path, "New row of A (n x 1 x p)")
        ->required()
        ->check(CLI::ExistingFile);
    update_cmd->add_option("--b1", update.b1_path, "New row of B (c x 1 x p)")
        ->required()
        ->check(CLI::ExistingFile);
    update_cmd->add_option("--method", update.method, "Override the session subsolver")
        ->check(CLI::IsMember({"gkt", "direct"}));
    update_cmd->add_option("--k", update.k, "Override the session step count")
        ->check(CLI::PositiveNumber);

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time t-IRLS against t-GKT from scratch");
    bench_cmd->add_option("example", bench.example, "Example number")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    bench_cmd->add_option("--m", bench.m, "Tensor size m");
    bench_cmd->add_option("--c", bench.c_list, "Comma-separated list of c values")
        ->delimiter(',');
    bench_cmd->add_option("--lambda", bench.lambda, "Regularization parameter")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--k", bench.k, "Bidiagonalization steps")
        ->required()
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench.seed, "RNG seed");
    bench_cmd->add_option("--delta", bench.delta, "Noise level (example 2)")
        ->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--reps", bench.reps, "Timing repetitions (median is reported)")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--csv-out", bench.csv_out, "CSV destination, - for stdout");

    std::uint64_t verify_seed = 0;
    int verify_trials = 20;
    auto* verify_cmd = app.add_subcommand("verify", "Run the property suites");
    verify_cmd->add_option("--seed", verify_seed, "RNG seed");
    verify_cmd->add_option("--trials", verify_trials, "Random instances per suite")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen);
        if (*solve_cmd) return cmd_solve(solve);
        if (*init_cmd) return cmd_init(init);
        if (*update_cmd) return cmd_update(update);
        if (*bench_cmd) return cmd_bench(bench);
        if (*verify_cmd) return cmd_verify(verify_seed, verify_trials);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ArgumentError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
