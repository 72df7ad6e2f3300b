#include "tirls/problems.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tirls/errors.hpp"
#include "tirls/factor.hpp"
#include "tirls/tproduct.hpp"

namespace tirls {

Tensor3 randn_tensor(Index n1, Index n2, Index n3, Rng& rng) {
    Tensor3 t(n1, n2, n3);
    for (double& v : t.data()) {
        v = rng.normal();
    }
    return t;
}

ProblemInstance gen_example1(Index m, Index c, std::uint64_t seed) {
    if (m < 4) {
        throw ArgumentError("example 1 needs m >= 4, got " + std::to_string(m));
    }
    if (c < 1) {
        throw ArgumentError("c must be >= 1");
    }
    Rng rng(seed);
    const Tensor3 a_prime = randn_tensor(m, m, m, rng);
    ProblemInstance inst;
    inst.kind = ExampleKind::ill_determined_rank;
    inst.m = m;
    inst.c = c;
    inst.seed = seed;
    inst.b = randn_tensor(m, c, m, rng);
    inst.sample.a1 = randn_tensor(m, 1, m, rng);
    inst.sample.b1 = randn_tensor(c, 1, m, rng);

    TSvdResult f = tsvd(a_prime);
    for (Index i = m - 3; i < m; ++i) {
        for (Index k = 0; k < m; ++k) {
            f.s(i, i, k) *= 1e-2;
        }
    }
    inst.a = tprod(tprod(f.u, f.s), transpose(f.v));
    inst.lambda_default = 1e2;
    return inst;
}

// Port of baart.m: the s-integral is exact, the t-integral uses Simpson's rule
// on each cell, and 1/(3 sqrt 2) folds in the Galerkin normalization.
Eigen::MatrixXd baart(Index m) {
    if (m < 3) {
        throw ArgumentError("baart needs m >= 3, got " + std::to_string(m));
    }
    const double n = static_cast<double>(m);
    const double hs = std::numbers::pi / (2.0 * n);
    const double ht = std::numbers::pi / n;
    const double c = 1.0 / (3.0 * std::sqrt(2.0));

    Eigen::VectorXd ihs(m + 1);
    for (Index i = 0; i <= m; ++i) {
        ihs(i) = static_cast<double>(i) * hs;
    }
    // (exp(s_{i+1} co) - exp(s_i co)) / co, with its limit hs when co = cos(pi/2).
    auto cell = [&](double co, bool at_half_pi) {
        Eigen::VectorXd f(m);
        for (Index i = 0; i < m; ++i) {
            f(i) = at_half_pi ? hs : (std::exp(ihs(i + 1) * co) - std::exp(ihs(i) * co)) / co;
        }
        return f;
    };

    Eigen::MatrixXd a(m, m);
    Eigen::VectorXd f3(m);
    for (Index i = 0; i < m; ++i) {
        f3(i) = std::exp(ihs(i + 1)) - std::exp(ihs(i));
    }
    for (Index j = 1; j <= m; ++j) {
        const Eigen::VectorXd f1 = f3;
        const double co2 = std::cos((static_cast<double>(j) - 0.5) * ht);
        const double co3 = std::cos(static_cast<double>(j) * ht);
        const Eigen::VectorXd f2 = cell(co2, 2 * j - 1 == m);
        f3 = cell(co3, 2 * j == m);
        a.col(j - 1) = c * (f1 + 4.0 * f2 + f3);
    }
    return a;
}

Eigen::MatrixXd prolate(Index m, double alpha) {
    if (m < 1) {
        throw ArgumentError("prolate needs m >= 1");
    }
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw ArgumentError("prolate needs 0 < alpha < 0.5, got " + std::to_string(alpha));
    }
    Eigen::VectorXd t(m);
    t(0) = 2.0 * alpha;
    for (Index k = 1; k < m; ++k) {
        const double kk = static_cast<double>(k);
        t(k) = std::sin(2.0 * std::numbers::pi * alpha * kk) / (std::numbers::pi * kk);
    }
    Eigen::MatrixXd a(m, m);
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < m; ++j) {
            a(i, j) = t(std::abs(i - j));
        }
    }
    return a;
}

ProblemInstance gen_example2(Index m, Index c, double delta, std::uint64_t seed) {
    if (m < 3) {
        throw ArgumentError("example 2 needs m >= 3, got " + std::to_string(m));
    }
    if (c < 1) {
        throw ArgumentError("c must be >= 1");
    }
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw ArgumentError("delta must be finite and >= 0");
    }
    const Eigen::MatrixXd a1 = baart(m);
    const Eigen::MatrixXd a2 = prolate(m, 0.46);

    ProblemInstance inst;
    inst.kind = ExampleKind::baart_prolate;
    inst.m = m;
    inst.c = c;
    inst.delta = delta;
    inst.seed = seed;
    inst.a = Tensor3(m, m, m);
    for (Index i = 0; i < m; ++i) {
        inst.a.slice(i) = a1(i, 0) * a2;
    }
    Tensor3 x_true(m, c, m);
    for (double& v : x_true.data()) {
        v = 1.0;
    }
    const Tensor3 b_true = tprod(inst.a, x_true);

    Rng rng(seed);
    const Tensor3 e0 = randn_tensor(m, c, m, rng);
    inst.b = b_true;
    if (delta > 0.0) {
        for (Index j = 0; j < c; ++j) {
            const Tensor3 e0j = e0.lateral(j);
            const double scale = delta * fro_norm(b_true.lateral(j)) / fro_norm(e0j);
            inst.b.set_lateral(j, b_true.lateral(j) + scale * e0j);
        }
    }
    inst.sample.a1 = randn_tensor(m, 1, m, rng);
    inst.sample.b1 = randn_tensor(c, 1, m, rng);
    inst.b_true = b_true;
    inst.x_true = std::move(x_true);
    inst.lambda_default = 1.0 / std::sqrt(3.91e-2);
    return inst;
}

}  // namespace tirls
