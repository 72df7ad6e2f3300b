#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "tirls/rng.hpp"
#include "tirls/solvers.hpp"
#include "tirls/tensor.hpp"

namespace tirls {

enum class ExampleKind {
    ill_determined_rank = 1,  ///< random A with three damped singular tubes
    baart_prolate = 2,        ///< A(:,:,i) = baart(m)(i,1) * prolate(m, 0.46)
};

/// A reproducible test problem: a pure function of (kind, m, c, delta, seed).
struct ProblemInstance {
    ExampleKind kind = ExampleKind::ill_determined_rank;
    Index m = 0;
    Index c = 0;
    double delta = 0.0;
    std::uint64_t seed = 0;

    Tensor3 a;  ///< m x m x m
    Tensor3 b;  ///< m x c x m
    std::optional<Tensor3> b_true;
    std::optional<Tensor3> x_true;
    UpdateSample sample;
    double lambda_default = 1.0;

    TrlsProblem problem() const { return {a, b, lambda_default}; }
};

/// Standard-normal tensor, filled in storage order.
Tensor3 randn_tensor(Index n1, Index n2, Index n3, Rng& rng);

/// Draws A', B, a1, b1 (in that order) from Rng(seed), takes the t-SVD of A'
/// and scales singular tubes m-3 .. m-1 by 1e-2. lambda_default = 1e2.
ProblemInstance gen_example1(Index m, Index c, std::uint64_t seed);

/// Galerkin discretization of the first-kind Fredholm problem with kernel
/// exp(s cos t), s in [0, pi/2], t in [0, pi] (Regularization Tools `baart`).
Eigen::MatrixXd baart(Index m);

/// Symmetric Toeplitz matrix with t0 = 2 alpha, t_k = sin(2 pi alpha k) / (pi k).
Eigen::MatrixXd prolate(Index m, double alpha);

/// Frontal slice i of A is baart(m)(i,1) * prolate(m, 0.46), X_true is all
/// ones, B = A * X_true + E with every lateral slice of E scaled to relative
/// level delta. Draws E0, a1, b1 (in that order) from Rng(seed).
/// lambda_default = 1 / sqrt(3.91e-2).
ProblemInstance gen_example2(Index m, Index c, double delta, std::uint64_t seed);

}  // namespace tirls
