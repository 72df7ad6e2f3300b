#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tirls/rng.hpp"
#include "tirls/tensor.hpp"

namespace tirls {

/// min ||A * X - B||_F^2 + lambda^2 ||X||_F^2 with A m x n x p and B m x c x p.
struct TrlsProblem {
    Tensor3 a;
    Tensor3 b;
    double lambda = 1.0;

    Index m() const { return a.n1(); }
    Index n() const { return a.n2(); }
    Index c() const { return b.n2(); }
    Index p() const { return a.n3(); }

    /// Throws ShapeError / ArgumentError on inconsistent data.
    void validate() const;
};

/// A new horizontal sample: the problem gains the row a1^T (1 x n x p) with
/// response b1^T (1 x c x p).
struct UpdateSample {
    Tensor3 a1;  ///< n x 1 x p
    Tensor3 b1;  ///< c x 1 x p
};

/// Solver used for the single-lateral-slice subproblem of an update.
struct Subsolver {
    enum class Kind { gkt, direct };

    Kind kind = Kind::gkt;
    Index steps = 0;  ///< t-GKB steps for Kind::gkt
    bool reorthogonalize = true;
    std::uint64_t seed = 0;

    static Subsolver gkt(Index k, std::uint64_t seed = 0) { return {Kind::gkt, k, true, seed}; }
    static Subsolver direct() { return {Kind::direct, 0, true, 0}; }
};

/// t-GKT for one right-hand side b (m x 1 x p) using k bidiagonalization steps.
/// If the bidiagonalization breaks down early, the achieved steps are used.
Tensor3 tgkt_solve_slice(const Tensor3& a, const Tensor3& b, double lambda, Index k, Rng& rng,
                         bool reorthogonalize = true);

/// t-GKT applied to every lateral slice of B. Slice j draws its random
/// numbers from the stream Rng::derive(seed, j).
Tensor3 tgkt_solve(const TrlsProblem& problem, Index k, std::uint64_t seed = 0,
                   bool reorthogonalize = true);

/// W = b1^T - a1^T * X, a 1 x c x p tube row.
Tensor3 compute_residual_tube_row(const Tensor3& x, const UpdateSample& sample);

struct IndexChoice {
    Index index = 0;            ///< 0-based lateral index l
    double min_magnitude = 0.0;  ///< min_j |W_hat(:, l, j)|
};

/// Column of W whose smallest Fourier magnitude is largest (lowest index on
/// ties). Throws NoInvertibleTubeError when that column is not invertible.
IndexChoice choose_invertible_index(const Tensor3& w);

struct UpdateResult {
    Tensor3 x;
    std::optional<IndexChoice> choice;
    bool short_circuit = false;  ///< W was numerically zero; x is X* unchanged
    bool fallback = false;       ///< no invertible tube; x was re-solved from scratch
};

/// [A; a1^T] and [B; b1^T].
TrlsProblem append_sample(const TrlsProblem& problem, const UpdateSample& sample);

/**
 * Incremental update of a Tikhonov solution after one new horizontal sample.
 *
 * Given X* for `problem`, returns the solution of the grown problem as
 *
 *     X~ = X* + (x~_l - X*_l) * W_l^-1 * W,     W = b1^T - a1^T * X*,
 *
 * where x~_l solves the grown problem for right-hand side l only, computed
 * with `sub`. No factorization of the grown problem is formed.
 */
UpdateResult irls_update(const TrlsProblem& problem, const Tensor3& x_star,
                         const UpdateSample& sample, const Subsolver& sub);

/// Problem, committed solution and sample counter of a streaming run.
struct StreamState {
    TrlsProblem problem;
    Tensor3 x;
    Index samples = 0;
};

/// Folds samples into `state` one at a time. On failure the state keeps the
/// last successful update and the error propagates.
Tensor3 irls_stream(StreamState& state, std::span<const UpdateSample> samples,
                    const Subsolver& sub);

}  // namespace tirls
