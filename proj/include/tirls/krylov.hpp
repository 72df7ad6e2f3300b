#pragma once

#include "tirls/rng.hpp"
#include "tirls/tensor.hpp"

namespace tirls {

/**
 * Output of tensor Golub-Kahan bidiagonalization after `steps` steps:
 *
 *     A   * W           = Q * pbar
 *     A^T * Q(:, 0:k)   = W * P^T,   P = pbar(0:k, 0:k, :)
 *
 * pbar is lower bidiagonal in tubes, with c_i on the diagonal and z_{i+1} on
 * the subdiagonal. When a c_i or z_{i+1} tube is not invertible the run stops
 * early and `breakdown` is set.
 */
struct GkbResult {
    Tensor3 w;     ///< n x steps x p right basis
    Tensor3 q;     ///< m x (steps + 1) x p left basis
    Tensor3 pbar;  ///< (steps + 1) x steps x p
    TubalScalar z1;
    Index steps = 0;
    bool breakdown = false;
};

/// Runs up to k steps of t-GKB on (A, b), b an m x 1 x p lateral slice.
/// Requires A^T * b != 0 and 1 <= k <= min(m, n).
GkbResult tgkb(const Tensor3& a, const Tensor3& b, Index k, bool reorthogonalize, Rng& rng);

}  // namespace tirls
