#pragma once

// Per-slice dense kernels shared by the factor, krylov and solver modules.
// Slices flagged `real` (DFT bins 0 and n3/2) go through real arithmetic so
// their factors carry no spurious complex phases.

#include <Eigen/Dense>

#include "tirls/factor.hpp"

namespace tirls::detail {

struct SliceQr {
    Eigen::MatrixXcd q;
    Eigen::MatrixXcd r;
};

/// Householder QR with the diagonal of R made real and nonnegative.
SliceQr qr_slice(const Eigen::MatrixXcd& a, bool real, QrMode mode);

/// Least-squares solve of c * y = d; rank-checked through the singular values of R.
Eigen::MatrixXcd ls_slice(const Eigen::MatrixXcd& c, const Eigen::MatrixXcd& d, bool real,
                          Index slice);

/// Throws SingularFactorError unless every |r_ii| > kTubeInvertTol * max |r_ii|.
void check_triangular(const Eigen::MatrixXcd& r, Index slice);

/// Applies the inverse of the upper-triangular r as requested.
Eigen::MatrixXcd tri_apply(const Eigen::MatrixXcd& r, const Eigen::MatrixXcd& x, TriApply side);

Eigen::MatrixXcd trls_slice(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double lambda,
                            TrlsForm form, bool real);

}  // namespace tirls::detail
