#pragma once

#include "tirls/spectral.hpp"
#include "tirls/tensor.hpp"

namespace tirls {

/// Rank checks flag a spectral slice whose singular-value ratio is below this.
inline constexpr double kRankTol = 1e-12;

enum class QrMode {
    economy,  ///< Q is n1 x min(n1,n2) x n3, R is min(n1,n2) x n2 x n3
    full,     ///< Q is n1 x n1 x n3, R is n1 x n2 x n3
};

struct TQrResult {
    Tensor3 q;
    Tensor3 r;  ///< f-upper triangular; spectral diagonals real and nonnegative
};

struct TSvdResult {
    Tensor3 u;  ///< n1 x r x n3
    Tensor3 s;  ///< r x r x n3, f-diagonal
    Tensor3 v;  ///< n2 x r x n3
};

/// Which product f_tri_solve applies.
enum class TriApply {
    right_inverse,           ///< X * R^-1
    left_inverse,            ///< R^-1 * X
    left_inverse_transpose,  ///< R^-T * X
};

/// Which closed form direct_trls evaluates per spectral slice.
enum class TrlsForm {
    automatic,  ///< the n x n system when n <= m, else the m x m one
    normal,     ///< (A^H A + lambda^2 I)^-1 A^H B
    dual,       ///< A^H (A A^H + lambda^2 I)^-1 B
};

TQrResult tqr(const Tensor3& a, QrMode mode = QrMode::economy);

/// Economy t-SVD, r = min(n1, n2); spectral singular values sorted descending.
TSvdResult tsvd(const Tensor3& a);

/// Y minimizing ||C * Y - D||_F, one QR least-squares solve per spectral slice.
/// Throws RankDeficientError when a slice of C lacks full column rank.
Tensor3 tls_solve(const Tensor3& c, const Tensor3& d);

/// Applies R^-1 by triangular substitution in every spectral slice.
Tensor3 f_tri_solve(const Tensor3& r, const Tensor3& x, TriApply side);

/// Exact Tikhonov solution X* = (A^T A + lambda^2 I)^-1 A^T B.
Tensor3 direct_trls(const Tensor3& a, const Tensor3& b, double lambda,
                    TrlsForm form = TrlsForm::automatic);

/// Minimum-Frobenius-norm solution of min ||[A, lambda I_m] * Xhat - B||_F,
/// an (n + m) x c x p tensor whose top n rows coincide with direct_trls.
Tensor3 min_norm_augmented_ls(const Tensor3& a, const Tensor3& b, double lambda);

namespace spectral {

SpectralTensor direct_trls(const SpectralTensor& a, const SpectralTensor& b, double lambda,
                           TrlsForm form = TrlsForm::automatic);

}  // namespace spectral

}  // namespace tirls
