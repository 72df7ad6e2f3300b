#include "tirls/factor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "slice_kernels.hpp"
#include "tirls/errors.hpp"
#include "tirls/parallel.hpp"
#include "tirls/tproduct.hpp"

namespace tirls {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

namespace detail {

namespace {

template <typename Matrix>
void fix_diagonal_signs(Matrix& q, Matrix& r) {
    const Index d = std::min(r.rows(), r.cols());
    for (Index i = 0; i < d; ++i) {
        const auto rii = r(i, i);
        const double mag = std::abs(rii);
        if (mag == 0.0) {
            continue;
        }
        if constexpr (Eigen::NumTraits<typename Matrix::Scalar>::IsComplex) {
            const auto phase = rii / mag;
            r.row(i) *= std::conj(phase);
            q.col(i) *= phase;
        } else if (rii < 0.0) {
            r.row(i) *= -1.0;
            q.col(i) *= -1.0;
        }
        r(i, i) = mag;
    }
}

template <typename Matrix>
std::pair<Matrix, Matrix> householder_qr(const Matrix& a, QrMode mode) {
    const Index m = a.rows();
    const Index n = a.cols();
    const Index qcols = mode == QrMode::economy ? std::min(m, n) : m;
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ() * Matrix::Identity(m, qcols);
    Matrix r = qr.matrixQR().topRows(qcols).template triangularView<Eigen::Upper>();
    fix_diagonal_signs(q, r);
    return {std::move(q), std::move(r)};
}

template <typename Matrix>
Matrix householder_ls(const Matrix& c, const Matrix& d, Index slice) {
    const Index n = c.cols();
    if (c.rows() < n) {
        throw RankDeficientError("tls_solve: spectral slice " + std::to_string(slice) +
                                     " has more columns than rows",
                                 slice, 0.0);
    }
    Eigen::HouseholderQR<Matrix> qr(c);
    const Matrix r = qr.matrixQR().topLeftCorner(n, n).template triangularView<Eigen::Upper>();
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(r).singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double smin = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
    if (n > 0 && (smax == 0.0 || smin < kRankTol * smax)) {
        throw RankDeficientError("tls_solve: spectral slice " + std::to_string(slice) +
                                     " is rank deficient (smallest singular value " +
                                     std::to_string(smin) + ")",
                                 slice, smin);
    }
    return qr.solve(d);
}

template <typename Matrix>
Matrix regularized_solve(const Matrix& a, const Matrix& b, double lambda, TrlsForm form) {
    const Index m = a.rows();
    const Index n = a.cols();
    if (form == TrlsForm::automatic) {
        form = n <= m ? TrlsForm::normal : TrlsForm::dual;
    }
    const double l2 = lambda * lambda;
    if (form == TrlsForm::normal) {
        Matrix g = a.adjoint() * a;
        g.diagonal().array() += l2;
        return g.llt().solve(a.adjoint() * b);
    }
    Matrix g = a * a.adjoint();
    g.diagonal().array() += l2;
    return a.adjoint() * g.llt().solve(b);
}

}  // namespace

SliceQr qr_slice(const MatrixXcd& a, bool real, QrMode mode) {
    if (real) {
        auto [q, r] = householder_qr<MatrixXd>(a.real(), mode);
        return {q.cast<Complex>(), r.cast<Complex>()};
    }
    auto [q, r] = householder_qr<MatrixXcd>(a, mode);
    return {std::move(q), std::move(r)};
}

MatrixXcd ls_slice(const MatrixXcd& c, const MatrixXcd& d, bool real, Index slice) {
    if (real) {
        return householder_ls<MatrixXd>(c.real(), d.real(), slice).cast<Complex>();
    }
    return householder_ls<MatrixXcd>(c, d, slice);
}

void check_triangular(const MatrixXcd& r, Index slice) {
    const Eigen::VectorXd diag = r.diagonal().cwiseAbs();
    const double largest = diag.size() > 0 ? diag.maxCoeff() : 0.0;
    for (Index i = 0; i < diag.size(); ++i) {
        if (!(largest > 0.0) || diag(i) <= kTubeInvertTol * largest) {
            throw SingularFactorError("f-upper-triangular factor is singular at spectral slice " +
                                          std::to_string(slice) + ", diagonal index " +
                                          std::to_string(i),
                                      slice, i);
        }
    }
}

MatrixXcd tri_apply(const MatrixXcd& r, const MatrixXcd& x, TriApply side) {
    switch (side) {
        case TriApply::right_inverse:
            return r.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(x);
        case TriApply::left_inverse:
            return r.triangularView<Eigen::Upper>().solve(x);
        case TriApply::left_inverse_transpose:
            return r.adjoint().triangularView<Eigen::Lower>().solve(x);
    }
    return x;
}

MatrixXcd trls_slice(const MatrixXcd& a, const MatrixXcd& b, double lambda, TrlsForm form,
                     bool real) {
    if (real) {
        return regularized_solve<MatrixXd>(a.real(), b.real(), lambda, form).cast<Complex>();
    }
    return regularized_solve<MatrixXcd>(a, b, lambda, form);
}

}  // namespace detail

namespace {

void require_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ArgumentError("lambda must be positive and finite, got " + std::to_string(lambda));
    }
}

}  // namespace

TQrResult tqr(const Tensor3& a, QrMode mode) {
    const SpectralTensor abar = dft_tubes(a);
    const Index m = a.n1();
    const Index n = a.n2();
    const Index qcols = mode == QrMode::economy ? std::min(m, n) : m;
    SpectralTensor q(m, qcols, a.n3());
    SpectralTensor r(qcols, n, a.n3());
    parallel_for(abar.unique_slices(), [&](Index j) {
        auto f = detail::qr_slice(abar.half_slice(j), abar.is_real_slice(j), mode);
        q.half_slice(j) = f.q;
        r.half_slice(j) = f.r;
    });
    return {idft_tubes(q), idft_tubes(r)};
}

TSvdResult tsvd(const Tensor3& a) {
    const SpectralTensor abar = dft_tubes(a);
    const Index rank = std::min(a.n1(), a.n2());
    SpectralTensor u(a.n1(), rank, a.n3());
    SpectralTensor s(rank, rank, a.n3());
    SpectralTensor v(a.n2(), rank, a.n3());
    parallel_for(abar.unique_slices(), [&](Index j) {
        const auto flags = Eigen::ComputeThinU | Eigen::ComputeThinV;
        if (abar.is_real_slice(j)) {
            Eigen::BDCSVD<MatrixXd> svd(abar.half_slice(j).real(), flags);
            u.half_slice(j) = svd.matrixU().cast<Complex>();
            v.half_slice(j) = svd.matrixV().cast<Complex>();
            s.half_slice(j).diagonal() = svd.singularValues().cast<Complex>();
        } else {
            Eigen::BDCSVD<MatrixXcd> svd(abar.half_slice(j), flags);
            u.half_slice(j) = svd.matrixU();
            v.half_slice(j) = svd.matrixV();
            s.half_slice(j).diagonal() = svd.singularValues().cast<Complex>();
        }
    });
    return {idft_tubes(u), idft_tubes(s), idft_tubes(v)};
}

Tensor3 tls_solve(const Tensor3& c, const Tensor3& d) {
    if (c.n1() != d.n1() || c.n3() != d.n3()) {
        throw ShapeError("tls_solve: C is " + to_string(c.shape()) + ", D is " +
                         to_string(d.shape()));
    }
    const SpectralTensor cbar = dft_tubes(c);
    const SpectralTensor dbar = dft_tubes(d);
    SpectralTensor y(c.n2(), d.n2(), c.n3());
    parallel_for(cbar.unique_slices(), [&](Index j) {
        y.half_slice(j) =
            detail::ls_slice(cbar.half_slice(j), dbar.half_slice(j), cbar.is_real_slice(j), j);
    });
    return idft_tubes(y);
}

Tensor3 f_tri_solve(const Tensor3& r, const Tensor3& x, TriApply side) {
    if (r.n1() != r.n2() || r.n3() != x.n3()) {
        throw ShapeError("f_tri_solve: R must be square with matching tube length, got R " +
                         to_string(r.shape()) + ", X " + to_string(x.shape()));
    }
    const bool right = side == TriApply::right_inverse;
    if ((right && x.n2() != r.n1()) || (!right && x.n1() != r.n1())) {
        throw ShapeError("f_tri_solve: X " + to_string(x.shape()) + " does not conform to R " +
                         to_string(r.shape()));
    }
    const SpectralTensor rbar = dft_tubes(r);
    const SpectralTensor xbar = dft_tubes(x);
    SpectralTensor out(x.n1(), x.n2(), x.n3());
    parallel_for(rbar.unique_slices(), [&](Index j) {
        const MatrixXcd rj = rbar.half_slice(j);
        detail::check_triangular(rj, j);
        out.half_slice(j) = detail::tri_apply(rj, xbar.half_slice(j), side);
    });
    return idft_tubes(out);
}

namespace spectral {

SpectralTensor direct_trls(const SpectralTensor& a, const SpectralTensor& b, double lambda,
                           TrlsForm form) {
    require_lambda(lambda);
    if (a.n1() != b.n1() || a.n3() != b.n3()) {
        throw ShapeError("direct_trls: A is " + to_string(a.shape()) + ", B is " +
                         to_string(b.shape()));
    }
    SpectralTensor x(a.n2(), b.n2(), a.n3());
    parallel_for(a.unique_slices(), [&](Index j) {
        x.half_slice(j) = detail::trls_slice(a.half_slice(j), b.half_slice(j), lambda, form,
                                             a.is_real_slice(j));
    });
    return x;
}

}  // namespace spectral

Tensor3 direct_trls(const Tensor3& a, const Tensor3& b, double lambda, TrlsForm form) {
    require_lambda(lambda);
    if (a.n1() != b.n1() || a.n3() != b.n3()) {
        throw ShapeError("direct_trls: A is " + to_string(a.shape()) + ", B is " +
                         to_string(b.shape()));
    }
    return idft_tubes(spectral::direct_trls(dft_tubes(a), dft_tubes(b), lambda, form));
}

Tensor3 min_norm_augmented_ls(const Tensor3& a, const Tensor3& b, double lambda) {
    require_lambda(lambda);
    if (a.n1() != b.n1() || a.n3() != b.n3()) {
        throw ShapeError("min_norm_augmented_ls: A is " + to_string(a.shape()) + ", B is " +
                         to_string(b.shape()));
    }
    const Tensor3 a_lambda = concat_cols(a, lambda * identity(a.n1(), a.n3()));
    const SpectralTensor abar = dft_tubes(a_lambda);
    const SpectralTensor bbar = dft_tubes(b);
    SpectralTensor xhat(a_lambda.n2(), b.n2(), a.n3());
    parallel_for(abar.unique_slices(), [&](Index j) {
        if (abar.is_real_slice(j)) {
            Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(abar.half_slice(j).real());
            xhat.half_slice(j) = cod.solve(MatrixXd(bbar.half_slice(j).real())).cast<Complex>();
        } else {
            Eigen::CompleteOrthogonalDecomposition<MatrixXcd> cod(abar.half_slice(j));
            xhat.half_slice(j) = cod.solve(MatrixXcd(bbar.half_slice(j)));
        }
    });
    return idft_tubes(xhat);
}

}  // namespace tirls
