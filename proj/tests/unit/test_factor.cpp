#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "tirls/errors.hpp"
#include "tirls/factor.hpp"
#include "tirls/tproduct.hpp"

using namespace tirls;
using tirls::test::randn;

namespace {

// Classical Gram-Schmidt with positive diagonal.
void gram_schmidt(const Eigen::MatrixXd& a, Eigen::MatrixXd& q, Eigen::MatrixXd& r) {
    const Index n = a.cols();
    q = Eigen::MatrixXd::Zero(a.rows(), n);
    r = Eigen::MatrixXd::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        Eigen::VectorXd v = a.col(j);
        for (Index i = 0; i < j; ++i) {
            r(i, j) = q.col(i).dot(a.col(j));
            v -= r(i, j) * q.col(i);
        }
        r(j, j) = v.norm();
        q.col(j) = v / r(j, j);
    }
}

double orth_defect(const Tensor3& q) {
    return fro_norm(tprod(transpose(q), q) - identity(q.n2(), q.n3()));
}

}  // namespace

TEST_CASE("t-QR of the identity") {
    const TQrResult f = tqr(identity(3, 4));
    CHECK(fro_norm(f.q - identity(3, 4)) < 1e-14);
    CHECK(fro_norm(f.r - identity(3, 4)) < 1e-14);
}

TEST_CASE("t-QR with n3 = 1 matches Gram-Schmidt") {
    const Tensor3 a = randn(4, 3, 1, 1);
    Eigen::MatrixXd q, r;
    gram_schmidt(a.slice(0), q, r);
    const TQrResult f = tqr(a);
    CHECK((f.q.slice(0) - q).norm() < 1e-12);
    CHECK((f.r.slice(0) - r).norm() < 1e-12);
}

TEST_CASE("t-QR invariants on random shapes") {
    std::uint64_t seed = 10;
    for (Index n1 : {1, 3, 6, 8})
        for (Index n2 : {1, 3, 5, 8})
            for (Index p : {1, 2, 4, 5, 6})
                for (QrMode mode : {QrMode::economy, QrMode::full}) {
                    const Tensor3 a = randn(n1, n2, p, ++seed);
                    const TQrResult f = tqr(a, mode);
                    const Index r = mode == QrMode::economy ? std::min(n1, n2) : n1;
                    CHECK(f.q.shape() == Shape3{n1, r, p});
                    CHECK(f.r.shape() == Shape3{r, n2, p});
                    CHECK(orth_defect(f.q) <= 1e-10 * std::sqrt(double(r)));
                    CHECK(fro_norm(tprod(f.q, f.r) - a) <= 1e-10 * fro_norm(a));
                    const SpectralTensor rb = dft_tubes(f.r);
                    for (Index j = 0; j < p; ++j) {
                        const Eigen::MatrixXcd s = rb.slice(j);
                        for (Index i = 0; i < std::min(r, n2); ++i) {
                            CHECK(std::abs(s(i, i).imag()) < 1e-10);
                            CHECK(s(i, i).real() > -1e-12);
                            for (Index k = 0; k < i; ++k) CHECK(std::abs(s(i, k)) < 1e-12);
                        }
                    }
                }
}

TEST_CASE("t-SVD of the identity") {
    const TSvdResult f = tsvd(identity(3, 2));
    CHECK(fro_norm(f.s - identity(3, 2)) < 1e-14);
}

TEST_CASE("t-SVD with n3 = 1 gives the singular values of eig(A^T A)") {
    const Tensor3 a = randn(4, 3, 1, 2);
    const Eigen::MatrixXd m = a.slice(0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.transpose() * m);
    Eigen::VectorXd sv = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().reverse();
    const TSvdResult f = tsvd(a);
    for (Index i = 0; i < 3; ++i) CHECK(f.s(i, i, 0) == doctest::Approx(sv(i)).epsilon(1e-12));
}

TEST_CASE("t-SVD reconstruction and ordering") {
    std::uint64_t seed = 300;
    for (Index n1 : {2, 5, 7})
        for (Index n2 : {1, 5, 6})
            for (Index p : {1, 3, 4}) {
                const Tensor3 a = randn(n1, n2, p, ++seed);
                const TSvdResult f = tsvd(a);
                CHECK(fro_norm(tprod(tprod(f.u, f.s), transpose(f.v)) - a) <= 1e-9 * fro_norm(a));
                CHECK(orth_defect(f.u) < 1e-10);
                CHECK(orth_defect(f.v) < 1e-10);
                const SpectralTensor sb = dft_tubes(f.s);
                for (Index j = 0; j < p; ++j) {
                    const Eigen::MatrixXcd s = sb.slice(j);
                    for (Index i = 0; i < s.rows(); ++i) {
                        CHECK(s(i, i).real() >= -1e-12);
                        if (i > 0) CHECK(s(i, i).real() <= s(i - 1, i - 1).real() + 1e-12);
                    }
                }
            }
}

TEST_CASE("spectral singular values of a product are bounded by the factor norms") {
    const Tensor3 a = randn(4, 5, 3, 1);
    const Tensor3 b = randn(5, 3, 3, 2);
    const SpectralTensor sa = dft_tubes(tsvd(a).s), sb = dft_tubes(tsvd(b).s);
    const SpectralTensor sab = dft_tubes(tsvd(tprod(a, b)).s);
    for (Index j = 0; j < 3; ++j) {
        CHECK(sab.slice(j)(0, 0).real() <=
              sa.slice(j)(0, 0).real() * sb.slice(j)(0, 0).real() * (1 + 1e-12));
    }
}

TEST_CASE("tensor least squares") {
    const Tensor3 d = randn(3, 2, 4, 1);
    CHECK(rel_error(tls_solve(identity(3, 4), d), d) < 1e-14);

    // n3 = 1 against the normal equations.
    const Tensor3 c = randn(5, 3, 1, 2);
    const Tensor3 rhs = randn(5, 1, 1, 3);
    const Eigen::MatrixXd cm = c.slice(0);
    const Eigen::VectorXd y = (cm.transpose() * cm).ldlt().solve(cm.transpose() * rhs.slice(0));
    CHECK((tls_solve(c, rhs).slice(0) - y).norm() < 1e-12 * y.norm());

    // Square f-upper triangular system from t-QR.
    const Tensor3 r = tqr(randn(4, 4, 3, 4)).r;
    const Tensor3 d2 = randn(4, 2, 3, 5);
    CHECK(fro_norm(tprod(r, tls_solve(r, d2)) - d2) <= 1e-11 * fro_norm(d2));
}

TEST_CASE("tensor least squares minimizes the residual") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Tensor3 c = randn(7, 4, 3, 10 + s);
        const Tensor3 d = randn(7, 2, 3, 40 + s);
        const Tensor3 y = tls_solve(c, d);
        const double r0 = fro_norm(tprod(c, y) - d);
        for (std::uint64_t t = 0; t < 5; ++t) {
            Tensor3 dy = randn(4, 2, 3, 1000 * s + t);
            dy *= 1e-3 * fro_norm(y) / fro_norm(dy);
            CHECK(fro_norm(tprod(c, y + dy) - d) >= r0);
        }
    }
}

TEST_CASE("rank-deficient slices are reported") {
    Tensor3 c = randn(4, 3, 2, 6);
    c.set_lateral(2, c.lateral(0));
    try {
        (void)tls_solve(c, randn(4, 1, 2, 7));
        FAIL("expected RankDeficientError");
    } catch (const RankDeficientError& e) {
        CHECK(e.slice() >= 0);
        CHECK(e.sigma_min() < 1e-10);
    }
}

TEST_CASE("triangular solves") {
    const Tensor3 r = tqr(randn(5, 4, 3, 8)).r;  // 4 x 4 x 3
    const Tensor3 x = randn(4, 2, 3, 9);
    CHECK(rel_error(tprod(r, f_tri_solve(r, x, TriApply::left_inverse)), x) < 1e-12);
    CHECK(rel_error(tprod(transpose(r), f_tri_solve(r, x, TriApply::left_inverse_transpose)), x) <
          1e-12);
    const Tensor3 xr = randn(2, 4, 3, 10);
    CHECK(rel_error(tprod(f_tri_solve(r, xr, TriApply::right_inverse), r), xr) < 1e-12);

    Tensor3 singular = r;
    for (Index k = 0; k < 3; ++k) singular(2, 2, k) = 0.0;
    CHECK_THROWS_AS(f_tri_solve(singular, x, TriApply::left_inverse), SingularFactorError);
}

TEST_CASE("direct Tikhonov") {
    const Tensor3 b = randn(3, 2, 4, 11);
    const double lam = 0.7;
    CHECK(rel_error(direct_trls(identity(3, 4), b, lam), (1.0 / (1.0 + lam * lam)) * b) < 1e-14);

    for (std::uint64_t s = 0; s < 12; ++s) {
        const Index m = 2 + static_cast<Index>(s % 5), n = 1 + static_cast<Index>((s * 7) % 6);
        const Tensor3 a = randn(m, n, 3, 20 + s);
        const Tensor3 bb = randn(m, 2, 3, 60 + s);
        for (double l : {1e-2, 1.0, 1e2}) {
            const Tensor3 ref = tirls::test::dense_tikhonov(a, bb, l);
            CHECK(rel_error(direct_trls(a, bb, l, TrlsForm::normal), ref) < 1e-9);
            CHECK(rel_error(direct_trls(a, bb, l, TrlsForm::dual), ref) < 1e-9);
            const Tensor3 x = direct_trls(a, bb, l);
            const Tensor3 at = transpose(a);
            CHECK(rel_error(tprod(at, tprod(a, x)) + (l * l) * x, tprod(at, bb)) <= 1e-10);
        }
    }
    CHECK_THROWS_AS(direct_trls(identity(2, 2), randn(2, 1, 2, 1), 0.0), ArgumentError);
    CHECK_THROWS_AS(direct_trls(identity(2, 2), randn(3, 1, 2, 1), 1.0), ShapeError);
}

TEST_CASE("minimum-norm augmented solution contains the Tikhonov solution") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Index m = 1 + static_cast<Index>(s % 6), n = 1 + static_cast<Index>((s * 5) % 7);
        const double lam = std::array<double, 3>{1e-2, 1.0, 1e2}[s % 3];
        const Tensor3 a = randn(m, n, 1 + static_cast<Index>(s % 4), 100 + s);
        const Tensor3 b = randn(m, 2, a.n3(), 200 + s);
        const Tensor3 full = min_norm_augmented_ls(a, b, lam);
        REQUIRE(full.shape() == Shape3{n + m, 2, a.n3()});
        const Tensor3 x = row_block(full, 0, n);
        const Tensor3 y = row_block(full, n, m);
        CHECK(rel_error(x, direct_trls(a, b, lam)) <= 1e-10);
        // The bottom block carries the scaled residual.
        CHECK(fro_norm(lam * y - (b - tprod(a, x))) <= 1e-9 * fro_norm(b));
    }
}
