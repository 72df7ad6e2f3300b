#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "tirls/problems.hpp"
#include "tirls/tensor.hpp"

namespace tirls::test {

inline Tensor3 randn(Index n1, Index n2, Index n3, std::uint64_t seed) {
    Rng rng(seed);
    return randn_tensor(n1, n2, n3, rng);
}

inline Tensor3 tube(std::vector<double> v) {
    const auto p = static_cast<Index>(v.size());
    return {1, 1, p, std::move(v)};
}

inline double max_abs_diff(const Tensor3& a, const Tensor3& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
    }
    return d;
}

// Naive O(p^2) DFT of one tube, the reference for the FFT path.
inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& x) {
    const auto p = x.size();
    std::vector<std::complex<double>> out(p);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = 0; k < p; ++k) {
            const double ang = -2.0 * std::numbers::pi * double(j * k % p) / double(p);
            out[j] += x[k] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
    }
    return out;
}

// t-product through the block-circulant matrix.
inline Tensor3 bcirc_tprod(const Tensor3& a, const Tensor3& b) {
    return fold(bcirc(a) * unfold(b), a.n1(), b.n2(), a.n3());
}

// Spatial transpose built from the element definition.
inline Tensor3 naive_transpose(const Tensor3& a) {
    Tensor3 t(a.n2(), a.n1(), a.n3());
    for (Index k = 0; k < a.n3(); ++k) {
        const Index src = (a.n3() - k) % a.n3();
        for (Index i = 0; i < a.n1(); ++i) {
            for (Index j = 0; j < a.n2(); ++j) {
                t(j, i, k) = a(i, j, src);
            }
        }
    }
    return t;
}

// Tikhonov solution from the unfolded block-circulant system.
inline Tensor3 dense_tikhonov(const Tensor3& a, const Tensor3& b, double lambda) {
    const Eigen::MatrixXd ba = bcirc(a);
    const Eigen::MatrixXd lhs =
        ba.transpose() * ba +
        lambda * lambda * Eigen::MatrixXd::Identity(ba.cols(), ba.cols());
    const Eigen::MatrixXd x = lhs.ldlt().solve(ba.transpose() * unfold(b));
    return fold(x, a.n2(), b.n2(), a.n3());
}

}  // namespace tirls::test
