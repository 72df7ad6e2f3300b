#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "tirls/tensor.hpp"

namespace tirls {

using Complex = std::complex<double>;

/**
 * Fourier-domain image of a real tensor: frontal slice j is the n1 x n2
 * complex matrix obtained by a DFT along every tube.
 *
 * Because the source is real, slice n3 - j is the conjugate of slice j. Only
 * the unique slices 0 .. n3/2 are stored; slice(j) reconstructs the rest.
 * Slice 0 (and slice n3/2 when n3 is even) is real up to round-off.
 */
class SpectralTensor {
public:
    SpectralTensor() = default;
    SpectralTensor(Index n1, Index n2, Index n3);

    /// Builds from all n3 slices; throws NumericalError when conjugate symmetry
    /// fails beyond `tol * (1 + max slice norm)`.
    static SpectralTensor from_full_slices(const std::vector<Eigen::MatrixXcd>& slices,
                                           double tol = 1e-8);

    Index n1() const { return n1_; }
    Index n2() const { return n2_; }
    Index n3() const { return n3_; }
    Shape3 shape() const { return {n1_, n2_, n3_}; }
    /// Number of stored slices, n3/2 + 1.
    Index unique_slices() const { return n3_ / 2 + 1; }
    /// True for the slices whose values are real for real input.
    bool is_real_slice(Index j) const { return j == 0 || 2 * j == n3_; }

    Eigen::Map<Eigen::MatrixXcd> half_slice(Index j) {
        return {data_.data() + j * n1_ * n2_, n1_, n2_};
    }
    Eigen::Map<const Eigen::MatrixXcd> half_slice(Index j) const {
        return {data_.data() + j * n1_ * n2_, n1_, n2_};
    }

    /// Any slice 0 <= j < n3, mirrored by conjugation where needed.
    Eigen::MatrixXcd slice(Index j) const;

    Complex* raw() { return data_.data(); }
    const Complex* raw() const { return data_.data(); }

private:
    Index n1_ = 0;
    Index n2_ = 0;
    Index n3_ = 0;
    std::vector<Complex> data_;
};

/// Unnormalized DFT along mode 3.
SpectralTensor dft_tubes(const Tensor3& a);

/// Inverse DFT along mode 3 with 1/n3 scaling. Imaginary residue above
/// 1e-8 * (1 + ||result||_F) is reported as NumericalError, otherwise dropped.
Tensor3 idft_tubes(const SpectralTensor& s);

/// DFT of one tube.
std::vector<Complex> dft_tube(const std::vector<double>& tube);

}  // namespace tirls
