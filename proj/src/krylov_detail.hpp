#pragma once

#include <vector>

#include <Eigen/Core>

#include "tirls/rng.hpp"
#include "tirls/spectral.hpp"

namespace tirls::detail {

// t-GKB state kept per unique spectral slice. Tubes c_i and z_i are stored by
// their real, nonnegative Fourier coefficients.
struct SpectralGkb {
    Index steps = 0;
    bool breakdown = false;
    std::vector<Eigen::MatrixXcd> w;  // n x steps
    std::vector<Eigen::MatrixXcd> q;  // m x (steps + 1)
    std::vector<std::vector<double>> c;  // c[i][j], i < steps
    std::vector<std::vector<double>> z;  // z[0] = z1, ..., z[steps]

    /// (steps + 1) x steps lower-bidiagonal slice j of pbar.
    Eigen::MatrixXcd pbar_slice(Index j) const;
};

SpectralGkb gkb_spectral(const SpectralTensor& abar, const SpectralTensor& bbar, Index k,
                         bool reorthogonalize, Rng& rng);

}  // namespace tirls::detail
