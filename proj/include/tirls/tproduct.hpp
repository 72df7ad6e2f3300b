#pragma once

#include <vector>

#include "tirls/rng.hpp"
#include "tirls/spectral.hpp"
#include "tirls/tensor.hpp"

namespace tirls {

/// Relative threshold below which a Fourier coefficient makes a tube singular.
inline constexpr double kTubeInvertTol = 1e-10;
/// Relative threshold under which Normalize treats a spectral slice as zero.
inline constexpr double kNormalizeTol = 1e-12;

/// t-product A * B, computed slice-wise in the Fourier domain.
Tensor3 tprod(const Tensor3& a, const Tensor3& b);

/// Tensor transpose: each frontal slice transposed, slices 2..n3 reversed.
Tensor3 transpose(const Tensor3& a);

/// ||x^T * x||_F / ||x||_F for a nonzero n x 1 x p tensor.
double tube_length(const Tensor3& x);

struct SpectralRange {
    double min = 0.0;
    double max = 0.0;
};

/// Smallest and largest DFT magnitude of a tube.
SpectralRange spectral_range(const TubalScalar& a);

/// min |a_hat| > tol * max |a_hat| (and a != 0).
bool is_invertible(const TubalScalar& a, double tol = kTubeInvertTol);

/// b with a * b = e1; throws NotInvertibleError carrying min |a_hat|.
TubalScalar tube_inverse(const TubalScalar& a, double tol = kTubeInvertTol);

struct NormalizeResult {
    Tensor3 v;
    TubalScalar a;
    /// Spectral slices that were below tolerance and got a random unit vector.
    Index replaced_slices = 0;
};

/// Splits a nonzero n x 1 x p tensor into x = v * a with unit tube length.
NormalizeResult normalize(const Tensor3& x, Rng& rng);

namespace spectral {

SpectralTensor tprod(const SpectralTensor& a, const SpectralTensor& b);
/// Conjugate transpose of every slice, the Fourier image of transpose().
SpectralTensor transpose(const SpectralTensor& a);

/**
 * Normalize on an n x 1 spectral lateral slice, in place.
 *
 * Returns the per-slice norms (one per unique slice; zero where the slice was
 * replaced). A slice is replaced by a random unit vector when its norm is
 * below kNormalizeTol * max(max slice norm, reference_scale), floored at 1e-300.
 * `replaced`, when given, receives the list of replaced slice indices.
 */
std::vector<double> normalize_in_place(SpectralTensor& x, Rng& rng, double reference_scale = 0.0,
                                       std::vector<Index>* replaced = nullptr);

/// Invertibility test on the unique-slice magnitudes of a tube.
bool invertible(const std::vector<double>& magnitudes, double tol = kTubeInvertTol);

/// Inverse DFT of a tube given by its real unique-slice spectrum.
TubalScalar tube_from_real_spectrum(const std::vector<double>& half, Index p);

}  // namespace spectral

}  // namespace tirls
