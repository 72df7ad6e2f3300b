#include "tirls/tproduct.hpp"

#include <algorithm>
#include <cmath>

#include "tirls/errors.hpp"
#include "tirls/parallel.hpp"

namespace tirls {

namespace spectral {

SpectralTensor tprod(const SpectralTensor& a, const SpectralTensor& b) {
    if (a.n2() != b.n1() || a.n3() != b.n3()) {
        throw ShapeError("tprod: " + to_string(a.shape()) + " * " + to_string(b.shape()));
    }
    SpectralTensor c(a.n1(), b.n2(), a.n3());
    parallel_for(a.unique_slices(), [&](Index j) {
        c.half_slice(j).noalias() = a.half_slice(j) * b.half_slice(j);
    });
    return c;
}

SpectralTensor transpose(const SpectralTensor& a) {
    SpectralTensor t(a.n2(), a.n1(), a.n3());
    for (Index j = 0; j < a.unique_slices(); ++j) {
        t.half_slice(j) = a.half_slice(j).adjoint();
    }
    return t;
}

std::vector<double> normalize_in_place(SpectralTensor& x, Rng& rng, double reference_scale,
                                       std::vector<Index>* replaced) {
    if (x.n2() != 1) {
        throw ShapeError("normalize expects an n x 1 x p tensor, got " + to_string(x.shape()));
    }
    const Index h = x.unique_slices();
    std::vector<double> norms(static_cast<std::size_t>(h));
    double largest = 0.0;
    for (Index j = 0; j < h; ++j) {
        norms[static_cast<std::size_t>(j)] = x.half_slice(j).norm();
        largest = std::max(largest, norms[static_cast<std::size_t>(j)]);
    }
    const double tol = std::max(kNormalizeTol * std::max(largest, reference_scale), 1e-300);
    for (Index j = 0; j < h; ++j) {
        double& a = norms[static_cast<std::size_t>(j)];
        auto v = x.half_slice(j);
        if (a >= tol) {
            v /= a;
            continue;
        }
        for (Index i = 0; i < v.rows(); ++i) {
            v(i, 0) = Complex(rng.normal(), 0.0);
        }
        v /= v.norm();
        a = 0.0;
        if (replaced != nullptr) {
            replaced->push_back(j);
        }
    }
    return norms;
}

bool invertible(const std::vector<double>& magnitudes, double tol) {
    if (magnitudes.empty()) {
        return false;
    }
    const auto [lo, hi] = std::minmax_element(magnitudes.begin(), magnitudes.end());
    return *hi > 0.0 && *lo > tol * *hi;
}

TubalScalar tube_from_real_spectrum(const std::vector<double>& half, Index p) {
    SpectralTensor s(1, 1, p);
    for (Index j = 0; j < s.unique_slices(); ++j) {
        s.half_slice(j)(0, 0) = Complex(half[static_cast<std::size_t>(j)], 0.0);
    }
    return TubalScalar::from_tensor(idft_tubes(s));
}

}  // namespace spectral

Tensor3 tprod(const Tensor3& a, const Tensor3& b) {
    if (a.n2() != b.n1() || a.n3() != b.n3()) {
        throw ShapeError("tprod: " + to_string(a.shape()) + " * " + to_string(b.shape()));
    }
    return idft_tubes(spectral::tprod(dft_tubes(a), dft_tubes(b)));
}

Tensor3 transpose(const Tensor3& a) {
    const Index n3 = a.n3();
    Tensor3 t(a.n2(), a.n1(), n3);
    for (Index k = 0; k < n3; ++k) {
        const Index src = k == 0 ? 0 : n3 - k;
        t.slice(k) = a.slice(src).transpose();
    }
    return t;
}

double tube_length(const Tensor3& x) {
    if (x.n2() != 1) {
        throw ShapeError("tube_length expects an n x 1 x p tensor");
    }
    const double nx = fro_norm(x);
    if (nx == 0.0) {
        throw ZeroInputError("tube_length of a zero tensor");
    }
    return fro_norm(tprod(transpose(x), x)) / nx;
}

SpectralRange spectral_range(const TubalScalar& a) {
    if (a.size() == 0) {
        throw ShapeError("empty tube");
    }
    const auto hat = dft_tube(a.entries());
    SpectralRange r{std::abs(hat[0]), std::abs(hat[0])};
    for (const Complex& z : hat) {
        r.min = std::min(r.min, std::abs(z));
        r.max = std::max(r.max, std::abs(z));
    }
    return r;
}

bool is_invertible(const TubalScalar& a, double tol) {
    const SpectralRange r = spectral_range(a);
    return r.max > 0.0 && r.min > tol * r.max;
}

TubalScalar tube_inverse(const TubalScalar& a, double tol) {
    const SpectralRange r = spectral_range(a);
    if (!(r.max > 0.0 && r.min > tol * r.max)) {
        throw NotInvertibleError("tube is not invertible: min Fourier magnitude " +
                                     std::to_string(r.min) + ", max " + std::to_string(r.max),
                                 r.min);
    }
    SpectralTensor s = dft_tubes(a.as_tensor());
    for (Index j = 0; j < s.unique_slices(); ++j) {
        s.half_slice(j)(0, 0) = 1.0 / s.half_slice(j)(0, 0);
    }
    return TubalScalar::from_tensor(idft_tubes(s));
}

NormalizeResult normalize(const Tensor3& x, Rng& rng) {
    if (x.n2() != 1) {
        throw ShapeError("normalize expects an n x 1 x p tensor, got " + to_string(x.shape()));
    }
    if (fro_norm(x) == 0.0) {
        throw ZeroInputError("normalize of a zero tensor");
    }
    SpectralTensor s = dft_tubes(x);
    std::vector<Index> replaced;
    const auto norms = spectral::normalize_in_place(s, rng, 0.0, &replaced);
    return {idft_tubes(s), spectral::tube_from_real_spectrum(norms, x.n3()),
            static_cast<Index>(replaced.size())};
}

}  // namespace tirls
