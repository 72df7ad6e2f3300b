#include "tirls/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <fftw3.h>

#include "tirls/errors.hpp"

namespace tirls {

namespace {

// FFTW planning is not thread-safe, execution with the new-array interface is.
// Plans are created with FFTW_UNALIGNED so any std::vector buffer can be used.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan forward(int n3, int howmany) {
        std::lock_guard lock(mutex_);
        auto key = std::make_tuple(n3, howmany, true);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        std::vector<double> in(static_cast<std::size_t>(n3) * howmany);
        std::vector<Complex> out(static_cast<std::size_t>(n3 / 2 + 1) * howmany);
        fftw_plan p = fftw_plan_many_dft_r2c(
            1, &n3, howmany, in.data(), nullptr, howmany, 1,
            reinterpret_cast<fftw_complex*>(out.data()), nullptr, howmany, 1,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    fftw_plan backward(int n3, int howmany) {
        std::lock_guard lock(mutex_);
        auto key = std::make_tuple(n3, howmany, false);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        std::vector<Complex> in(static_cast<std::size_t>(n3 / 2 + 1) * howmany);
        std::vector<double> out(static_cast<std::size_t>(n3) * howmany);
        fftw_plan p = fftw_plan_many_dft_c2r(
            1, &n3, howmany, reinterpret_cast<fftw_complex*>(in.data()), nullptr, howmany, 1,
            out.data(), nullptr, howmany, 1, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    std::mutex mutex_;
    std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

}  // namespace

SpectralTensor::SpectralTensor(Index n1, Index n2, Index n3) : n1_(n1), n2_(n2), n3_(n3) {
    if (n1 < 0 || n2 < 0 || n3 < 1) {
        throw ShapeError("spectral tensor needs n1, n2 >= 0 and n3 >= 1");
    }
    data_.assign(static_cast<std::size_t>(n1 * n2 * unique_slices()), Complex(0.0, 0.0));
}

SpectralTensor SpectralTensor::from_full_slices(const std::vector<Eigen::MatrixXcd>& slices,
                                                double tol) {
    if (slices.empty()) {
        throw ShapeError("from_full_slices: no slices");
    }
    const Index n3 = static_cast<Index>(slices.size());
    const Index n1 = slices[0].rows();
    const Index n2 = slices[0].cols();
    double scale = 0.0;
    for (const auto& s : slices) {
        if (s.rows() != n1 || s.cols() != n2) {
            throw ShapeError("from_full_slices: slices differ in shape");
        }
        scale = std::max(scale, s.norm());
    }
    const double limit = tol * (1.0 + scale);
    for (Index j = 1; j < n3; ++j) {
        const double gap =
            (slices[static_cast<std::size_t>(n3 - j)] - slices[static_cast<std::size_t>(j)].conjugate())
                .cwiseAbs()
                .maxCoeff();
        if (gap > limit) {
            throw NumericalError("spectral slices violate conjugate symmetry at slice " +
                                 std::to_string(j) + " (gap " + std::to_string(gap) + ")");
        }
    }
    SpectralTensor out(n1, n2, n3);
    for (Index j = 0; j < out.unique_slices(); ++j) {
        out.half_slice(j) = slices[static_cast<std::size_t>(j)];
    }
    return out;
}

Eigen::MatrixXcd SpectralTensor::slice(Index j) const {
    if (j < 0 || j >= n3_) {
        throw ShapeError("spectral slice index out of range");
    }
    if (j < unique_slices()) {
        return half_slice(j);
    }
    return half_slice(n3_ - j).conjugate();
}

SpectralTensor dft_tubes(const Tensor3& a) {
    if (a.n3() < 1) {
        throw ShapeError("dft_tubes: tube length must be >= 1");
    }
    SpectralTensor s(a.n1(), a.n2(), a.n3());
    const Index tubes = a.n1() * a.n2();
    if (tubes == 0) {
        return s;
    }
    fftw_plan plan = PlanCache::instance().forward(static_cast<int>(a.n3()), static_cast<int>(tubes));
    // r2c does not modify its input, the const_cast only satisfies the C API.
    fftw_execute_dft_r2c(plan, const_cast<double*>(a.data().data()),
                         reinterpret_cast<fftw_complex*>(s.raw()));
    return s;
}

Tensor3 idft_tubes(const SpectralTensor& s) {
    Tensor3 out(s.n1(), s.n2(), s.n3());
    const Index tubes = s.n1() * s.n2();
    if (tubes == 0) {
        return out;
    }
    const Index n3 = s.n3();
    // c2r overwrites its input.
    std::vector<Complex> scratch(s.raw(), s.raw() + tubes * s.unique_slices());
    fftw_plan plan = PlanCache::instance().backward(static_cast<int>(n3), static_cast<int>(tubes));
    fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(scratch.data()), out.data().data());
    const double inv = 1.0 / static_cast<double>(n3);
    for (double& v : out.data()) {
        v *= inv;
    }

    // The mirrored slices contribute purely real terms; only the imaginary
    // parts of the self-conjugate slices leak into the result.
    double max_imag = 0.0;
    const bool even = n3 % 2 == 0;
    for (Index t = 0; t < tubes; ++t) {
        double im = std::abs(s.raw()[t].imag());
        if (even && n3 > 1) {
            im += std::abs(s.raw()[(n3 / 2) * tubes + t].imag());
        }
        max_imag = std::max(max_imag, im * inv);
    }
    if (max_imag > 1e-8 * (1.0 + fro_norm(out))) {
        throw NumericalError("inverse transform is not real: imaginary residue " +
                             std::to_string(max_imag));
    }
    return out;
}

std::vector<Complex> dft_tube(const std::vector<double>& tube) {
    Tensor3 t(1, 1, static_cast<Index>(tube.size()), tube);
    const SpectralTensor s = dft_tubes(t);
    std::vector<Complex> out(tube.size());
    for (Index j = 0; j < s.n3(); ++j) {
        out[static_cast<std::size_t>(j)] = s.slice(j)(0, 0);
    }
    return out;
}

}  // namespace tirls
