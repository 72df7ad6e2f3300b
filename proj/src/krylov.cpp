#include "tirls/krylov.hpp"

#include <algorithm>
#include <string>

#include "krylov_detail.hpp"
#include "tirls/errors.hpp"
#include "tirls/parallel.hpp"
#include "tirls/tproduct.hpp"

namespace tirls {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace detail {

namespace {

// Projects the replacement vectors Normalize drew for degenerate slices onto
// the complement of the current basis, so a breakdown step keeps the basis
// orthonormal. The matching Fourier coefficient is zero, so the
// decomposition is unaffected.
void orthogonalize_replacements(SpectralTensor& v, const std::vector<MatrixXcd>& basis,
                                Index used, const std::vector<Index>& replaced) {
    for (Index j : replaced) {
        if (used == 0) {
            continue;
        }
        auto b = basis[static_cast<std::size_t>(j)].leftCols(used);
        VectorXcd x = v.half_slice(j);
        for (int pass = 0; pass < 2; ++pass) {
            x -= b * (b.adjoint() * x);
        }
        const double nx = x.norm();
        if (nx > 1e-8) {
            v.half_slice(j) = x / nx;
        }
    }
}

}  // namespace

MatrixXcd SpectralGkb::pbar_slice(Index j) const {
    MatrixXcd p = MatrixXcd::Zero(steps + 1, steps);
    const auto jj = static_cast<std::size_t>(j);
    for (Index i = 0; i < steps; ++i) {
        p(i, i) = c[static_cast<std::size_t>(i)][jj];
        p(i + 1, i) = z[static_cast<std::size_t>(i + 1)][jj];
    }
    return p;
}

SpectralGkb gkb_spectral(const SpectralTensor& abar, const SpectralTensor& bbar, Index k,
                         bool reorthogonalize, Rng& rng) {
    const Index m = abar.n1();
    const Index n = abar.n2();
    const Index p = abar.n3();
    const Index h = abar.unique_slices();
    if (bbar.n1() != m || bbar.n2() != 1 || bbar.n3() != p) {
        throw ShapeError("tgkb: b must be " + to_string({m, 1, p}) + ", got " +
                         to_string(bbar.shape()));
    }
    if (k < 1 || k > std::min(m, n)) {
        throw ArgumentError("tgkb: steps must satisfy 1 <= k <= min(m, n) = " +
                            std::to_string(std::min(m, n)) + ", got " + std::to_string(k));
    }

    double atb = 0.0;
    double scale = 0.0;
    for (Index j = 0; j < h; ++j) {
        atb = std::max(atb, (abar.half_slice(j).adjoint() * bbar.half_slice(j)).norm());
        scale = std::max(scale, abar.half_slice(j).norm() * bbar.half_slice(j).norm());
    }
    if (!(atb > 1e-14 * scale)) {
        throw ZeroInputError("tgkb: A^T * b is zero");
    }

    SpectralGkb g;
    g.w.assign(static_cast<std::size_t>(h), MatrixXcd::Zero(n, k));
    g.q.assign(static_cast<std::size_t>(h), MatrixXcd::Zero(m, k + 1));

    SpectralTensor qv = bbar;
    g.z.push_back(spectral::normalize_in_place(qv, rng));
    for (Index j = 0; j < h; ++j) {
        g.q[static_cast<std::size_t>(j)].col(0) = qv.half_slice(j);
    }
    if (!spectral::invertible(g.z[0])) {
        g.breakdown = true;
        g.steps = 0;
    } else {
        SpectralTensor wv(n, 1, p);
        std::vector<double> refs(static_cast<std::size_t>(h));
        std::vector<Index> replaced;
        g.steps = k;
        for (Index i = 0; i < k; ++i) {
            const auto& zi = g.z[static_cast<std::size_t>(i)];
            parallel_for(h, [&](Index j) {
                const auto jj = static_cast<std::size_t>(j);
                VectorXcd t = abar.half_slice(j).adjoint() * g.q[jj].col(i);
                refs[jj] = t.norm();
                if (i > 0) {
                    t -= g.w[jj].col(i - 1) * zi[jj];
                    if (reorthogonalize) {
                        auto basis = g.w[jj].leftCols(i);
                        t -= basis * (basis.adjoint() * t);
                    }
                }
                wv.half_slice(j) = t;
            });
            replaced.clear();
            auto ci = spectral::normalize_in_place(
                wv, rng, *std::max_element(refs.begin(), refs.end()), &replaced);
            if (reorthogonalize) {
                orthogonalize_replacements(wv, g.w, i, replaced);
            }
            if (!spectral::invertible(ci)) {
                g.breakdown = true;
                g.steps = i;
                break;
            }
            for (Index j = 0; j < h; ++j) {
                g.w[static_cast<std::size_t>(j)].col(i) = wv.half_slice(j);
            }
            g.c.push_back(std::move(ci));

            const auto& cur = g.c.back();
            parallel_for(h, [&](Index j) {
                const auto jj = static_cast<std::size_t>(j);
                VectorXcd t = abar.half_slice(j) * g.w[jj].col(i);
                refs[jj] = t.norm();
                t -= g.q[jj].col(i) * cur[jj];
                if (reorthogonalize) {
                    auto basis = g.q[jj].leftCols(i + 1);
                    t -= basis * (basis.adjoint() * t);
                }
                qv.half_slice(j) = t;
            });
            replaced.clear();
            auto zn = spectral::normalize_in_place(
                qv, rng, *std::max_element(refs.begin(), refs.end()), &replaced);
            if (reorthogonalize) {
                orthogonalize_replacements(qv, g.q, i + 1, replaced);
            }
            for (Index j = 0; j < h; ++j) {
                g.q[static_cast<std::size_t>(j)].col(i + 1) = qv.half_slice(j);
            }
            const bool ok = spectral::invertible(zn);
            g.z.push_back(std::move(zn));
            if (!ok) {
                g.breakdown = true;
                g.steps = i + 1;
                break;
            }
        }
    }

    for (Index j = 0; j < h; ++j) {
        auto& w = g.w[static_cast<std::size_t>(j)];
        auto& q = g.q[static_cast<std::size_t>(j)];
        w.conservativeResize(n, g.steps);
        q.conservativeResize(m, g.steps + 1);
    }
    g.z.resize(static_cast<std::size_t>(g.steps + 1));
    return g;
}

}  // namespace detail

GkbResult tgkb(const Tensor3& a, const Tensor3& b, Index k, bool reorthogonalize, Rng& rng) {
    if (b.n2() != 1 || b.n1() != a.n1() || b.n3() != a.n3()) {
        throw ShapeError("tgkb: b must be " + to_string({a.n1(), 1, a.n3()}) + ", got " +
                         to_string(b.shape()));
    }
    const SpectralTensor abar = dft_tubes(a);
    const auto g = detail::gkb_spectral(abar, dft_tubes(b), k, reorthogonalize, rng);

    const Index p = a.n3();
    SpectralTensor w(a.n2(), g.steps, p);
    SpectralTensor q(a.n1(), g.steps + 1, p);
    SpectralTensor pbar(g.steps + 1, g.steps, p);
    for (Index j = 0; j < abar.unique_slices(); ++j) {
        w.half_slice(j) = g.w[static_cast<std::size_t>(j)];
        q.half_slice(j) = g.q[static_cast<std::size_t>(j)];
        pbar.half_slice(j) = g.pbar_slice(j);
    }
    return {idft_tubes(w), idft_tubes(q), idft_tubes(pbar),
            spectral::tube_from_real_spectrum(g.z[0], p), g.steps, g.breakdown};
}

}  // namespace tirls
