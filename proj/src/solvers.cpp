#include "tirls/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "krylov_detail.hpp"
#include "slice_kernels.hpp"
#include "tirls/errors.hpp"
#include "tirls/factor.hpp"
#include "tirls/parallel.hpp"
#include "tirls/spectral.hpp"
#include "tirls/tproduct.hpp"

namespace tirls {

using Eigen::MatrixXcd;

namespace {

void require_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ArgumentError("lambda must be positive and finite, got " + std::to_string(lambda));
    }
}

// Alg. 4 lines 2-7 for one right-hand side, entirely in the Fourier domain.
SpectralTensor tgkt_column(const SpectralTensor& abar, const SpectralTensor& bbar, double lambda,
                           Index k, bool reorthogonalize, Rng& rng) {
    const auto g = detail::gkb_spectral(abar, bbar, k, reorthogonalize, rng);
    if (g.steps == 0) {
        throw BreakdownError("t-GKB broke down before the first step: z1 is not invertible");
    }
    const Index s = g.steps;
    SpectralTensor x(abar.n2(), 1, abar.n3());
    parallel_for(abar.unique_slices(), [&](Index j) {
        const bool real = abar.is_real_slice(j);
        const MatrixXcd& w = g.w[static_cast<std::size_t>(j)];
        const auto f = detail::qr_slice(w, real, QrMode::economy);
        detail::check_triangular(f.r, j);
        MatrixXcd stacked(2 * s + 1, s);
        stacked.topRows(s + 1) = detail::tri_apply(f.r, g.pbar_slice(j), TriApply::right_inverse);
        stacked.bottomRows(s) = lambda * MatrixXcd::Identity(s, s);
        MatrixXcd rhs = MatrixXcd::Zero(2 * s + 1, 1);
        rhs(0, 0) = g.z[0][static_cast<std::size_t>(j)];
        const MatrixXcd z = detail::ls_slice(stacked, rhs, real, j);
        x.half_slice(j) = w * detail::tri_apply(f.r, z, TriApply::left_inverse);
    });
    return x;
}

SpectralTensor spectral_column(const SpectralTensor& s, Index col) {
    SpectralTensor out(s.n1(), 1, s.n3());
    for (Index j = 0; j < s.unique_slices(); ++j) {
        out.half_slice(j) = s.half_slice(j).col(col);
    }
    return out;
}

void check_sample(const TrlsProblem& problem, const UpdateSample& sample) {
    const Shape3 a1{problem.n(), 1, problem.p()};
    const Shape3 b1{problem.c(), 1, problem.p()};
    if (sample.a1.shape() != a1 || sample.b1.shape() != b1) {
        throw ShapeError("update sample must be a1 " + to_string(a1) + ", b1 " + to_string(b1) +
                         "; got " + to_string(sample.a1.shape()) + ", " +
                         to_string(sample.b1.shape()));
    }
}

// Spectral W = b1^T - a1^T * X, a 1 x c x p tube row.
SpectralTensor residual_row(const SpectralTensor& xbar, const SpectralTensor& a1bar,
                            const SpectralTensor& b1bar) {
    SpectralTensor w(1, xbar.n2(), xbar.n3());
    for (Index j = 0; j < xbar.unique_slices(); ++j) {
        w.half_slice(j) = b1bar.half_slice(j).adjoint() - a1bar.half_slice(j).adjoint() * xbar.half_slice(j);
    }
    return w;
}

IndexChoice choose_index(const SpectralTensor& wbar) {
    const Index c = wbar.n2();
    std::vector<double> mins(static_cast<std::size_t>(c));
    std::optional<IndexChoice> best;
    for (Index l = 0; l < c; ++l) {
        double lo = std::abs(wbar.half_slice(0)(0, l));
        double hi = lo;
        for (Index j = 1; j < wbar.unique_slices(); ++j) {
            const double mag = std::abs(wbar.half_slice(j)(0, l));
            lo = std::min(lo, mag);
            hi = std::max(hi, mag);
        }
        mins[static_cast<std::size_t>(l)] = lo;
        const bool ok = hi > 0.0 && lo > kTubeInvertTol * hi;
        if (ok && (!best || lo > best->min_magnitude)) {
            best = IndexChoice{l, lo};
        }
    }
    if (!best) {
        throw NoInvertibleTubeError("no lateral slice of W is an invertible tube", std::move(mins));
    }
    return *best;
}

}  // namespace

void TrlsProblem::validate() const {
    if (a.n1() < 1 || a.n2() < 1 || a.n3() < 1 || b.n2() < 1) {
        throw ShapeError("problem dimensions must be positive: A " + to_string(a.shape()) +
                         ", B " + to_string(b.shape()));
    }
    if (a.n1() != b.n1() || a.n3() != b.n3()) {
        throw ShapeError("A " + to_string(a.shape()) + " and B " + to_string(b.shape()) +
                         " are not conformable");
    }
    require_lambda(lambda);
}

Tensor3 tgkt_solve_slice(const Tensor3& a, const Tensor3& b, double lambda, Index k, Rng& rng,
                         bool reorthogonalize) {
    require_lambda(lambda);
    if (b.n2() != 1 || b.n1() != a.n1() || b.n3() != a.n3()) {
        throw ShapeError("tgkt_solve_slice: b must be " + to_string({a.n1(), 1, a.n3()}) +
                         ", got " + to_string(b.shape()));
    }
    return idft_tubes(tgkt_column(dft_tubes(a), dft_tubes(b), lambda, k, reorthogonalize, rng));
}

Tensor3 tgkt_solve(const TrlsProblem& problem, Index k, std::uint64_t seed, bool reorthogonalize) {
    problem.validate();
    const SpectralTensor abar = dft_tubes(problem.a);
    const SpectralTensor bbar = dft_tubes(problem.b);
    SpectralTensor xbar(problem.n(), problem.c(), problem.p());
    for (Index col = 0; col < problem.c(); ++col) {
        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(col)));
        try {
            const SpectralTensor x =
                tgkt_column(abar, spectral_column(bbar, col), problem.lambda, k, reorthogonalize, rng);
            for (Index j = 0; j < xbar.unique_slices(); ++j) {
                xbar.half_slice(j).col(col) = x.half_slice(j);
            }
        } catch (const Error& e) {
            throw LateralSliceError("lateral slice " + std::to_string(col) + ": " + e.what(), col);
        }
    }
    return idft_tubes(xbar);
}

Tensor3 compute_residual_tube_row(const Tensor3& x, const UpdateSample& sample) {
    if (x.n1() != sample.a1.n1() || sample.a1.n2() != 1 || sample.b1.n2() != 1 ||
        sample.b1.n1() != x.n2() || x.n3() != sample.a1.n3() || x.n3() != sample.b1.n3()) {
        throw ShapeError("residual row: X " + to_string(x.shape()) + ", a1 " +
                         to_string(sample.a1.shape()) + ", b1 " + to_string(sample.b1.shape()));
    }
    return idft_tubes(residual_row(dft_tubes(x), dft_tubes(sample.a1), dft_tubes(sample.b1)));
}

IndexChoice choose_invertible_index(const Tensor3& w) {
    if (w.n1() != 1 || w.n2() < 1) {
        throw ShapeError("choose_invertible_index expects a 1 x c x p tensor, got " +
                         to_string(w.shape()));
    }
    return choose_index(dft_tubes(w));
}

TrlsProblem append_sample(const TrlsProblem& problem, const UpdateSample& sample) {
    check_sample(problem, sample);
    return {concat_rows(problem.a, transpose(sample.a1)),
            concat_rows(problem.b, transpose(sample.b1)), problem.lambda};
}

UpdateResult irls_update(const TrlsProblem& problem, const Tensor3& x_star,
                         const UpdateSample& sample, const Subsolver& sub) {
    problem.validate();
    check_sample(problem, sample);
    if (x_star.shape() != Shape3{problem.n(), problem.c(), problem.p()}) {
        throw ShapeError("X* must be " + to_string({problem.n(), problem.c(), problem.p()}) +
                         ", got " + to_string(x_star.shape()));
    }

    SpectralTensor xbar = dft_tubes(x_star);
    const SpectralTensor wbar = residual_row(xbar, dft_tubes(sample.a1), dft_tubes(sample.b1));
    const double w_norm = fro_norm(idft_tubes(wbar));
    const double w_floor =
        1e-13 * (fro_norm(sample.b1) + fro_norm(sample.a1) * fro_norm(x_star));
    if (w_norm <= w_floor) {
        return {x_star, std::nullopt, true, false};
    }

    IndexChoice choice;
    try {
        choice = choose_index(wbar);
    } catch (const NoInvertibleTubeError&) {
        const TrlsProblem grown = append_sample(problem, sample);
        Tensor3 x = sub.kind == Subsolver::Kind::direct
                        ? direct_trls(grown.a, grown.b, grown.lambda)
                        : tgkt_solve(grown, sub.steps, sub.seed, sub.reorthogonalize);
        return {std::move(x), std::nullopt, false, true};
    }

    const Index l = choice.index;
    const SpectralTensor grown_a = dft_tubes(concat_rows(problem.a, transpose(sample.a1)));
    const Tensor3 b1t = transpose(sample.b1);
    Tensor3 response(problem.m() + 1, 1, problem.p());
    for (Index k = 0; k < problem.p(); ++k) {
        response.slice(k).topRows(problem.m()) = problem.b.slice(k).col(l);
        response(problem.m(), 0, k) = b1t(0, l, k);
    }
    const SpectralTensor grown_b = dft_tubes(response);

    SpectralTensor xl;
    if (sub.kind == Subsolver::Kind::direct) {
        xl = spectral::direct_trls(grown_a, grown_b, problem.lambda);
    } else {
        Rng rng(sub.seed);
        xl = tgkt_column(grown_a, grown_b, problem.lambda, sub.steps, sub.reorthogonalize, rng);
    }

    // X~ = X* + (x~_l - X*_l) * W_l^-1 * W, slice by slice.
    for (Index j = 0; j < xbar.unique_slices(); ++j) {
        auto xj = xbar.half_slice(j);
        const Eigen::VectorXcd shift = (xl.half_slice(j).col(0) - xj.col(l)) / wbar.half_slice(j)(0, l);
        xj += shift * wbar.half_slice(j);
    }
    return {idft_tubes(xbar), choice, false, false};
}

Tensor3 irls_stream(StreamState& state, std::span<const UpdateSample> samples,
                    const Subsolver& sub) {
    for (const UpdateSample& s : samples) {
        UpdateResult r = irls_update(state.problem, state.x, s, sub);
        TrlsProblem grown = append_sample(state.problem, s);
        state.problem = std::move(grown);
        state.x = std::move(r.x);
        ++state.samples;
    }
    return state.x;
}

}  // namespace tirls
