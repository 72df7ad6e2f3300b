#include "tirls/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "tirls/errors.hpp"
#include "tirls/factor.hpp"
#include "tirls/krylov.hpp"
#include "tirls/problems.hpp"
#include "tirls/solvers.hpp"
#include "tirls/spectral.hpp"
#include "tirls/tproduct.hpp"

namespace tirls {

namespace {

using TransposeFn = std::function<Tensor3(const Tensor3&)>;

Index draw(Rng& rng, Index lo, Index hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    return lo + std::min(hi - lo, static_cast<Index>(rng.uniform() * span));
}

double diff(const Tensor3& a, const Tensor3& b) { return fro_norm(a - b); }

double rel(const Tensor3& a, const Tensor3& ref) {
    const double r = fro_norm(ref);
    return diff(a, ref) / (r > 0.0 ? r : 1.0);
}

std::string shape_note(const Shape3& s) { return "shape " + to_string(s); }

// Collects the worst value over the trials of one suite.
class Suite {
public:
    Suite(std::string name, double tol, int trials) {
        r_.name = std::move(name);
        r_.tolerance = tol;
        r_.trials = trials;
    }

    void observe(double value, const std::string& where) {
        if (!(value <= r_.tolerance)) {
            if (r_.passed) {
                std::ostringstream os;
                os.precision(3);
                os << where << ": " << value;
                r_.detail = os.str();
            }
            r_.passed = false;
        }
        if (std::isnan(value) || value > r_.worst) {
            r_.worst = value;
        }
    }

    void fail(const std::string& where, const std::exception& e) {
        if (r_.passed) {
            r_.detail = where + ": " + e.what();
        }
        r_.passed = false;
    }

    SuiteResult result() && { return std::move(r_); }

private:
    SuiteResult r_;
};

template <typename Body>
SuiteResult run_suite(const char* name, double tol, int trials, std::uint64_t seed,
                      std::uint64_t stream, Body&& body) {
    Suite s(name, tol, trials);
    Rng rng(Rng::derive(seed, stream));
    for (int t = 0; t < trials; ++t) {
        try {
            body(rng, s);
        } catch (const std::exception& e) {
            s.fail("trial " + std::to_string(t), e);
        }
    }
    return std::move(s).result();
}

SuiteResult fft_roundtrip(const VerifyOptions& o) {
    return run_suite("fft roundtrip", 1e-13, o.trials, o.seed, 1, [](Rng& rng, Suite& s) {
        const Tensor3 a = randn_tensor(draw(rng, 1, 8), draw(rng, 1, 8), draw(rng, 1, 9), rng);
        s.observe(rel(idft_tubes(dft_tubes(a)), a), shape_note(a.shape()));
    });
}

SuiteResult tprod_bcirc(const VerifyOptions& o) {
    return run_suite("t-product vs bcirc", 1e-11, o.trials, o.seed, 2, [](Rng& rng, Suite& s) {
        const Index n1 = draw(rng, 1, 6), n2 = draw(rng, 1, 6), q = draw(rng, 1, 6);
        const Index p = draw(rng, 1, 5);
        const Tensor3 a = randn_tensor(n1, n2, p, rng);
        const Tensor3 b = randn_tensor(n2, q, p, rng);
        const Tensor3 oracle = fold(bcirc(a) * unfold(b), n1, q, p);
        s.observe(rel(tprod(a, b), oracle), shape_note(a.shape()));
    });
}

SuiteResult transpose_law(const VerifyOptions& o, const TransposeFn& tr) {
    return run_suite("transpose anti-homomorphism", 1e-12, o.trials, o.seed, 3,
                     [&tr](Rng& rng, Suite& s) {
                         const Index n1 = draw(rng, 1, 6), n2 = draw(rng, 1, 6);
                         const Index q = draw(rng, 1, 6), p = draw(rng, 1, 6);
                         const Tensor3 a = randn_tensor(n1, n2, p, rng);
                         const Tensor3 b = randn_tensor(n2, q, p, rng);
                         const double d = diff(tr(tprod(a, b)), tprod(tr(b), tr(a)));
                         s.observe(d / (fro_norm(a) * fro_norm(b)), shape_note(a.shape()));
                     });
}

SuiteResult identity_laws(const VerifyOptions& o) {
    return run_suite("identity laws", 1e-13, o.trials, o.seed, 4, [](Rng& rng, Suite& s) {
        const Index n1 = draw(rng, 1, 7), n2 = draw(rng, 1, 7), p = draw(rng, 1, 7);
        const Tensor3 a = randn_tensor(n1, n2, p, rng);
        s.observe(std::max(rel(tprod(a, identity(n2, p)), a), rel(tprod(identity(n1, p), a), a)),
                  shape_note(a.shape()));
    });
}

SuiteResult bcirc_norm(const VerifyOptions& o) {
    return run_suite("bcirc norm", 1e-12, o.trials, o.seed, 5, [](Rng& rng, Suite& s) {
        const Tensor3 a = randn_tensor(draw(rng, 1, 6), draw(rng, 1, 6), draw(rng, 1, 6), rng);
        const double expect = std::sqrt(static_cast<double>(a.n3())) * fro_norm(a);
        s.observe(std::abs(bcirc(a).norm() - expect) / expect, shape_note(a.shape()));
    });
}

SuiteResult normalize_suite(const VerifyOptions& o) {
    return run_suite("normalize", 1e-10, o.trials, o.seed, 6, [](Rng& rng, Suite& s) {
        const Tensor3 x = randn_tensor(draw(rng, 1, 8), 1, draw(rng, 1, 8), rng);
        const NormalizeResult nr = normalize(x, rng);
        const double recon = rel(tprod(nr.v, nr.a.as_tensor()), x);
        const double unit = std::abs(tube_length(nr.v) - 1.0);
        s.observe(std::max(recon, unit), shape_note(x.shape()));
    });
}

SuiteResult tqr_suite(const VerifyOptions& o) {
    return run_suite("t-QR", 1e-10, o.trials, o.seed, 7, [](Rng& rng, Suite& s) {
        const Tensor3 a = randn_tensor(draw(rng, 1, 8), draw(rng, 1, 8), draw(rng, 1, 6), rng);
        const QrMode mode = rng.uniform() < 0.5 ? QrMode::economy : QrMode::full;
        const TQrResult f = tqr(a, mode);
        const Index r = f.q.n2();
        const Tensor3 eye = identity(r, a.n3());
        const double orth = rel(tprod(transpose(f.q), f.q), eye);
        const double recon = rel(tprod(f.q, f.r), a);
        double lower = 0.0;
        for (Index k = 0; k < f.r.n3(); ++k) {
            for (Index j = 0; j < f.r.n2(); ++j) {
                for (Index i = j + 1; i < f.r.n1(); ++i) {
                    lower = std::max(lower, std::abs(f.r(i, j, k)));
                }
            }
        }
        lower /= std::max(fro_norm(f.r), 1e-300);
        s.observe(std::max({orth, recon, lower}), shape_note(a.shape()));
    });
}

SuiteResult tsvd_suite(const VerifyOptions& o) {
    return run_suite("t-SVD", 1e-9, o.trials, o.seed, 8, [](Rng& rng, Suite& s) {
        const Tensor3 a = randn_tensor(draw(rng, 1, 8), draw(rng, 1, 8), draw(rng, 1, 6), rng);
        const TSvdResult f = tsvd(a);
        const Index r = f.s.n1();
        const Tensor3 eye = identity(r, a.n3());
        double worst = rel(tprod(tprod(f.u, f.s), transpose(f.v)), a);
        worst = std::max(worst, rel(tprod(transpose(f.u), f.u), eye));
        worst = std::max(worst, rel(tprod(transpose(f.v), f.v), eye));
        // Spectral singular values: real, nonnegative, non-increasing.
        const SpectralTensor sb = dft_tubes(f.s);
        const double scale = std::max(fro_norm(a), 1e-300);
        for (Index j = 0; j < sb.unique_slices(); ++j) {
            const Eigen::MatrixXcd sl = sb.slice(j);
            for (Index i = 0; i < r; ++i) {
                worst = std::max(worst, std::abs(sl(i, i).imag()) / scale);
                worst = std::max(worst, std::max(0.0, -sl(i, i).real()) / scale);
                if (i > 0) {
                    worst = std::max(worst,
                                     std::max(0.0, sl(i, i).real() - sl(i - 1, i - 1).real()) /
                                         scale);
                }
            }
        }
        s.observe(worst, shape_note(a.shape()));
    });
}

SuiteResult tls_suite(const VerifyOptions& o) {
    return run_suite("t-LS minimizes", 1e-12, o.trials, o.seed, 9, [](Rng& rng, Suite& s) {
        const Index n = draw(rng, 1, 5);
        const Index m = n + draw(rng, 0, 4);
        const Index q = draw(rng, 1, 3), p = draw(rng, 1, 6);
        const Tensor3 c = randn_tensor(m, n, p, rng);
        const Tensor3 d = randn_tensor(m, q, p, rng);
        const Tensor3 y = tls_solve(c, d);
        const double r0 = fro_norm(tprod(c, y) - d);
        double worst = 0.0;
        for (int t = 0; t < 4; ++t) {
            Tensor3 dy = randn_tensor(n, q, p, rng);
            dy *= 1e-3 * fro_norm(y) / fro_norm(dy);
            const double r1 = fro_norm(tprod(c, y + dy) - d);
            worst = std::max(worst, (r0 - r1) / std::max(r0, 1e-300));
        }
        s.observe(worst, shape_note(c.shape()));
    });
}

constexpr std::array<double, 3> kLambdas = {1e-2, 1.0, 1e2};

SuiteResult normal_equations(const VerifyOptions& o, const TransposeFn& tr) {
    return run_suite("direct t-RLS normal equations", 1e-10, o.trials, o.seed, 10,
                     [&tr](Rng& rng, Suite& s) {
                         const Index m = draw(rng, 1, 8), n = draw(rng, 1, 8);
                         const Index c = draw(rng, 1, 4), p = draw(rng, 1, 6);
                         const double lambda = kLambdas[static_cast<std::size_t>(draw(rng, 0, 2))];
                         const Tensor3 a = randn_tensor(m, n, p, rng);
                         const Tensor3 b = randn_tensor(m, c, p, rng);
                         const Tensor3 x = direct_trls(a, b, lambda);
                         const Tensor3 at = tr(a);
                         const Tensor3 rhs = tprod(at, b);
                         const Tensor3 lhs = tprod(at, tprod(a, x)) + (lambda * lambda) * x;
                         s.observe(rel(lhs, rhs), shape_note(a.shape()));
                     });
}

SuiteResult gkb_suite(const VerifyOptions& o) {
    return run_suite("t-GKB identities", 1e-8, o.trials, o.seed, 11, [](Rng& rng, Suite& s) {
        const Index m = draw(rng, 2, 10), n = draw(rng, 1, 10), p = draw(rng, 1, 6);
        // A basis of k + 1 orthonormal columns needs k < m.
        const Index k = draw(rng, 1, std::min({m - 1, n, Index{5}}));
        const Tensor3 a = randn_tensor(m, n, p, rng);
        const Tensor3 b = randn_tensor(m, 1, p, rng);
        const GkbResult g = tgkb(a, b, k, true, rng);
        const Index ks = g.steps;
        double worst = rel(tprod(g.q, g.pbar), tprod(a, g.w));
        const Tensor3 qk = [&] {
            Tensor3 t(m, ks, p);
            for (Index j = 0; j < ks; ++j) {
                t.set_lateral(j, g.q.lateral(j));
            }
            return t;
        }();
        const Tensor3 pk = row_block(g.pbar, 0, ks);
        worst = std::max(worst, rel(tprod(g.w, transpose(pk)), tprod(transpose(a), qk)));
        worst = std::max(worst, rel(tprod(transpose(g.w), g.w), identity(ks, p)));
        worst = std::max(worst, rel(tprod(transpose(g.q), g.q), identity(ks + 1, p)));
        s.observe(worst, shape_note(a.shape()) + " k=" + std::to_string(k));
    });
}

SuiteResult augmented_suite(const VerifyOptions& o) {
    return run_suite("augmented min-norm equals Tikhonov", 1e-10, o.trials, o.seed, 12,
                     [](Rng& rng, Suite& s) {
                         const Index m = draw(rng, 1, 8), n = draw(rng, 1, 8);
                         const Index c = draw(rng, 1, 4), p = draw(rng, 1, 6);
                         const double lambda = kLambdas[static_cast<std::size_t>(draw(rng, 0, 2))];
                         const Tensor3 a = randn_tensor(m, n, p, rng);
                         const Tensor3 b = randn_tensor(m, c, p, rng);
                         const Tensor3 top = row_block(min_norm_augmented_ls(a, b, lambda), 0, n);
                         s.observe(rel(top, direct_trls(a, b, lambda)), shape_note(a.shape()));
                     });
}

SuiteResult update_suite(const VerifyOptions& o) {
    return run_suite("exact-subsolver update identity", 1e-9, o.trials, o.seed, 13,
                     [](Rng& rng, Suite& s) {
                         const Index m = draw(rng, 1, 12), n = draw(rng, 1, 12);
                         const Index c = draw(rng, 1, 6), p = draw(rng, 1, 8);
                         const double lambda = kLambdas[static_cast<std::size_t>(draw(rng, 0, 2))];
                         TrlsProblem prob{randn_tensor(m, n, p, rng), randn_tensor(m, c, p, rng),
                                          lambda};
                         const UpdateSample smp{randn_tensor(n, 1, p, rng),
                                                randn_tensor(c, 1, p, rng)};
                         const Tensor3 x = direct_trls(prob.a, prob.b, lambda);
                         const UpdateResult u = irls_update(prob, x, smp, Subsolver::direct());
                         const TrlsProblem g = append_sample(prob, smp);
                         s.observe(rel(u.x, direct_trls(g.a, g.b, lambda)),
                                   shape_note(prob.a.shape()));
                     });
}

}  // namespace

std::vector<SuiteResult> run_verify(const VerifyOptions& options) {
    if (options.trials < 1) {
        throw ArgumentError("verify needs trials >= 1");
    }
    const TransposeFn tr = options.transpose_impl
                               ? options.transpose_impl
                               : TransposeFn([](const Tensor3& a) { return transpose(a); });
    std::vector<SuiteResult> out;
    out.push_back(fft_roundtrip(options));
    out.push_back(tprod_bcirc(options));
    out.push_back(transpose_law(options, tr));
    out.push_back(identity_laws(options));
    out.push_back(bcirc_norm(options));
    out.push_back(normalize_suite(options));
    out.push_back(tqr_suite(options));
    out.push_back(tsvd_suite(options));
    out.push_back(tls_suite(options));
    out.push_back(normal_equations(options, tr));
    out.push_back(gkb_suite(options));
    out.push_back(augmented_suite(options));
    out.push_back(update_suite(options));
    return out;
}

bool print_verify_report(std::ostream& out, const std::vector<SuiteResult>& results) {
    int failed = 0;
    char buf[256];
    for (const SuiteResult& r : results) {
        std::snprintf(buf, sizeof buf, "%-4s %-36s worst=%.3e tol=%.0e trials=%d",
                      r.passed ? "PASS" : "FAIL", r.name.c_str(), r.worst, r.tolerance, r.trials);
        out << buf;
        if (!r.passed) {
            out << "  (" << r.detail << ")";
            ++failed;
        }
        out << '\n';
    }
    out << (failed == 0 ? "all " + std::to_string(results.size()) + " suites passed"
                        : std::to_string(failed) + " of " + std::to_string(results.size()) +
                              " suites failed")
        << '\n';
    return failed == 0;
}

}  // namespace tirls
