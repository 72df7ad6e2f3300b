#include <doctest.h>

#include "helpers.hpp"
#include "tirls/errors.hpp"
#include "tirls/tproduct.hpp"

using namespace tirls;
using tirls::test::randn;
using tirls::test::tube;

TEST_CASE("t-product of tubes") {
    const Tensor3 c = tprod(tube({1, 2}), tube({3, 4}));
    CHECK(c(0, 0, 0) == doctest::Approx(11));
    CHECK(c(0, 0, 1) == doctest::Approx(10));
}

TEST_CASE("n3 = 1 is the matrix product") {
    const Tensor3 a(2, 2, 1, {1, 3, 2, 4});
    const Tensor3 b(2, 1, 1, {5, 6});
    const Tensor3 c = tprod(a, b);
    CHECK(c(0, 0, 0) == doctest::Approx(17));
    CHECK(c(1, 0, 0) == doctest::Approx(39));
}

TEST_CASE("t-product agrees with the block-circulant oracle") {
    std::uint64_t seed = 100;
    for (Index n1 : {1, 3, 6})
        for (Index n2 : {1, 2, 5})
            for (Index p : {1, 2, 3, 4, 5}) {
                const Tensor3 a = randn(n1, n2, p, ++seed);
                const Tensor3 b = randn(n2, 3, p, ++seed);
                CHECK(rel_error(tprod(a, b), tirls::test::bcirc_tprod(a, b)) <= 1e-11);
            }
}

TEST_CASE("t-product rejects non-conformable operands") {
    CHECK_THROWS_AS(tprod(randn(2, 3, 2, 1), randn(2, 1, 2, 1)), ShapeError);
    CHECK_THROWS_AS(tprod(randn(2, 3, 2, 1), randn(3, 1, 3, 1)), ShapeError);
}

TEST_CASE("identity laws") {
    const Tensor3 a = randn(3, 4, 5, 7);
    CHECK(rel_error(tprod(a, identity(4, 5)), a) < 1e-14);
    CHECK(rel_error(tprod(identity(3, 5), a), a) < 1e-14);
}

TEST_CASE("transpose") {
    const Tensor3 m = randn(2, 3, 1, 4);
    CHECK(transpose(m).slice(0) == Eigen::MatrixXd(m.slice(0).transpose()));

    const Tensor3 t = transpose(tube({1, 2, 3}));
    CHECK(t.tube(0, 0) == std::vector<double>{1, 3, 2});

    const Tensor3 a = randn(3, 4, 5, 8);
    CHECK(transpose(a) == tirls::test::naive_transpose(a));
    CHECK(transpose(transpose(a)) == a);

    const Tensor3 b = randn(4, 2, 5, 9);
    const double d = fro_norm(transpose(tprod(a, b)) - tprod(transpose(b), transpose(a)));
    CHECK(d <= 1e-12 * fro_norm(a) * fro_norm(b));
}

TEST_CASE("spectral kernels match the spatial ones") {
    const Tensor3 a = randn(3, 4, 6, 10);
    const Tensor3 b = randn(4, 2, 6, 11);
    CHECK(rel_error(idft_tubes(spectral::tprod(dft_tubes(a), dft_tubes(b))), tprod(a, b)) < 1e-14);
    CHECK(rel_error(idft_tubes(spectral::transpose(dft_tubes(a))), transpose(a)) < 1e-15);
}

TEST_CASE("tube length") {
    Tensor3 x(2, 1, 3);
    x(0, 0, 0) = 3;
    x(1, 0, 0) = 4;
    CHECK(tube_length(x) == doctest::Approx(5.0));

    const Tensor3 y = randn(4, 1, 5, 12);
    CHECK(tube_length(2.5 * y) == doctest::Approx(2.5 * tube_length(y)));
    CHECK_THROWS_AS(tube_length(Tensor3(3, 1, 2)), ZeroInputError);
}

TEST_CASE("tube inverse") {
    const TubalScalar e = TubalScalar::unit(4);
    const TubalScalar ei = tube_inverse(e);
    for (Index k = 0; k < 4; ++k) CHECK(ei[k] == doctest::Approx(e[k]));

    const TubalScalar h = tube_inverse(TubalScalar({2, 0, 0}));
    CHECK(h[0] == doctest::Approx(0.5));
    CHECK(std::abs(h[1]) < 1e-15);
    CHECK(std::abs(h[2]) < 1e-15);

    CHECK_FALSE(is_invertible(TubalScalar({1, 1})));
    try {
        (void)tube_inverse(TubalScalar({1, 1}));
        FAIL("expected NotInvertibleError");
    } catch (const NotInvertibleError& err) {
        CHECK(err.min_magnitude() < 1e-15);
    }

    const TubalScalar a({0.3, -1.2, 2.0, 0.7, 0.1});
    REQUIRE(is_invertible(a));
    const Tensor3 prod = tprod(a.as_tensor(), tube_inverse(a).as_tensor());
    CHECK(rel_error(prod, TubalScalar::unit(5).as_tensor()) < 1e-14);
    const SpectralRange r = spectral_range(a);
    CHECK(r.min <= r.max);
    CHECK(r.min > 0);
}

TEST_CASE("normalize flat spectrum") {
    Tensor3 x(2, 1, 4);
    x(0, 0, 0) = 3;
    x(1, 0, 0) = 4;
    Rng rng(1);
    const NormalizeResult n = normalize(x, rng);
    CHECK(rel_error(n.v, (1.0 / 5.0) * x) < 1e-15);
    CHECK(n.a[0] == doctest::Approx(5.0));
    for (Index k = 1; k < 4; ++k) CHECK(std::abs(n.a[k]) < 1e-15);
    CHECK(n.replaced_slices == 0);
}

TEST_CASE("normalize random input") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Tensor3 x = randn(1 + static_cast<Index>(s % 6), 1, 1 + static_cast<Index>(s % 7), 50 + s);
        Rng rng(s);
        const NormalizeResult n = normalize(x, rng);
        CHECK(fro_norm(tprod(n.v, n.a.as_tensor()) - x) <= 1e-12 * fro_norm(x));
        CHECK(std::abs(tube_length(n.v) - 1.0) <= 1e-10);
    }
}

TEST_CASE("normalize replaces degenerate spectral slices") {
    // Both frontal slices equal, so Fourier slice 1 vanishes.
    const Tensor3 x(2, 1, 2, {1, 2, 1, 2});
    Rng rng(3);
    const NormalizeResult n = normalize(x, rng);
    CHECK(n.replaced_slices == 1);
    CHECK(rel_error(tprod(n.v, n.a.as_tensor()), x) < 1e-14);
    CHECK(std::abs(tube_length(n.v) - 1.0) < 1e-12);
    const auto abar = dft_tube(n.a.entries());
    CHECK(std::abs(abar[1]) == 0.0);
}

TEST_CASE("normalize errors") {
    Rng rng(0);
    CHECK_THROWS_AS(normalize(Tensor3(3, 1, 2), rng), ZeroInputError);
    CHECK_THROWS_AS(normalize(randn(3, 2, 2, 1), rng), ShapeError);
}
