#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>

#include "tirls/bench.hpp"
#include "tirls/errors.hpp"
#include "tirls/factor.hpp"
#include "tirls/io.hpp"
#include "tirls/krylov.hpp"
#include "tirls/problems.hpp"
#include "tirls/solvers.hpp"
#include "tirls/tproduct.hpp"
#include "tirls/verify.hpp"

namespace py = pybind11;
using namespace tirls;

namespace {

using FArray = py::array_t<double, py::array::f_style | py::array::forcecast>;

// numpy (n1, n2, n3) in Fortran order has exactly the Tensor3 layout.
Tensor3 to_tensor(const FArray& arr) {
    if (arr.ndim() != 3) {
        throw ShapeError("expected a 3-d array, got " + std::to_string(arr.ndim()) + " dims");
    }
    const Index n1 = arr.shape(0), n2 = arr.shape(1), n3 = arr.shape(2);
    std::vector<double> data(arr.data(), arr.data() + n1 * n2 * n3);
    return {n1, n2, n3, std::move(data)};
}

FArray to_array(const Tensor3& t) {
    FArray out({t.n1(), t.n2(), t.n3()});
    std::copy(t.data().begin(), t.data().end(), out.mutable_data());
    return out;
}

py::dict instance_dict(const ProblemInstance& inst) {
    py::dict d;
    d["A"] = to_array(inst.a);
    d["B"] = to_array(inst.b);
    d["a1"] = to_array(inst.sample.a1);
    d["b1"] = to_array(inst.sample.b1);
    d["lambda_default"] = inst.lambda_default;
    if (inst.b_true) {
        d["B_true"] = to_array(*inst.b_true);
    }
    if (inst.x_true) {
        d["X_true"] = to_array(*inst.x_true);
    }
    return d;
}

Subsolver make_subsolver(const std::string& method, Index k, std::uint64_t seed) {
    if (method == "direct") {
        return Subsolver::direct();
    }
    if (method == "gkt") {
        return Subsolver::gkt(k, seed);
    }
    throw ArgumentError("method must be 'gkt' or 'direct', got '" + method + "'");
}

}  // namespace

PYBIND11_MODULE(_tirls, m) {
    m.doc() = "t-product tensor Tikhonov regularization with incremental updates";

    py::register_exception<Error>(m, "TirlsError", PyExc_RuntimeError);

    m.def("tprod", [](const FArray& a, const FArray& b) {
        return to_array(tprod(to_tensor(a), to_tensor(b)));
    });
    m.def("transpose", [](const FArray& a) { return to_array(transpose(to_tensor(a))); });
    m.def("identity", [](Index n, Index p) { return to_array(identity(n, p)); });
    m.def("tqr", [](const FArray& a, bool full) {
        const auto f = tqr(to_tensor(a), full ? QrMode::full : QrMode::economy);
        return py::make_tuple(to_array(f.q), to_array(f.r));
    }, py::arg("a"), py::arg("full") = false);
    m.def("tsvd", [](const FArray& a) {
        const auto f = tsvd(to_tensor(a));
        return py::make_tuple(to_array(f.u), to_array(f.s), to_array(f.v));
    });
    m.def("direct_trls", [](const FArray& a, const FArray& b, double lambda) {
        return to_array(direct_trls(to_tensor(a), to_tensor(b), lambda));
    }, py::arg("a"), py::arg("b"), py::arg("lam"));
    m.def("min_norm_augmented_ls", [](const FArray& a, const FArray& b, double lambda) {
        return to_array(min_norm_augmented_ls(to_tensor(a), to_tensor(b), lambda));
    }, py::arg("a"), py::arg("b"), py::arg("lam"));
    m.def("tgkt_solve",
          [](const FArray& a, const FArray& b, double lambda, Index k, std::uint64_t seed) {
              TrlsProblem prob{to_tensor(a), to_tensor(b), lambda};
              Tensor3 x;
              {
                  py::gil_scoped_release release;
                  x = tgkt_solve(prob, k, seed);
              }
              return to_array(x);
          },
          py::arg("a"), py::arg("b"), py::arg("lam"), py::arg("k"), py::arg("seed") = 0);
    m.def("irls_update",
          [](const FArray& a, const FArray& b, double lambda, const FArray& x, const FArray& a1,
             const FArray& b1, const std::string& method, Index k, std::uint64_t seed) {
              TrlsProblem prob{to_tensor(a), to_tensor(b), lambda};
              const UpdateSample sample{to_tensor(a1), to_tensor(b1)};
              const UpdateResult r =
                  irls_update(prob, to_tensor(x), sample, make_subsolver(method, k, seed));
              py::dict info;
              info["short_circuit"] = r.short_circuit;
              info["fallback"] = r.fallback;
              if (r.choice) {
                  info["index"] = r.choice->index;
                  info["min_magnitude"] = r.choice->min_magnitude;
              }
              return py::make_tuple(to_array(r.x), info);
          },
          py::arg("a"), py::arg("b"), py::arg("lam"), py::arg("x"), py::arg("a1"),
          py::arg("b1"), py::arg("method") = "gkt", py::arg("k") = 0, py::arg("seed") = 0);

    m.def("gen_example1", [](Index mm, Index c, std::uint64_t seed) {
        return instance_dict(gen_example1(mm, c, seed));
    }, py::arg("m"), py::arg("c"), py::arg("seed") = 0);
    m.def("gen_example2", [](Index mm, Index c, double delta, std::uint64_t seed) {
        return instance_dict(gen_example2(mm, c, delta, seed));
    }, py::arg("m"), py::arg("c"), py::arg("delta"), py::arg("seed") = 0);

    m.def("read_tensor", [](const std::string& path) {
        return to_array(read_tensor(std::filesystem::path(path)));
    });
    m.def("write_tensor", [](const std::string& path, const FArray& a) {
        write_tensor(std::filesystem::path(path), to_tensor(a));
    });

    m.def("verify", [](std::uint64_t seed, int trials) {
        VerifyOptions opt;
        opt.seed = seed;
        opt.trials = trials;
        py::list out;
        for (const SuiteResult& r : run_verify(opt)) {
            py::dict d;
            d["name"] = r.name;
            d["passed"] = r.passed;
            d["worst"] = r.worst;
            d["tolerance"] = r.tolerance;
            out.append(d);
        }
        return out;
    }, py::arg("seed") = 0, py::arg("trials") = 3);
}
