#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "tirls/tensor.hpp"

namespace tirls {

struct VerifyOptions {
    std::uint64_t seed = 0;
    int trials = 20;  ///< random instances per suite
    /// Transpose used by the suites that exercise it; tests swap in a faulty
    /// one to check that the harness notices.
    std::function<Tensor3(const Tensor3&)> transpose_impl;
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    double worst = 0.0;      ///< largest observed error measure
    double tolerance = 0.0;  ///< bound that `worst` is held to
    int trials = 0;
    std::string detail;  ///< first failing case, if any
};

/// Runs every property suite. Output depends only on the options.
std::vector<SuiteResult> run_verify(const VerifyOptions& options);

/// One line per suite plus a summary; returns true when everything passed.
bool print_verify_report(std::ostream& out, const std::vector<SuiteResult>& results);

}  // namespace tirls
