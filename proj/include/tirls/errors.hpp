#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tirls {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A scalar argument is outside its admissible range (lambda <= 0, k < 1, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// An operation that requires a nonzero tensor received zero.
class ZeroInputError : public Error {
public:
    using Error::Error;
};

/// A tubal scalar has a Fourier coefficient too small to invert.
class NotInvertibleError : public Error {
public:
    NotInvertibleError(const std::string& what, double min_magnitude)
        : Error(what), min_magnitude_(min_magnitude) {}
    double min_magnitude() const noexcept { return min_magnitude_; }

private:
    double min_magnitude_;
};

/// A spectral slice of a least-squares operator lacks full column rank.
class RankDeficientError : public Error {
public:
    RankDeficientError(const std::string& what, std::ptrdiff_t slice, double sigma_min)
        : Error(what), slice_(slice), sigma_min_(sigma_min) {}
    std::ptrdiff_t slice() const noexcept { return slice_; }
    double sigma_min() const noexcept { return sigma_min_; }

private:
    std::ptrdiff_t slice_;
    double sigma_min_;
};

/// An f-upper-triangular factor has a (numerically) zero diagonal entry.
class SingularFactorError : public Error {
public:
    SingularFactorError(const std::string& what, std::ptrdiff_t slice, std::ptrdiff_t index)
        : Error(what), slice_(slice), index_(index) {}
    std::ptrdiff_t slice() const noexcept { return slice_; }
    std::ptrdiff_t index() const noexcept { return index_; }

private:
    std::ptrdiff_t slice_;
    std::ptrdiff_t index_;
};

/// No column of the residual tube row W is invertible.
class NoInvertibleTubeError : public Error {
public:
    NoInvertibleTubeError(const std::string& what, std::vector<double> column_min_magnitudes)
        : Error(what), column_min_magnitudes_(std::move(column_min_magnitudes)) {}
    const std::vector<double>& column_min_magnitudes() const noexcept {
        return column_min_magnitudes_;
    }

private:
    std::vector<double> column_min_magnitudes_;
};

/// Bidiagonalization could not take a single step.
class BreakdownError : public Error {
public:
    using Error::Error;
};

/// A failure while solving one lateral slice of a multi-slice right-hand side.
class LateralSliceError : public Error {
public:
    LateralSliceError(const std::string& what, std::ptrdiff_t slice)
        : Error(what), slice_(slice) {}
    std::ptrdiff_t slice() const noexcept { return slice_; }

private:
    std::ptrdiff_t slice_;
};

/// Internal numerical inconsistency (non-real inverse transform, broken symmetry).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed tensor file or manifest.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Session directory is missing, locked or inconsistent.
class SessionError : public Error {
public:
    using Error::Error;
};

}  // namespace tirls
