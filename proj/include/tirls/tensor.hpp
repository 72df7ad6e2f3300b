#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace tirls {

using Index = Eigen::Index;

struct Shape3 {
    Index n1 = 0;
    Index n2 = 0;
    Index n3 = 0;

    Index size() const { return n1 * n2 * n3; }
    friend bool operator==(const Shape3&, const Shape3&) = default;
};

std::string to_string(const Shape3& s);

/**
 * Dense real third-order tensor of shape n1 x n2 x n3.
 *
 * Storage is frontal-slice-major and column-major inside each slice, so
 * element (i, j, k) lives at i + j*n1 + k*n1*n2 and every frontal slice is a
 * contiguous column-major n1 x n2 matrix. A tube (i, j, :) has the uniform
 * stride n1*n2.
 */
class Tensor3 {
public:
    Tensor3() = default;
    Tensor3(Index n1, Index n2, Index n3);
    /// Takes ownership of `data`; throws on size mismatch or non-finite entries.
    Tensor3(Index n1, Index n2, Index n3, std::vector<double> data);
    explicit Tensor3(const Shape3& s) : Tensor3(s.n1, s.n2, s.n3) {}

    /// Builds a tensor whose k-th frontal slice is `slices[k]`.
    static Tensor3 from_slices(const std::vector<Eigen::MatrixXd>& slices);

    Index n1() const { return n1_; }
    Index n2() const { return n2_; }
    Index n3() const { return n3_; }
    Shape3 shape() const { return {n1_, n2_, n3_}; }
    Index size() const { return static_cast<Index>(data_.size()); }
    bool empty() const { return data_.empty(); }

    double& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }
    double operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    Eigen::Map<Eigen::MatrixXd> slice(Index k);
    Eigen::Map<const Eigen::MatrixXd> slice(Index k) const;

    /// Lateral slice (:, j, :) as an n1 x 1 x n3 tensor.
    Tensor3 lateral(Index j) const;
    void set_lateral(Index j, const Tensor3& column);
    /// Horizontal slice (i, :, :) as a 1 x n2 x n3 tensor.
    Tensor3 horizontal(Index i) const;
    /// Tube (i, j, :).
    std::vector<double> tube(Index i, Index j) const;

    Tensor3& operator+=(const Tensor3& other);
    Tensor3& operator-=(const Tensor3& other);
    Tensor3& operator*=(double s);

    friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
    friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
    friend Tensor3 operator*(Tensor3 a, double s) { return a *= s; }
    friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }
    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    Index offset(Index i, Index j, Index k) const { return i + n1_ * (j + n2_ * k); }

    Index n1_ = 0;
    Index n2_ = 0;
    Index n3_ = 0;
    std::vector<double> data_;
};

/**
 * A 1 x 1 x p tube, the scalar of t-product algebra.
 */
class TubalScalar {
public:
    TubalScalar() = default;
    explicit TubalScalar(std::vector<double> entries) : entries_(std::move(entries)) {}

    /// The identity tube e1 = (1, 0, ..., 0).
    static TubalScalar unit(Index p);
    /// Throws ShapeError unless `t` is 1 x 1 x p.
    static TubalScalar from_tensor(const Tensor3& t);

    Index size() const { return static_cast<Index>(entries_.size()); }
    double operator[](Index k) const { return entries_[static_cast<std::size_t>(k)]; }
    double& operator[](Index k) { return entries_[static_cast<std::size_t>(k)]; }
    const std::vector<double>& entries() const { return entries_; }

    Tensor3 as_tensor() const;

private:
    std::vector<double> entries_;
};

/// The n x n x p identity: first frontal slice I_n, the rest zero.
Tensor3 identity(Index n, Index p);

double fro_norm(const Tensor3& a);
/// ||x - ref||_F / ||ref||_F; throws ZeroInputError when ref is zero.
double rel_error(const Tensor3& x, const Tensor3& ref);

/// [top; bottom], stacking along mode 1.
Tensor3 concat_rows(const Tensor3& top, const Tensor3& bottom);
/// [left, right], stacking along mode 2.
Tensor3 concat_cols(const Tensor3& left, const Tensor3& right);
/// Rows [begin, begin + count) along mode 1.
Tensor3 row_block(const Tensor3& a, Index begin, Index count);

// Reference constructions. These build dense block matrices and exist for
// testing, not for the solver paths.
Eigen::MatrixXd bcirc(const Tensor3& a);
Eigen::MatrixXd unfold(const Tensor3& a);
Tensor3 fold(const Eigen::MatrixXd& m, Index n1, Index n2, Index n3);

}  // namespace tirls
