#include "tirls/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "tirls/errors.hpp"

namespace tirls {

std::string to_string(const Shape3& s) {
    return std::to_string(s.n1) + "x" + std::to_string(s.n2) + "x" + std::to_string(s.n3);
}

namespace {

void check_dims(Index n1, Index n2, Index n3) {
    if (n1 < 0 || n2 < 0 || n3 < 0) {
        throw ShapeError("negative tensor dimension");
    }
}

void require_same_shape(const Tensor3& a, const Tensor3& b, const char* op) {
    if (a.shape() != b.shape()) {
        throw ShapeError(std::string(op) + ": shape " + to_string(a.shape()) + " vs " +
                         to_string(b.shape()));
    }
}

}  // namespace

Tensor3::Tensor3(Index n1, Index n2, Index n3) : n1_(n1), n2_(n2), n3_(n3) {
    check_dims(n1, n2, n3);
    data_.assign(static_cast<std::size_t>(n1 * n2 * n3), 0.0);
}

Tensor3::Tensor3(Index n1, Index n2, Index n3, std::vector<double> data)
    : n1_(n1), n2_(n2), n3_(n3), data_(std::move(data)) {
    check_dims(n1, n2, n3);
    if (static_cast<Index>(data_.size()) != n1 * n2 * n3) {
        throw ShapeError("tensor data length " + std::to_string(data_.size()) +
                         " does not match " + to_string(shape()));
    }
    if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
        throw ArgumentError("tensor data contains non-finite entries");
    }
}

Tensor3 Tensor3::from_slices(const std::vector<Eigen::MatrixXd>& slices) {
    if (slices.empty()) {
        return {};
    }
    const Index n1 = slices.front().rows();
    const Index n2 = slices.front().cols();
    Tensor3 t(n1, n2, static_cast<Index>(slices.size()));
    for (Index k = 0; k < t.n3(); ++k) {
        const auto& s = slices[static_cast<std::size_t>(k)];
        if (s.rows() != n1 || s.cols() != n2) {
            throw ShapeError("from_slices: frontal slices differ in shape");
        }
        t.slice(k) = s;
    }
    return t;
}

Eigen::Map<Eigen::MatrixXd> Tensor3::slice(Index k) {
    return {data_.data() + k * n1_ * n2_, n1_, n2_};
}

Eigen::Map<const Eigen::MatrixXd> Tensor3::slice(Index k) const {
    return {data_.data() + k * n1_ * n2_, n1_, n2_};
}

Tensor3 Tensor3::lateral(Index j) const {
    if (j < 0 || j >= n2_) {
        throw ShapeError("lateral slice index out of range");
    }
    Tensor3 out(n1_, 1, n3_);
    for (Index k = 0; k < n3_; ++k) {
        out.slice(k) = slice(k).col(j);
    }
    return out;
}

void Tensor3::set_lateral(Index j, const Tensor3& column) {
    if (j < 0 || j >= n2_ || column.shape() != Shape3{n1_, 1, n3_}) {
        throw ShapeError("set_lateral: expected " + to_string({n1_, 1, n3_}) + ", got " +
                         to_string(column.shape()));
    }
    for (Index k = 0; k < n3_; ++k) {
        slice(k).col(j) = column.slice(k);
    }
}

Tensor3 Tensor3::horizontal(Index i) const {
    if (i < 0 || i >= n1_) {
        throw ShapeError("horizontal slice index out of range");
    }
    Tensor3 out(1, n2_, n3_);
    for (Index k = 0; k < n3_; ++k) {
        out.slice(k) = slice(k).row(i);
    }
    return out;
}

std::vector<double> Tensor3::tube(Index i, Index j) const {
    std::vector<double> t(static_cast<std::size_t>(n3_));
    for (Index k = 0; k < n3_; ++k) {
        t[static_cast<std::size_t>(k)] = (*this)(i, j, k);
    }
    return t;
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t q = 0; q < data_.size(); ++q) {
        data_[q] += other.data_[q];
    }
    return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t q = 0; q < data_.size(); ++q) {
        data_[q] -= other.data_[q];
    }
    return *this;
}

Tensor3& Tensor3::operator*=(double s) {
    for (double& v : data_) {
        v *= s;
    }
    return *this;
}

TubalScalar TubalScalar::unit(Index p) {
    std::vector<double> e(static_cast<std::size_t>(p), 0.0);
    if (p > 0) {
        e[0] = 1.0;
    }
    return TubalScalar(std::move(e));
}

TubalScalar TubalScalar::from_tensor(const Tensor3& t) {
    if (t.n1() != 1 || t.n2() != 1) {
        throw ShapeError("tubal scalar must be 1x1xp, got " + to_string(t.shape()));
    }
    return TubalScalar(std::vector<double>(t.data().begin(), t.data().end()));
}

Tensor3 TubalScalar::as_tensor() const {
    return {1, 1, size(), entries_};
}

Tensor3 identity(Index n, Index p) {
    if (n < 1 || p < 1) {
        throw ArgumentError("identity requires n >= 1 and p >= 1");
    }
    Tensor3 id(n, n, p);
    id.slice(0).setIdentity();
    return id;
}

double fro_norm(const Tensor3& a) {
    double sum = 0.0;
    for (double v : a.data()) {
        sum += v * v;
    }
    return std::sqrt(sum);
}

double rel_error(const Tensor3& x, const Tensor3& ref) {
    require_same_shape(x, ref, "rel_error");
    const double denom = fro_norm(ref);
    if (denom == 0.0) {
        throw ZeroInputError("rel_error: reference tensor is zero");
    }
    double sum = 0.0;
    auto xd = x.data();
    auto rd = ref.data();
    for (std::size_t q = 0; q < xd.size(); ++q) {
        const double d = xd[q] - rd[q];
        sum += d * d;
    }
    return std::sqrt(sum) / denom;
}

Tensor3 concat_rows(const Tensor3& top, const Tensor3& bottom) {
    if (top.n2() != bottom.n2() || top.n3() != bottom.n3()) {
        throw ShapeError("concat_rows: " + to_string(top.shape()) + " over " +
                         to_string(bottom.shape()));
    }
    Tensor3 out(top.n1() + bottom.n1(), top.n2(), top.n3());
    for (Index k = 0; k < out.n3(); ++k) {
        out.slice(k).topRows(top.n1()) = top.slice(k);
        out.slice(k).bottomRows(bottom.n1()) = bottom.slice(k);
    }
    return out;
}

Tensor3 concat_cols(const Tensor3& left, const Tensor3& right) {
    if (left.n1() != right.n1() || left.n3() != right.n3()) {
        throw ShapeError("concat_cols: " + to_string(left.shape()) + " beside " +
                         to_string(right.shape()));
    }
    Tensor3 out(left.n1(), left.n2() + right.n2(), left.n3());
    for (Index k = 0; k < out.n3(); ++k) {
        out.slice(k).leftCols(left.n2()) = left.slice(k);
        out.slice(k).rightCols(right.n2()) = right.slice(k);
    }
    return out;
}

Tensor3 row_block(const Tensor3& a, Index begin, Index count) {
    if (begin < 0 || count < 0 || begin + count > a.n1()) {
        throw ShapeError("row_block out of range");
    }
    Tensor3 out(count, a.n2(), a.n3());
    for (Index k = 0; k < a.n3(); ++k) {
        out.slice(k) = a.slice(k).middleRows(begin, count);
    }
    return out;
}

Eigen::MatrixXd bcirc(const Tensor3& a) {
    const Index n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    Eigen::MatrixXd m(n1 * n3, n2 * n3);
    for (Index r = 0; r < n3; ++r) {
        for (Index c = 0; c < n3; ++c) {
            const Index k = ((r - c) % n3 + n3) % n3;
            m.block(r * n1, c * n2, n1, n2) = a.slice(k);
        }
    }
    return m;
}

Eigen::MatrixXd unfold(const Tensor3& a) {
    Eigen::MatrixXd m(a.n1() * a.n3(), a.n2());
    for (Index k = 0; k < a.n3(); ++k) {
        m.middleRows(k * a.n1(), a.n1()) = a.slice(k);
    }
    return m;
}

Tensor3 fold(const Eigen::MatrixXd& m, Index n1, Index n2, Index n3) {
    if (m.rows() != n1 * n3 || m.cols() != n2) {
        throw ShapeError("fold: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " + std::to_string(n1 * n3) +
                         "x" + std::to_string(n2));
    }
    Tensor3 t(n1, n2, n3);
    for (Index k = 0; k < n3; ++k) {
        t.slice(k) = m.middleRows(k * n1, n1);
    }
    return t;
}

}  // namespace tirls
