#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clusterflow/exchange_matrix.hpp"
#include "clusterflow/rat_func.hpp"

namespace clusterflow {

// Dense matrix over an exact field (Rat, or RatFunc for symbol matrices).
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, T(0)) {}
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& operator()(int i, int j) { return a_[idx(i, j)]; }
  const T& operator()(int i, int j) const { return a_[idx(i, j)]; }

  Mat transpose() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch");
    Mat m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        if (is_zero(a(i, k))) continue;
        for (int j = 0; j < b.c_; ++j) {
          if (!is_zero(b(k, j))) m(i, j) += a(i, k) * b(k, j);
        }
      }
    return m;
  }
  friend Mat operator+(const Mat& a, const Mat& b) {
    check_same(a, b);
    Mat m = a;
    for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
    return m;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    check_same(a, b);
    Mat m = a;
    for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= b.a_[i];
    return m;
  }
  friend Mat operator*(const T& s, const Mat& a) {
    Mat m = a;
    for (auto& v : m.a_) v *= s;
    return m;
  }
  friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  bool is_zero_matrix() const {
    for (const auto& v : a_)
      if (!is_zero(v)) return false;
    return true;
  }
  bool is_skew() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j <= i; ++j)
        if ((*this)(i, j) != -(*this)(j, i)) return false;
    return true;
  }
  bool is_diagonal() const {
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j)
        if (i != j && !is_zero((*this)(i, j))) return false;
    return true;
  }

  // Reduced row echelon form in place; returns the pivot columns.
  std::vector<int> rref() {
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < c_ && row < r_; ++col) {
      int p = -1;
      for (int i = row; i < r_; ++i)
        if (!is_zero((*this)(i, col))) {
          p = i;
          break;
        }
      if (p < 0) continue;
      swap_rows(p, row);
      const T inv = T(1) / (*this)(row, col);
      for (int j = col; j < c_; ++j) (*this)(row, j) = (*this)(row, j) * inv;
      for (int i = 0; i < r_; ++i) {
        if (i == row || is_zero((*this)(i, col))) continue;
        const T f = (*this)(i, col);
        for (int j = col; j < c_; ++j) {
          if (!is_zero((*this)(row, j))) (*this)(i, j) -= f * (*this)(row, j);
        }
      }
      piv.push_back(col);
      ++row;
    }
    return piv;
  }

  int rank() const {
    Mat m = *this;
    return static_cast<int>(m.rref().size());
  }

  // Basis of {v : M v = 0}, one vector per free column.
  std::vector<std::vector<T>> nullspace() const {
    Mat m = *this;
    const std::vector<int> piv = m.rref();
    std::vector<char> is_piv(static_cast<std::size_t>(c_), 0);
    for (int p : piv) is_piv[static_cast<std::size_t>(p)] = 1;
    std::vector<std::vector<T>> basis;
    for (int f = 0; f < c_; ++f) {
      if (is_piv[static_cast<std::size_t>(f)]) continue;
      std::vector<T> v(static_cast<std::size_t>(c_), T(0));
      v[static_cast<std::size_t>(f)] = T(1);
      for (std::size_t k = 0; k < piv.size(); ++k) {
        v[static_cast<std::size_t>(piv[k])] = -m(static_cast<int>(k), f);
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

  T det() const {
    if (r_ != c_) throw std::invalid_argument("determinant of a non-square matrix");
    Mat m = *this;
    T d(1);
    for (int col = 0; col < c_; ++col) {
      int p = -1;
      for (int i = col; i < r_; ++i)
        if (!is_zero(m(i, col))) {
          p = i;
          break;
        }
      if (p < 0) return T(0);
      if (p != col) {
        m.swap_rows(p, col);
        d = -d;
      }
      d *= m(col, col);
      const T inv = T(1) / m(col, col);
      for (int i = col + 1; i < r_; ++i) {
        if (is_zero(m(i, col))) continue;
        const T f = m(i, col) * inv;
        for (int j = col; j < c_; ++j) m(i, j) -= f * m(col, j);
      }
    }
    return d;
  }

  std::optional<Mat> inverse() const {
    if (r_ != c_) return std::nullopt;
    Mat aug(r_, 2 * c_);
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, c_ + i) = T(1);
    }
    const std::vector<int> piv = aug.rref();
    if (static_cast<int>(piv.size()) < r_ || piv[static_cast<std::size_t>(r_ - 1)] >= c_) return std::nullopt;
    Mat inv(r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) inv(i, j) = aug(i, c_ + j);
    return inv;
  }

 private:
  static bool is_zero(const Rat& v) { return v == 0; }
  static bool is_zero(const RatFunc& v) { return v.is_zero(); }
  static void check_same(const Mat& a, const Mat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
  }
  std::size_t idx(int i, int j) const {
    if (i < 0 || j < 0 || i >= r_ || j >= c_) throw std::out_of_range("matrix index out of range");
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(c_) + static_cast<std::size_t>(j);
  }
  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < c_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  int r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using QMatrix = Mat<Rat>;

QMatrix to_qmatrix(const ExchangeMatrix& b);
// diag(d) for a symmetrizer indexed from 0.
QMatrix diagonal(const std::vector<int>& d);
std::string format(const QMatrix& m);

}  // namespace clusterflow
