#pragma once

#include "dtflux/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dtflux {

// Dense row-major matrix of rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const {
    return RatVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<RatVector> row_list() const {
    std::vector<RatVector> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }
  void append_row(const RatVector& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

inline RatVector multiply(const RatMatrix& a, const RatVector& x) {
  if (x.size() != a.cols()) throw std::invalid_argument("dimension mismatch in multiply");
  RatVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0 && x[j] != 0) y[i] += a(i, j) * x[j];
  return y;
}

struct RrefResult {
  RatMatrix matrix;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form. Only the first `pivot_cols` columns are used as
// pivot candidates (all columns by default).
inline RrefResult rref(RatMatrix m, std::size_t pivot_cols = static_cast<std::size_t>(-1)) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows(), cols = m.cols();
  if (pivot_cols > cols) pivot_cols = cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j)
      if (m(r, j) != 0) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Basis of the row space (nonzero rows of the RREF).
inline std::vector<RatVector> row_space_basis(const RatMatrix& m) {
  auto [r, pivots] = rref(m);
  std::vector<RatVector> out;
  for (std::size_t k = 0; k < pivots.size(); ++k) out.push_back(r.row(k));
  return out;
}

struct AffineSolution {
  bool feasible = false;
  RatVector particular;             // set when feasible
  std::vector<RatVector> kernel;    // set when feasible
  RatVector certificate;            // y with y^T A = 0 and y^T b != 0, set when infeasible
};

inline AffineSolution solve_affine(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_affine: rhs length mismatch");
  const std::size_t m = a.rows(), n = a.cols();
  // [A | b | I] keeps track of the row operations.
  RatMatrix aug(m, n + 1 + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
    aug(i, n + 1 + i) = 1;
  }
  auto [r, pivots] = rref(aug, n);
  AffineSolution out;
  for (std::size_t i = pivots.size(); i < m; ++i) {
    if (r(i, n) != 0) {
      out.certificate.resize(m);
      for (std::size_t k = 0; k < m; ++k) out.certificate[k] = r(i, n + 1 + k);
      return out;
    }
  }
  out.feasible = true;
  out.particular.assign(n, Rational(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) out.particular[pivots[k]] = r(k, n);
  out.kernel = kernel_basis(a);
  return out;
}

}  // namespace dtflux
