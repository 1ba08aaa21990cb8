#pragma once

// Small dense matrices over F = Q(sqrt m): echelon form, rank, kernels,
// inverse. Everything is exact; pivoting is first-nonzero for determinism.

#include <optional>
#include <vector>

#include "genwitt/scalar.hpp"

namespace genwitt {

struct SMat {
  int rows = 0, cols = 0;
  std::vector<Scalar> a;

  SMat() = default;
  SMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  Scalar& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Scalar& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }

  static SMat identity(int n) {
    SMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
  }

  bool is_zero() const {
    for (const auto& x : a)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const SMat& x, const SMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  friend SMat operator+(const SMat& x, const SMat& y) {
    SMat z(x.rows, x.cols);
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = x.a[i] + y.a[i];
    return z;
  }
  friend SMat operator-(const SMat& x, const SMat& y) {
    SMat z(x.rows, x.cols);
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = x.a[i] - y.a[i];
    return z;
  }
  friend SMat operator*(const Scalar& c, const SMat& x) {
    SMat z(x.rows, x.cols);
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = c * x.a[i];
    return z;
  }
  friend SMat operator*(const SMat& x, const SMat& y) {
    SMat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        if (x.at(i, k).is_zero()) continue;
        for (int j = 0; j < y.cols; ++j)
          z.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    return z;
  }
};

inline SMat transpose(const SMat& m) {
  SMat t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

struct RrefResult {
  SMat m;
  int rank = 0;
  std::vector<int> pivot_cols;
};

inline RrefResult rref(SMat m) {
  RrefResult res;
  int p = 0;
  for (int c = 0; c < m.cols && p < m.rows; ++c) {
    int sel = -1;
    for (int i = p; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != p)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(sel, j));
    Scalar inv = m.at(p, c).inv();
    for (int j = c; j < m.cols; ++j) m.at(p, j) = inv * m.at(p, j);
    for (int i = 0; i < m.rows; ++i) {
      if (i == p || m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(p, j);
    }
    res.pivot_cols.push_back(c);
    ++p;
  }
  res.rank = p;
  res.m = std::move(m);
  return res;
}

inline int rank(const SMat& m) { return rref(m).rank; }

// Basis of {x : m x = 0}; one vector per free column, with value 1 on the
// free coordinate.
inline std::vector<std::vector<Scalar>> right_kernel(const SMat& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(m.cols);
    v[f] = Scalar(1);
    for (int i = 0; i < r.rank; ++i) v[r.pivot_cols[i]] = -r.m.at(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<SMat> inverse(const SMat& m) {
  if (m.rows != m.cols) return std::nullopt;
  SMat aug(m.rows, 2 * m.cols);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols + i) = Scalar(1);
  }
  RrefResult r = rref(std::move(aug));
  if (r.rank != m.rows) return std::nullopt;
  SMat inv(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) inv.at(i, j) = r.m.at(i, m.cols + j);
  return inv;
}

// One solution of m x = b, if any.
inline std::optional<std::vector<Scalar>> solve(const SMat& m,
                                                const std::vector<Scalar>& b) {
  SMat aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  RrefResult r = rref(std::move(aug));
  for (int c : r.pivot_cols)
    if (c == m.cols) return std::nullopt;
  std::vector<Scalar> x(m.cols);
  for (int i = 0; i < r.rank; ++i) x[r.pivot_cols[i]] = r.m.at(i, m.cols);
  return x;
}

}  // namespace genwitt
