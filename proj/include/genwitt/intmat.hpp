#pragma once

// Dense exact integer matrices with the lattice algorithms used here:
// row Hermite normal form (with transform), saturated kernels, integer
// solves, and the unimodularity test.

#include <optional>
#include <utility>
#include <vector>

#include "genwitt/scalar.hpp"

namespace genwitt {

struct IMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Int(0)) {}

  Int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static IMat identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::vector<Int> row(int i) const {
    return std::vector<Int>(a.begin() + static_cast<std::size_t>(i) * cols,
                            a.begin() + static_cast<std::size_t>(i + 1) * cols);
  }

  friend bool operator==(const IMat& x, const IMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

inline IMat transpose(const IMat& m) {
  IMat t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

inline IMat from_rows(const std::vector<std::vector<Int>>& rows, int cols) {
  IMat m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

struct HnfResult {
  IMat h;        // U * input = h, h in row Hermite form, zero rows last
  IMat u;        // unimodular transform
  int rank = 0;  // number of nonzero rows of h
  std::vector<int> pivot_cols;
};

inline HnfResult hnf_with_transform(IMat h) {
  const int nr = h.rows, nc = h.cols;
  IMat u = IMat::identity(nr);
  auto row_sub = [&](IMat& m, int dst, int src, const Int& q) {
    for (int j = 0; j < m.cols; ++j) m.at(dst, j) -= q * m.at(src, j);
  };
  auto row_swap = [&](IMat& m, int i, int k) {
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(i, j), m.at(k, j));
  };
  auto row_neg = [&](IMat& m, int i) {
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = -m.at(i, j);
  };

  HnfResult res;
  int p = 0;
  for (int c = 0; c < nc && p < nr; ++c) {
    // Euclid on the entries at and below p in column c.
    while (true) {
      int best = -1;
      for (int i = p; i < nr; ++i) {
        if (h.at(i, c) == 0) continue;
        if (best < 0 || mpz_cmpabs(h.at(i, c).get_mpz_t(), h.at(best, c).get_mpz_t()) < 0)
          best = i;
      }
      if (best < 0) break;
      if (best != p) {
        row_swap(h, p, best);
        row_swap(u, p, best);
      }
      bool done = true;
      for (int i = p + 1; i < nr; ++i) {
        if (h.at(i, c) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(p, c).get_mpz_t());
        row_sub(h, i, p, q);
        row_sub(u, i, p, q);
        if (h.at(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (p < nr && h.at(p, c) != 0) {
      if (h.at(p, c) < 0) {
        row_neg(h, p);
        row_neg(u, p);
      }
      for (int i = 0; i < p; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(p, c).get_mpz_t());
        if (q != 0) {
          row_sub(h, i, p, q);
          row_sub(u, i, p, q);
        }
      }
      res.pivot_cols.push_back(c);
      ++p;
    }
  }
  res.rank = p;
  res.h = std::move(h);
  res.u = std::move(u);
  return res;
}

// Canonical basis of the row lattice: HNF with zero rows dropped.
inline IMat row_hnf(const IMat& m) {
  HnfResult r = hnf_with_transform(m);
  IMat out(r.rank, m.cols);
  for (int i = 0; i < r.rank; ++i)
    for (int j = 0; j < m.cols; ++j) out.at(i, j) = r.h.at(i, j);
  return out;
}

// Basis (HNF rows) of {x in Z^rows : x^T m = 0}. Kernel lattices are
// saturated by construction.
inline IMat left_kernel(const IMat& m) {
  HnfResult r = hnf_with_transform(m);
  IMat ker(m.rows - r.rank, m.rows);
  for (int i = r.rank; i < m.rows; ++i)
    for (int j = 0; j < m.rows; ++j) ker.at(i - r.rank, j) = r.u.at(i, j);
  return row_hnf(ker);
}

// One integer solution x of x^T m = c, if any. Reduces c against the HNF
// rows of m; solvable exactly when the remainder vanishes.
inline std::optional<std::vector<Int>> solve_left(const IMat& m,
                                                  const std::vector<Int>& c) {
  HnfResult rm = hnf_with_transform(m);
  std::vector<Int> rem(c);
  std::vector<Int> coef(m.rows, Int(0));
  for (int i = 0; i < rm.rank; ++i) {
    int pc = rm.pivot_cols[i];
    if (rem[pc] == 0) continue;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), rem[pc].get_mpz_t(), rm.h.at(i, pc).get_mpz_t());
    for (int j = 0; j < m.cols; ++j) rem[j] -= q * rm.h.at(i, j);
    for (int k = 0; k < m.rows; ++k) coef[k] += q * rm.u.at(i, k);
  }
  for (int j = 0; j < m.cols; ++j)
    if (rem[j] != 0) return std::nullopt;
  return coef;
}

inline bool is_unimodular(const IMat& m) {
  if (m.rows != m.cols) return false;
  HnfResult r = hnf_with_transform(m);
  if (r.rank != m.rows) return false;
  Int prod(1);
  for (int i = 0; i < m.rows; ++i) prod *= r.h.at(i, i);
  return prod == 1;
}

}  // namespace genwitt
