#pragma once

// The datum (G, D, phi): G = Z^n, D an r-dimensional F-space with basis
// d_1..d_r, and phi realized by the n x r matrix P with P[k][j] =
// phi(e_k, d_j). Caches both kernels, the F-rank, and the chosen complement
// of Ker2 (pivot columns of P). Also the direct-sum splitting G = G0 + Z a0.

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "genwitt/intmat.hpp"
#include "genwitt/linalg.hpp"
#include "genwitt/scalar.hpp"

namespace genwitt {

using GroupElem = std::vector<Int>;   // lattice point, length n
using DVector = std::vector<Scalar>;  // coordinates in d_1..d_r

inline GroupElem ge_zero(int n) { return GroupElem(n, Int(0)); }

inline GroupElem operator+(const GroupElem& x, const GroupElem& y) {
  GroupElem z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

inline GroupElem operator-(const GroupElem& x, const GroupElem& y) {
  GroupElem z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}

inline GroupElem operator-(const GroupElem& x) {
  GroupElem z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = -x[i];
  return z;
}

inline bool ge_is_zero(const GroupElem& x) {
  return std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
}

inline std::string ge_str(const GroupElem& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += x[i].get_str();
  }
  return s + ")";
}

inline DVector dv_zero(int r) { return DVector(r); }

inline DVector operator+(const DVector& x, const DVector& y) {
  DVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

inline DVector operator-(const DVector& x, const DVector& y) {
  DVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}

inline DVector operator*(const Scalar& c, const DVector& x) {
  DVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = c * x[i];
  return z;
}

inline bool dv_is_zero(const DVector& x) {
  return std::all_of(x.begin(), x.end(), [](const Scalar& v) { return v.is_zero(); });
}

inline std::string render(const DVector& d) {
  std::string s = "[";
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (j) s += ",";
    s += render(d[j]);
  }
  return s + "]";
}

// Saturated sublattice of Z^n, basis rows in Hermite normal form.
struct Sublattice {
  IMat basis;
  bool saturated = true;

  int rank() const { return basis.rows; }
  int ambient() const { return basis.cols; }

  bool contains(const GroupElem& a) const {
    return solve_left(basis, a).has_value();
  }
};

class Pairing {
 public:
  Pairing(int n, int r, SMat p) : n_(n), r_(r), p_(std::move(p)) {
    if (p_.rows != n_ || p_.cols != r_)
      throw config_error("pairing matrix shape mismatch");
    RrefResult rr = rref(p_);
    rank_f_ = rr.rank;
    dbar_cols_ = rr.pivot_cols;
    for (auto& v : right_kernel(p_)) ker2_.push_back(DVector(v.begin(), v.end()));
    ker1_ = compute_ker1();
  }

  int n() const { return n_; }
  int r() const { return r_; }
  const SMat& matrix() const { return p_; }
  int rank_f() const { return rank_f_; }
  int rbar() const { return rank_f_; }
  const std::vector<int>& dbar_cols() const { return dbar_cols_; }
  const std::vector<DVector>& ker2() const { return ker2_; }
  const Sublattice& ker1() const { return ker1_; }

  // phi(a, d) = a^T P d
  Scalar pair(const GroupElem& a, const DVector& d) const {
    Scalar s;
    for (int j = 0; j < r_; ++j) {
      if (d[j].is_zero()) continue;
      s += pair_basis(a, j) * d[j];
    }
    return s;
  }

  // (a^T P)_j = phi(a, d_j)
  Scalar pair_basis(const GroupElem& a, int j) const {
    Scalar s;
    for (int i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      s += Scalar(Rat(a[i])) * p_.at(i, j);
    }
    return s;
  }

  bool is_nondegenerate() const { return ker1_.rank() == 0 && ker2_.empty(); }

 private:
  // Integer a with a^T P = 0 over F, i.e. a^T P0 = 0 and a^T P1 = 0 over Q.
  // Column-scale [P0 | P1] to integers; scaling columns keeps the kernel.
  Sublattice compute_ker1() const {
    IMat m(n_, 2 * r_);
    for (int half = 0; half < 2; ++half) {
      for (int j = 0; j < r_; ++j) {
        Int lcm(1);
        for (int i = 0; i < n_; ++i) {
          const Rat& q = half == 0 ? p_.at(i, j).rat() : p_.at(i, j).surd();
          Int den = q.get_den();
          mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
        for (int i = 0; i < n_; ++i) {
          const Rat& q = half == 0 ? p_.at(i, j).rat() : p_.at(i, j).surd();
          m.at(i, half * r_ + j) = Int(q.get_num() * (lcm / q.get_den()));
        }
      }
    }
    Sublattice s;
    s.basis = left_kernel(m);
    s.saturated = true;
    return s;
  }

  int n_, r_;
  SMat p_;
  int rank_f_ = 0;
  std::vector<int> dbar_cols_;
  std::vector<DVector> ker2_;
  Sublattice ker1_;
};

inline bool is_primitive(const GroupElem& a) {
  Int g(0);
  for (const Int& v : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g == 1;
}

// G = G0 + Z a0 with G0 saturated of corank 1; deg is the a0-coefficient
// functional of the induced decomposition.
class Splitting {
 public:
  explicit Splitting(GroupElem a0) : a0_(std::move(a0)), n_(static_cast<int>(a0_.size())) {
    if (ge_is_zero(a0_) || !is_primitive(a0_))
      throw domain_error("splitting direction must be nonzero and primitive: " +
                         ge_str(a0_));
    // w with w . a0 = 1 via iterated extended gcd.
    w_.assign(n_, Int(0));
    Int g(0);
    for (int i = 0; i < n_; ++i) {
      if (a0_[i] == 0) continue;
      if (g == 0) {
        w_[i] = a0_[i] > 0 ? 1 : -1;
        g = abs(a0_[i]);
        continue;
      }
      Int gg, s, t;
      mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(),
                 a0_[i].get_mpz_t());
      for (int k = 0; k < i; ++k) w_[k] *= s;
      w_[i] = t;
      g = gg;
    }
    IMat wcol(n_, 1);
    for (int i = 0; i < n_; ++i) wcol.at(i, 0) = w_[i];
    g0_.basis = left_kernel(wcol);
    g0_.saturated = true;
  }

  // Splitting with a caller-chosen complement basis; [basis; a0] must be
  // unimodular, and deg is read off the inverse of that matrix.
  Splitting(GroupElem a0, const IMat& basis)
      : a0_(std::move(a0)), n_(static_cast<int>(a0_.size())) {
    if (basis.rows != n_ - 1 || basis.cols != n_)
      throw domain_error("complement basis must have corank one");
    IMat m(n_, n_);
    for (int i = 0; i + 1 < n_; ++i)
      for (int j = 0; j < n_; ++j) m.at(i, j) = basis.at(i, j);
    for (int j = 0; j < n_; ++j) m.at(n_ - 1, j) = a0_[j];
    if (!is_unimodular(m))
      throw domain_error("complement basis and a0 do not span the lattice");
    SMat ms(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) ms.at(i, j) = Scalar(Rat(m.at(i, j)));
    SMat inv = *inverse(ms);
    w_.assign(n_, Int(0));
    for (int j = 0; j < n_; ++j) {
      const Rat& q = inv.at(j, n_ - 1).rat();
      if (q.get_den() != 1 || !inv.at(j, n_ - 1).is_rational())
        throw domain_error("splitting inverse is not integral");
      w_[j] = q.get_num();
    }
    g0_.basis = basis;
    g0_.saturated = true;
  }

  const GroupElem& a0() const { return a0_; }
  const Sublattice& g0() const { return g0_; }
  int g0_rank() const { return g0_.rank(); }

  Int deg(const GroupElem& a) const {
    Int d(0);
    for (int i = 0; i < n_; ++i) d += w_[i] * a[i];
    return d;
  }

  GroupElem g0_part(const GroupElem& a) const {
    Int d = deg(a);
    GroupElem rest(n_);
    for (int i = 0; i < n_; ++i) rest[i] = a[i] - d * a0_[i];
    return rest;
  }

  // Coordinates of a degree-zero point w.r.t. the G0 basis rows.
  std::vector<Int> g0_coords(const GroupElem& a) const {
    auto sol = solve_left(g0_.basis, a);
    if (!sol) throw domain_error("point not in the degree-zero sublattice");
    return *sol;
  }

  GroupElem embed(const std::vector<Int>& z) const {
    GroupElem a(n_, Int(0));
    for (int i = 0; i < g0_.rank(); ++i)
      for (int j = 0; j < n_; ++j) a[j] += z[i] * g0_.basis.at(i, j);
    return a;
  }

  GroupElem compose(const std::vector<Int>& z, const Int& degree) const {
    GroupElem a = embed(z);
    for (int j = 0; j < n_; ++j) a[j] += degree * a0_[j];
    return a;
  }

 private:
  GroupElem a0_;
  int n_;
  std::vector<Int> w_;
  Sublattice g0_;
};

// All points of [-N, N]^n in lexicographic order.
inline std::vector<GroupElem> box_points(int n, long N) {
  std::vector<GroupElem> out;
  GroupElem cur(n, Int(-N));
  if (n == 0) {
    out.push_back(cur);
    return out;
  }
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] == N) {
      cur[i] = -N;
      --i;
    }
    if (i < 0) break;
    cur[i] += 1;
  }
  return out;
}

// Shell of max-norm exactly N, ordered by (L1 norm, lexicographically
// decreasing). This is the deterministic scan order of frame selection.
inline std::vector<GroupElem> shell_points(int n, long N) {
  std::vector<GroupElem> pts;
  for (auto& p : box_points(n, N)) {
    bool on = false;
    for (const Int& v : p)
      if (abs(v) == N) on = true;
    if (on) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end(), [](const GroupElem& x, const GroupElem& y) {
    Int lx(0), ly(0);
    for (const Int& v : x) lx += abs(v);
    for (const Int& v : y) ly += abs(v);
    if (lx != ly) return lx < ly;
    return y < x;  // lexicographically decreasing
  });
  return pts;
}

}  // namespace genwitt
