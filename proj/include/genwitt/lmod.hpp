#pragma once

// The coefficient algebra R = G (x) D realized as n x r matrices over F,
// its ideals K1, K2, the quotient map theta onto gl_rbar, and the finite
// dimensional module constructors (wedge powers of the distinguished simple
// module, scalar modules V^c, user-given matrices).

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "genwitt/lattice.hpp"
#include "genwitt/linalg.hpp"

namespace genwitt {

inline long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long b = 1;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

// X = sum X[i][j] e_i (x) d_j, an n x r Scalar matrix.
inline SMat outer(const GroupElem& a, const DVector& d) {
  SMat x(static_cast<int>(a.size()), static_cast<int>(d.size()));
  for (int i = 0; i < x.rows; ++i) {
    if (a[i] == 0) continue;
    Scalar ai{Rat(a[i])};
    for (int j = 0; j < x.cols; ++j) x.at(i, j) = ai * d[j];
  }
  return x;
}

// (a (x) d) . (a' (x) d') = phi(a', d) a (x) d'  becomes  X P^T Y.
inline SMat rmul(const Pairing& p, const SMat& x, const SMat& y) {
  return x * transpose(p.matrix()) * y;
}

inline SMat lbracket(const Pairing& p, const SMat& x, const SMat& y) {
  return rmul(p, x, y) - rmul(p, y, x);
}

// K1 = {x in R : R x = 0} = {X : P^T X = 0}; one generator per kernel
// vector of P^T and column slot.
inline std::vector<SMat> k1_basis(const Pairing& p) {
  std::vector<SMat> out;
  for (const auto& u : right_kernel(transpose(p.matrix()))) {
    for (int j = 0; j < p.r(); ++j) {
      SMat x(p.n(), p.r());
      for (int i = 0; i < p.n(); ++i) x.at(i, j) = u[i];
      out.push_back(std::move(x));
    }
  }
  return out;
}

// K2 = G (x) Ker2(phi); one generator per Ker2 basis vector and row slot.
inline std::vector<SMat> k2_basis(const Pairing& p) {
  std::vector<SMat> out;
  for (const auto& w : p.ker2()) {
    for (int i = 0; i < p.n(); ++i) {
      SMat x(p.n(), p.r());
      for (int j = 0; j < p.r(); ++j) x.at(i, j) = w[j];
      out.push_back(std::move(x));
    }
  }
  return out;
}

// Frame realizing L/(K1+K2) = gl_rbar: lattice points a_1..a_rbar and the
// adjusted complement basis dbar_1..dbar_rbar with phi(a_i, dbar_j) =
// delta_ij.  theta(X) = kmat^T X lmat.
struct GlFrame {
  int rbar = 0;
  std::vector<GroupElem> a_pick;
  std::vector<DVector> dbar;
  SMat kmat;  // n x rbar, kmat[i][u] = phi(e_i, dbar_u)
  SMat lmat;  // r x rbar, lmat[j][v] = phi(a_v, d_j)
};

inline SMat theta(const GlFrame& f, const SMat& x) {
  return transpose(f.kmat) * x * f.lmat;
}

// Greedy scan of lattice points by (max-norm, L1, lex-decreasing) whose
// restrictions to the pivot columns are independent over F.
inline GlFrame make_frame(const Pairing& p, long max_shell = 64) {
  if (p.ker1().rank() != 0)
    throw domain_error("frame requires trivial lattice kernel of the pairing");
  const int rbar = p.rbar();
  GlFrame f;
  f.rbar = rbar;

  SMat picked(rbar, rbar);
  int have = 0;
  for (long N = 1; N <= max_shell && have < rbar; ++N) {
    for (const auto& a : shell_points(p.n(), N)) {
      if (have == rbar) break;
      SMat trial(have + 1, rbar);
      for (int i = 0; i < have; ++i)
        for (int v = 0; v < rbar; ++v) trial.at(i, v) = picked.at(i, v);
      for (int v = 0; v < rbar; ++v)
        trial.at(have, v) = p.pair_basis(a, p.dbar_cols()[v]);
      if (rank(trial) == have + 1) {
        for (int v = 0; v < rbar; ++v) picked.at(have, v) = trial.at(have, v);
        f.a_pick.push_back(a);
        ++have;
      }
    }
  }
  if (have != rbar)
    throw domain_error("frame scan exhausted before finding an independent set");

  // picked[u][v] = phi(a_u, d_{pivot v}); adjust duals by its inverse.
  auto cinv = inverse(picked);
  if (!cinv) throw domain_error("frame matrix unexpectedly singular");
  for (int v = 0; v < rbar; ++v) {
    DVector db = dv_zero(p.r());
    for (int w = 0; w < rbar; ++w) db[p.dbar_cols()[w]] = cinv->at(w, v);
    f.dbar.push_back(std::move(db));
  }

  f.kmat = SMat(p.n(), rbar);
  for (int i = 0; i < p.n(); ++i)
    for (int u = 0; u < rbar; ++u)
      for (int j = 0; j < p.r(); ++j)
        f.kmat.at(i, u) += p.matrix().at(i, j) * f.dbar[u][j];
  f.lmat = SMat(p.r(), rbar);
  for (int j = 0; j < p.r(); ++j)
    for (int v = 0; v < rbar; ++v) f.lmat.at(j, v) = p.pair_basis(f.a_pick[v], j);
  return f;
}

struct LModule {
  enum class Kind { glrep, direct, scalar };
  Kind kind = Kind::scalar;
  int dim = 1;
  // glrep: rbar^2 matrices indexed u*rbar+v for rho(E_uv);
  // direct: n*r matrices indexed i*r+j for rho(e_i (x) d_j).
  std::vector<SMat> mats;
  Scalar c;        // scalar kind: a (x) d acts by c phi(a, d)
  int wedge_k = -1;
  std::vector<std::vector<int>> wedge_basis;
};

inline std::vector<std::vector<int>> sorted_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v < n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Wedge power of the distinguished simple module: E_uv acts on the dual
// coordinate basis f_1..f_rbar by f_v -> f_u, extended as a derivation.
inline LModule wedge_module(const GlFrame& f, int k) {
  if (k < 0 || k > f.rbar)
    throw domain_error("wedge power out of range 0.." + std::to_string(f.rbar));
  LModule v;
  v.kind = LModule::Kind::glrep;
  v.wedge_k = k;
  v.wedge_basis = sorted_subsets(f.rbar, k);
  v.dim = static_cast<int>(v.wedge_basis.size());
  std::map<std::vector<int>, int> index;
  for (int t = 0; t < v.dim; ++t) index[v.wedge_basis[t]] = t;
  v.mats.assign(static_cast<std::size_t>(f.rbar) * f.rbar, SMat(v.dim, v.dim));
  for (int u = 0; u < f.rbar; ++u)
    for (int w = 0; w < f.rbar; ++w) {
      SMat& m = v.mats[static_cast<std::size_t>(u) * f.rbar + w];
      for (int s = 0; s < v.dim; ++s) {
        const auto& set = v.wedge_basis[s];
        auto it = std::find(set.begin(), set.end(), w);
        if (it == set.end()) continue;
        if (u == w) {
          m.at(s, s) += Scalar(1);
          continue;
        }
        if (std::find(set.begin(), set.end(), u) != set.end()) continue;
        std::vector<int> t = set;
        t.erase(std::find(t.begin(), t.end(), w));
        int between = 0;
        for (int e : t)
          if (e > std::min(u, w) && e < std::max(u, w)) ++between;
        t.insert(std::lower_bound(t.begin(), t.end(), u), u);
        Scalar sign = (between % 2) ? Scalar(-1) : Scalar(1);
        m.at(index.at(t), s) += sign;
      }
    }
  return v;
}

inline LModule vc_module(const Scalar& c) {
  LModule v;
  v.kind = LModule::Kind::scalar;
  v.dim = 1;
  v.c = c;
  return v;
}

// Adjoint action of gl_rbar on the traceless matrices (simple for rbar > 1
// and not a wedge power). Basis: off-diagonal E_pq in lex order, then
// H_u = E_uu - E_{u+1,u+1}.
inline LModule adjoint_module(int rbar) {
  if (rbar < 2) throw domain_error("adjoint module needs rbar >= 2");
  LModule v;
  v.kind = LModule::Kind::glrep;
  v.dim = rbar * rbar - 1;

  struct BasisElem {
    int p, q;  // q == -1 means H_p
  };
  std::vector<BasisElem> basis;
  for (int p = 0; p < rbar; ++p)
    for (int q = 0; q < rbar; ++q)
      if (p != q) basis.push_back({p, q});
  for (int u = 0; u + 1 < rbar; ++u) basis.push_back({u, -1});

  auto as_matrix = [&](const BasisElem& b) {
    SMat m(rbar, rbar);
    if (b.q >= 0) {
      m.at(b.p, b.q) = Scalar(1);
    } else {
      m.at(b.p, b.p) = Scalar(1);
      m.at(b.p + 1, b.p + 1) = Scalar(-1);
    }
    return m;
  };
  auto coords = [&](const SMat& m) {
    std::vector<Scalar> x(v.dim);
    int t = 0;
    for (int p = 0; p < rbar; ++p)
      for (int q = 0; q < rbar; ++q)
        if (p != q) x[t++] = m.at(p, q);
    Scalar acc;
    for (int u = 0; u + 1 < rbar; ++u) {
      acc += m.at(u, u);
      x[t++] = acc;
    }
    return x;
  };

  v.mats.assign(static_cast<std::size_t>(rbar) * rbar, SMat(v.dim, v.dim));
  for (int k = 0; k < rbar; ++k)
    for (int l = 0; l < rbar; ++l) {
      SMat e(rbar, rbar);
      e.at(k, l) = Scalar(1);
      SMat& m = v.mats[static_cast<std::size_t>(k) * rbar + l];
      for (int s = 0; s < v.dim; ++s) {
        SMat b = as_matrix(basis[s]);
        auto x = coords(e * b - b * e);
        for (int t = 0; t < v.dim; ++t) m.at(t, s) = x[t];
      }
    }
  return v;
}

// Action of an R element on V. gl and scalar kinds act through the
// quotient; the direct kind acts by its stored matrices.
inline SMat act_L(const Pairing& p, const GlFrame* frame, const LModule& v,
                  const SMat& x) {
  SMat out(v.dim, v.dim);
  switch (v.kind) {
    case LModule::Kind::scalar: {
      Scalar tr;
      for (int i = 0; i < p.n(); ++i)
        for (int j = 0; j < p.r(); ++j) tr += x.at(i, j) * p.matrix().at(i, j);
      out.at(0, 0) = v.c * tr;
      return out;
    }
    case LModule::Kind::glrep: {
      if (!frame) throw domain_error("gl module action requires a frame");
      SMat t = theta(*frame, x);
      for (int u = 0; u < frame->rbar; ++u)
        for (int w = 0; w < frame->rbar; ++w) {
          if (t.at(u, w).is_zero()) continue;
          out = out + t.at(u, w) * v.mats[static_cast<std::size_t>(u) * frame->rbar + w];
        }
      return out;
    }
    case LModule::Kind::direct: {
      for (int i = 0; i < p.n(); ++i)
        for (int j = 0; j < p.r(); ++j) {
          if (x.at(i, j).is_zero()) continue;
          out = out + x.at(i, j) * v.mats[static_cast<std::size_t>(i) * p.r() + j];
        }
      return out;
    }
  }
  return out;
}

inline bool validate_glrep(const LModule& v, int rbar) {
  if (v.kind != LModule::Kind::glrep) return false;
  auto rho = [&](int u, int w) -> const SMat& {
    return v.mats[static_cast<std::size_t>(u) * rbar + w];
  };
  for (int i = 0; i < rbar; ++i)
    for (int j = 0; j < rbar; ++j)
      for (int k = 0; k < rbar; ++k)
        for (int l = 0; l < rbar; ++l) {
          SMat lhs = rho(i, j) * rho(k, l) - rho(k, l) * rho(i, j);
          SMat rhs(v.dim, v.dim);
          if (j == k) rhs = rhs + rho(i, l);
          if (l == i) rhs = rhs - rho(k, j);
          if (!(lhs == rhs)) return false;
        }
  return true;
}

inline bool validate_direct(const Pairing& p, const LModule& v) {
  if (v.kind != LModule::Kind::direct) return false;
  auto rho = [&](int i, int j) -> const SMat& {
    return v.mats[static_cast<std::size_t>(i) * p.r() + j];
  };
  for (int i = 0; i < p.n(); ++i)
    for (int j = 0; j < p.r(); ++j)
      for (int k = 0; k < p.n(); ++k)
        for (int l = 0; l < p.r(); ++l) {
          SMat lhs = rho(i, j) * rho(k, l) - rho(k, l) * rho(i, j);
          // [e_i (x) d_j, e_k (x) d_l] = phi(e_k,d_j) e_i (x) d_l
          //                              - phi(e_i,d_l) e_k (x) d_j
          SMat rhs = p.matrix().at(k, j) * rho(i, l) -
                     p.matrix().at(i, l) * rho(k, j);
          if (!(lhs == rhs)) return false;
        }
  return true;
}

}  // namespace genwitt
