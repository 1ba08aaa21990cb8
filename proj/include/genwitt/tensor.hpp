#pragma once

// Tensor modules Gamma(V, sigma) = A (x) V with the exact W-, A- and
// extended-algebra actions, the chain maps between wedge coefficient
// modules, and the distinguished image/kernel fibers. Whole modules are
// never materialized; every vector has finite support and every fiber is an
// exact finite-dimensional slice, so nothing here truncates.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "genwitt/lmod.hpp"

namespace genwitt {

struct ModuleDesc {
  std::shared_ptr<const Pairing> pairing;
  std::shared_ptr<const GlFrame> frame;  // may be null for scalar/direct kinds
  LModule v;
  std::vector<Scalar> sigma;  // sigma(d_j), j = 1..r

  bool sigma_ker2_zero = true;
  std::optional<GroupElem> sigma_in_g;  // a with sigma = phi(a, .), if any
  std::vector<Scalar> sigma_dbar;       // sigma(dbar_u)

  Scalar sigma_of(const DVector& d) const {
    Scalar s;
    for (std::size_t j = 0; j < d.size(); ++j) s += sigma[j] * d[j];
    return s;
  }
};

// Integer solution of a^T P = sigma, treating rational and surd parts
// separately; decides membership of sigma in the lattice of functionals.
inline std::optional<GroupElem> sigma_lattice_point(const Pairing& p,
                                                    const std::vector<Scalar>& sigma) {
  const int n = p.n(), r = p.r();
  IMat m(n, 2 * r);
  std::vector<Int> target(2 * r);
  for (int half = 0; half < 2; ++half) {
    for (int j = 0; j < r; ++j) {
      Int lcm(1);
      auto part = [&](const Scalar& s) -> const Rat& {
        return half == 0 ? s.rat() : s.surd();
      };
      for (int i = 0; i < n; ++i) {
        Int den = part(p.matrix().at(i, j)).get_den();
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      }
      {
        Int den = part(sigma[j]).get_den();
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      }
      for (int i = 0; i < n; ++i) {
        const Rat& q = part(p.matrix().at(i, j));
        m.at(i, half * r + j) = Int(q.get_num() * (lcm / q.get_den()));
      }
      const Rat& qs = part(sigma[j]);
      target[half * r + j] = Int(qs.get_num() * (lcm / qs.get_den()));
    }
  }
  auto sol = solve_left(m, target);
  if (!sol) return std::nullopt;
  return GroupElem(sol->begin(), sol->end());
}

inline ModuleDesc make_desc(std::shared_ptr<const Pairing> pairing,
                            std::shared_ptr<const GlFrame> frame, LModule v,
                            std::vector<Scalar> sigma) {
  ModuleDesc d;
  d.pairing = std::move(pairing);
  d.frame = std::move(frame);
  d.v = std::move(v);
  d.sigma = std::move(sigma);
  d.sigma_ker2_zero = true;
  for (const auto& w : d.pairing->ker2())
    if (!d.sigma_of(w).is_zero()) d.sigma_ker2_zero = false;
  d.sigma_in_g = sigma_lattice_point(*d.pairing, d.sigma);
  if (d.frame)
    for (const auto& db : d.frame->dbar) d.sigma_dbar.push_back(d.sigma_of(db));
  return d;
}

struct TKey {
  GroupElem b;
  int idx = 0;
  friend bool operator<(const TKey& x, const TKey& y) {
    if (x.b != y.b) return x.b < y.b;
    return x.idx < y.idx;
  }
  friend bool operator==(const TKey& x, const TKey& y) {
    return x.b == y.b && x.idx == y.idx;
  }
};

struct TensorVec {
  std::map<TKey, Scalar> terms;

  void add_term(const TKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
      terms.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }

  bool is_zero() const { return terms.empty(); }

  // All keys in one fiber? (single lattice point)
  std::optional<GroupElem> single_fiber() const {
    if (terms.empty()) return std::nullopt;
    const GroupElem& b = terms.begin()->first.b;
    for (const auto& [k, c] : terms)
      if (k.b != b) return std::nullopt;
    return b;
  }

  friend TensorVec operator+(const TensorVec& x, const TensorVec& y) {
    TensorVec z = x;
    for (const auto& [k, c] : y.terms) z.add_term(k, c);
    return z;
  }
  friend TensorVec operator-(const TensorVec& x, const TensorVec& y) {
    TensorVec z = x;
    for (const auto& [k, c] : y.terms) z.add_term(k, -c);
    return z;
  }
  friend TensorVec operator*(const Scalar& c, const TensorVec& x) {
    TensorVec z;
    for (const auto& [k, v] : x.terms) z.add_term(k, c * v);
    return z;
  }
  friend bool operator==(const TensorVec& x, const TensorVec& y) {
    return x.terms == y.terms;
  }
};

inline TensorVec basis_vec(const GroupElem& b, int idx) {
  TensorVec v;
  v.add_term({b, idx}, Scalar(1));
  return v;
}

// t^a d . (t^b (x) w) = t^{a+b} (x) (phi(b,d) + sigma(d) + a (x) d) w
inline TensorVec act(const ModuleDesc& desc, const GroupElem& a, const DVector& d,
                     const TensorVec& vec) {
  const Pairing& p = *desc.pairing;
  SMat amat = act_L(p, desc.frame.get(), desc.v, outer(a, d));
  Scalar sd = desc.sigma_of(d);
  TensorVec out;
  for (const auto& [key, c] : vec.terms) {
    GroupElem target = key.b + a;
    Scalar diag = p.pair(key.b, d) + sd;
    out.add_term({target, key.idx}, c * diag);
    for (int t = 0; t < desc.v.dim; ++t) {
      const Scalar& m = amat.at(t, key.idx);
      if (!m.is_zero()) out.add_term({target, t}, c * m);
    }
  }
  return out;
}

template <typename WittLike>
inline TensorVec act_witt(const ModuleDesc& desc, const WittLike& x,
                          const TensorVec& vec) {
  TensorVec out;
  for (const auto& [a, d] : x.terms) out = out + act(desc, a, d, vec);
  return out;
}

// t^a . (t^b (x) w) = t^{a+b} (x) w
inline TensorVec a_act(const GroupElem& a, const TensorVec& vec) {
  TensorVec out;
  for (const auto& [key, c] : vec.terms) out.add_term({key.b + a, key.idx}, c);
  return out;
}

// Weight of the fiber at b: lambda(d_j) = sigma(d_j) + phi(b, d_j).
inline std::vector<Scalar> weight_of(const ModuleDesc& desc, const GroupElem& b) {
  std::vector<Scalar> w(desc.pairing->r());
  for (int j = 0; j < desc.pairing->r(); ++j)
    w[j] = desc.sigma[j] + desc.pairing->pair_basis(b, j);
  return w;
}

// The functional b + sigma restricted to the complement, in dual coordinates.
inline std::vector<Scalar> covector(const ModuleDesc& desc, const GroupElem& b) {
  const GlFrame& f = *desc.frame;
  std::vector<Scalar> u(f.rbar);
  for (int i = 0; i < f.rbar; ++i) {
    Scalar s = desc.sigma_dbar[i];
    for (int row = 0; row < desc.pairing->n(); ++row) {
      if (b[row] == 0) continue;
      s += Scalar(Rat(b[row])) * f.kmat.at(row, i);
    }
    u[i] = s;
  }
  return u;
}

// The tower of wedge coefficient modules over one (pairing, frame, sigma).
struct WedgeTower {
  std::shared_ptr<const Pairing> pairing;
  std::shared_ptr<const GlFrame> frame;
  std::vector<Scalar> sigma;
  std::vector<std::shared_ptr<const ModuleDesc>> levels;  // 0..rbar

  const ModuleDesc& at(int k) const { return *levels.at(k); }
  int rbar() const { return frame->rbar; }
};

inline WedgeTower make_tower(std::shared_ptr<const Pairing> pairing,
                             std::shared_ptr<const GlFrame> frame,
                             std::vector<Scalar> sigma) {
  WedgeTower t;
  t.pairing = pairing;
  t.frame = frame;
  t.sigma = sigma;
  for (int k = 0; k <= frame->rbar; ++k)
    t.levels.push_back(std::make_shared<ModuleDesc>(
        make_desc(pairing, frame, wedge_module(*frame, k), sigma)));
  return t;
}

namespace detail {

// Dense matrix of "wedge the covector u on the left", from level-k
// coordinates to level-(k+1) coordinates. Sign is the parity of the number
// of factors the new covector passes on its way to sorted position.
inline SMat wedge_by(const WedgeTower& tower, int k, const std::vector<Scalar>& u) {
  const ModuleDesc& src = tower.at(k);
  const ModuleDesc& dst = tower.at(k + 1);
  std::map<std::vector<int>, int> index;
  for (int t = 0; t < dst.v.dim; ++t) index[dst.v.wedge_basis[t]] = t;
  SMat w(dst.v.dim, src.v.dim);
  for (int s = 0; s < src.v.dim; ++s) {
    const auto& set = src.v.wedge_basis[s];
    for (int i = 0; i < tower.rbar(); ++i) {
      if (u[i].is_zero()) continue;
      if (std::find(set.begin(), set.end(), i) != set.end()) continue;
      int before = 0;
      for (int e : set)
        if (e < i) ++before;
      std::vector<int> t = set;
      t.insert(std::lower_bound(t.begin(), t.end(), i), i);
      Scalar sign = (before % 2) ? Scalar(-1) : Scalar(1);
      w.at(index.at(t), s) += sign * u[i];
    }
  }
  return w;
}

}  // namespace detail

// Chain map at level k: t^b (x) w -> t^b (x) (b + sigma) /\ w, landing in
// level k+1. Defined when sigma kills Ker2(phi).
inline TensorVec chain_map(const WedgeTower& tower, int k, const TensorVec& vec) {
  if (k < 0 || k >= tower.rbar())
    throw domain_error("chain map level out of range");
  if (!tower.at(k).sigma_ker2_zero)
    throw domain_error("chain map requires sigma to kill Ker2(phi)");
  TensorVec out;
  std::map<GroupElem, SMat> wcache;
  for (const auto& [key, c] : vec.terms) {
    auto it = wcache.find(key.b);
    if (it == wcache.end())
      it = wcache.emplace(key.b, detail::wedge_by(tower, k, covector(tower.at(k), key.b)))
               .first;
    const SMat& w = it->second;
    for (int t = 0; t < w.rows; ++t)
      if (!w.at(t, key.idx).is_zero()) out.add_term({key.b, t}, c * w.at(t, key.idx));
  }
  return out;
}

// Echelonized basis of the image of the level-(k-1) chain map inside the
// fiber at b of the level-k module.
inline std::vector<TensorVec> gamma_fiber(const WedgeTower& tower, const GroupElem& b,
                                          int k) {
  if (k < 1 || k > tower.rbar())
    throw domain_error("image fiber level out of range 1..rbar");
  SMat w = detail::wedge_by(tower, k - 1, covector(tower.at(k - 1), b));
  RrefResult rr = rref(transpose(w));
  std::vector<TensorVec> out;
  for (int i = 0; i < rr.rank; ++i) {
    TensorVec v;
    for (int j = 0; j < tower.at(k).v.dim; ++j) v.add_term({b, j}, rr.m.at(i, j));
    out.push_back(std::move(v));
  }
  return out;
}

// Basis of the kernel of the level-k chain map in the fiber at b.
inline std::vector<TensorVec> tilde_fiber(const WedgeTower& tower, const GroupElem& b,
                                          int k) {
  if (k < 0 || k >= tower.rbar())
    throw domain_error("kernel fiber level out of range 0..rbar-1");
  SMat w = detail::wedge_by(tower, k, covector(tower.at(k), b));
  std::vector<TensorVec> out;
  for (const auto& kv : right_kernel(w)) {
    TensorVec v;
    for (int j = 0; j < tower.at(k).v.dim; ++j) v.add_term({b, j}, kv[j]);
    out.push_back(std::move(v));
  }
  return out;
}

inline std::string render(const TensorVec& v) {
  if (v.is_zero()) return "0";
  std::string s;
  for (const auto& [k, c] : v.terms) {
    if (!s.empty()) s += " + ";
    s += render(c) + "*t^" + ge_str(k.b) + "#" + std::to_string(k.idx);
  }
  return s;
}

}  // namespace genwitt
