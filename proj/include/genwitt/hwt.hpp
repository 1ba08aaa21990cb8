#pragma once

// Generalized Verma modules M(X, G0, a0) along a primitive direction a0:
// normal-ordered products of lowering generators applied to a bounded
// module X over the degree-zero subalgebra, the commutator straightening
// that realizes the action of the whole algebra, and pairing-rank lower
// bounds for the weight multiplicities of the simple quotient.
//
// X is materialized as a tensor module over the degree-zero datum (or as a
// distinguished image submodule of one), with exact fiber bases.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "genwitt/parallel.hpp"
#include "genwitt/spanprobe.hpp"
#include "genwitt/tensor.hpp"

namespace genwitt {

// One homogeneous operator t^{deg*a0 + emb(off)} d with off in G0
// coordinates.
struct VermaOp {
  long deg = 0;
  GroupElem off;  // G0 coordinates
  DVector d;
};

// A lowering generator: deg <= -1, single d-basis slot.
struct Gen {
  long deg = 0;
  GroupElem off;
  int dj = 0;

  friend bool operator<(const Gen& x, const Gen& y) {
    if (x.deg != y.deg) return x.deg < y.deg;
    if (x.off != y.off) return x.off < y.off;
    return x.dj < y.dj;
  }
  friend bool operator==(const Gen& x, const Gen& y) {
    return x.deg == y.deg && x.off == y.off && x.dj == y.dj;
  }
};

struct XKey {
  GroupElem beta;  // X fiber, G0 coordinates
  int idx = 0;
  friend bool operator<(const XKey& x, const XKey& y) {
    if (x.beta != y.beta) return x.beta < y.beta;
    return x.idx < y.idx;
  }
  friend bool operator==(const XKey& x, const XKey& y) {
    return x.beta == y.beta && x.idx == y.idx;
  }
};

struct LKey {
  std::vector<Gen> gens;  // sorted ascending by key; all degrees <= -1
  XKey x;
  friend bool operator<(const LKey& a, const LKey& b) {
    if (a.gens != b.gens) return a.gens < b.gens;
    return a.x < b.x;
  }
  friend bool operator==(const LKey& a, const LKey& b) {
    return a.gens == b.gens && a.x == b.x;
  }
};

struct LoweringExpr {
  std::map<LKey, Scalar> terms;

  void add_term(const LKey& k, const Scalar& c) {
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

  friend LoweringExpr operator+(const LoweringExpr& x, const LoweringExpr& y) {
    LoweringExpr z = x;
    for (const auto& [k, c] : y.terms) z.add_term(k, c);
    return z;
  }
  friend LoweringExpr operator-(const LoweringExpr& x, const LoweringExpr& y) {
    LoweringExpr z = x;
    for (const auto& [k, c] : y.terms) z.add_term(k, -c);
    return z;
  }
  friend LoweringExpr operator*(const Scalar& c, const LoweringExpr& x) {
    LoweringExpr z;
    for (const auto& [k, v] : x.terms) z.add_term(k, c * v);
    return z;
  }
  friend bool operator==(const LoweringExpr& x, const LoweringExpr& y) {
    return x.terms == y.terms;
  }
};

// The bounded degree-zero module X with an exact fiber oracle. Either a
// full tensor module over the degree-zero datum or the image submodule of
// a chain map inside one.
class XModule {
 public:
  enum class Realize { full, image };

  XModule(std::shared_ptr<const ModuleDesc> desc, Realize realize = Realize::full,
          std::shared_ptr<const WedgeTower> tower = nullptr, int image_k = 0)
      : desc_(std::move(desc)), realize_(realize), tower_(std::move(tower)),
        image_k_(image_k) {
    if (realize_ == Realize::image) {
      if (!tower_) throw domain_error("image realization needs the wedge tower");
      if (!desc_->sigma_ker2_zero)
        throw domain_error("image realization needs sigma to kill Ker2(phi)");
    }
  }

  const ModuleDesc& desc() const { return *desc_; }
  int n0() const { return desc_->pairing->n(); }
  int r() const { return desc_->pairing->r(); }

  int fiber_dim(const GroupElem& beta) const {
    if (realize_ == Realize::full) return desc_->v.dim;
    return fiber(beta).dim();
  }

  const SpanBasis& fiber(const GroupElem& beta) const {
    auto it = cache_.find(beta);
    if (it == cache_.end()) {
      SpanBasis sb;
      if (realize_ == Realize::full) {
        for (int t = 0; t < desc_->v.dim; ++t) sb.insert(basis_vec(beta, t));
      } else {
        for (auto& v : gamma_fiber(*tower_, beta, image_k_)) sb.insert(v);
      }
      it = cache_.emplace(beta, std::move(sb)).first;
    }
    return it->second;
  }

  // t^g d applied to basis vector idx of the fiber at beta; returns
  // coordinates in the fiber at beta + g.
  std::vector<std::pair<int, Scalar>> act_basis(const GroupElem& g, const DVector& d,
                                                const GroupElem& beta, int idx) const {
    std::vector<std::pair<int, Scalar>> out;
    if (realize_ == Realize::full) {
      TensorVec img = act(*desc_, g, d, basis_vec(beta, idx));
      for (const auto& [k, c] : img.terms) out.emplace_back(k.idx, c);
      return out;
    }
    TensorVec img = act(*desc_, g, d, fiber(beta).rows()[idx]);
    if (img.is_zero()) return out;
    auto coords = fiber(beta + g).coords(img);
    if (!coords)
      throw domain_error("image fiber not closed under the degree-zero action");
    for (std::size_t t = 0; t < coords->size(); ++t)
      if (!(*coords)[t].is_zero()) out.emplace_back(static_cast<int>(t), (*coords)[t]);
    return out;
  }

  // Weight of the fiber at beta on the j-th basis direction of D.
  Scalar weight(const GroupElem& beta, int j) const {
    return desc_->sigma[j] + desc_->pairing->pair_basis(beta, j);
  }

 private:
  std::shared_ptr<const ModuleDesc> desc_;
  Realize realize_;
  std::shared_ptr<const WedgeTower> tower_;
  int image_k_;
  mutable std::map<GroupElem, SpanBasis> cache_;
};

struct HwtSpec {
  std::shared_ptr<const Pairing> full;
  std::shared_ptr<const Splitting> split;
  std::shared_ptr<const Pairing> p0;  // degree-zero datum, G0 coordinates
  std::shared_ptr<const XModule> x;

  int n0() const { return split->g0_rank(); }
  int r() const { return full->r(); }

  GroupElem op_point(long deg, const GroupElem& off) const {
    return split->compose(std::vector<Int>(off.begin(), off.end()), Int(deg));
  }

  VermaOp bracket(const VermaOp& o1, const VermaOp& o2) const {
    GroupElem a1 = op_point(o1.deg, o1.off);
    GroupElem a2 = op_point(o2.deg, o2.off);
    VermaOp out;
    out.deg = o1.deg + o2.deg;
    out.off = o1.off + o2.off;
    out.d = full->pair(a2, o1.d) * o2.d - full->pair(a1, o2.d) * o1.d;
    return out;
  }

  VermaOp gen_op(const Gen& g) const {
    VermaOp op;
    op.deg = g.deg;
    op.off = g.off;
    op.d = dv_zero(r());
    op.d[g.dj] = Scalar(1);
    return op;
  }
};

// The degree-zero datum: rows of the ambient matrix restricted to the G0
// basis, so that lattice points are G0 coordinates.
inline std::shared_ptr<const Pairing> restrict_pairing(const Pairing& full,
                                                       const Splitting& split) {
  const int n0 = split.g0_rank();
  SMat p0(n0, full.r());
  for (int i = 0; i < n0; ++i) {
    GroupElem row(full.n());
    for (int j = 0; j < full.n(); ++j) row[j] = split.g0().basis.at(i, j);
    for (int j = 0; j < full.r(); ++j) p0.at(i, j) = full.pair_basis(row, j);
  }
  return std::make_shared<Pairing>(n0, full.r(), p0);
}

namespace detail {

LoweringExpr act_term(const HwtSpec& spec, const VermaOp& op,
                      const std::vector<Gen>& gens, const XKey& xk);

inline LoweringExpr act_expr(const HwtSpec& spec, const VermaOp& op,
                             const LoweringExpr& e) {
  LoweringExpr out;
  for (const auto& [key, c] : e.terms)
    out = out + c * act_term(spec, op, key.gens, key.x);
  return out;
}

// Places a lowering generator into an already normal-ordered list,
// commuting it rightward past smaller generators; corrections re-enter
// through the bracket.
inline LoweringExpr insert_gen(const HwtSpec& spec, const Gen& g,
                               const std::vector<Gen>& gens, const XKey& xk) {
  if (gens.empty() || !(gens.front() < g)) {
    LKey key;
    key.gens.reserve(gens.size() + 1);
    key.gens.push_back(g);
    key.gens.insert(key.gens.end(), gens.begin(), gens.end());
    key.x = xk;
    LoweringExpr out;
    out.add_term(key, Scalar(1));
    return out;
  }
  const Gen y1 = gens.front();
  std::vector<Gen> rest(gens.begin() + 1, gens.end());
  LoweringExpr sub = insert_gen(spec, g, rest, xk);
  LoweringExpr out = act_expr(spec, spec.gen_op(y1), sub);
  out = out + act_term(spec, spec.bracket(spec.gen_op(g), spec.gen_op(y1)), rest, xk);
  return out;
}

inline LoweringExpr act_term(const HwtSpec& spec, const VermaOp& op,
                             const std::vector<Gen>& gens, const XKey& xk) {
  LoweringExpr out;
  if (dv_is_zero(op.d)) return out;
  if (gens.empty()) {
    if (op.deg > 0) return out;  // raising part annihilates X
    if (op.deg == 0) {
      for (auto& [idx, c] : spec.x->act_basis(op.off, op.d, xk.beta, xk.idx)) {
        LKey key;
        key.x = XKey{xk.beta + op.off, idx};
        out.add_term(key, c);
      }
      return out;
    }
    for (int j = 0; j < spec.r(); ++j) {
      if (op.d[j].is_zero()) continue;
      LKey key;
      key.gens.push_back(Gen{op.deg, op.off, j});
      key.x = xk;
      out.add_term(key, op.d[j]);
    }
    return out;
  }
  if (op.deg < 0) {
    for (int j = 0; j < spec.r(); ++j) {
      if (op.d[j].is_zero()) continue;
      out = out + op.d[j] * insert_gen(spec, Gen{op.deg, op.off, j}, gens, xk);
    }
    return out;
  }
  // deg >= 0: x . (y1 rest) = y1 . (x . rest) + [x, y1] . rest
  const Gen y1 = gens.front();
  std::vector<Gen> rest(gens.begin() + 1, gens.end());
  LoweringExpr sub = act_term(spec, op, rest, xk);
  out = act_expr(spec, spec.gen_op(y1), sub);
  out = out + act_term(spec, spec.bracket(op, spec.gen_op(y1)), rest, xk);
  return out;
}

}  // namespace detail

// Action of one homogeneous operator on a normal-ordered expression.
inline LoweringExpr act_verma(const HwtSpec& spec, const VermaOp& op,
                              const LoweringExpr& e) {
  return detail::act_expr(spec, op, e);
}

inline LoweringExpr act_verma(const HwtSpec& spec, const GroupElem& a,
                              const DVector& d, const LoweringExpr& e) {
  VermaOp op;
  Int deg = spec.split->deg(a);
  op.deg = static_cast<long>(deg.get_si());
  op.off = GroupElem(spec.split->g0_coords(spec.split->g0_part(a)));
  op.d = d;
  return act_verma(spec, op, e);
}

inline LoweringExpr x_vacuum(const HwtSpec& spec, const GroupElem& beta, int idx) {
  LoweringExpr e;
  LKey key;
  key.x = XKey{beta, idx};
  e.add_term(key, Scalar(1));
  return e;
}

inline std::vector<std::vector<long>> partitions(long k) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  auto rec = [&](auto&& self, long rem, long maxpart) -> void {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (long p = std::min(rem, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rem - p, p);
      cur.pop_back();
    }
  };
  rec(rec, k, k);
  return out;
}

// All normal-ordered monomials of total degree -k whose offsets lie in the
// window; applied to every X fiber basis vector so the total offset is
// alpha. These are PBW basis vectors of the Verma fiber, restricted to the
// window.
inline std::vector<LoweringExpr> verma_fiber(const HwtSpec& spec, long k,
                                             const GroupElem& alpha, long partwin) {
  std::vector<LoweringExpr> out;
  const int n0 = spec.n0();
  auto offsets = box_points(n0, partwin);
  const int r = spec.r();

  for (const auto& part : partitions(k)) {
    // group equal part sizes; nondecreasing type index inside each group
    std::vector<std::pair<long, int>> groups;  // (part size, multiplicity)
    for (long p : part) {
      if (!groups.empty() && groups.back().first == p)
        groups.back().second += 1;
      else
        groups.emplace_back(p, 1);
    }
    std::vector<Gen> gens;
    GroupElem total = ge_zero(n0);
    auto emit = [&]() {
      GroupElem beta = alpha - total;
      int fd = spec.x->fiber_dim(beta);
      for (int idx = 0; idx < fd; ++idx) {
        LKey key;
        key.gens = gens;
        key.x = XKey{beta, idx};
        LoweringExpr e;
        e.add_term(key, Scalar(1));
        out.push_back(std::move(e));
      }
    };
    auto rec = [&](auto&& self, std::size_t gi, std::size_t within, std::size_t min_type)
        -> void {
      if (gi == groups.size()) {
        emit();
        return;
      }
      const auto [p, mult] = groups[gi];
      for (std::size_t t = min_type; t < offsets.size() * r; ++t) {
        Gen g{-p, offsets[t / r], static_cast<int>(t % r)};
        gens.push_back(g);
        total = total + g.off;
        if (within + 1 == static_cast<std::size_t>(mult))
          self(self, gi + 1, 0, 0);
        else
          self(self, gi, within + 1, t);
        total = total - g.off;
        gens.pop_back();
      }
    };
    rec(rec, 0, 0, 0);
  }
  return out;
}

// Raising monomials of total degree +k with offsets in the window; each is
// an operator product applied right to left.
inline std::vector<std::vector<VermaOp>> raising_monomials(const HwtSpec& spec, long k,
                                                           long raisewin) {
  std::vector<std::vector<VermaOp>> out;
  const int n0 = spec.n0();
  auto offsets = box_points(n0, raisewin);
  const int r = spec.r();

  for (const auto& part : partitions(k)) {
    std::vector<std::pair<long, int>> groups;
    for (long p : part) {
      if (!groups.empty() && groups.back().first == p)
        groups.back().second += 1;
      else
        groups.emplace_back(p, 1);
    }
    std::vector<VermaOp> mono;
    auto rec = [&](auto&& self, std::size_t gi, std::size_t within, std::size_t min_type)
        -> void {
      if (gi == groups.size()) {
        out.push_back(mono);
        return;
      }
      const auto [p, mult] = groups[gi];
      for (std::size_t t = min_type; t < offsets.size() * r; ++t) {
        VermaOp op;
        op.deg = p;
        op.off = offsets[t / r];
        op.d = dv_zero(r);
        op.d[static_cast<int>(t % r)] = Scalar(1);
        mono.push_back(op);
        if (within + 1 == static_cast<std::size_t>(mult))
          self(self, gi + 1, 0, 0);
        else
          self(self, gi, within + 1, t);
        mono.pop_back();
      }
    };
    rec(rec, 0, 0, 0);
  }
  return out;
}

namespace detail {

// Incremental dense row echelon over F; rank stays small in practice.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t cols) : cols_(cols) {}

  bool insert(std::vector<Scalar> row) {
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      const Scalar& c = row[pivot_[t]];
      if (c.is_zero()) continue;
      Scalar f = c;
      for (std::size_t j = 0; j < cols_; ++j) row[j] -= f * rows_[t][j];
    }
    std::size_t p = cols_;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!row[j].is_zero()) {
        p = j;
        break;
      }
    if (p == cols_) return false;
    Scalar inv = row[p].inv();
    for (std::size_t j = 0; j < cols_; ++j) row[j] = inv * row[j];
    rows_.push_back(std::move(row));
    pivot_.push_back(p);
    return true;
  }

  long rank() const { return static_cast<long>(rows_.size()); }

 private:
  std::size_t cols_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> pivot_;
};

}  // namespace detail

// Rank of the raising-against-lowering evaluation matrix at depth k and
// offset alpha. A monotone lower bound for the multiplicity of the simple
// quotient at that weight: a window vector survives to the quotient exactly
// when some raising monomial sees its top component.
inline long pairing_rank(const HwtSpec& spec, long k, const GroupElem& alpha,
                         long partwin, long raisewin, int jobs = 1) {
  auto cols = verma_fiber(spec, k, alpha, partwin);
  if (cols.empty()) return 0;
  auto monos = raising_monomials(spec, k, raisewin);

  detail::RowEchelon ech(cols.size());
  long rank = 0;
  // Rows are independent; compute in parallel batches, merge in order.
  const std::size_t batch = std::max<std::size_t>(1, 4 * std::max(jobs, 1));
  for (std::size_t start = 0; start < monos.size(); start += batch) {
    std::size_t stop = std::min(monos.size(), start + batch);
    std::vector<std::vector<std::vector<Scalar>>> blocks(stop - start);
    parallel_for(stop - start, jobs, [&](std::size_t t) {
      const auto& mono = monos[start + t];
      GroupElem target = alpha;
      for (const auto& op : mono) target = target + op.off;
      int fd = spec.x->fiber_dim(target);
      std::vector<std::vector<Scalar>> block(
          fd, std::vector<Scalar>(cols.size()));
      if (fd == 0) {
        blocks[t] = std::move(block);
        return;
      }
      for (std::size_t s = 0; s < cols.size(); ++s) {
        LoweringExpr e = cols[s];
        for (std::size_t l = mono.size(); l-- > 0;) {
          if (e.is_zero()) break;
          e = act_verma(spec, mono[l], e);
        }
        for (const auto& [key, c] : e.terms) {
          if (!key.gens.empty() || !(key.x.beta == target))
            throw domain_error("pairing evaluation did not land in the top level");
          block[key.x.idx][s] = c;
        }
      }
      blocks[t] = std::move(block);
    });
    for (auto& block : blocks)
      for (auto& row : block)
        if (ech.insert(std::move(row))) ++rank;
    if (rank == static_cast<long>(cols.size())) break;  // cannot grow further
  }
  return rank;
}

struct RankReport {
  long rank = 0;
  bool stabilized = false;
  std::vector<long> ranks;  // per window enlargement
  long partwin = 0, raisewin = 0;
};

// Rank at the given windows and after two enlargements; the flag records
// that the enlargements left the rank unchanged.
inline RankReport l_weight_rank(const HwtSpec& spec, long k, const GroupElem& alpha,
                                long partwin, long raisewin, int enlargements = 2,
                                int jobs = 1) {
  RankReport rep;
  rep.partwin = partwin;
  rep.raisewin = raisewin;
  for (int e = 0; e <= enlargements; ++e) {
    long rk = pairing_rank(spec, k, alpha, partwin + e, raisewin + e, jobs);
    if (!rep.ranks.empty() && rk < rep.ranks.back())
      throw domain_error("pairing rank decreased under window growth");
    rep.ranks.push_back(rk);
  }
  rep.rank = rep.ranks.back();
  rep.stabilized = rep.ranks.front() == rep.ranks.back();
  return rep;
}

struct HcCell {
  long k = 0;
  GroupElem alpha;
  long rank = 0;
  bool stabilized = false;
};

inline std::vector<HcCell> hc_table(const HwtSpec& spec, long kmax,
                                    const std::vector<GroupElem>& offsets,
                                    long partwin, long raisewin, int jobs = 1) {
  std::vector<HcCell> table;
  for (long k = 0; k <= kmax; ++k) {
    for (const auto& alpha : offsets) {
      HcCell cell;
      cell.k = k;
      cell.alpha = alpha;
      if (k == 0) {
        cell.rank = spec.x->fiber_dim(alpha);
        cell.stabilized = true;
      } else {
        RankReport rep = l_weight_rank(spec, k, alpha, partwin, raisewin, 2, jobs);
        cell.rank = rep.rank;
        cell.stabilized = rep.stabilized;
      }
      table.push_back(std::move(cell));
    }
  }
  return table;
}

struct GrowthResult {
  int s = 0;
  long rank = 0;
  SMat matrix;  // pairing values, raising i against lowering j
};

// The independence probe at the first lowered level: lowering vectors
// t^{-a0+beta_j} d' . v_{-beta_j} paired against raising operators
// t^{a0} d_i. The families are configured so the matrix is an exact
// multiple of the identity.
inline GrowthResult growth_probe(const HwtSpec& spec,
                                 const std::vector<GroupElem>& betas,
                                 const DVector& lower_d,
                                 const std::vector<DVector>& raise_ds) {
  const int s = static_cast<int>(betas.size());
  if (static_cast<int>(raise_ds.size()) != s)
    throw domain_error("probe needs as many raising directions as offsets");
  GrowthResult res;
  res.s = s;
  res.matrix = SMat(s, s);
  for (int j = 0; j < s; ++j) {
    LoweringExpr u;
    for (int l = 0; l < spec.r(); ++l) {
      if (lower_d[l].is_zero()) continue;
      LKey key;
      key.gens.push_back(Gen{-1, betas[j], l});
      key.x = XKey{-betas[j], 0};
      u.add_term(key, lower_d[l]);
    }
    for (int i = 0; i < s; ++i) {
      VermaOp op;
      op.deg = 1;
      op.off = ge_zero(spec.n0());
      op.d = raise_ds[i];
      LoweringExpr img = act_verma(spec, op, u);
      for (const auto& [key, c] : img.terms) {
        if (!key.gens.empty() || !ge_is_zero(key.x.beta) || key.x.idx != 0)
          throw domain_error("probe pairing did not land on the top vector");
        res.matrix.at(i, j) = c;
      }
    }
  }
  res.rank = rank(res.matrix);
  return res;
}

}  // namespace genwitt
