#pragma once

// Deterministic report emission: TSV for tables, JSON for verdicts and
// certificates, and the two built-in golden runs. Byte-identical output
// given identical configuration is part of the contract.

#include <sstream>
#include <string>

#include <json.hpp>

#include "genwitt/config.hpp"
#include "genwitt/hwt.hpp"
#include "genwitt/spanprobe.hpp"

namespace genwitt {

inline json to_json(const TensorVec& v) {
  json arr = json::array();
  for (const auto& [k, c] : v.terms) {
    json t;
    json b = json::array();
    for (const auto& x : k.b) b.push_back(x.get_str());
    t["b"] = b;
    t["i"] = k.idx;
    t["c"] = render(c);
    arr.push_back(t);
  }
  return arr;
}

inline json to_json(const Violation& v) {
  json j;
  j["fiber"] = ge_str(v.fiber);
  j["op_a"] = ge_str(v.op_a);
  j["op_d"] = v.op_j;
  j["vector"] = to_json(v.vec);
  j["image"] = to_json(v.image);
  return j;
}

inline json to_json(const SimplicityReport& rep) {
  json j;
  switch (rep.verdict) {
    case SimplicityReport::Verdict::simple_evidence:
      j["verdict"] = "simple-evidence";
      break;
    case SimplicityReport::Verdict::proper_submodule:
      j["verdict"] = "proper-submodule";
      break;
    case SimplicityReport::Verdict::inconclusive:
      j["verdict"] = "inconclusive";
      break;
  }
  j["detail"] = rep.detail;
  if (rep.wedge_level) j["wedge_level"] = *rep.wedge_level;
  if (rep.verdict == SimplicityReport::Verdict::proper_submodule) {
    j["submodule"] = rep.submodule;
    j["invariance_verified"] = rep.invariance_verified;
    if (rep.violation) j["violation"] = to_json(*rep.violation);
  } else {
    j["prng_seed"] = rep.prng_seed;
    json seeds = json::array();
    for (const auto& s : rep.seeds) seeds.push_back(to_json(s));
    j["seeds"] = seeds;
    j["box_filled"] = rep.box_filled;
    j["capped"] = rep.capped;
    json dims = json::object();
    for (const auto& [b, d] : rep.closure_dims) dims[ge_str(b)] = d;
    j["closure_dims"] = dims;
  }
  return j;
}

inline json to_json(const SeparationCert& c) {
  json j;
  j["b"] = ge_str(c.b);
  j["a"] = ge_str(c.a);
  j["d"] = render(c.d);
  j["killed_level"] = c.killed_level;
  j["survived_level"] = c.survived_level;
  return j;
}

inline json to_json(const Fingerprint& fp) {
  json j;
  j["dim_v"] = fp.dim_v;
  j["support"] = fp.support;
  json dims = json::object();
  for (const auto& [b, d] : fp.fibers) dims[ge_str(b)] = d;
  j["fibers"] = dims;
  return j;
}

inline std::string tsv_fingerprint(const Fingerprint& fp) {
  std::ostringstream out;
  out << "b\tdim\n";
  for (const auto& [b, d] : fp.fibers) out << ge_str(b) << "\t" << d << "\n";
  out << "# support\t" << fp.support << "\n";
  return out.str();
}

inline std::string tsv_hc_table(const std::vector<HcCell>& table) {
  std::ostringstream out;
  out << "k\toffset\trank\tstabilized\n";
  for (const auto& cell : table)
    out << cell.k << "\t" << ge_str(cell.alpha) << "\t" << cell.rank << "\t"
        << (cell.stabilized ? "yes" : "no") << "\n";
  return out.str();
}

inline json to_json(const std::vector<HcCell>& table) {
  json rows = json::array();
  for (const auto& cell : table) {
    json r;
    r["k"] = cell.k;
    r["offset"] = ge_str(cell.alpha);
    r["rank"] = cell.rank;
    r["stabilized"] = cell.stabilized;
    rows.push_back(r);
  }
  return rows;
}

inline json to_json(const GrowthResult& g) {
  json j;
  j["s"] = g.s;
  j["rank"] = g.rank;
  json m = json::array();
  for (int i = 0; i < g.matrix.rows; ++i) {
    json row = json::array();
    for (int c = 0; c < g.matrix.cols; ++c) row.push_back(render(g.matrix.at(i, c)));
    m.push_back(row);
  }
  j["matrix"] = m;
  return j;
}

// Golden run: the infinite-rank scalar-module family truncated to n = r = 3
// with the identity pairing and c = 1, where the action on the weight basis
// is t^a d_i . v_b = (a_i + b_i + sigma(d_i)) v_{a+b}.
inline std::string run_example1() {
  set_field(0);
  const int n = 3;
  SMat p = SMat::identity(n);
  auto pairing = std::make_shared<Pairing>(n, n, p);
  auto frame = std::make_shared<GlFrame>(make_frame(*pairing));
  std::vector<Scalar> sigma = {parse_scalar("1/2"), parse_scalar("-1/3"),
                               parse_scalar("1/5")};
  ModuleDesc desc = make_desc(pairing, frame, vc_module(Scalar(1)), sigma);

  std::ostringstream out;
  out << "example1: scalar family truncation, n=r=3, identity pairing, c=1\n";
  out << "sigma\t" << render(sigma[0]) << "\t" << render(sigma[1]) << "\t"
      << render(sigma[2]) << "\n";

  long checked = 0, failures = 0;
  for (const auto& a : box_points(n, 1)) {
    for (const auto& b : box_points(n, 1)) {
      for (int i = 0; i < n; ++i) {
        DVector d = dv_zero(n);
        d[i] = Scalar(1);
        TensorVec lhs = act(desc, a, d, basis_vec(b, 0));
        Scalar coeff = Scalar(Rat(a[i])) + Scalar(Rat(b[i])) + sigma[i];
        TensorVec rhs = coeff * basis_vec(a + b, 0);
        ++checked;
        if (!(lhs == rhs)) ++failures;
      }
    }
  }
  out << "action residual instances\t" << checked << "\n";
  out << "action residual failures\t" << failures << "\n";

  // a few rendered samples, fixed for the golden comparison
  GroupElem a = {Int(1), Int(0), Int(-1)};
  GroupElem b = {Int(0), Int(1), Int(1)};
  for (int i = 0; i < n; ++i) {
    DVector d = dv_zero(n);
    d[i] = Scalar(1);
    out << "sample t^" << ge_str(a) << " d_" << (i + 1) << " . v_" << ge_str(b) << "\t"
        << render(act(desc, a, d, basis_vec(b, 0))) << "\n";
  }
  return out.str();
}

// Golden run: the rank-3 datum over Q(sqrt 2) with a two-dimensional
// complement; checks the closed action formulas on the natural module and
// the dimension bookkeeping of the coefficient algebra quotient.
inline std::string run_example2() {
  set_field(2);
  const int n = 3, r = 2;
  SMat p(n, r);
  p.at(0, 0) = Scalar(1);
  p.at(1, 1) = Scalar(1);
  p.at(2, 1) = sqrt_m();
  auto pairing = std::make_shared<Pairing>(n, r, p);
  auto frame = std::make_shared<GlFrame>(make_frame(*pairing));
  std::vector<Scalar> sigma = {parse_scalar("1/2"), parse_scalar("1/3")};
  ModuleDesc desc = make_desc(pairing, frame, wedge_module(*frame, 1), sigma);

  std::ostringstream out;
  out << "example2: n=3 r=2 datum over Q(sqrt 2)\n";
  out << "nondegenerate\t" << (pairing->is_nondegenerate() ? "yes" : "no") << "\n";
  out << "rbar\t" << frame->rbar << "\n";
  out << "dim K1\t" << k1_basis(*pairing).size() << "\n";
  out << "dim K2\t" << k2_basis(*pairing).size() << "\n";
  out << "frame a1\t" << ge_str(frame->a_pick[0]) << "\n";
  out << "frame a2\t" << ge_str(frame->a_pick[1]) << "\n";

  // closed form of the action on the natural module: for d = d_1 the fiber
  // shift picks up gamma_1 + sigma_1 + alpha_1 E11 + (alpha_2 + s alpha_3) E21,
  // and for d = d_2 the second column with gamma_2 + s gamma_3 + sigma_2.
  auto ee = [&](int i, int j) {
    SMat m(2, 2);
    m.at(i, j) = Scalar(1);
    return m;
  };
  long checked = 0, failures = 0;
  for (const auto& alpha : box_points(n, 1)) {
    for (const auto& gamma : box_points(n, 1)) {
      Scalar a1{Rat(alpha[0])};
      Scalar a23 = Scalar(Rat(alpha[1])) + sqrt_m() * Scalar(Rat(alpha[2]));
      Scalar g1{Rat(gamma[0])};
      Scalar g23 = Scalar(Rat(gamma[1])) + sqrt_m() * Scalar(Rat(gamma[2]));
      for (int dj = 0; dj < r; ++dj) {
        DVector d = dv_zero(r);
        d[dj] = Scalar(1);
        SMat op = dj == 0 ? a1 * ee(0, 0) + a23 * ee(1, 0)
                          : a1 * ee(0, 1) + a23 * ee(1, 1);
        Scalar diag = dj == 0 ? g1 + sigma[0] : g23 + sigma[1];
        for (int v = 0; v < 2; ++v) {
          TensorVec lhs = act(desc, alpha, d, basis_vec(gamma, v));
          TensorVec rhs;
          rhs.add_term({alpha + gamma, v}, diag);
          for (int t = 0; t < 2; ++t) rhs.add_term({alpha + gamma, t}, op.at(t, v));
          ++checked;
          if (!(lhs == rhs)) ++failures;
        }
      }
    }
  }
  out << "action residual instances\t" << checked << "\n";
  out << "action residual failures\t" << failures << "\n";

  GroupElem alpha = {Int(0), Int(0), Int(1)};
  GroupElem gamma = {Int(1), Int(-1), Int(0)};
  for (int dj = 0; dj < r; ++dj) {
    DVector d = dv_zero(r);
    d[dj] = Scalar(1);
    out << "sample t^" << ge_str(alpha) << " d" << (dj + 1) << " . t^" << ge_str(gamma)
        << "#0\t" << render(act(desc, alpha, d, basis_vec(gamma, 0))) << "\n";
  }
  return out.str();
}

}  // namespace genwitt
