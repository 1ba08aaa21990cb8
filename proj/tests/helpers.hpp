#pragma once

// Shared fixtures: the recurring data and the highest-weight setups used
// across suites.

#include <initializer_list>
#include <memory>

#include "genwitt/hwt.hpp"
#include "genwitt/tensor.hpp"

namespace genwitt::testing {

inline GroupElem pt(std::initializer_list<long> xs) {
  GroupElem a;
  for (long x : xs) a.push_back(Int(x));
  return a;
}

inline std::shared_ptr<const Pairing> identity_pairing(int n) {
  return std::make_shared<Pairing>(n, n, SMat::identity(n));
}

inline std::shared_ptr<const Pairing> example2_pairing() {
  SMat p(3, 2);
  p.at(0, 0) = Scalar(1);
  p.at(1, 1) = Scalar(1);
  p.at(2, 1) = sqrt_m();
  return std::make_shared<Pairing>(3, 2, p);
}

// Centerless rank-one datum with a one-dimensional degree-zero module of
// weight sigma.
inline HwtSpec virasoro_spec(const Scalar& sigma) {
  SMat one(1, 1);
  one.at(0, 0) = Scalar(1);
  HwtSpec spec;
  spec.full = std::make_shared<Pairing>(1, 1, one);
  spec.split = std::make_shared<Splitting>(pt({1}));
  spec.p0 = restrict_pairing(*spec.full, *spec.split);
  auto desc0 = std::make_shared<ModuleDesc>(
      make_desc(spec.p0, nullptr, vc_module(Scalar(0)), {sigma}));
  spec.x = std::make_shared<XModule>(desc0);
  return spec;
}

// The identity datum on Z^2 split along (0,1), with a scalar bounded module
// over the degree-zero subalgebra.
inline HwtSpec hc2x2_spec(const Scalar& c, const Scalar& s1, const Scalar& s2) {
  HwtSpec spec;
  spec.full = identity_pairing(2);
  spec.split = std::make_shared<Splitting>(pt({0, 1}));
  spec.p0 = restrict_pairing(*spec.full, *spec.split);
  auto desc0 = std::make_shared<ModuleDesc>(
      make_desc(spec.p0, nullptr, vc_module(c), {s1, s2}));
  spec.x = std::make_shared<XModule>(desc0);
  return spec;
}

// Probe family: G0 spanned by e_1..e_s, lowering direction along e_{s+1}
// (which pairs to nothing), D of dimension s+1 with duals d_1..d_s and a
// last direction d' seen only by sigma.
struct GrowthFamily {
  HwtSpec spec;
  std::vector<GroupElem> betas;   // G0 coordinates
  DVector lower_d;
  std::vector<DVector> raise_ds;
  Scalar sigma_last;
};

inline GrowthFamily growth_family(int s, const Scalar& c) {
  const int n = s + 1, r = s + 1;
  SMat p(n, r);
  for (int i = 0; i < s; ++i) p.at(i, i) = Scalar(1);
  GrowthFamily fam;
  fam.spec.full = std::make_shared<Pairing>(n, r, p);
  GroupElem a0 = ge_zero(n);
  a0[n - 1] = 1;
  fam.spec.split = std::make_shared<Splitting>(a0);
  fam.spec.p0 = restrict_pairing(*fam.spec.full, *fam.spec.split);

  fam.sigma_last = parse_scalar("1/2");
  std::vector<Scalar> sigma(r, Scalar(0));
  sigma[r - 1] = fam.sigma_last;
  auto desc0 = std::make_shared<ModuleDesc>(
      make_desc(fam.spec.p0, nullptr, vc_module(c), sigma));
  fam.spec.x = std::make_shared<XModule>(desc0);

  for (int j = 0; j < s; ++j) {
    GroupElem beta = ge_zero(s);
    beta[j] = 1;
    fam.betas.push_back(beta);
    DVector d = dv_zero(r);
    d[j] = Scalar(1);
    fam.raise_ds.push_back(d);
  }
  fam.lower_d = dv_zero(r);
  if (c == Scalar(1)) {
    fam.lower_d[r - 1] = Scalar(1);  // d'
  } else {
    for (int l = 0; l < s; ++l) fam.lower_d[l] = Scalar(1);  // d_1 + .. + d_s
  }
  return fam;
}

}  // namespace genwitt::testing
