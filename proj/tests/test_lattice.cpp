#include <doctest.h>

#include "genwitt/lattice.hpp"
#include "genwitt/prng.hpp"

using namespace genwitt;

namespace {

Pairing example2_pairing() {
  set_field(2);
  SMat p(3, 2);
  p.at(0, 0) = Scalar(1);
  p.at(1, 1) = Scalar(1);
  p.at(2, 1) = sqrt_m();
  return Pairing(3, 2, p);
}

GroupElem pt(std::initializer_list<long> xs) {
  GroupElem a;
  for (long x : xs) a.push_back(Int(x));
  return a;
}

}  // namespace

TEST_CASE("pair evaluates a^T P d") {
  set_field(2);
  Pairing id2(2, 2, SMat::identity(2));
  DVector d = {Scalar(0), Scalar(1)};
  CHECK(id2.pair(pt({1, 0}), d).is_zero());
  CHECK(id2.pair(pt({0, 0}), d).is_zero());

  Pairing ex2 = example2_pairing();
  DVector d2 = {Scalar(0), Scalar(1)};
  CHECK(ex2.pair(pt({0, 0, 1}), d2) == sqrt_m());
}

TEST_CASE("pair is additive and linear on random instances") {
  set_field(2);
  Prng rng(5);
  Pairing ex2 = example2_pairing();
  for (int t = 0; t < 1000; ++t) {
    GroupElem a = rng.point(3, 4), b = rng.point(3, 4);
    DVector d = rng.dvector(2), e = rng.dvector(2);
    Scalar c = rng.scalar(3);
    CHECK(ex2.pair(a + b, d) == ex2.pair(a, d) + ex2.pair(b, d));
    CHECK(ex2.pair(a, d + e) == ex2.pair(a, d) + ex2.pair(a, e));
    CHECK(ex2.pair(a, c * d) == c * ex2.pair(a, d));
  }
}

TEST_CASE("lattice kernel") {
  set_field(2);
  Pairing ex2 = example2_pairing();
  CHECK(ex2.ker1().rank() == 0);
  CHECK(ex2.rank_f() == 2);

  SMat zero(2, 2);
  Pairing pz(2, 2, zero);
  CHECK(pz.ker1().rank() == 2);

  // single column (1, 1): kernel generated by (1, -1)
  SMat col(2, 1);
  col.at(0, 0) = Scalar(1);
  col.at(1, 0) = Scalar(1);
  Pairing pc(2, 1, col);
  REQUIRE(pc.ker1().rank() == 1);
  CHECK(pc.ker1().basis.at(0, 0) == 1);
  CHECK(pc.ker1().basis.at(0, 1) == -1);
  CHECK(pc.ker1().contains(pt({2, -2})));
  CHECK(!pc.ker1().contains(pt({1, 1})));
}

TEST_CASE("kernel saturation: rational span intersected with the lattice") {
  set_field(0);
  Prng rng(23);
  for (int t = 0; t < 50; ++t) {
    int n = static_cast<int>(rng.unif(1, 3));
    int r = static_cast<int>(rng.unif(1, 3));
    SMat p(n, r);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j) p.at(i, j) = Scalar(Rat(rng.unif(-2, 2)));
    Pairing pr(n, r, p);
    const IMat& basis = pr.ker1().basis;
    // saturated: rank equals the corank of the rational matrix
    CHECK(basis.rows == n - rank(p));
    // primitive parts of basis vectors stay inside
    for (int i = 0; i < basis.rows; ++i) {
      GroupElem v = basis.row(i);
      Int g(0);
      for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g > 1) {
        GroupElem w(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) w[k] = v[k] / g;
        CHECK(pr.ker1().contains(w));
      }
    }
    // HNF of the basis equals the stored basis (canonical form).
    CHECK(row_hnf(basis) == basis);
  }
}

TEST_CASE("right kernel over the field") {
  set_field(2);
  Pairing id2(2, 2, SMat::identity(2));
  CHECK(id2.ker2().empty());

  SMat zcol(2, 2);
  zcol.at(0, 0) = Scalar(1);
  zcol.at(1, 0) = Scalar(1);
  Pairing pz(2, 2, zcol);  // second column zero
  REQUIRE(pz.ker2().size() == 1);
  CHECK(pz.ker2()[0][0].is_zero());
  CHECK(pz.ker2()[0][1] == Scalar(1));

  // one row (1, sqrt 2): kernel basis {(-sqrt 2, 1)}
  SMat row(1, 2);
  row.at(0, 0) = Scalar(1);
  row.at(0, 1) = sqrt_m();
  Pairing pr(1, 2, row);
  REQUIRE(pr.ker2().size() == 1);
  CHECK(pr.ker2()[0][0] == -sqrt_m());
  CHECK(pr.ker2()[0][1] == Scalar(1));
}

TEST_CASE("non-degeneracy") {
  set_field(2);
  CHECK(example2_pairing().is_nondegenerate());
  Pairing id2(2, 2, SMat::identity(2));
  CHECK(id2.is_nondegenerate());

  // n > 2r forces a lattice kernel
  set_field(0);
  Prng rng(9);
  for (int t = 0; t < 20; ++t) {
    SMat p(3, 1);
    for (int i = 0; i < 3; ++i) p.at(i, 0) = Scalar(rng.rational(3));
    Pairing pr(3, 1, p);
    CHECK(!pr.is_nondegenerate());
  }
}

TEST_CASE("splitting along a primitive direction") {
  set_field(0);
  Splitting s(pt({0, 1}));
  CHECK(s.deg(pt({3, 5})) == 5);
  CHECK(s.g0_rank() == 1);
  CHECK(s.g0().basis.at(0, 0) == 1);
  CHECK(s.g0().basis.at(0, 1) == 0);

  Splitting s2(pt({2, 3}));
  CHECK(s2.deg(pt({2, 3})) == 1);
  // [G0 basis; a0] is unimodular
  IMat m(2, 2);
  m.at(0, 0) = s2.g0().basis.at(0, 0);
  m.at(0, 1) = s2.g0().basis.at(0, 1);
  m.at(1, 0) = 2;
  m.at(1, 1) = 3;
  CHECK(is_unimodular(m));

  CHECK_THROWS_AS(Splitting(pt({2, 4})), domain_error);
  CHECK_THROWS_AS(Splitting(pt({0, 0})), domain_error);
}

TEST_CASE("splitting determinant on random primitive directions") {
  set_field(0);
  Prng rng(31);
  for (int t = 0; t < 100; ++t) {
    int n = static_cast<int>(rng.unif(1, 4));
    GroupElem a0 = rng.point(n, 5);
    if (!is_primitive(a0)) continue;
    Splitting s(a0);
    IMat m(n, n);
    for (int i = 0; i + 1 < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = s.g0().basis.at(i, j);
    for (int j = 0; j < n; ++j) m.at(n - 1, j) = a0[j];
    CHECK(is_unimodular(m));
    CHECK(s.deg(a0) == 1);
    // decomposition round trip
    GroupElem x = rng.point(n, 6);
    GroupElem part = s.g0_part(x);
    CHECK(s.deg(part) == 0);
    CHECK(s.compose(s.g0_coords(part), s.deg(x)) == x);
  }
}

TEST_CASE("splitting with a user complement") {
  set_field(0);
  IMat basis(1, 2);
  basis.at(0, 0) = 1;
  basis.at(0, 1) = 1;
  Splitting s(pt({0, 1}), basis);
  // a = (x, y) = x*(1,1) + (y-x)*(0,1)
  CHECK(s.deg(pt({3, 5})) == 2);
  CHECK(s.g0_coords(s.g0_part(pt({3, 5})))[0] == 3);

  IMat bad(1, 2);
  bad.at(0, 0) = 2;
  bad.at(0, 1) = 0;
  CHECK_THROWS_AS(Splitting(pt({0, 1}), bad), domain_error);
}

TEST_CASE("integer matrix kit") {
  IMat m(2, 2);
  m.at(0, 0) = 2;
  m.at(0, 1) = 4;
  m.at(1, 0) = 1;
  m.at(1, 1) = 3;
  HnfResult h = hnf_with_transform(m);
  CHECK(h.rank == 2);
  // U * input = H
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Int acc(0);
      for (int k = 0; k < 2; ++k) acc += h.u.at(i, k) * m.at(k, j);
      CHECK(acc == h.h.at(i, j));
    }

  std::vector<Int> c = {Int(3), Int(7)};
  auto sol = solve_left(m, c);
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] * m.at(0, 0) + (*sol)[1] * m.at(1, 0) == 3);
  CHECK((*sol)[0] * m.at(0, 1) + (*sol)[1] * m.at(1, 1) == 7);

  std::vector<Int> c2 = {Int(1), Int(0)};
  // x * (rows of m) = (1, 0) has no integer solution: determinant is 2
  CHECK(!solve_left(m, c2).has_value());
}
