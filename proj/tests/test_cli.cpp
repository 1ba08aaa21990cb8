#include <doctest.h>

#include "genwitt/config.hpp"
#include "genwitt/report.hpp"

using namespace genwitt;

namespace {

std::string cfg_path(const std::string& name) {
  return std::string(GENWITT_CONFIG_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("bundled configs load") {
  {
    Config cfg = load_config(cfg_path("example2.json"));
    CHECK(cfg.m == 2);
    CHECK(cfg.n == 3);
    CHECK(cfg.r == 2);
    DatumHandles datum = make_datum(cfg);
    REQUIRE(datum.frame);
    CHECK(datum.frame->rbar == 2);
    CHECK(datum.pairing->is_nondegenerate());
    LModule v = make_lmodule(cfg.module_spec, *datum.pairing, datum.frame.get());
    CHECK(v.dim == 2);
  }
  {
    Config cfg = load_config(cfg_path("virasoro.json"));
    CHECK(cfg.n == 1);
    DatumHandles datum = make_datum(cfg);
    HwtSpec spec = make_hwt(cfg, datum);
    CHECK(spec.n0() == 0);
    CHECK(spec.x->fiber_dim(ge_zero(0)) == 1);
  }
  {
    Config cfg = load_config(cfg_path("identity2.json"));
    DatumHandles datum = make_datum(cfg);
    HwtSpec spec = make_hwt(cfg, datum);
    CHECK(spec.n0() == 1);
    CHECK(!spec.x->desc().sigma_ker2_zero);  // sigma sees the kernel direction
  }
}

TEST_CASE("schema violations carry pointer paths") {
  auto expect_error = [](const json& j, const std::string& needle) {
    try {
      parse_config(j);
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  json base = {
      {"field", {{"m", 0}}},
      {"lattice", {{"n", 1}}},
      {"pairing", {{"P", {{"1"}}}}},
      {"module", {{"kind", "vc"}, {"c", "0"}}},
      {"sigma", {"1/2"}},
  };
  CHECK_NOTHROW(parse_config(base));

  json bad = base;
  bad["field"]["m"] = 12;
  expect_error(bad, "/field/m");

  bad = base;
  bad.erase("pairing");
  expect_error(bad, "/pairing");

  bad = base;
  bad["pairing"]["P"] = {{"1", "0"}};
  expect_error(bad, "/pairing/P");

  bad = base;
  bad["pairing"]["P"] = {{"oops"}};
  expect_error(bad, "/pairing/P/0/0");

  bad = base;
  bad["sigma"] = {"1/2", "1/3"};
  expect_error(bad, "/sigma");

  bad = base;
  bad["windows"] = {{"box", 0}};
  expect_error(bad, "/windows/box");

  bad = base;
  bad["module"] = {{"kind", "nope"}};
  expect_error(bad, "/module/kind");
}

TEST_CASE("module spec strings") {
  set_field(0);
  auto p = std::make_shared<Pairing>(2, 2, SMat::identity(2));
  GlFrame f = make_frame(*p);
  CHECK(parse_module_spec("wedge:1", *p, &f).dim == 2);
  CHECK(parse_module_spec("vc:1/2", *p, &f).c == parse_scalar("1/2"));
  CHECK(parse_module_spec("adjoint", *p, &f).dim == 3);
  CHECK_THROWS_AS(parse_module_spec("nope", *p, &f), config_error);
}

TEST_CASE("growth configs drive the probe") {
  Config cfg = load_config(cfg_path("growth_s2_c1.json"));
  DatumHandles datum = make_datum(cfg);
  HwtSpec spec = make_hwt(cfg, datum);
  REQUIRE(!cfg.growth_spec.is_null());
  std::vector<GroupElem> betas;
  for (std::size_t i = 0; i < cfg.growth_spec.at("betas").size(); ++i)
    betas.push_back(cfgdetail::need_point(cfg.growth_spec.at("betas")[i], spec.n0(),
                                          "/growth/betas"));
  CHECK(betas.size() == 2);
  CHECK(spec.n0() == 2);
}

TEST_CASE("golden runs are deterministic") {
  std::string a = run_example1();
  std::string b = run_example1();
  CHECK(a == b);
  CHECK(a.find("action residual failures\t0") != std::string::npos);

  std::string c = run_example2();
  std::string d = run_example2();
  CHECK(c == d);
  CHECK(c.find("action residual failures\t0") != std::string::npos);
  CHECK(c.find("dim K1\t2") != std::string::npos);
  CHECK(c.find("rbar\t2") != std::string::npos);
}
