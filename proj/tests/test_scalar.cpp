#include <doctest.h>

#include "genwitt/prng.hpp"
#include "genwitt/scalar.hpp"

using namespace genwitt;

TEST_CASE("conjugate products and inverses in Q(sqrt 2)") {
  set_field(2);
  Scalar x = parse_scalar("1+1s");
  Scalar y = parse_scalar("1-1s");
  CHECK(x * y == Scalar(-1));
  CHECK(sqrt_m().inv() == parse_scalar("0+1/2s"));
  CHECK((parse_scalar("3/2") + parse_scalar("-3/2")).is_zero());
}

TEST_CASE("parse and render") {
  set_field(2);
  CHECK(parse_scalar("3/2+1/2s") == Scalar(Rat(3, 2), Rat(1, 2)));
  CHECK(parse_scalar("-2") == Scalar(Rat(-2), Rat(0)));
  CHECK(parse_scalar("0-1s") == Scalar(Rat(0), Rat(-1)));
  CHECK(parse_scalar("0+s") == Scalar(Rat(0), Rat(1)));
  CHECK(render(parse_scalar("3/2+1/2s")) == "3/2+1/2s");
  CHECK(render(parse_scalar("-4/8")) == "-1/2");
  CHECK_THROWS_AS(parse_scalar("1+"), parse_error);
  CHECK_THROWS_AS(parse_scalar("1/0"), parse_error);
  CHECK_THROWS_AS(parse_scalar("2x"), parse_error);
}

TEST_CASE("field axioms hold exactly on random triples") {
  set_field(2);
  Prng rng(42);
  for (int t = 0; t < 1000; ++t) {
    Scalar x = rng.scalar(), y = rng.scalar(), z = rng.scalar();
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * y == y * x);
    CHECK(x + y == y + x);
    CHECK(x * (y + z) == x * y + x * z);
  }
}

TEST_CASE("inverse times value is one") {
  set_field(2);
  Prng rng(7);
  for (int t = 0; t < 1000; ++t) {
    Scalar x = rng.nonzero_scalar();
    CHECK(x.inv() * x == Scalar(1));
  }
}

TEST_CASE("render parse render is idempotent") {
  set_field(2);
  Prng rng(11);
  for (int t = 0; t < 500; ++t) {
    std::string s = render(rng.scalar());
    CHECK(render(parse_scalar(s)) == s);
  }
}

TEST_CASE("domain errors") {
  set_field(2);
  CHECK_THROWS_AS(Scalar(0).inv(), domain_error);
  CHECK_THROWS_AS(set_field(12), config_error);
  CHECK_THROWS_AS(set_field(-2), config_error);
  set_field(0);
  CHECK_THROWS_AS(Scalar(Rat(0), Rat(1)), domain_error);
  CHECK_THROWS_AS(parse_scalar("1+1s"), domain_error);
  set_field(2);
}
