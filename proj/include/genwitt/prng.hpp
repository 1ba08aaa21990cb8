#pragma once

// Seeded deterministic randomness for property tests and probe seeds.

#include <random>

#include "genwitt/lattice.hpp"

namespace genwitt {

class Prng {
 public:
  explicit Prng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  std::uint64_t seed() const { return seed_; }

  long unif(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(eng_);
  }

  Rat rational(long mag = 9, long den = 9) {
    return canonical(Rat(Int(unif(-mag, mag)), Int(unif(1, den))));
  }

  Scalar scalar(long mag = 9) {
    if (field_is_rational()) return Scalar(rational(mag));
    return Scalar(rational(mag), rational(mag));
  }

  Scalar nonzero_scalar(long mag = 9) {
    for (;;) {
      Scalar s = scalar(mag);
      if (!s.is_zero()) return s;
    }
  }

  GroupElem point(int n, long window) {
    GroupElem a(n);
    for (int i = 0; i < n; ++i) a[i] = Int(unif(-window, window));
    return a;
  }

  DVector dvector(int r, long mag = 3) {
    DVector d(r);
    for (int j = 0; j < r; ++j) d[j] = scalar(mag);
    return d;
  }

  DVector nonzero_dvector(int r, long mag = 3) {
    for (;;) {
      DVector d = dvector(r, mag);
      if (!dv_is_zero(d)) return d;
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace genwitt
