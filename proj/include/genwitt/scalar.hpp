#pragma once

// Exact arithmetic in F = Q(sqrt(m)) for a session-wide square-free m >= 0.
// m in {0,1} selects plain Q mode, where every value has a zero surd part.
// Values are immutable; all operations are pure.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace genwitt {

using Int = mpz_class;
using Rat = mpq_class;

struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
  std::size_t pos;
  parse_error(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        pos(pos) {}
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
inline long& field_m_ref() {
  static long m = 0;
  return m;
}
}  // namespace detail

inline bool is_square_free(long m) {
  if (m < 0) return false;
  if (m < 2) return true;
  for (long p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
  }
  return true;
}

// Sets the radicand for the whole session. Must happen before any surd
// arithmetic and never concurrently with it.
inline void set_field(long m) {
  if (!is_square_free(m))
    throw config_error("field radicand m = " + std::to_string(m) +
                       " is not square-free");
  detail::field_m_ref() = m;
}

inline long field_m() { return detail::field_m_ref(); }
inline bool field_is_rational() { return field_m() < 2; }

inline Rat canonical(Rat q) {
  q.canonicalize();
  return q;
}

class Scalar {
 public:
  Scalar() : rat_(0), surd_(0) {}
  Scalar(long v) : rat_(v), surd_(0) {}  // NOLINT: implicit by design
  Scalar(const Rat& r) : rat_(canonical(r)), surd_(0) {}
  Scalar(Rat r, Rat s) : rat_(canonical(std::move(r))), surd_(canonical(std::move(s))) {
    if (field_is_rational() && surd_ != 0)
      throw domain_error("surd component requires field with m >= 2");
  }

  const Rat& rat() const { return rat_; }
  const Rat& surd() const { return surd_; }

  bool is_zero() const { return rat_ == 0 && surd_ == 0; }
  bool is_rational() const { return surd_ == 0; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.rat_ == y.rat_ && x.surd_ == y.surd_;
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    return Scalar(x.rat_ + y.rat_, x.surd_ + y.surd_);
  }
  friend Scalar operator-(const Scalar& x, const Scalar& y) {
    return Scalar(x.rat_ - y.rat_, x.surd_ - y.surd_);
  }
  friend Scalar operator-(const Scalar& x) { return Scalar(-x.rat_, -x.surd_); }

  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    // (a + b sqrt m)(c + d sqrt m) = (ac + bdm) + (ad + bc) sqrt m
    Rat m(field_m());
    return Scalar(x.rat_ * y.rat_ + x.surd_ * y.surd_ * m,
                  x.rat_ * y.surd_ + x.surd_ * y.rat_);
  }

  Scalar inv() const {
    // 1/(a + b sqrt m) = (a - b sqrt m)/(a^2 - b^2 m); the denominator can
    // only vanish at zero because m is never a perfect square here.
    Rat m(field_m());
    Rat den = rat_ * rat_ - surd_ * surd_ * m;
    if (den == 0) {
      if (is_zero()) throw domain_error("inverse of zero");
      throw domain_error("norm form vanished on nonzero value; field radicand invalid");
    }
    return Scalar(rat_ / den, -surd_ / den);
  }

  friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inv(); }

  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

 private:
  Rat rat_;
  Rat surd_;
};

inline Scalar sqrt_m() { return Scalar(Rat(0), Rat(1)); }

namespace detail {

inline std::size_t skip_digits(const std::string& s, std::size_t i) {
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

// rational := int ("/" posint)?   with int := ("+"|"-")? digits
inline Rat parse_rational(const std::string& s, std::size_t& i) {
  std::size_t start = i;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t d0 = i;
  i = skip_digits(s, i);
  if (i == d0) throw parse_error("expected integer", start);
  std::string num = s.substr(start, i - start);
  std::string den = "1";
  if (i < s.size() && s[i] == '/') {
    ++i;
    std::size_t d1 = i;
    i = skip_digits(s, i);
    if (i == d1) throw parse_error("expected positive denominator", d1);
    den = s.substr(d1, i - d1);
    if (Int(den) == 0) throw parse_error("zero denominator", d1);
  }
  return canonical(Rat(Int(num), Int(den)));
}

}  // namespace detail

// Grammar: rational ( ("+"|"-") rational? "s" )?   where "s" denotes sqrt(m).
inline Scalar parse_scalar(const std::string& text) {
  std::size_t i = 0;
  Rat rat = detail::parse_rational(text, i);
  Rat surd(0);
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    bool neg = text[i] == '-';
    ++i;
    Rat mag(1);
    if (i < text.size() && text[i] != 's') mag = detail::parse_rational(text, i);
    if (i >= text.size() || text[i] != 's')
      throw parse_error("expected 's' after surd coefficient", i);
    ++i;
    surd = neg ? Rat(-mag) : mag;
  }
  if (i != text.size()) throw parse_error("trailing characters", i);
  return Scalar(rat, surd);
}

inline std::string render(const Scalar& x) {
  std::string out = x.rat().get_str();
  if (x.surd() != 0) {
    Rat a = abs(x.surd());
    out += (x.surd() < 0 ? "-" : "+");
    out += a.get_str();
    out += "s";
  }
  return out;
}

}  // namespace genwitt
