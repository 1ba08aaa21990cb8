#pragma once

// Elements of W = W(G, D, phi) and of the group algebra A = F[G], with the
// Lie bracket, the mixed bracket [W, A], and the triangular split along a
// primitive direction. Terms are stored sparsely, keyed by lattice point in
// lexicographic order.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "genwitt/lattice.hpp"

namespace genwitt {

struct WittElem {
  // t^a d, a -> coordinates of d
  std::map<GroupElem, DVector> terms;

  void add_term(const GroupElem& a, const DVector& d) {
    if (dv_is_zero(d)) return;
    auto it = terms.find(a);
    if (it == terms.end()) {
      terms.emplace(a, d);
      return;
    }
    it->second = it->second + d;
    if (dv_is_zero(it->second)) terms.erase(it);
  }

  bool is_zero() const { return terms.empty(); }

  friend WittElem operator+(const WittElem& x, const WittElem& y) {
    WittElem z = x;
    for (const auto& [a, d] : y.terms) z.add_term(a, d);
    return z;
  }

  friend WittElem operator-(const WittElem& x, const WittElem& y) {
    WittElem z = x;
    for (const auto& [a, d] : y.terms) z.add_term(a, Scalar(-1) * d);
    return z;
  }

  friend WittElem operator*(const Scalar& c, const WittElem& x) {
    WittElem z;
    for (const auto& [a, d] : x.terms) z.add_term(a, c * d);
    return z;
  }

  friend bool operator==(const WittElem& x, const WittElem& y) {
    return x.terms == y.terms;
  }
};

struct AElem {
  std::map<GroupElem, Scalar> terms;

  void add_term(const GroupElem& a, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(a);
    if (it == terms.end()) {
      terms.emplace(a, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }

  bool is_zero() const { return terms.empty(); }

  friend AElem operator-(const AElem& x, const AElem& y) {
    AElem z = x;
    for (const auto& [a, c] : y.terms) z.add_term(a, -c);
    return z;
  }

  friend bool operator==(const AElem& x, const AElem& y) {
    return x.terms == y.terms;
  }
};

inline WittElem witt_term(const GroupElem& a, const DVector& d) {
  WittElem x;
  x.add_term(a, d);
  return x;
}

// [t^a d, t^a' d'] = t^{a+a'} (phi(a',d) d' - phi(a,d') d), extended
// bilinearly.
inline WittElem bracket(const Pairing& p, const WittElem& x, const WittElem& y) {
  WittElem z;
  for (const auto& [a, d] : x.terms) {
    for (const auto& [a2, d2] : y.terms) {
      DVector v = p.pair(a2, d) * d2 - p.pair(a, d2) * d;
      z.add_term(a + a2, v);
    }
  }
  return z;
}

// [t^a d, t^a'] = phi(a', d) t^{a+a'}
inline AElem bracket_wa(const Pairing& p, const WittElem& x, const AElem& f) {
  AElem z;
  for (const auto& [a, d] : x.terms)
    for (const auto& [a2, c] : f.terms)
      z.add_term(a + a2, p.pair(a2, d) * c);
  return z;
}

struct TriParts {
  WittElem minus, zero, plus;
};

inline TriParts tri_part(const Splitting& s, const WittElem& x) {
  TriParts t;
  for (const auto& [a, d] : x.terms) {
    Int deg = s.deg(a);
    if (deg < 0)
      t.minus.add_term(a, d);
    else if (deg == 0)
      t.zero.add_term(a, d);
    else
      t.plus.add_term(a, d);
  }
  return t;
}

// "t^(a1,..,an)[c1,..,cr]" terms joined by " + "; "0" for the zero element.
inline std::string render(const WittElem& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [a, d] : x.terms) {
    if (!s.empty()) s += " + ";
    s += "t^" + ge_str(a) + render(d);
  }
  return s;
}

inline std::string render(const AElem& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (const auto& [a, c] : f.terms) {
    if (!s.empty()) s += " + ";
    s += render(c) + "*t^" + ge_str(a);
  }
  return s;
}

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && s[i] == ' ') ++i;
}

inline void expect(const std::string& s, std::size_t& i, char c) {
  if (i >= s.size() || s[i] != c)
    throw parse_error(std::string("expected '") + c + "'", i);
  ++i;
}

inline std::vector<std::string> split_list(const std::string& s, std::size_t& i,
                                           char close) {
  std::vector<std::string> out;
  std::string cur;
  while (i < s.size() && s[i] != close) {
    if (s[i] == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += s[i];
    }
    ++i;
  }
  expect(s, i, close);
  out.push_back(cur);
  return out;
}

}  // namespace detail

// Parses the rendering format above.
inline WittElem parse_witt(const std::string& text, int n, int r) {
  WittElem x;
  std::size_t i = 0;
  while (true) {
    detail::skip_ws(text, i);
    detail::expect(text, i, 't');
    detail::expect(text, i, '^');
    detail::expect(text, i, '(');
    auto coords = detail::split_list(text, i, ')');
    if (static_cast<int>(coords.size()) != n)
      throw parse_error("lattice point has wrong length", i);
    GroupElem a;
    for (auto& c : coords) a.push_back(Int(c));
    detail::expect(text, i, '[');
    auto dcoords = detail::split_list(text, i, ']');
    if (static_cast<int>(dcoords.size()) != r)
      throw parse_error("coefficient vector has wrong length", i);
    DVector d;
    for (auto& c : dcoords) d.push_back(parse_scalar(c));
    x.add_term(a, d);
    detail::skip_ws(text, i);
    if (i == text.size()) break;
    detail::expect(text, i, '+');
  }
  return x;
}

}  // namespace genwitt
