#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

namespace crepant {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const RatVec& a, const IntVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
  return s;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Int gcd_vec(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

// Divides out the content; the zero vector stays zero.
inline IntVec primitive(IntVec v) {
  Int g = gcd_vec(v);
  if (g > 1) {
    for (Int& x : v) x /= g;
  }
  return v;
}

inline bool is_zero(const IntVec& v) {
  for (const Int& x : v) {
    if (x != 0) return false;
  }
  return true;
}

inline std::string to_string(const Int& x) { return x.str(); }

// Canonical "p/q" (or "p" when q == 1); mpq_rational keeps q > 0 reduced.
inline std::string to_string(const Rat& x) {
  Int n = boost::multiprecision::numerator(x);
  Int d = boost::multiprecision::denominator(x);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

}  // namespace crepant
