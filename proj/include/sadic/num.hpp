#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace sadic {

using Int = mpz_class;
using Rat = mpq_class;

// Closed interval with exact rational endpoints.
struct Interval {
  Rat lo;
  Rat hi;

  Interval() = default;
  Interval(const Rat& a, const Rat& b);

  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool overlaps(const Interval& o) const { return !(o.hi < lo || hi < o.lo); }
  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
  Rat width() const { return hi - lo; }
  Rat mid() const;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator+(const Interval& a, const Rat& r);
Interval operator*(const Rat& r, const Interval& a);

// Extended natural number with a certification status.
struct ExtNat {
  enum class Kind { finite, infinite, growing };
  Kind kind = Kind::finite;
  unsigned long value = 0;  // for growing: largest valuation seen
  bool certified = false;   // finite+certified is exact; finite alone is a lower bound

  static ExtNat exact(unsigned long v) { return {Kind::finite, v, true}; }
  static ExtNat lower(unsigned long v) { return {Kind::finite, v, false}; }
  static ExtNat inf() { return {Kind::infinite, 0, true}; }
  static ExtNat grow(unsigned long v) { return {Kind::growing, v, false}; }

  bool is_finite_certified() const { return kind == Kind::finite && certified; }
  bool is_infinite_like() const { return kind != Kind::finite; }
  std::string str() const;
  bool operator==(const ExtNat& o) const = default;
};

// Canonical a/b.
Rat ratio(const Int& a, const Int& b);

std::string rat_str(const Rat& q);
Rat parse_rat(const std::string& s);
double to_double(const Rat& q);

// p-adic valuation of a nonzero integer.
unsigned long valuation(const Int& x, unsigned long p);
unsigned long valuation(const Rat& x, unsigned long p);  // of the denominator
Int ipow(const Int& b, unsigned long e);
Int gcd(const Int& a, const Int& b);
bool divides(const Int& d, const Int& x);

// Prime factors of |x| that are <= bound (trial division); full
// factorisation when the cofactor drops below bound^2.
std::vector<unsigned long> prime_factors(const Int& x, unsigned long bound = 1000000);
bool is_prime(unsigned long p);

// Exact rational root bracketing for x^2 = b x + a style quadratics, used
// by tests and display code: returns an enclosure of the positive root of
// c2 x^2 + c1 x + c0 with c2 > 0, c0 < 0 by bisection to width <= tol.
Interval positive_root(const Rat& c2, const Rat& c1, const Rat& c0, const Rat& tol);

}  // namespace sadic
