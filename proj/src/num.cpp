#include "sadic/num.hpp"

#include "sadic/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

namespace sadic {

Interval::Interval(const Rat& a, const Rat& b) : lo(a), hi(b) {
  if (hi < lo) std::swap(lo, hi);
}

Rat Interval::mid() const {
  Rat m = (lo + hi) / 2;
  m.canonicalize();
  return m;
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator+(const Interval& a, const Rat& r) { return {a.lo + r, a.hi + r}; }
Interval operator*(const Rat& r, const Interval& a) { return {r * a.lo, r * a.hi}; }

std::string ExtNat::str() const {
  switch (kind) {
    case Kind::infinite: return "inf";
    case Kind::growing: return "growing";
    default: return std::to_string(value);
  }
}

std::string rat_str(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw Error(Errc::parse_error, "empty rational");
  Rat q;
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      q = Rat(Int(s));
    } else {
      Int n(s.substr(0, slash)), d(s.substr(slash + 1));
      if (d == 0) throw Error(Errc::parse_error, "zero denominator in '" + s + "'");
      q = Rat(n, d);
    }
  } catch (const std::invalid_argument&) {
    throw Error(Errc::parse_error, "bad rational '" + s + "'");
  }
  q.canonicalize();
  return q;
}

double to_double(const Rat& q) { return q.get_d(); }

unsigned long valuation(const Int& x, unsigned long p) {
  if (x == 0) throw Error(Errc::out_of_range, "valuation of zero");
  Int y = abs(x);
  unsigned long v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
    mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
    ++v;
  }
  return v;
}

unsigned long valuation(const Rat& x, unsigned long p) {
  Rat c = x;
  c.canonicalize();
  return valuation(c.get_den(), p);
}

Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool divides(const Int& d, const Int& x) {
  if (d == 0) return x == 0;
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<unsigned long> prime_factors(const Int& x, unsigned long bound) {
  std::vector<unsigned long> out;
  if (x == 0) return out;
  Int y = abs(x);
  for (unsigned long d = 2; d <= bound && y > 1; ++d) {
    if (mpz_divisible_ui_p(y.get_mpz_t(), d)) {
      out.push_back(d);
      while (mpz_divisible_ui_p(y.get_mpz_t(), d)) mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), d);
    }
    if (Int(d) * Int(d) > y) break;
  }
  if (y > 1 && y.fits_ulong_p() && y.get_ui() > 1) {
    unsigned long r = y.get_ui();
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Interval positive_root(const Rat& c2, const Rat& c1, const Rat& c0, const Rat& tol) {
  auto f = [&](const Rat& x) -> Rat { return (c2 * x + c1) * x + c0; };
  Rat lo = 0, hi = 1;
  while (f(hi) < 0) hi *= 2;
  while (hi - lo > tol) {
    Rat m = (lo + hi) / 2;
    m.canonicalize();
    if (f(m) < 0)
      lo = m;
    else
      hi = m;
  }
  return {lo, hi};
}

namespace {
std::once_flag budget_once;
std::size_t budget_value = std::size_t(256) << 20;
}  // namespace

std::size_t budget_bytes() {
  std::call_once(budget_once, [] {
    if (const char* env = std::getenv("SADIC_BUDGET_BYTES")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) budget_value = static_cast<std::size_t>(v);
    }
  });
  return budget_value;
}

void set_budget_bytes(std::size_t b) {
  budget_bytes();
  budget_value = b;
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_params: return "invalid-params";
    case Errc::alphabet_mismatch: return "alphabet-mismatch";
    case Errc::common_root: return "common-root";
    case Errc::not_a_factor: return "not-a-factor";
    case Errc::ambiguous_edges: return "ambiguous-edges";
    case Errc::out_of_range: return "out-of-range";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::insufficient_depth: return "insufficient-depth";
    case Errc::periodic: return "periodic";
    case Errc::not_low_complexity: return "not-low-complexity";
    case Errc::non_primitive: return "non-primitive";
    case Errc::precision_insufficient: return "precision-insufficient";
    case Errc::not_in_language: return "not-in-language";
    case Errc::prefix_too_short: return "prefix-too-short";
    case Errc::length_mismatch: return "length-mismatch";
    case Errc::parse_error: return "parse-error";
    case Errc::search_exhausted: return "search-exhausted";
    case Errc::formula_inapplicable: return "formula-inapplicable";
  }
  return "error";
}

Rat ratio(const Int& a, const Int& b) {
  Rat q(a, b);
  q.canonicalize();
  return q;
}

}  // namespace sadic
