#include "sadic/mef.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace sadic {

namespace {

using Big = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>,
                                          boost::multiprecision::et_off>;

Big to_big(const Int& x) { return Big(x.get_str()); }
Big to_big_q(const Rat& q) { return to_big(Int(q.get_num())) / to_big(Int(q.get_den())); }

Big nearest_int_dist(const Big& x) { return abs(x - round(x)); }

std::string join_primes(const std::vector<unsigned long>& ps) {
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + std::to_string(ps[i]);
  return s;
}

// Split an exponent map into primes with unbounded exponent and the finite
// part Π p^e of the remainder.
std::pair<std::vector<unsigned long>, Int> split(const ExponentMap& m) {
  std::vector<unsigned long> inf;
  Int fin = 1;
  for (const auto& [p, e] : m) {
    if (e.is_infinite_like())
      inf.push_back(p);
    else
      fin *= ipow(Int(p), e.value);
  }
  return {inf, fin};
}

}  // namespace

std::string OdometerDescriptor::label() const {
  auto [inf, fin] = split(exponents);
  std::string s;
  if (inf.empty())
    s = fin == 1 ? "trivial odometer" : "Z/" + fin.get_str();
  else if (inf.size() == 1)
    s = inf[0] == 2 ? "binary odometer" : std::to_string(inf[0]) + "-adic odometer";
  else
    s = "odometer{" + join_primes(inf) + "}";
  if (!inf.empty() && fin != 1) s += " x Z/" + fin.get_str();
  return s;
}

std::string NilmanifoldDescriptor::label() const {
  auto [inf, fin] = split(exponents);
  std::string s = inf.empty() ? "S^1" : "M_{" + join_primes(inf) + "}";
  if (fin != 1) s += " x Z/" + fin.get_str();
  return s;
}

std::string MEFDescriptor::label() const {
  std::string s = odometer.label() + " x " + nilmanifold.label();
  if (!odometer.exact) s += " (truncated)";
  return s;
}

MEFDescriptor mef(const SadicSystem& sys, std::size_t K) {
  MEFDescriptor d;
  d.depth = K;
  auto ge = group_exponents(sys, K);
  auto s = derive_ab(sys, K);
  for (std::size_t k = 0; k <= K; ++k) d.odometer.moduli.push_back(gcd(s.v[k], s.v[k + 1]));
  d.odometer.exact = ge.exact;
  d.odometer.exponents = ge.R;
  d.odometer.finite = ge.exact && std::none_of(ge.R.begin(), ge.R.end(), [](const auto& kv) {
                        return kv.second.is_infinite_like();
                      });
  d.nilmanifold.exponents = ge.L;
  d.nilmanifold.exact = ge.exact;
  d.nilmanifold.alpha = alpha_enclosure(sys, std::max<std::size_t>(K, 2));
  d.nilmanifold.offsets = eigenvalue_offsets(sys, K);
  d.certified = check_constraints(sys, std::max<std::size_t>(K, 2)).pass;
  return d;
}

bool OdometerPoint::coherent() const {
  if (moduli.size() != residues.size()) return false;
  for (std::size_t k = 0; k < moduli.size(); ++k) {
    if (residues[k] < 0 || residues[k] >= moduli[k]) return false;
    if (k + 1 < moduli.size()) {
      if (!divides(moduli[k], moduli[k + 1])) return false;
      if (!divides(moduli[k], residues[k + 1] - residues[k])) return false;
    }
  }
  return true;
}

OdometerPoint odometer_zero(const std::vector<Int>& moduli) {
  return {moduli, std::vector<Int>(moduli.size(), Int(0))};
}

OdometerPoint odometer_step(const OdometerPoint& pt, const Int& n) {
  if (!pt.coherent()) throw Error(Errc::invalid_params, "odometer point is not coherent");
  OdometerPoint out = pt;
  for (std::size_t k = 0; k < out.moduli.size(); ++k) {
    Int x = out.residues[k] + n;
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), out.moduli[k].get_mpz_t());
    out.residues[k] = x;
  }
  return out;
}

Interval character_eval(const Interval& theta, const std::map<unsigned long, Int>& z, const Rat& q0,
                        unsigned long precision) {
  Rat q = q0;
  q.canonicalize();
  Rat frac = 0;
  for (auto p : prime_factors(q.get_den())) {
    unsigned long e = valuation(q.get_den(), p);
    auto it = z.find(p);
    if (it == z.end()) continue;  // z_p = 0
    if (e > precision)
      throw Error(Errc::precision_insufficient, "denominator needs " + std::to_string(e) + " digits at p = " +
                                                    std::to_string(p) + ", residues carry " +
                                                    std::to_string(precision));
    frac += p_adic_frac(q * Rat(it->second), p);
  }
  Interval a = (q * theta) + frac;
  Rat shift = Rat(Int(0));
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), a.lo.get_num_mpz_t(), a.lo.get_den_mpz_t());
  shift = Rat(fl);
  Interval out(a.lo - shift, a.hi - shift);
  out.lo.canonicalize();
  out.hi.canonicalize();
  return out;
}

namespace {

struct LevelParse {
  std::vector<std::size_t> starts;  // complete blocks, then the partial tail block if any
  std::vector<char> types;          // 'V' / 'U' per complete block
  std::vector<char> is_start;
};

LevelParse parse_level(const SadicSystem& sys, const Word& x, std::size_t k) {
  auto bp = words_uk_vk(sys, k, budget_bytes() / 4);
  if (!bp.materialized()) throw Error(Errc::budget_exceeded, "level " + std::to_string(k) + " blocks too large");
  auto d = parse_from(x, *bp.v, *bp.u, 0);
  LevelParse lp;
  lp.is_start.assign(x.size(), 0);
  std::size_t pos = 0;
  for (char c : d.blocks) {
    lp.starts.push_back(pos);
    lp.types.push_back(c);
    lp.is_start[pos] = 1;
    pos += c == 'U' ? bp.u->size() : bp.v->size();
  }
  if (pos < x.size()) {
    lp.starts.push_back(pos);
    lp.is_start[pos] = 1;
  }
  return lp;
}

}  // namespace

bool FactorOrbitReport::all_ok() const {
  if (!increments_ok || !nesting_ok) return false;
  for (const auto& l : levels)
    if (l.decomposed != l.transitions || !l.cauchy_ok || !l.eps_ok) return false;
  return true;
}

FactorOrbitReport factor_orbit_check(const SadicSystem& sys, std::size_t k0, std::size_t prefix_len,
                                     std::size_t K) {
  FactorOrbitReport rep;
  rep.k0 = k0;
  rep.prefix_len = prefix_len;
  rep.K = K;
  Word x = generated_prefix(sys, prefix_len);
  std::vector<LevelParse> lv;
  for (std::size_t k = 0; k <= K + 1; ++k) lv.push_back(parse_level(sys, x, k));

  // j(t, k) by a running counter against a search over the start list
  for (std::size_t k = 0; k <= K + 1; ++k) {
    long j = -1;
    for (std::size_t t = 0; t < x.size(); ++t) {
      j = lv[k].is_start[t] ? 0 : j + 1;
      auto it = std::upper_bound(lv[k].starts.begin(), lv[k].starts.end(), t);
      if (it == lv[k].starts.begin() || static_cast<long>(t - *(it - 1)) != j) rep.increments_ok = false;
    }
    if (k > 0)
      for (auto s : lv[k].starts)
        if (!lv[k - 1].is_start[s]) rep.nesting_ok = false;
  }

  auto seqs = derive_ab(sys, K + 1);
  auto P = seqs.params;
  auto L = block_lengths(sys, K + 1);
  Big alpha = to_big_q(alpha_k_enclosure(sys, k0, 80).mid());
  const Big two_pi = 2 * boost::math::constants::pi<Big>();
  Int W = k0 == 0 ? seqs.v_minus1 : seqs.v[k0 - 1];

  for (std::size_t k = 0; k <= K; ++k) {
    LevelOrbitCheck lc;
    lc.k = k;
    const Int &vk = L.v[k], &uk = L.u[k];
    if (k > 0 && uk - vk != (P[k - 1].n - P[k - 1].m) * L.v[k - 1])
      throw Error(Errc::invalid_params, "block length identity fails at level " + std::to_string(k));
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::size_t nv = 0, nu = 0, S = 0;
    std::size_t complete = lv[k].types.size();
    Int pmax_allowed = P[k].n + P[k].r;
    for (std::size_t i = 0; i < complete; ++i) {
      std::size_t s = lv[k].starts[i];
      if (lv[k + 1].is_start[s]) {
        S = s;
        nv = nu = 0;
      }
      ++lc.transitions;
      Int diff(static_cast<unsigned long>(s - S));
      std::size_t p = nv + nu;
      if (diff == Int(static_cast<unsigned long>(nv)) * vk + Int(static_cast<unsigned long>(nu)) * uk && nu <= 1 &&
          Int(static_cast<unsigned long>(p)) <= pmax_allowed)
        ++lc.decomposed;
      lc.max_p = std::max(lc.max_p, p);
      seen.insert({p, nu});
      (lv[k].types[i] == 'U' ? nu : nv) += 1;
    }
    if (k >= k0) {
      Big sup = 0;
      for (auto [p, u] : seen) {
        Big t1 = alpha * to_big(Int(static_cast<unsigned long>(p)) * vk);
        Big t2 = alpha * to_big(Int(static_cast<unsigned long>(u)) * (uk - vk));
        Big lhs = 2 * abs(sin(boost::math::constants::pi<Big>() * (t1 + t2)));
        Big rhs = two_pi * (nearest_int_dist(t1) + nearest_int_dist(t2));
        if (lhs > rhs + Big("1e-35")) lc.cauchy_ok = false;
        sup = std::max(sup, lhs);
      }
      lc.sup_diff = static_cast<double>(sup);
      if (k >= k0 + 1 && k >= 1) {
        Int prod_k = W, prod_km1 = W;
        for (std::size_t j = k0; j <= k; ++j) prod_k *= seqs.a[j];
        for (std::size_t j = k0; j + 1 <= k; ++j) prod_km1 *= seqs.a[j];
        Big bound = two_pi * (to_big(pmax_allowed * prod_k) / to_big(seqs.v[k + 1]) +
                              to_big((P[k - 1].n - P[k - 1].m) * prod_km1) / to_big(seqs.v[k]));
        lc.eps_applicable = true;
        lc.eps_bound = static_cast<double>(bound);
        lc.eps_ok = sup < bound;
      }
    }
    rep.levels.push_back(lc);
  }
  return rep;
}

const char* comparison_name(GroupComparison c) {
  switch (c) {
    case GroupComparison::equal: return "equal";
    case GroupComparison::different: return "different";
    default: return "unknown-at-depth";
  }
}

namespace {

std::string ext_str(const ExtNat& e) {
  if (e.kind == ExtNat::Kind::infinite) return "inf";
  if (e.is_finite_certified()) return std::to_string(e.value);
  return ">=" + std::to_string(e.value);
}

// Certified disagreement between two exponent readings.
bool certified_differ(const ExtNat& a, const ExtNat& b) {
  auto one_way = [](const ExtNat& x, const ExtNat& y) {
    if (!x.is_finite_certified()) return false;
    if (y.kind == ExtNat::Kind::infinite) return true;
    if (y.is_finite_certified()) return y.value != x.value;
    return y.value > x.value;  // lower bound or growing already past x
  };
  return one_way(a, b) || one_way(b, a);
}

}  // namespace

ComparisonResult compare_eigenvalue_groups(const EigenvalueGroupDescriptor& d1, const EigenvalueGroupDescriptor& d2) {
  std::set<unsigned long> primes(d1.exponents.primes.begin(), d1.exponents.primes.end());
  primes.insert(d2.exponents.primes.begin(), d2.exponents.primes.end());
  for (auto p : primes) {
    for (char which : {'L', 'R'}) {
      ExtNat e1 = which == 'L' ? d1.exponents.get_L(p) : d1.exponents.get_R(p);
      ExtNat e2 = which == 'L' ? d2.exponents.get_L(p) : d2.exponents.get_R(p);
      if (certified_differ(e1, e2)) {
        std::ostringstream os;
        os << which << "(" << p << "): " << ext_str(e1) << " vs " << ext_str(e2);
        return {GroupComparison::different, os.str()};
      }
    }
  }
  if (d1.exponents.exact && d2.exponents.exact && d1.tail && d2.tail && *d1.tail == *d2.tail)
    return {GroupComparison::equal, "identical periodic-tail length data"};
  return {GroupComparison::unknown_at_depth, "no certified difference at depth"};
}

}  // namespace sadic
