#include "sadic/spectrum.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sadic {

namespace {

Int floor_rat(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

Int vm1(const DerivedSeqs& s, std::size_t k0) { return k0 == 0 ? s.v_minus1 : s.v[k0 - 1]; }

}  // namespace

Int determinant_rhs(const DerivedSeqs& seqs, std::size_t k0, long k) {
  Int x = vm1(seqs, k0);
  for (long j = static_cast<long>(k0); j <= static_cast<long>(k0) + k + 1; ++j) x *= seqs.a.at(j);
  return (k % 2 == 0) ? x : Int(-x);
}

Convergents convergents(const SadicSystem& sys, std::size_t k0, std::size_t K) {
  if (K < 1) throw Error(Errc::invalid_params, "convergents need K >= 1");
  auto s = derive_ab(sys, k0 + K);
  Convergents cv;
  cv.k0 = k0;
  cv.c = {1, 0};
  cv.e = {0, 1};
  cv.d = {vm1(s, k0), s.v[k0]};
  for (long k = -1; k < static_cast<long>(K); ++k) {
    std::size_t i = static_cast<std::size_t>(k + 2), j = k0 + static_cast<std::size_t>(k + 1);
    for (auto* xs : {&cv.c, &cv.e, &cv.d}) xs->push_back(s.b[j] * (*xs)[i] + s.a[j] * (*xs)[i - 1]);
  }
  cv.identity_ok = true;
  for (long k = -2; k < static_cast<long>(K); ++k) {
    Int lhs = cv.at(cv.e, k + 1) * cv.at(cv.d, k) - cv.at(cv.e, k) * cv.at(cv.d, k + 1);
    if (lhs != determinant_rhs(s, k0, k)) cv.identity_ok = false;
    long idx = static_cast<long>(k0) + 1 + k;
    if (cv.at(cv.d, k) != (idx < 0 ? s.v_minus1 : s.v[idx])) cv.identity_ok = false;
  }
  return cv;
}

Interval alpha_k_enclosure(const SadicSystem& sys, std::size_t k0, std::size_t K) {
  if (K < 2) throw Error(Errc::invalid_params, "enclosure needs K >= 2");
  auto cv = convergents(sys, k0, K);
  long k = static_cast<long>(K);
  return {ratio(cv.at(cv.e, k - 1), cv.at(cv.d, k - 1)), ratio(cv.at(cv.e, k), cv.at(cv.d, k))};
}

Interval alpha_enclosure(const SadicSystem& sys, std::size_t K) {
  auto s = derive_ab(sys, 0);
  return Rat(s.a[0]) * alpha_k_enclosure(sys, 1, K);
}

std::vector<Offset> eigenvalue_offsets(const SadicSystem& sys, std::size_t K) {
  auto s = derive_ab(sys, K + 1);
  Int v0 = s.v[0];
  std::vector<Rat> r{Rat(0), ratio(Int(1), v0)};
  for (std::size_t k = 1; k < K; ++k) {
    Rat next = r[k - 1] / Rat(s.a[k - 1]) - Rat(s.b[k]) * r[k] / Rat(s.a[k]);
    next.canonicalize();
    r.push_back(next);
  }
  std::vector<Offset> out;
  Int prod = v0;
  for (std::size_t k = 0; k <= K; ++k) {
    prod *= s.a[k];
    Rat q = ratio(k % 2 == 0 ? s.v[k] : Int(-s.v[k]), prod);
    Rat rho = r[k] / Rat(s.a[k]);
    rho.canonicalize();
    out.push_back({q, rho});
  }
  return out;
}

std::vector<OffsetCheck> offset_consistency(const SadicSystem& sys, std::size_t kmax, std::size_t K) {
  auto offs = eigenvalue_offsets(sys, kmax);
  std::map<std::size_t, Interval> alpha_at;
  auto alpha = [&](std::size_t D) -> const Interval& {
    auto it = alpha_at.find(D);
    if (it == alpha_at.end()) it = alpha_at.emplace(D, alpha_enclosure(sys, D)).first;
    return it->second;
  };
  std::vector<OffsetCheck> out;
  for (std::size_t k = 0; k <= kmax; ++k) {
    Interval target = alpha_k_enclosure(sys, k + 1, K);
    OffsetCheck oc{k, false, 0};
    for (std::size_t D = 8; D <= 1024 && !oc.contained; D *= 2) {
      Interval img = (offs[k].q * alpha(D)) + offs[k].rho;
      oc.alpha_depth = D;
      oc.contained = target.contains(img);
    }
    out.push_back(oc);
  }
  return out;
}

ExtNat GroupExponents::get_L(unsigned long p) const {
  auto it = L.find(p);
  if (it != L.end()) return it->second;
  return exact ? ExtNat::exact(0) : ExtNat::lower(0);
}

ExtNat GroupExponents::get_R(unsigned long p) const {
  auto it = R.find(p);
  if (it != R.end()) return it->second;
  return exact ? ExtNat::exact(0) : ExtNat::lower(0);
}

namespace {

// Root of x^2 - b x - a congruent to 0 mod p, lifted to p^N (p | a, p ∤ b).
Int hensel_small_root(const Int& a, const Int& b, const Int& pN) {
  Int mu = 0;
  for (int it = 0; it < 64; ++it) {
    Int f = mu * mu - b * mu - a;
    Int fp = 2 * mu - b, inv;
    mpz_mod(f.get_mpz_t(), f.get_mpz_t(), pN.get_mpz_t());
    if (f == 0) break;
    if (!mpz_invert(inv.get_mpz_t(), fp.get_mpz_t(), pN.get_mpz_t()))
      throw Error(Errc::invalid_params, "derivative not invertible in Hensel lift");
    mu = mu - f * inv;
    mpz_mod(mu.get_mpz_t(), mu.get_mpz_t(), pN.get_mpz_t());
  }
  return mu;
}

// Limit of v_p(gcd) along M^j (X, Y), M = [[b, a], [1, 0]], p | a, p ∤ b and
// (X, Y) not on a rational eigenline: the valuation of the unit-root
// component, i.e. of (M - μ)(X, Y) with μ the root divisible by p.
unsigned long unit_component_valuation(const Int& a, const Int& b, const Int& X, const Int& Y, unsigned long p) {
  for (unsigned long N = 32; N <= 1u << 16; N *= 2) {
    Int pN = ipow(Int(p), N);
    Int mu = hensel_small_root(a, b, pN);
    Int c1 = (b - mu) * X + a * Y, c2 = X - mu * Y;
    mpz_mod(c1.get_mpz_t(), c1.get_mpz_t(), pN.get_mpz_t());
    mpz_mod(c2.get_mpz_t(), c2.get_mpz_t(), pN.get_mpz_t());
    unsigned long v = N;
    if (c1 != 0) v = std::min(v, valuation(c1, p));
    if (c2 != 0) v = std::min(v, valuation(c2, p));
    if (v < N) return v;
  }
  throw Error(Errc::precision_insufficient, "unit component valuation beyond p^65536");
}

}  // namespace

GroupExponents group_exponents(const SadicSystem& sys, std::size_t K) {
  if (K < 1) throw Error(Errc::invalid_params, "group_exponents needs K >= 1");
  GroupExponents ge;
  ge.exact = sys.periodic_tail();
  std::size_t T = ge.exact ? sys.taus.size() : 0;
  std::size_t Kc = ge.exact ? std::max(K, T + 2) : K;
  auto s = derive_ab(sys, Kc);

  std::set<unsigned long> ps;
  for (auto p : prime_factors(s.v[0])) ps.insert(p);
  for (std::size_t k = 0; k <= Kc; ++k)
    for (auto p : prime_factors(s.a[k])) ps.insert(p);
  ge.primes.assign(ps.begin(), ps.end());

  std::vector<Int> g(Kc + 1), num(Kc + 1);
  Int prod = s.v[0];
  for (std::size_t k = 0; k <= Kc; ++k) {
    prod *= s.a[k];
    g[k] = gcd(s.v[k], s.v[k + 1]);
    num[k] = prod;
  }

  for (auto p : ge.primes) {
    auto t = [&](std::size_t k) { return valuation(g[k], p); };
    auto l = [&](std::size_t k) { return valuation(num[k], p) - t(k); };
    if (!ge.exact) {
      std::size_t w = K - K / 4;
      ge.R[p] = (K / 4 > 0 && t(K) > t(w)) ? ExtNat::grow(t(K)) : ExtNat::lower(t(K));
      ge.L[p] = (K / 4 > 0 && l(K) > l(w)) ? ExtNat::grow(l(K)) : ExtNat::lower(l(K));
      continue;
    }
    const Int &a = s.a[T], &b = s.b[T], &X = s.v[T], &Y = s.v[T - 1];
    bool pa = divides(Int(p), a), pb = divides(Int(p), b);
    if (!pa) {
      ge.R[p] = ExtNat::exact(t(Kc));
      ge.L[p] = ExtNat::exact(l(Kc));
      continue;
    }
    bool geometric = divides(Y, X) && X * X == s.v[T + 1] * Y;
    if (geometric) {
      Int mu = X / Y;
      ge.R[p] = divides(Int(p), mu) ? ExtNat::inf() : ExtNat::exact(t(Kc));
      ge.L[p] = valuation(a, p) > valuation(mu, p) ? ExtNat::inf() : ExtNat::exact(l(Kc));
      continue;
    }
    ge.L[p] = ExtNat::inf();
    ge.R[p] = pb ? ExtNat::inf() : ExtNat::exact(unit_component_valuation(a, b, X, Y, p));
  }
  return ge;
}

Rat p_adic_frac(const Rat& q0, unsigned long p) {
  Rat q = q0;
  q.canonicalize();
  if (q == 0) return Rat(0);
  Int d = q.get_den();
  unsigned long e = valuation(d, p);
  if (e == 0) return Rat(0);
  Int pe = ipow(Int(p), e), dp = d / pe, inv, x;
  mpz_invert(inv.get_mpz_t(), dp.get_mpz_t(), pe.get_mpz_t());
  x = q.get_num() * inv;
  mpz_mod(x.get_mpz_t(), x.get_mpz_t(), pe.get_mpz_t());
  return ratio(x, pe);
}

std::optional<TailSignature> tail_signature(const SadicSystem& sys) {
  if (!sys.periodic_tail()) return std::nullopt;
  std::size_t T = sys.taus.size();
  auto s = derive_ab(sys, T);
  TailSignature t{s.v_minus1, s.v[0], s.a, s.b};
  return t;
}

EigenvalueGroupDescriptor descriptor(const SadicSystem& sys, std::size_t K) {
  EigenvalueGroupDescriptor d;
  d.tail = tail_signature(sys);
  d.alpha = alpha_enclosure(sys, std::max<std::size_t>(K, 2));
  d.exponents = group_exponents(sys, K);
  d.offsets = eigenvalue_offsets(sys, K);
  d.depth = K;
  return d;
}

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::member: return "member";
    case Membership::non_member: return "non-member";
    default: return "unknown-at-depth";
  }
}

namespace {

enum class Fit { within, exceeds_certified, undecided };

// Denominator valuations of x against an exponent map.
Fit denominators_fit(const Rat& x, const std::function<ExtNat(unsigned long)>& lim) {
  Rat c = x;
  c.canonicalize();
  Fit out = Fit::within;
  for (auto p : prime_factors(c.get_den())) {
    unsigned long v = valuation(c.get_den(), p);
    ExtNat e = lim(p);
    if (e.kind == ExtNat::Kind::infinite) continue;
    if (v <= e.value) continue;
    if (e.is_finite_certified()) return Fit::exceeds_certified;
    out = Fit::undecided;
  }
  return out;
}

}  // namespace

Membership eigenvalue_membership(const EigenvalueGroupDescriptor& desc, const Rat& q, const Rat& r) {
  const auto& ge = desc.exponents;
  Fit fq = denominators_fit(q, [&](unsigned long p) { return ge.get_L(p); });
  if (fq == Fit::exceeds_certified) return Membership::non_member;

  // integer combinations of (1, 0), (0, 1) and the offsets (q_k, ρ_k)
  std::vector<std::pair<Rat, Rat>> gens{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  for (const auto& o : desc.offsets) gens.push_back({o.q, o.rho});
  Int D = q.get_den();
  for (const auto& [x, y] : gens) D = lcm(D, Rat(x).get_den());
  Int G = 0;
  Rat YG = 0;
  for (const auto& [x, y] : gens) {
    Rat xd = x * Rat(D);
    xd.canonicalize();
    Int X = xd.get_num();
    if (X == 0) continue;
    // G' = sG + tX
    Int g2, sg, tx;
    mpz_gcdext(g2.get_mpz_t(), sg.get_mpz_t(), tx.get_mpz_t(), G.get_mpz_t(), X.get_mpz_t());
    YG = Rat(sg) * YG + Rat(tx) * y;
    G = g2;
  }
  Rat QD = q * Rat(D);
  QD.canonicalize();
  if (QD.get_den() != 1 || !divides(G, QD.get_num())) return Membership::unknown_at_depth;
  Rat rest = r - Rat(QD.get_num() / G) * YG;
  Fit fr = denominators_fit(rest, [&](unsigned long p) { return ge.get_R(p); });
  if (fr == Fit::exceeds_certified) return Membership::non_member;
  if (fq == Fit::within && fr == Fit::within) return Membership::member;
  return Membership::unknown_at_depth;
}

Rat simplest_rational(const Interval& I) {
  Int fl = floor_rat(I.lo);
  if (Rat(fl) == I.lo) return I.lo;
  if (Rat(fl + 1) <= I.hi) return Rat(fl + 1);
  Rat inner = simplest_rational(Interval(1 / (I.hi - Rat(fl)), 1 / (I.lo - Rat(fl))));
  Rat out = Rat(fl) + 1 / inner;
  out.canonicalize();
  return out;
}

}  // namespace sadic
