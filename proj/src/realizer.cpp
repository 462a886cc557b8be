#include "sadic/realizer.hpp"

#include "sadic/structure.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace sadic {

unsigned long TargetSpec::y(std::size_t j) const {
  if (odometer.empty()) return 1;
  if (odometer_repeat) return odometer[j % odometer.size()];
  return j < odometer.size() ? odometer[j] : 1;
}

bool TargetSpec::odometer_finite() const {
  if (!odometer_repeat) return true;
  return std::all_of(odometer.begin(), odometer.end(), [](unsigned long x) { return x == 1; });
}

bool TargetSpec::nil_finite() const {
  for (const auto& [p, e] : nil)
    if (e.kind != ExtNat::Kind::finite) return false;
  return true;
}

Int TargetSpec::odometer_order() const {
  if (!odometer_finite()) throw Error(Errc::invalid_params, "odometer is infinite");
  Int r = 1;
  if (!odometer_repeat)
    for (auto y : odometer) r *= y;
  return r;
}

Int TargetSpec::nil_order() const {
  Int q = 1;
  for (const auto& [p, e] : nil) {
    if (e.kind != ExtNat::Kind::finite) throw Error(Errc::invalid_params, "nilmanifold exponents are infinite");
    q *= ipow(Int(p), e.value);
  }
  return q;
}

void TargetSpec::validate() const {
  for (auto y : odometer)
    if (y != 1 && !is_prime(y)) throw Error(Errc::invalid_params, "odometer factor " + std::to_string(y) + " is not prime or 1");
  if (odometer_repeat && odometer.empty()) throw Error(Errc::invalid_params, "repeating odometer needs factors");
  for (const auto& [p, e] : nil)
    if (!is_prime(p)) throw Error(Errc::invalid_params, "nilmanifold key " + std::to_string(p) + " is not prime");
  if (delta < 0 || delta >= Rat(1, 2)) throw Error(Errc::invalid_params, "delta must lie in [0, 1/2)");
  if (odometer_finite() && nil_finite() && delta != 0)
    throw Error(Errc::invalid_params, "finite odometer and finite nilmanifold force delta = 0");
}

std::string TargetSpec::str() const {
  std::ostringstream os;
  os << "odometer=";
  if (odometer_repeat) os << "repeat";
  os << "[";
  for (std::size_t i = 0; i < odometer.size(); ++i) os << (i ? "," : "") << odometer[i];
  os << "] nil={";
  bool first = true;
  for (const auto& [p, e] : nil) {
    os << (first ? "" : ",") << p << ":" << e.str();
    first = false;
  }
  os << "} delta=" << rat_str(delta);
  return os.str();
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::A: return "A";
    case Regime::B: return "B";
    default: return "C";
  }
}

Regime classify(const TargetSpec& t) {
  if (!t.nil_finite()) return Regime::A;
  if (!t.odometer_finite()) return Regime::B;
  return Regime::C;
}

namespace {

Rat delta_k(const TargetSpec& t, std::size_t k) { return t.delta > 0 ? t.delta : Rat(1, static_cast<long>(k + 2)); }

Int ceil_rat(const Rat& x) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

// (δ^{-1} - 1) d, rounded up
Int window(const Rat& delta, const Int& d) {
  Rat x = (1 / delta - 1) * Rat(d);
  x.canonicalize();
  return ceil_rat(x);
}

void emit(Realization& R, std::vector<TauParams> taus, Word v0, Word u0) {
  R.sys.v0 = std::move(v0);
  R.sys.u0 = std::move(u0);
  R.sys.taus = std::move(taus);
  R.sys.repeat_last = true;
  R.sys.validate();
}

// s_k = p_k^{e_k}: round robin over primes with x_p > 0, smallest e with
// p^e > s_{k-1}, capped by what remains of x_p.
std::vector<std::pair<Int, unsigned long>> s_schedule(const TargetSpec& t, std::size_t N) {
  std::vector<unsigned long> ps;
  std::map<unsigned long, unsigned long> left;
  std::set<unsigned long> inf;
  for (const auto& [p, e] : t.nil) {
    if (e.kind != ExtNat::Kind::finite) {
      ps.push_back(p);
      inf.insert(p);
    } else if (e.value > 0) {
      ps.push_back(p);
      left[p] = e.value;
    }
  }
  std::vector<std::pair<Int, unsigned long>> out;
  Int prev = 0;
  std::size_t rr = 0;
  while (out.size() < N) {
    unsigned long p = ps[rr++ % ps.size()];
    if (!inf.count(p) && left[p] == 0) continue;
    unsigned long e = 1;
    while (ipow(Int(p), e) <= prev) ++e;
    if (!inf.count(p)) {
      e = std::min(e, left[p]);
      left[p] -= e;
    }
    Int s = ipow(Int(p), e);
    out.push_back({s, p});
    prev = std::max(prev, s);
  }
  return out;
}

Realization regime_a(const TargetSpec& tg, std::size_t N) {
  Realization R;
  R.regime = Regime::A;
  R.stages = N;
  auto sched = s_schedule(tg, N);
  for (auto& [s, p] : sched) R.s.push_back(s);
  auto pk = [&](std::size_t k) { return Int(sched[k].second); };

  std::vector<Int> ell{1, 1};  // ℓ_{-1}, ℓ_0 shifted by one
  auto L = [&](long k) -> const Int& { return ell[static_cast<std::size_t>(k + 1)]; };
  R.t = {1, 1};
  std::vector<Int> g{1, 1};  // g_0, g_1
  std::size_t j = 0;
  std::vector<TauParams> taus;

  Int m0 = window(delta_k(tg, 0), R.t[1] * R.s[0]) + 1;
  while (divides(pk(0), m0 + 1) && pk(0) > 1) ++m0;
  taus.push_back({m0, m0 + R.s[0], 0});
  ell.push_back(m0 + 1);
  R.m_prime.push_back(0);

  for (std::size_t k = 1; k < N; ++k) {
    const Int& gk = g[k];
    Int A = L(k) / gk;
    Int y(tg.y(j));
    Int t1 = 1;
    if (!divides(y, A)) {
      t1 = y;
      ++j;
    }
    R.t.push_back(t1);
    g.push_back(gk * t1);
    Int mp = window(delta_k(tg, k), t1 * R.s[k]);
    R.m_prime.push_back(mp);
    Int B = R.s[k - 1] * L(k - 1) / g[k - 1];
    Int i = 1;
    while (i <= t1 && !divides(t1, (mp - i) * A + B)) ++i;
    if (i > t1) throw Error(Errc::search_exhausted, "no residue solves the stage " + std::to_string(k) + " congruence");
    bool found = false;
    for (Int m : {Int(mp - i), Int(mp - i - t1)}) {
      if (m < 1) continue;
      Int next = m * L(k) + R.t[k] * R.s[k - 1] * L(k - 1);
      if (pk(k) > 1 && divides(pk(k), next / g[k + 1])) continue;
      taus.push_back({m, m + t1 * R.s[k], 0});
      ell.push_back(next);
      found = true;
      break;
    }
    if (!found) throw Error(Errc::search_exhausted, "no m_k in the window at stage " + std::to_string(k));
  }
  R.g.assign(g.begin(), g.begin() + static_cast<long>(N));
  R.lengths.assign(ell.begin() + 1, ell.end());
  emit(R, std::move(taus), "0", "01");
  return R;
}

// Each stage takes d_k, a product of consecutive y's, and m_k with
// w_{k+1} = (m_k w_k + w_{k-1})/d_k integral and free of the primes
// about to be used, so that gcd(|v_k|, |v_{k+1}|) = d_0 ... d_{k-1}.
Realization regime_b_corrected(const TargetSpec& tg, std::size_t N) {
  constexpr std::size_t W = 64;
  Realization R;
  R.regime = Regime::B;
  R.stages = N;
  Int q = tg.nil_order();
  std::vector<Int> w{1, q}, V{q}, D{1};
  std::size_t j = 0;
  std::vector<TauParams> taus;
  auto primes_ahead = [&](std::size_t from) {
    std::set<unsigned long> P;
    for (std::size_t i = from; i < from + W; ++i)
      if (tg.y(i) > 1) P.insert(tg.y(i));
    return P;
  };
  for (std::size_t k = 0; k < N; ++k) {
    const Int wk = w[w.size() - 1], wm = w[w.size() - 2];
    Int need = k >= 1 ? Int((k - 1) * R.s.back() * V[k - 1]) : Int(1);
    if (need < 2) need = 2;
    Int d = 1;
    std::size_t jj = j, guard = 0;
    while (d < need) {
      d *= tg.y(jj++);
      if (++guard > 100000) throw Error(Errc::search_exhausted, "odometer factors do not grow");
    }
    struct Best {
      Rat score;
      Int m, d, wn;
      std::size_t jj;
    };
    std::optional<Best> best;
    Rat dk = delta_k(tg, k);
    for (std::size_t step = 0; step < W; ++step) {
      if (step > 0) d *= tg.y(jj++);
      if (gcd(wk, d) != 1) continue;
      Int inv, c;
      mpz_invert(inv.get_mpz_t(), wk.get_mpz_t(), d.get_mpz_t());
      c = -wm * inv;
      mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
      Int lo = std::max(Int(1), window(dk, d));
      Int off = c - lo;
      mpz_fdiv_r(off.get_mpz_t(), off.get_mpz_t(), d.get_mpz_t());
      Int m = lo + off;
      auto P = primes_ahead(jj);
      for (std::size_t extra = 0; extra < 64; ++extra, m += d) {
        Int wn = (m * wk + wm) / d;
        bool clean = std::all_of(P.begin(), P.end(), [&](unsigned long p) { return !divides(Int(p), wn); });
        if (!clean) continue;
        Rat score = ratio(m - lo, d);
        if (!best || score < best->score) best = Best{score, m, d, wn, jj};
        break;
      }
      if (best && best->score <= Rat(1, static_cast<long>(k + 2))) break;
    }
    if (!best) throw Error(Errc::search_exhausted, "no admissible block at stage " + std::to_string(k));
    j = best->jj;
    taus.push_back({best->m, best->m + best->d, 0});
    Int Vprev = k >= 1 ? V[k - 1] : Int(1), dprev = k >= 1 ? R.s.back() : Int(1);
    V.push_back(best->m * V[k] + dprev * Vprev);
    R.s.push_back(best->d);
    w.push_back(best->wn);
    D.push_back(D.back() * best->d);
  }
  R.g.assign(D.begin(), D.begin() + static_cast<long>(N));
  R.lengths = V;
  emit(R, std::move(taus), Word(q.get_ui(), '0'), Word(q.get_ui(), '0') + "1");
  return R;
}

// The direct choice: s_{k+1} from consecutive y's with
// s_{k+1}/(s_k|v_k|) >= k and m_{k+1} = s_k c, gcd(c, |v_k|) = 1.
Realization regime_b_direct(const TargetSpec& tg, std::size_t N) {
  Realization R;
  R.regime = Regime::B;
  R.stages = N;
  Int q = tg.nil_order();
  std::vector<Int> V{q};
  std::vector<TauParams> taus;
  R.s.push_back(1);
  Int m0 = std::max(Int(1), window(delta_k(tg, 0), Int(1)));
  taus.push_back({m0, m0 + 1, 0});
  V.push_back((m0 - 1) * q + q + 1);
  std::size_t j = 0;
  for (std::size_t k = 0; k + 1 < N; ++k) {
    Int s = 1, bar = Int(static_cast<unsigned long>(k)) * R.s[k] * V[k];
    std::size_t guard = 0;
    do {
      s *= tg.y(j++);
      if (++guard > 100000) throw Error(Errc::search_exhausted, "odometer factors do not grow");
    } while (s < bar);
    Int lo = std::max(Int(1), window(delta_k(tg, k + 1), s));
    Int c = ceil_rat(ratio(lo, R.s[k]));
    while (gcd(c, V[k]) != 1) ++c;
    Int m = R.s[k] * c;
    taus.push_back({m, m + s, 0});
    V.push_back(m * V[k + 1] + (taus[k].n - taus[k].m) * V[k]);
    R.s.push_back(s);
  }
  Int G = 1;
  for (std::size_t k = 0; k < N; ++k) {
    R.g.push_back(G);
    G *= R.s[k];
  }
  R.lengths = V;
  emit(R, std::move(taus), Word(q.get_ui(), '0'), Word(q.get_ui(), '0') + "1");
  return R;
}

Realization regime_c(const TargetSpec& tg, std::size_t N) {
  Realization R;
  R.regime = Regime::C;
  R.stages = N;
  Int q = tg.nil_order(), r = tg.odometer_order();
  unsigned long qr = Int(q * r).get_ui();
  R.g.assign(N, r);
  R.lengths = {Int(q * r), Int(q * r + r)};
  while (R.lengths.size() <= N) R.lengths.push_back(R.lengths.back() + R.lengths[R.lengths.size() - 2]);
  emit(R, std::vector<TauParams>(N, TauParams{1, 2, 0}), Word(qr, '0'), Word(qr, '0') + Word(r.get_ui(), '1'));
  return R;
}

}  // namespace

Realization realize(const TargetSpec& target, std::size_t stages, RegimeBVariant variant) {
  target.validate();
  if (stages < 1) throw Error(Errc::invalid_params, "realize needs at least one stage");
  switch (classify(target)) {
    case Regime::A: return regime_a(target, stages);
    case Regime::B:
      return variant == RegimeBVariant::direct ? regime_b_direct(target, stages) : regime_b_corrected(target, stages);
    default: return regime_c(target, stages);
  }
}

bool RealizationReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const RealizationCheck& c) { return c.ok; });
}

RealizationReport verify_realization(const SadicSystem& sys, const TargetSpec& target, std::size_t K,
                                     const Rat& tol) {
  if (K < 2) throw Error(Errc::invalid_params, "verify_realization needs K >= 2");
  RealizationReport rep;
  auto seqs = derive_ab(sys, K);
  std::vector<Int> g(K), prod(K);
  Int P = seqs.v[0];
  for (std::size_t k = 0; k < K; ++k) {
    P *= seqs.a[k];
    prod[k] = P;
    g[k] = gcd(seqs.v[k], seqs.v[k + 1]);
  }
  std::size_t last = K - 1, mid = (K - 1) / 2;

  {
    RealizationCheck c{"odometer", true, ""};
    std::set<Int> partial{Int(1)};
    Int Y = 1;
    for (std::size_t j = 0; Y <= g[last] && j < 100000; ++j) {
      Y *= target.y(j);
      partial.insert(Y);
    }
    std::ostringstream os;
    for (std::size_t k = 0; k < K; ++k) {
      if (!partial.count(g[k])) {
        c.ok = false;
        os << "g_" << k << "=" << g[k].get_str() << " is not a partial product; ";
      }
      if (k + 1 < K && !divides(g[k], g[k + 1])) {
        c.ok = false;
        os << "g_" << k << " does not divide g_" << k + 1 << "; ";
      }
    }
    if (target.odometer_finite()) {
      if (g[last] != target.odometer_order()) {
        c.ok = false;
        os << "final modulus " << g[last].get_str() << " != " << target.odometer_order().get_str() << "; ";
      }
    } else if (!(g[last] > g[mid])) {
      c.ok = false;
      os << "moduli stall; ";
    }
    os << "g=[";
    for (std::size_t k = 0; k < K; ++k) os << (k ? "," : "") << g[k].get_str();
    os << "]";
    c.detail = os.str();
    rep.checks.push_back(c);
  }

  {
    RealizationCheck c{"nilmanifold", true, ""};
    std::set<unsigned long> ps;
    for (const auto& [p, e] : target.nil) ps.insert(p);
    for (auto p : prime_factors(prod[last])) ps.insert(p);
    std::ostringstream os;
    for (auto p : ps) {
      auto L = [&](std::size_t k) { return valuation(prod[k], p) - valuation(g[k], p); };
      auto it = target.nil.find(p);
      ExtNat x = it == target.nil.end() ? ExtNat::exact(0) : it->second;
      bool ok;
      if (x.kind == ExtNat::Kind::finite) {
        ok = L(last) == x.value;
        for (std::size_t k = 0; k < K; ++k) ok = ok && L(k) <= x.value;
      } else {
        ok = L(last) > L(mid);
      }
      c.ok = c.ok && ok;
      os << "L(" << p << ")=" << L(last) << (x.kind == ExtNat::Kind::finite ? " want " + x.str() : " growing from " + std::to_string(L(mid)))
         << (ok ? "" : " FAIL") << "; ";
    }
    c.detail = os.str();
    rep.checks.push_back(c);
  }

  {
    RealizationCheck c{"limsup", false, ""};
    auto est = limsup_estimate(sys, K - 1);
    rep.limsup = est.estimate;
    Rat target_ls = 1 + target.delta;
    Rat diff = abs(Rat(est.estimate - target_ls));
    c.ok = diff <= tol;
    const TauParams& t = seqs.params[last];
    if (t.r == 0 && t.n > 2) {
      Int n = t.n, m = t.m;
      rep.lower_bound = 1 + ratio(n - m - 1, n + 1);
      auto lv = level_data(sys, K);
      const Int& vk = seqs.v[last];
      Int pk = lv.back().p;
      rep.upper_bound = 1 + ratio((n - m - 1) * vk + pk + est.C, (n - 2) * vk);
    }
    std::ostringstream os;
    os << "estimate " << to_double(est.estimate) << " target " << to_double(target_ls) << " tol " << to_double(tol);
    if (rep.upper_bound != 0)
      os << "; analytic bounds [" << to_double(rep.lower_bound) << ", " << to_double(rep.upper_bound) << "]";
    c.detail = os.str();
    rep.checks.push_back(c);
  }

  {
    auto cr = check_constraints(sys, K - 1);
    RealizationCheck c{"constraints", cr.pass, cr.status()};
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace sadic
