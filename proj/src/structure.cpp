#include "sadic/structure.hpp"

#include <cmath>

namespace sadic {

namespace {

Int two_if(bool b) { return b ? Int(2) : Int(1); }

}  // namespace

DerivedSeqs derive_ab(const SadicSystem& sys, std::size_t K) {
  DerivedSeqs d;
  d.params = sys.params(K + 1);
  const auto& P = d.params;
  d.a.push_back(two_if(P[0].has_r()));
  for (std::size_t k = 0; k < K; ++k) d.a.push_back(two_if(P[k + 1].has_r()) * (P[k].n - P[k].m));
  for (std::size_t k = 0; k <= K; ++k) d.b.push_back(P[k].m + P[k].r);
  d.v_minus1 = Int(sys.u0.size()) - Int(sys.v0.size());
  d.v.push_back(Int(sys.v0.size()));
  Int prev = d.v_minus1;
  for (std::size_t k = 0; k <= K; ++k) {
    Int next = d.b[k] * d.v[k] + d.a[k] * prev;
    prev = d.v[k];
    d.v.push_back(next);
  }
  d.beta_prod.push_back(Rat(1));
  for (std::size_t k = 0; k < K; ++k) {
    Rat bk = ratio(d.a[k + 1] * d.v[k], d.v[k + 1]);
    d.beta.push_back(bk);
    d.beta_prod.push_back(d.beta_prod.back() * bk);
  }
  return d;
}

std::vector<Int> lengths(const SadicSystem& sys, std::size_t K) {
  auto d = derive_ab(sys, K);
  d.v.resize(K + 1);
  return d.v;
}

BetaPair beta(const DerivedSeqs& seqs, std::size_t k) {
  if (k >= seqs.beta.size()) throw Error(Errc::out_of_range, "beta index beyond the derived depth");
  BetaPair bp;
  bp.by_definition = seqs.beta[k];
  Rat r = seqs.beta[0];
  for (std::size_t j = 1; j <= k; ++j) r = Rat(seqs.a[j + 1]) / (Rat(seqs.b[j]) + r);
  bp.by_recursion = r;
  return bp;
}

DecayReport decay_report(const SadicSystem& sys, const DerivedSeqs& seqs, std::size_t K) {
  DecayReport rep;
  const auto& P = seqs.params;
  std::size_t Kc = std::min(K, seqs.beta.size());
  Int num = two_if(P[0].has_r());
  for (std::size_t k = 0; k <= Kc; ++k) {
    if (k > 0) num *= two_if(P[k].has_r()) * (P[k - 1].n - P[k - 1].m);
    rep.eps.push_back(ratio(num, seqs.v[k]));
  }
  // least squares on log Π_{j<k} β_j against k
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t k = 1; k <= Kc; ++k) {
    double y = std::log(to_double(seqs.beta_prod[k]));
    sx += k;
    sy += y;
    sxx += double(k) * k;
    sxy += k * y;
    ++n;
  }
  if (n >= 2) {
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.kappa_fit = std::exp(slope);
    for (std::size_t k = 0; k <= Kc; ++k)
      rep.C_fit = std::max(rep.C_fit, to_double(seqs.beta_prod[k]) / std::pow(rep.kappa_fit, double(k)));
  }
  rep.summable = n >= 2 && rep.kappa_fit < 1;
  rep.envelope_ok = true;
  for (std::size_t k = 2; k + 4 <= Kc; ++k)
    if (seqs.beta[k] * seqs.beta[k + 1] * seqs.beta[k + 2] * seqs.beta[k + 3] >= 1) rep.envelope_ok = false;
  rep.certified = Kc >= 3 && check_constraints(sys, Kc).pass;
  return rep;
}

ConstraintReport check_constraints(const SadicSystem& sys, std::size_t K) {
  if (K < 2) throw Error(Errc::invalid_params, "constraints are stated for k >= 2; need K >= 2");
  auto P = sys.params(K + 1);
  ConstraintReport rep;
  for (std::size_t k = 0; k < 2; ++k) rep.verdicts.push_back({k, "unchecked-by-theory", true, ""});
  for (std::size_t k = 2; k < K; ++k) {
    const auto &t = P[k], &t1 = P[k - 1], &t2 = P[k - 2];
    if (t.n > 2 * t.m) {
      bool i = t.n == 2 * t.m + 2 && t1.n == t1.m + 1 && 3 * t2.n <= 4 * t2.m + 3 && !t.has_r() && !t1.has_r();
      bool ii = t.n == 2 * t.m + 1 && t1.n <= 2 * t1.m && !t.has_r();
      bool iii = t.n == 2 * t.m + 1 && t1.m == 1 && t1.n == 3 && t2.n == t2.m + 1 && !t.has_r() && !t1.has_r() &&
                 !t2.has_r();
      int cnt = i + ii + iii;
      std::string label = cnt != 1 ? "n_k > 2m_k but " + std::to_string(cnt) + " of svp (i)-(iii) hold"
                          : i      ? "svp(i)"
                          : ii     ? "svp(ii)"
                                   : "svp(iii)";
      rep.verdicts.push_back({k, "svp", cnt == 1, label});
    }
    if (P[k + 1].has_r()) {
      bool cap = 3 * t.n <= 4 * t.m + 3;
      bool i = 2 * t.n <= 3 * t.m;
      bool ii = t.m == 3 && t.n == 5 && t1.n == t1.m + 1 && !t.has_r() && !t1.has_r();
      bool iii = t.m == 1 && t.n == 2 && t1.n <= 2 * t1.m && !t.has_r();
      bool iv = t.m == 1 && t.n == 2 && t1.m == 1 && t1.n == 3 && t2.n == t2.m + 1 && !t.has_r() && !t1.has_r();
      int cnt = i + ii + iii + iv;
      std::string label;
      if (!cap)
        label = "n_k <= 4m_k/3 + 1 fails";
      else if (cnt != 1)
        label = "r_{k+1} > 0 but " + std::to_string(cnt) + " of rk (i)-(iv) hold";
      else
        label = i ? "rk(i)" : ii ? "rk(ii)" : iii ? "rk(iii)" : "rk(iv)";
      rep.verdicts.push_back({k, "rk", cap && cnt == 1, label});
    }
    Int a = two_if(P[k + 1].has_r()) * (t.n - t.m), b = t.m + t.r;
    bool ok = a <= b + 2;
    std::string label = ok ? "a_{k+1} <= b_k + 2" : "a_{k+1} <= b_k + 2 fails";
    if (ok && a == b + 2 && (P[k + 1].has_r() || t.n != 2 * t.m + 2)) {
      ok = false;
      label = "a_{k+1} = b_k + 2 without r_{k+1} = 0 and n_k = 2m_k + 2";
    }
    rep.verdicts.push_back({k, "a2", ok, label});
  }
  for (const auto& v : rep.verdicts) rep.pass = rep.pass && v.ok;
  return rep;
}

DvuBound dvu_bound(const SadicSystem& sys, std::size_t k) {
  const Word &v = sys.v0, &u = sys.u0;
  bool canonical0 = v.size() < u.size() && u.compare(u.size() - v.size(), v.size(), v) == 0;
  DvuBound db;
  db.anchor = canonical0 ? 0 : 1;
  if (k < db.anchor) throw Error(Errc::formula_inapplicable, "level precedes the first canonical level");
  auto P = sys.params(k + 1);
  db.bound = 2 * block_lengths(sys, db.anchor).u[db.anchor];
  for (std::size_t j = db.anchor; j < k; ++j) db.bound *= two_if(P[j].has_r()) * (P[j].n - P[j].m);
  return db;
}

MeanApReport mean_ap_report(const SadicSystem& sys, std::size_t k, std::size_t prefix_len) {
  auto d = derive_ab(sys, k + 1);
  if (Int(static_cast<unsigned long>(prefix_len)) < 10 * d.v[k + 1])
    throw Error(Errc::prefix_too_short, "prefix must be at least 10|v_{k+1}|");
  std::size_t shift = d.v[k].get_ui();
  Word x = generated_prefix(sys, prefix_len + shift);
  MeanApReport rep;
  rep.k = k;
  rep.prefix_len = prefix_len;
  rep.mismatches = 0;
  for (std::size_t t = 0; t < prefix_len; ++t) rep.mismatches += x[t] != x[t + shift];
  rep.density = ratio(Int(static_cast<unsigned long>(rep.mismatches)), Int(static_cast<unsigned long>(prefix_len)));
  const auto& P = d.params;
  Int r_le = 1, r_lt = 1, prod = 1;
  for (std::size_t j = 0; j <= k; ++j) {
    if (j < k) {
      r_lt *= two_if(P[j].has_r());
      prod *= P[j].n - P[j].m;
    }
    r_le *= two_if(P[j].has_r());
  }
  Int u0(sys.u0.size());
  // |v_k| ε_k = 2^{Σ_{j<=k}} Π_{j<k}(n_j - m_j)
  rep.bound = ratio(8 * u0 * r_le * prod, d.v[k + 1]);
  rep.bound_dvu = ratio(8 * u0 * r_lt * prod, d.v[k + 1]);
  return rep;
}

}  // namespace sadic
