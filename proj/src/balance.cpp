#include "sadic/balance.hpp"

#include <algorithm>
#include <cmath>

namespace sadic {

Int IncidenceMatrix::max_entry() const {
  Int m = 0;
  for (const auto& row : counts)
    for (const auto& x : row) m = std::max(m, x);
  return m;
}

std::vector<Int> IncidenceMatrix::column_sums() const {
  std::vector<Int> s(cols.size(), Int(0));
  for (const auto& row : counts)
    for (std::size_t j = 0; j < cols.size(); ++j) s[j] += row[j];
  return s;
}

IncidenceMatrix incidence(const Substitution& s) {
  IncidenceMatrix M;
  M.cols = s.source_alphabet();
  M.rows = s.target_alphabet();
  M.counts.assign(M.rows.size(), std::vector<Int>(M.cols.size(), Int(0)));
  for (std::size_t j = 0; j < M.cols.size(); ++j)
    for (char c : s(M.cols[j])) M.counts[M.rows.find(c)][j] += 1;
  return M;
}

IncidenceMatrix multiply(const IncidenceMatrix& A, const IncidenceMatrix& B) {
  IncidenceMatrix C;
  C.rows = A.rows;
  C.cols = B.cols;
  C.counts.assign(A.rows.size(), std::vector<Int>(B.cols.size(), Int(0)));
  for (std::size_t l = 0; l < B.rows.size(); ++l) {
    auto al = A.cols.find(B.rows[l]);
    if (al == std::string::npos)
      throw Error(Errc::alphabet_mismatch, std::string("symbol '") + B.rows[l] + "' missing from the outer matrix");
    for (std::size_t i = 0; i < A.rows.size(); ++i)
      if (A.counts[i][al] != 0)
        for (std::size_t j = 0; j < B.cols.size(); ++j) C.counts[i][j] += A.counts[i][al] * B.counts[l][j];
  }
  return C;
}

bool primitive(const IncidenceMatrix& M) {
  std::size_t n = M.rows.size();
  if (n == 0 || M.cols != M.rows) return false;
  std::vector<std::vector<char>> P(n, std::vector<char>(n)), B = P;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) B[i][j] = P[i][j] = M.counts[i][j] > 0;
  // Wielandt: a primitive n x n matrix has M^{(n-1)^2+1} > 0
  for (std::size_t it = 1; it <= (n - 1) * (n - 1) + 1; ++it) {
    bool pos = true;
    for (const auto& row : P)
      for (char x : row) pos = pos && x;
    if (pos) return true;
    std::vector<std::vector<char>> Q(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (P[i][l])
          for (std::size_t j = 0; j < n; ++j) Q[i][j] |= B[l][j];
    P = std::move(Q);
  }
  return false;
}

PerronEnclosure perron(const IncidenceMatrix& M, const Rat& tol) {
  if (!primitive(M)) throw Error(Errc::non_primitive, "incidence matrix is not primitive");
  std::size_t n = M.rows.size();
  std::vector<Int> x(n, Int(1));
  PerronEnclosure out;
  for (std::size_t it = 1; it <= 5000; ++it) {
    std::vector<Int> y(n, Int(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) y[i] += M.counts[i][j] * x[j];
    Rat lo, hi;
    for (std::size_t i = 0; i < n; ++i) {
      Rat q = ratio(y[i], x[i]);
      if (i == 0 || q < lo) lo = q;
      if (i == 0 || q > hi) hi = q;
    }
    out.value = Interval(lo, hi);
    out.iterations = it;
    if (hi - lo <= tol) return out;
    // keep the integers small
    Int g = 0;
    for (const auto& yi : y) g = gcd(g, yi);
    for (auto& yi : y) yi /= g;
    x = std::move(y);
  }
  return out;
}

IncidenceMatrix block_counts(const SadicSystem& sys, std::size_t k) {
  IncidenceMatrix N = incidence(sys.pi());
  auto params = sys.params(k);
  for (std::size_t j = 0; j < k; ++j) N = multiply(N, incidence(build_tau(params[j])));
  return N;
}

LetterFrequency letter_frequency(const SadicSystem& sys, std::size_t K) {
  LetterFrequency f;
  Interval alpha = alpha_enclosure(sys, std::max<std::size_t>(K, 2));
  IncidenceMatrix P = incidence(sys.pi());
  f.alphabet = P.rows;
  Int v0(static_cast<unsigned long>(sys.v0.size()));
  Int vm1 = Int(static_cast<unsigned long>(sys.u0.size())) - v0;
  for (std::size_t i = 0; i < P.rows.size(); ++i) {
    Int g2 = P.counts[i][1] - P.counts[i][0], g1 = P.counts[i][0];
    f.g_minus2.push_back(g2);
    f.g_minus1.push_back(g1);
    // α_0 = (1 - |v_{-1}| α)/|v_0|
    f.coef.push_back(ratio(g2 * v0 - g1 * vm1, v0));
    f.shift.push_back(ratio(g1, v0));
    f.freq.push_back(f.coef.back() * alpha + f.shift.back());
  }
  return f;
}

namespace {

// Enclosure of |x - y t| for t in I.
std::pair<Rat, Rat> abs_dev(const Int& x, const Int& y, const Interval& I) {
  Rat a = Rat(x) - Rat(y) * I.lo, b = Rat(x) - Rat(y) * I.hi;
  a.canonicalize();
  b.canonicalize();
  Rat hi = std::max(abs(a), abs(b));
  Rat lo = (a >= 0) == (b >= 0) ? std::min(abs(a), abs(b)) : Rat(0);
  return {lo, hi};
}

}  // namespace

BalanceSeries balance_series(const SadicSystem& sys, std::size_t K) {
  if (K < 1) throw Error(Errc::invalid_params, "balance series needs K >= 1");
  BalanceSeries s;
  auto seqs = derive_ab(sys, K + 1);
  auto eps = decay_report(sys, seqs, K + 1).eps;
  auto f = letter_frequency(sys, std::max<std::size_t>(K + 10, 30));
  Int v0(static_cast<unsigned long>(sys.v0.size()));
  std::vector<Rat> C;
  for (std::size_t c = 0; c < f.alphabet.size(); ++c) C.push_back(abs(f.coef[c] * Rat(v0)));
  s.C = *std::max_element(C.begin(), C.end());

  IncidenceMatrix N = incidence(sys.pi());
  Rat partial = 0;
  for (std::size_t k = 0; k <= K; ++k) {
    IncidenceMatrix Mk = incidence(build_tau(seqs.params[k]));
    Int len_v = 0, len_u = 0;
    for (std::size_t c = 0; c < N.rows.size(); ++c) {
      len_v += N.counts[c][0];
      len_u += N.counts[c][1];
    }
    Rat lo = 0, hi = 0, bound = 0;
    for (std::size_t c = 0; c < N.rows.size(); ++c) {
      auto dv = abs_dev(N.counts[c][0], len_v, f.freq[c]);
      auto du = abs_dev(N.counts[c][1], len_u, f.freq[c]);
      Rat tlo = std::max(dv.first, du.first) * Rat(Mk.max_entry());
      Rat thi = std::max(dv.second, du.second) * Rat(Mk.max_entry());
      Rat bc = 8 * C[c] * eps[k];
      if (thi > bc) s.bound_ok = false;
      lo = std::max(lo, tlo);
      hi = std::max(hi, thi);
      bound = std::max(bound, bc);
    }
    partial += hi;
    s.term_lo.push_back(lo);
    s.term_hi.push_back(hi);
    s.bound.push_back(bound);
    s.partial_hi.push_back(partial);
    N = multiply(N, Mk);
  }
  std::size_t a = K / 2;
  if (K > a && s.term_hi[a] > 0 && s.term_hi[K] > 0)
    s.rate_fit = std::pow(to_double(s.term_hi[K] / s.term_hi[a]), 1.0 / double(K - a));
  return s;
}

EmpiricalBalance empirical_balance(const SadicSystem& sys, const Word& v, std::size_t window_length,
                                   std::size_t prefix_len) {
  if (window_length == 0 || prefix_len < 2 * window_length)
    throw Error(Errc::prefix_too_short, "prefix must hold at least two windows");
  Word x = generated_prefix(sys, prefix_len);
  EmpiricalBalance e;
  e.window_length = window_length;
  if (v.empty() || v.size() > window_length) {
    e.windows = x.size() - window_length + 1;
    return e;
  }
  std::vector<unsigned char> occ(x.size(), 0);
  for (std::size_t pos = x.find(v); pos != Word::npos; pos = x.find(v, pos + 1)) occ[pos] = 1;
  // occurrences starting in [t, t + window_length - |v|]
  std::size_t span = window_length - v.size() + 1, cur = 0;
  for (std::size_t s = 0; s < span; ++s) cur += occ[s];
  e.min_count = e.max_count = cur;
  e.windows = 1;
  for (std::size_t t = 1; t + window_length <= x.size(); ++t) {
    cur += occ[t + span - 1];
    cur -= occ[t - 1];
    e.min_count = std::min(e.min_count, cur);
    e.max_count = std::max(e.max_count, cur);
    ++e.windows;
  }
  return e;
}

CylinderMeasure measure_cylinder(const SadicSystem& sys, const Word& w, std::size_t K) {
  CylinderMeasure cm;
  if (w.empty()) {
    cm.value = Interval(Rat(1), Rat(1));
    cm.q = 0;
    cm.r = 1;
    return cm;
  }
  if (!in_language(sys, w)) throw Error(Errc::not_in_language, "'" + w + "' is not a factor");
  const Int ell(static_cast<unsigned long>(w.size()));
  // every level-k block ends with u_{k-1}; need that suffix and v_k to cover |w| - 1
  std::size_t k = 1;
  while (true) {
    auto L = block_lengths(sys, k);
    if (L.u[k - 1] + 1 >= ell && L.v[k] + 1 >= ell) break;
    ++k;
  }
  auto bp = words_uk_vk(sys, k, budget_bytes() / 4);
  if (!bp.materialized()) throw Error(Errc::budget_exceeded, "blocks too large for the cylinder count");
  const Word &v = *bp.v, &u = *bp.u;
  std::size_t h = w.size() - 1;
  Word S = v.substr(v.size() - h);
  cm.level = k;
  cm.count_v = Int(static_cast<unsigned long>(occurrences(v, w)));
  cm.count_u = Int(static_cast<unsigned long>(occurrences(u, w)));
  cm.cross_v = Int(static_cast<unsigned long>(h ? occurrences(S + v.substr(0, h), w) : 0));
  cm.cross_u = Int(static_cast<unsigned long>(h ? occurrences(S + u.substr(0, h), w) : 0));

  // densities of block starts: ν_u = (1 - α_k|v_k|)/(|u_k| - |v_k|), ν_v = α_k - ν_u
  Int Fv = cm.count_v + cm.cross_v, Fu = cm.count_u + cm.cross_u;
  Int lv(static_cast<unsigned long>(v.size())), D = Int(static_cast<unsigned long>(u.size())) - lv;
  Rat B = ratio(Fu - Fv, D);
  Rat A = Rat(Fv) - Rat(lv) * B;
  A.canonicalize();
  Interval ak = alpha_k_enclosure(sys, k, std::max<std::size_t>(K, 2));
  cm.value = A * ak + B;
  auto off = eigenvalue_offsets(sys, k - 1);
  cm.q = A * off[k - 1].q;
  cm.r = A * off[k - 1].rho + B;
  cm.q.canonicalize();
  cm.r.canonicalize();
  return cm;
}

DimensionGroupDescriptor dimension_group(const SadicSystem& sys, std::size_t K) {
  DimensionGroupDescriptor d;
  d.group = descriptor(sys, K);
  return d;
}

ComparisonResult orbit_equivalence(const DimensionGroupDescriptor& a, const DimensionGroupDescriptor& b) {
  return compare_eigenvalue_groups(a.group, b.group);
}

}  // namespace sadic
