#include "sadic/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string_view>
#include <unordered_set>

namespace sadic {

namespace {

// Distinct windows of length q across the given texts, sorted.
std::vector<Word> windows(const std::vector<Word>& texts, std::size_t q) {
  std::unordered_set<std::string_view> seen;
  for (const auto& t : texts) {
    std::string_view sv(t);
    for (std::size_t i = 0; i + q <= sv.size(); ++i) seen.insert(sv.substr(i, q));
  }
  std::vector<Word> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> pair_texts(const SadicSystem& sys, std::size_t k) {
  BlockPair bp = words_uk_vk(sys, k, budget_bytes() / 8);
  if (!bp.materialized())
    throw Error(Errc::budget_exceeded, "level " + std::to_string(k) + " blocks exceed the byte budget");
  auto t = sys.params(k + 1)[k];
  std::vector<Word> out;
  for (auto [a, b] : block_pairs(t)) out.push_back((a ? *bp.u : *bp.v) + (b ? *bp.u : *bp.v));
  return out;
}

void fill_prefixes(LanguageSample& s, std::vector<Word> top) {
  s.factors.assign(s.q_max + 1, {});
  s.factors[s.q_max] = std::move(top);
  for (std::size_t q = s.q_max; q > 0; --q) {
    auto& dst = s.factors[q - 1];
    for (const auto& w : s.factors[q]) {
      Word pre = w.substr(0, q - 1);
      if (dst.empty() || dst.back() != pre) dst.push_back(std::move(pre));
    }
  }
  std::set<char> letters;
  if (s.q_max >= 1)
    for (const auto& w : s.factors[1]) letters.insert(w[0]);
  s.alphabet.assign(letters.begin(), letters.end());
}

}  // namespace

LanguageSample sample_language(const SadicSystem& sys, std::size_t q_max) {
  if (q_max < 1) throw Error(Errc::invalid_params, "q_max must be at least 1");
  Int need(static_cast<unsigned long>(q_max));
  std::size_t k = 0;
  for (;; ++k) {
    if (k + 2 > sys.available()) throw Error(Errc::out_of_range, "system too shallow for q_max");
    if (block_lengths(sys, k).v[k] + 1 >= need) break;
  }
  LanguageSample s;
  s.q_max = q_max;
  s.source_depth = k;
  auto top = windows(pair_texts(sys, k), q_max);
  s.stabilized = windows(pair_texts(sys, k + 1), q_max) == top;
  fill_prefixes(s, std::move(top));
  return s;
}

LanguageSample sample_from_cyclic_word(const Word& w, std::size_t q_max) {
  if (w.empty()) throw Error(Errc::invalid_params, "empty period");
  Word text;
  while (text.size() < q_max + w.size()) text += w;
  LanguageSample s;
  s.q_max = q_max;
  s.stabilized = true;
  fill_prefixes(s, windows({text}, q_max));
  return s;
}

std::size_t complexity(const LanguageSample& s, std::size_t q) {
  if (q > s.q_max) throw Error(Errc::out_of_range, "q beyond the sampled q_max");
  return s.factors[q].size();
}

std::vector<Special> right_special(const LanguageSample& s, std::size_t q) {
  if (q >= s.q_max) throw Error(Errc::out_of_range, "right_special needs q < q_max");
  std::vector<Special> out;
  const auto& next = s.factors[q + 1];
  for (std::size_t i = 0; i < next.size();) {
    std::size_t j = i;
    std::string ext;
    while (j < next.size() && next[j].compare(0, q, next[i], 0, q) == 0) ext += next[j++][q];
    if (ext.size() > 1) out.push_back({next[i].substr(0, q), ext});
    i = j;
  }
  return out;
}

std::vector<Special> left_special(const LanguageSample& s, std::size_t q) {
  if (q >= s.q_max) throw Error(Errc::out_of_range, "left_special needs q < q_max");
  std::map<Word, std::string> pre;
  for (const auto& w : s.factors[q + 1]) pre[w.substr(1)] += w[0];
  std::vector<Special> out;
  for (auto& [w, e] : pre) {
    std::sort(e.begin(), e.end());
    if (e.size() > 1) out.push_back({w, e});
  }
  return out;
}

std::vector<std::size_t> RauzyGraph::out_degree() const {
  std::vector<std::size_t> d(vertices.size(), 0);
  for (const auto& e : edges) ++d[e.from];
  return d;
}

RauzyGraph rauzy_graph(const LanguageSample& s, std::size_t n) {
  if (n + 1 > s.q_max) throw Error(Errc::out_of_range, "rauzy_graph needs n + 1 <= q_max");
  RauzyGraph g;
  g.vertices = s.factors[n];
  auto index = [&](const Word& w) {
    auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), w);
    return static_cast<std::size_t>(it - g.vertices.begin());
  };
  for (const auto& e : s.factors[n + 1]) g.edges.push_back({index(e.substr(0, n)), index(e.substr(1)), e});
  return g;
}

std::vector<LevelData> level_data(const SadicSystem& sys, std::size_t K) {
  Lengths L = block_lengths(sys, K);
  auto ps = sys.params(K);
  std::vector<LevelData> out;
  Int s = periodic_suffix(sys.v0, sys.u0).size();
  Int p = common_prefix(sys.v0, sys.u0).size();
  Int nm = 0, rr = 0;
  for (std::size_t k = 0; k < K; ++k) {
    if (k > 0) {
      s += L.v[k];
      p += (ps[k - 1].m - 1) * L.v[k - 1];
    }
    out.push_back({ps[k], L.v[k], L.u[k], s, p, nm, rr});
    nm += (ps[k].n - ps[k].m - 1) * L.v[k];
    if (ps[k].has_r()) rr += (ps[k].r - 1) * L.v[k] + L.u[k];
  }
  return out;
}

namespace {

// Levels until |s_k p_k| >= qbound (or the system runs out).
std::vector<LevelData> levels_until(const SadicSystem& sys, const Int& qbound) {
  std::size_t K = 8;
  while (true) {
    std::size_t cap = std::min(K, sys.available());
    auto ld = level_data(sys, cap);
    if (ld.back().s + ld.back().p >= qbound || cap < K) return ld;
    K *= 2;
  }
}

}  // namespace

std::vector<IncrementInterval> increment_intervals(const SadicSystem& sys, const Int& qbound) {
  std::vector<IncrementInterval> out;
  auto ld = levels_until(sys, qbound);
  for (std::size_t k = 0; k < ld.size(); ++k) {
    const auto& L = ld[k];
    if (L.s + L.p >= qbound) break;
    const auto& t = L.t;
    Int lo = L.s + (t.m - 1) * L.v + L.p, hi = L.s + (t.n - 2) * L.v + L.p;
    if (lo < hi) out.push_back({k, false, lo, hi});
    if (t.has_r()) {
      Int rlo = L.s + (t.r - 1) * L.v + L.p;
      Int rhi = L.s + 2 * (t.r - 1) * L.v + L.u + L.p;
      out.push_back({k, true, rlo, rhi});
    }
  }
  return out;
}

std::vector<std::size_t> predicted_increments(const SadicSystem& sys, std::size_t q_max) {
  std::size_t s0 = periodic_suffix(sys.v0, sys.u0).size();
  auto iv = increment_intervals(sys, Int(static_cast<unsigned long>(q_max + 1)));
  std::vector<std::size_t> out(q_max + 1, 0);
  for (std::size_t q = s0 + 1; q <= q_max; ++q) {
    Int Q(static_cast<unsigned long>(q));
    std::size_t c = 1;
    for (const auto& i : iv) c += (i.lo < Q && Q <= i.hi);
    out[q] = c;
  }
  return out;
}

std::size_t predicted_increment(const SadicSystem& sys, std::size_t q) {
  std::size_t s0 = periodic_suffix(sys.v0, sys.u0).size();
  if (q <= s0)
    throw Error(Errc::formula_inapplicable,
                "q = " + std::to_string(q) + " does not exceed |s_0| = " + std::to_string(s0));
  return predicted_increments(sys, q)[q];
}

namespace {

// The two special-length formulas, written once for exact and limit use.
template <class T>
struct Formula {
  T q1, p1;
  bool has_r = false;
  T q2, p2;
};

template <class T>
T tmin(const T& a, const T& b) { return a < b ? a : b; }
template <class T>
T tmax(const T& a, const T& b) { return a < b ? b : a; }

template <class T>
Formula<T> eval_formula(const T& m, const T& n, const T& r, bool has_r, const T& v, const T& u,
                        const T& s, const T& p, const T& sum_nm, const T& sum_r, const T& C,
                        const T& one) {
  Formula<T> f;
  T own_nm = (n - m - one) * v;
  T own_r = has_r ? T((r - one) * v + u) : T(0 * one);
  f.q1 = s + (n - 2 * one) * v + p;
  T ell = has_r ? tmin<T>((n - r - one) * v, (r - one) * v + u) : T(0 * one);
  f.p1 = f.q1 + ell + sum_nm + own_nm + sum_r + C;
  f.has_r = has_r;
  if (has_r) {
    f.q2 = s + 2 * (r - one) * v + u + p;
    T lo1 = s + (m - one) * v + p;
    T cap = tmin<T>(f.q1, f.q2) - tmax<T>(lo1, one);
    if (cap < 0 * one) cap = 0 * one;
    f.p2 = f.q2 + sum_nm + sum_r + own_r + cap + C;
  }
  return f;
}

Formula<Int> exact_formula(const LevelData& L, const Int& C) {
  return eval_formula<Int>(L.t.m, L.t.n, L.t.r, L.t.has_r(), L.v, L.u, L.s, L.p, L.sum_nm, L.sum_r, C,
                           Int(1));
}

}  // namespace

std::vector<SpecialLength> special_length_complexity(const SadicSystem& sys, std::size_t k, const Int& C) {
  auto ld = level_data(sys, k + 1);
  auto f = exact_formula(ld[k], C);
  std::vector<SpecialLength> out{{k, false, f.q1, f.p1}};
  if (f.has_r) out.push_back({k, true, f.q2, f.p2});
  return out;
}

Calibration calibrate_C(const SadicSystem& sys) {
  auto ld = level_data(sys, 1);
  auto f = exact_formula(ld[0], Int(0));
  std::size_t q0 = f.q1.get_ui();
  std::size_t s0 = ld[0].s.get_ui();
  auto sample = sample_language(sys, std::max<std::size_t>({q0, s0, 1}));
  Calibration c;
  c.q0 = q0;
  c.C = Int(static_cast<unsigned long>(complexity(sample, q0))) - f.p1;
  c.C_seed = Int(static_cast<unsigned long>(complexity(sample, s0))) - Int(static_cast<unsigned long>(s0));
  return c;
}

double closed_form_limsup(const TauParams& t) {
  t.validate();
  using LD = long double;
  LD m = t.m.get_d(), n = t.n.get_d(), r = t.r.get_d();
  bool hr = t.has_r();
  LD b = m + r, a = (hr ? 2 : 1) * (n - m);
  LD kappa = (b + std::sqrt(b * b + 4 * a)) / 2;
  // lengths relative to |v_k| in the limit
  LD v = 1, u = 1 + (n - m) / kappa;
  LD before_v = 1 / (kappa - 1), before_u = before_v + (n - m) / (kappa * (kappa - 1));
  LD s = kappa / (kappa - 1), p = (m - 1) * before_v;
  LD sum_nm = (n - m - 1) * before_v;
  LD sum_r = hr ? (r - 1) * before_v + before_u : 0;
  auto f = eval_formula<LD>(m, n, r, hr, v, u, s, p, sum_nm, sum_r, 0, 1);
  LD best = f.p1 / f.q1;
  if (f.has_r) best = std::max(best, f.p2 / f.q2);
  return static_cast<double>(best);
}

LimsupEstimate limsup_estimate(const SadicSystem& sys, std::size_t K) {
  LimsupEstimate est;
  est.C = calibrate_C(sys).C;
  auto ld = level_data(sys, K + 1);
  est.window_start = K - K / 4;
  bool first = true, first_tail = true;
  for (std::size_t k = 0; k <= K; ++k) {
    auto f = exact_formula(ld[k], est.C);
    std::vector<SpecialLength> vals{{k, false, f.q1, f.p1}};
    if (f.has_r) vals.push_back({k, true, f.q2, f.p2});
    for (const auto& sl : vals) {
      est.values.push_back(sl);
      if (sl.q <= 0) continue;
      Rat ratio(sl.p, sl.q);
      ratio.canonicalize();
      if (first || ratio > est.global_max) est.global_max = ratio;
      first = false;
      if (k >= est.window_start && (first_tail || ratio > est.estimate)) {
        est.estimate = ratio;
        first_tail = false;
      }
    }
  }
  if (sys.periodic_tail()) est.closed_form = closed_form_limsup(sys.taus.back());
  return est;
}

namespace {

bool has_factor(const LanguageSample& s, const Word& w) {
  const auto& f = s.factors[w.size()];
  return std::binary_search(f.begin(), f.end(), w);
}

}  // namespace

SeedDetection detect_seed(const LanguageSample& s) {
  for (std::size_t q = 0; q + 1 <= s.q_max; ++q)
    if (s.factors[q + 1].size() <= s.factors[q].size())
      throw Error(Errc::periodic, "p(" + std::to_string(q + 1) + ") <= p(" + std::to_string(q) + ")");
  for (std::size_t q = 1; q + 1 <= s.q_max; ++q) {
    auto rs = right_special(s, q);
    auto ls = left_special(s, q);
    if (rs.size() != 1 || ls.size() != 1 || rs[0].w != ls[0].w || rs[0].ext.size() != 2) continue;
    const Word& w = rs[0].w;
    std::vector<Word> labels;
    std::size_t limit = complexity(s, q) + 1;
    for (char a : rs[0].ext) {
      Word label(1, a);
      Word cur = (w + a).substr(1);
      while (cur != w && label.size() <= limit) {
        char next = 0;
        for (char c : s.alphabet)
          if (has_factor(s, cur + c)) {
            next = c;
            break;
          }
        if (!next) break;
        label += next;
        cur = (cur + next).substr(1);
      }
      if (cur != w) break;
      labels.push_back(label);
    }
    if (labels.size() != 2) continue;
    if (labels[0].size() > labels[1].size()) std::swap(labels[0], labels[1]);
    const Word &y = labels[0], &z = labels[1];
    if (y.size() == z.size() || z.compare(z.size() - y.size(), y.size(), y) != 0) continue;
    return {y, z, w, q};
  }
  throw Error(Errc::insufficient_depth, "no unique bispecial word with a canonical return pair up to q_max");
}

LevelInference infer_level(const std::vector<char>& blocks) {
  std::vector<std::size_t> seg;
  auto it = std::find(blocks.begin(), blocks.end(), 'U');
  if (it == blocks.end()) throw Error(Errc::periodic, "no U block in stream");
  std::size_t run = 0;
  for (++it; it != blocks.end(); ++it) {
    if (*it == 'V') {
      ++run;
    } else {
      seg.push_back(run);
      run = 0;
    }
  }
  std::set<std::size_t> S(seg.begin(), seg.end());
  LevelInference out;
  out.gaps.assign(S.begin(), S.end());
  if (S.size() <= 1) throw Error(Errc::periodic, "only one gap length between U blocks");
  if (S.size() > 3) throw Error(Errc::not_low_complexity, std::to_string(S.size()) + " distinct gap lengths");
  const auto& g = out.gaps;
  if (S.size() == 2) {
    out.params = {Int(static_cast<unsigned long>(g[0] + 1)), Int(static_cast<unsigned long>(g[1] + 1)), Int(0)};
    for (auto t : seg) out.next_blocks.push_back(t == g[0] ? 'V' : 'U');
  } else {
    out.params = {Int(static_cast<unsigned long>(g[1] + 1)), Int(static_cast<unsigned long>(g[2] + 1)),
                  Int(static_cast<unsigned long>(g[0] + 1))};
    std::size_t i = 0;
    while (i < seg.size() && seg[i] == g[0]) ++i;
    if (i > 1) throw Error(Errc::not_low_complexity, "two short gaps in a row");
    for (; i + 1 < seg.size(); i += 2) {
      if (seg[i] == g[0] || seg[i + 1] != g[0])
        throw Error(Errc::not_low_complexity, "gaps do not alternate with the short gap");
      out.next_blocks.push_back(seg[i] == g[1] ? 'V' : 'U');
    }
  }
  out.params.validate();
  return out;
}

}  // namespace sadic
