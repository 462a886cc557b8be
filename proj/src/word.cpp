#include "sadic/word.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace sadic {

Word Substitution::operator()(char a) const {
  auto it = images.find(a);
  if (it == images.end())
    throw Error(Errc::alphabet_mismatch, std::string("no image for symbol '") + a + "'");
  return it->second;
}

Word Substitution::apply(const Word& w) const {
  Word out;
  for (char a : w) out += (*this)(a);
  return out;
}

std::string Substitution::source_alphabet() const {
  std::string s;
  for (const auto& [a, img] : images) s += a;
  return s;
}

std::string Substitution::target_alphabet() const {
  std::set<char> t;
  for (const auto& [a, img] : images) t.insert(img.begin(), img.end());
  return std::string(t.begin(), t.end());
}

Substitution identity_substitution(const std::string& alphabet) {
  Substitution s;
  for (char a : alphabet) s.images[a] = Word(1, a);
  return s;
}

Substitution compose(const Substitution& outer, const Substitution& inner) {
  std::string src = outer.source_alphabet();
  for (char a : inner.target_alphabet())
    if (src.find(a) == std::string::npos)
      throw Error(Errc::alphabet_mismatch, std::string("symbol '") + a + "' has no outer image");
  Substitution out;
  for (const auto& [a, img] : inner.images) out.images[a] = outer.apply(img);
  return out;
}

void TauParams::validate() const {
  if (r < 0 || !(r < m) || !(m < n))
    throw Error(Errc::invalid_params, "tau parameters must satisfy 0 <= r < m < n, got " + str());
}

std::string TauParams::str() const {
  return "(" + m.get_str() + "," + n.get_str() + "," + r.get_str() + ")";
}

namespace {

std::size_t to_size(const Int& x, const char* what) {
  if (x < 0 || !x.fits_ulong_p() || x.get_ui() > std::numeric_limits<std::size_t>::max() / 2)
    throw Error(Errc::budget_exceeded, std::string(what) + " too large to materialise");
  return static_cast<std::size_t>(x.get_ui());
}

Word repeat(const Word& w, std::size_t times) {
  Word out;
  out.reserve(w.size() * times);
  for (std::size_t i = 0; i < times; ++i) out += w;
  return out;
}

// Image of the τ letter under τ_{m,n,r} as runs of (count, block) pairs.
struct Run {
  Int count;
  bool u;
};

std::vector<Run> image_runs(const TauParams& t, bool u_letter) {
  std::vector<Run> runs;
  Int lead = u_letter ? t.n - 1 : t.m - 1;
  if (lead > 0) runs.push_back({lead, false});
  runs.push_back({1, true});
  if (t.has_r()) {
    if (t.r - 1 > 0) runs.push_back({t.r - 1, false});
    runs.push_back({1, true});
  }
  return runs;
}

}  // namespace

Substitution build_tau(const TauParams& p) {
  p.validate();
  std::size_t m = to_size(p.m, "m"), n = to_size(p.n, "n"), r = to_size(p.r, "r");
  if (n + r > budget_bytes()) throw Error(Errc::budget_exceeded, "tau image too large");
  Substitution s;
  Word tail = r > 0 ? Word(r - 1, '0') + "1" : Word();
  s.images['0'] = Word(m - 1, '0') + "1" + tail;
  s.images['1'] = Word(n - 1, '0') + "1" + tail;
  return s;
}

SadicSystem SadicSystem::repeated(Word v0, Word u0, const TauParams& t) {
  SadicSystem s;
  s.v0 = std::move(v0);
  s.u0 = std::move(u0);
  s.taus = {t};
  s.repeat_last = true;
  s.validate();
  return s;
}

void SadicSystem::validate() const {
  if (v0.empty() || u0.empty()) throw Error(Errc::invalid_params, "seed images must be nonempty");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    try {
      taus[i].validate();
    } catch (const Error& e) {
      throw Error(Errc::invalid_params, "tau entry " + std::to_string(i) + ": " + e.what());
    }
  }
  if (rule) {
    rule->when_divisible.validate();
    rule->fallback.validate();
    if (rule->base < 2) throw Error(Errc::invalid_params, "rule base must be >= 2");
  } else if (taus.empty()) {
    throw Error(Errc::invalid_params, "system has no tau parameters");
  }
}

Substitution SadicSystem::pi() const {
  Substitution s;
  s.images['0'] = v0;
  s.images['1'] = u0;
  return s;
}

std::size_t SadicSystem::available() const {
  return infinite() ? std::numeric_limits<std::size_t>::max() : taus.size();
}

std::vector<TauParams> SadicSystem::params(std::size_t K) const {
  std::vector<TauParams> out;
  out.reserve(K);
  if (rule) {
    Int lv = v0.size(), lu = u0.size();
    for (std::size_t k = 0; k < K; ++k) {
      TauParams t = divides(ipow(Int(rule->base), k + rule->shift), lu) ? rule->when_divisible : rule->fallback;
      out.push_back(t);
      Int nv = (t.m - 1) * lv + lu, nu = (t.n - 1) * lv + lu;
      if (t.has_r()) {
        nv += (t.r - 1) * lv + lu;
        nu += (t.r - 1) * lv + lu;
      }
      lv = nv;
      lu = nu;
    }
    return out;
  }
  if (K > taus.size() && !repeat_last)
    throw Error(Errc::out_of_range, "system defines " + std::to_string(taus.size()) +
                                        " levels, " + std::to_string(K) + " requested");
  for (std::size_t k = 0; k < K; ++k) out.push_back(k < taus.size() ? taus[k] : taus.back());
  return out;
}

Lengths block_lengths(const SadicSystem& sys, std::size_t K) {
  auto ps = sys.params(K);
  Lengths L;
  L.v.push_back(Int(sys.v0.size()));
  L.u.push_back(Int(sys.u0.size()));
  for (std::size_t k = 0; k < K; ++k) {
    const auto& t = ps[k];
    const Int &lv = L.v.back(), &lu = L.u.back();
    Int nv = (t.m - 1) * lv + lu, nu = (t.n - 1) * lv + lu;
    if (t.has_r()) {
      nv += (t.r - 1) * lv + lu;
      nu += (t.r - 1) * lv + lu;
    }
    L.v.push_back(nv);
    L.u.push_back(nu);
  }
  return L;
}

namespace {

Word build_block(const std::vector<Run>& runs, const Word& v, const Word& u) {
  Word out;
  for (const auto& run : runs) {
    const Word& b = run.u ? u : v;
    out += repeat(b, run.count.get_ui());
  }
  return out;
}

}  // namespace

BlockPair words_uk_vk(const SadicSystem& sys, std::size_t k, std::size_t materialize_limit) {
  Lengths L = block_lengths(sys, k);
  BlockPair bp{L.v[k], L.u[k], std::nullopt, std::nullopt};
  if (L.v[k] + L.u[k] > Int(static_cast<unsigned long>(materialize_limit))) return bp;
  auto ps = sys.params(k);
  Word v = sys.v0, u = sys.u0;
  for (std::size_t j = 0; j < k; ++j) {
    Word nv = build_block(image_runs(ps[j], false), v, u);
    Word nu = build_block(image_runs(ps[j], true), v, u);
    v = std::move(nv);
    u = std::move(nu);
  }
  bp.v = std::move(v);
  bp.u = std::move(u);
  return bp;
}

BlockPair words_uk_vk(const SadicSystem& sys, std::size_t k) {
  return words_uk_vk(sys, k, budget_bytes());
}

char symbol_at(const SadicSystem& sys, std::size_t k, bool u_block, const Int& index) {
  Lengths L = block_lengths(sys, k);
  auto ps = sys.params(k);
  Int i = index;
  if (i < 0 || i >= (u_block ? L.u[k] : L.v[k])) throw Error(Errc::out_of_range, "symbol index");
  for (std::size_t lvl = k; lvl > 0; --lvl) {
    const Int &lv = L.v[lvl - 1], &lu = L.u[lvl - 1];
    bool found = false;
    for (const auto& run : image_runs(ps[lvl - 1], u_block)) {
      Int span = run.count * (run.u ? lu : lv);
      if (i < span) {
        Int blk = run.u ? lu : lv;
        i = i % blk;
        u_block = run.u;
        found = true;
        break;
      }
      i -= span;
    }
    if (!found) throw Error(Errc::out_of_range, "block tree descent");
  }
  const Word& base = u_block ? sys.u0 : sys.v0;
  return base[i.get_ui()];
}

Word expand_prefix(const SadicSystem& sys, std::size_t k, bool u_block, std::size_t N) {
  auto ps = sys.params(k);
  Word out;
  out.reserve(N);
  std::function<void(std::size_t, bool)> emit = [&](std::size_t lvl, bool ub) {
    if (out.size() >= N) return;
    if (lvl == 0) {
      const Word& b = ub ? sys.u0 : sys.v0;
      out.append(b, 0, std::min(b.size(), N - out.size()));
      return;
    }
    for (const auto& run : image_runs(ps[lvl - 1], ub)) {
      for (Int c = 0; c < run.count && out.size() < N; ++c) emit(lvl - 1, run.u);
      if (out.size() >= N) return;
    }
  };
  emit(k, u_block);
  return out;
}

Word generated_prefix(const SadicSystem& sys, std::size_t N) {
  if (N > budget_bytes()) throw Error(Errc::budget_exceeded, "prefix length exceeds budget");
  std::size_t k = 0;
  Int target(static_cast<unsigned long>(N));
  for (;; ++k) {
    if (k >= sys.available()) throw Error(Errc::out_of_range, "system too shallow for prefix");
    Lengths L = block_lengths(sys, k);
    if (L.v[k] >= target) break;
  }
  return expand_prefix(sys, k, false, N);
}

Word common_prefix(const Word& a, const Word& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  return a.substr(0, i);
}

Word periodic_suffix(const Word& v, const Word& u) {
  if (v.empty() || u.empty()) throw Error(Errc::invalid_params, "periodic_suffix needs nonempty words");
  // symbol at distance d from the right end of v^inf and of v^inf u
  auto left = [&](std::size_t d) { return v[v.size() - 1 - d % v.size()]; };
  auto right = [&](std::size_t d) {
    return d < u.size() ? u[u.size() - 1 - d] : left(d - u.size());
  };
  std::size_t limit = v.size() + u.size();
  for (std::size_t d = 0; d < limit; ++d) {
    if (left(d) != right(d)) {
      Word s;
      for (std::size_t j = d; j > 0; --j) s += left(j - 1);
      return s;
    }
  }
  throw Error(Errc::common_root, "'" + v + "' and '" + u + "' are powers of a common word");
}

std::vector<PkSk> pk_sk_all(const SadicSystem& sys, std::size_t K) {
  Lengths L = block_lengths(sys, K);
  auto ps = sys.params(K);
  Word p0 = common_prefix(sys.v0, sys.u0);
  Word s0 = periodic_suffix(sys.v0, sys.u0);
  std::vector<PkSk> out;
  out.push_back({Int(p0.size()), Int(s0.size()), p0, s0});
  const std::size_t word_cap = std::size_t(1) << 22;
  std::optional<BlockPair> words;
  for (std::size_t k = 0; k < K; ++k) {
    const auto& prev = out.back();
    PkSk next;
    next.len_p = (ps[k].m - 1) * L.v[k] + prev.len_p;
    next.len_s = prev.len_s + L.v[k + 1];
    if (prev.p && prev.s && next.len_p + next.len_s < Int(static_cast<unsigned long>(word_cap))) {
      BlockPair cur = words_uk_vk(sys, k, word_cap);
      BlockPair nxt = words_uk_vk(sys, k + 1, word_cap);
      if (cur.materialized() && nxt.materialized()) {
        next.p = repeat(*cur.v, ps[k].m.get_ui() - 1) + *prev.p;
        next.s = *prev.s + *nxt.v;
      }
    }
    out.push_back(std::move(next));
  }
  return out;
}

PkSk pk_sk(const SadicSystem& sys, std::size_t k) { return pk_sk_all(sys, k)[k]; }

bool is_root(const Word& v, const Word& w) {
  if (v.size() > w.size()) return false;
  if (v.empty()) return w.empty();
  for (std::size_t d = 0; d < w.size(); ++d)
    if (w[w.size() - 1 - d] != v[v.size() - 1 - d % v.size()]) return false;
  return true;
}

std::size_t occurrences(const Word& w, const Word& v) {
  if (v.empty()) return w.size() + 1;
  std::size_t c = 0;
  for (std::size_t pos = w.find(v); pos != Word::npos; pos = w.find(v, pos + 1)) ++c;
  return c;
}

std::size_t hamming(const Word& a, const Word& b) {
  if (a.size() != b.size()) throw Error(Errc::length_mismatch, "hamming needs equal lengths");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

namespace {

bool match_at(const Word& w, std::size_t pos, const Word& b) {
  return pos + b.size() <= w.size() && w.compare(pos, b.size(), b) == 0;
}

bool is_proper_prefix(const Word& w, std::size_t pos, const Word& b) {
  std::size_t len = w.size() - pos;
  return len < b.size() && b.compare(0, len, w, pos, len) == 0;
}

bool is_proper_suffix(const Word& w, std::size_t len, const Word& b) {
  return len < b.size() && b.compare(b.size() - len, len, w, 0, len) == 0;
}

// Returns false on failure; blocks collected from start. Handles the case
// where v is a prefix of u by memoised search over reachable positions.
bool parse_tail(const Word& w, const Word& v, const Word& u, std::size_t start,
                std::vector<char>& blocks, std::size_t& tail) {
  bool v_prefix_of_u = v.size() < u.size() && u.compare(0, v.size(), v) == 0;
  if (!v_prefix_of_u) {
    std::size_t pos = start;
    blocks.clear();
    while (true) {
      if (match_at(w, pos, v)) {
        blocks.push_back('V');
        pos += v.size();
      } else if (match_at(w, pos, u)) {
        blocks.push_back('U');
        pos += u.size();
      } else {
        break;
      }
    }
    if (pos == w.size() || is_proper_prefix(w, pos, v) || is_proper_prefix(w, pos, u)) {
      tail = w.size() - pos;
      return true;
    }
    return false;
  }
  // ambiguous local choice: backward reachability over positions
  std::vector<char> reach(w.size() + 1 - start, 0);
  for (std::size_t pos = w.size() + 1; pos-- > start;) {
    bool res = pos == w.size() || is_proper_prefix(w, pos, v) || is_proper_prefix(w, pos, u);
    if (!res && match_at(w, pos, u)) res = reach[pos + u.size() - start];
    if (!res && match_at(w, pos, v)) res = reach[pos + v.size() - start];
    reach[pos - start] = res;
  }
  auto ok = [&](std::size_t pos) { return reach[pos - start] != 0; };
  if (!ok(start)) return false;
  blocks.clear();
  std::size_t pos = start;
  while (true) {
    bool cu = match_at(w, pos, u) && ok(pos + u.size());
    bool cv = match_at(w, pos, v) && ok(pos + v.size());
    if (cu && cv) throw Error(Errc::ambiguous_edges, "parse not unique");
    if (cu) {
      blocks.push_back('U');
      pos += u.size();
    } else if (cv) {
      blocks.push_back('V');
      pos += v.size();
    } else {
      break;
    }
  }
  tail = w.size() - pos;
  return true;
}

}  // namespace

Decomposition parse_from(const Word& w, const Word& v, const Word& u, std::size_t start) {
  Decomposition d;
  d.offset = start;
  d.head = start;
  if (!parse_tail(w, v, u, start, d.blocks, d.tail))
    throw Error(Errc::not_a_factor, "no block parse from position " + std::to_string(start));
  return d;
}

Decomposition decompose(const Word& w, const Word& v, const Word& u) {
  if (v.empty() || u.empty()) throw Error(Errc::invalid_params, "empty block");
  std::size_t maxlen = std::max(v.size(), u.size());
  std::vector<Decomposition> found;
  for (std::size_t off = 0; off < maxlen && off <= w.size(); ++off) {
    if (off > 0 && !is_proper_suffix(w, off, v) && !is_proper_suffix(w, off, u)) continue;
    Decomposition d;
    d.offset = off;
    d.head = off;
    if (parse_tail(w, v, u, off, d.blocks, d.tail) && !d.blocks.empty()) found.push_back(std::move(d));
  }
  if (found.empty()) throw Error(Errc::not_a_factor, "no parse into v/u blocks");
  // Keep the smallest offset; other parses must share its boundaries.
  const Decomposition& best = found.front();
  std::set<std::size_t> bounds;
  {
    std::size_t pos = best.offset;
    bounds.insert(pos);
    for (char b : best.blocks) bounds.insert(pos += (b == 'V' ? v.size() : u.size()));
  }
  for (std::size_t i = 1; i < found.size(); ++i) {
    std::size_t pos = found[i].offset;
    bool compatible = bounds.count(pos) > 0;
    for (char b : found[i].blocks) {
      pos += (b == 'V' ? v.size() : u.size());
      compatible = compatible && bounds.count(pos) > 0;
    }
    if (!compatible) throw Error(Errc::ambiguous_edges, "distinct interior parses exist");
  }
  return best;
}

Decomposition decompose(const Word& w, const SadicSystem& sys, std::size_t level) {
  BlockPair bp = words_uk_vk(sys, level);
  if (!bp.materialized()) throw Error(Errc::budget_exceeded, "level blocks too large");
  return decompose(w, *bp.v, *bp.u);
}

// Consecutive level-k block pairs that occur in X, from the internal
// adjacencies of τ_k's images plus the boundary pairs after a final '1'.
std::vector<std::pair<bool, bool>> block_pairs(const TauParams& t) {
  std::set<std::pair<bool, bool>> s;
  for (bool ul : {false, true}) {
    std::string sk;
    for (const auto& run : image_runs(t, ul)) {
      Int c = run.count < 3 ? run.count : Int(3);
      sk += std::string(c.get_ui(), run.u ? '1' : '0');
    }
    for (std::size_t i = 0; i + 1 < sk.size(); ++i) s.insert({sk[i] == '1', sk[i + 1] == '1'});
  }
  s.insert({true, false});
  if (t.m == 1) s.insert({true, true});
  return {s.begin(), s.end()};
}

bool in_language(const SadicSystem& sys, const Word& w) {
  if (w.empty()) return true;
  std::size_t k = 0;
  Int need(static_cast<unsigned long>(w.size()));
  while (true) {
    if (k + 1 > sys.available()) throw Error(Errc::out_of_range, "system too shallow");
    Lengths L = block_lengths(sys, k);
    if (L.v[k] + 1 >= need) break;
    ++k;
  }
  BlockPair bp = words_uk_vk(sys, k);
  if (!bp.materialized()) throw Error(Errc::budget_exceeded, "blocks too large for membership test");
  auto t = sys.params(k + 1)[k];
  for (auto [a, b] : block_pairs(t)) {
    Word pair = (a ? *bp.u : *bp.v) + (b ? *bp.u : *bp.v);
    if (pair.find(w) != Word::npos) return true;
  }
  return false;
}

}  // namespace sadic
