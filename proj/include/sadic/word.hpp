#pragma once

#include "sadic/errors.hpp"
#include "sadic/num.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sadic {

// Symbols are single characters; the τ level uses '0' and '1', the seed
// substitution may target any printable alphabet.
using Word = std::string;

struct Substitution {
  std::map<char, Word> images;

  Word operator()(char a) const;
  Word apply(const Word& w) const;
  std::string source_alphabet() const;
  std::string target_alphabet() const;
};

Substitution identity_substitution(const std::string& alphabet);
Substitution compose(const Substitution& outer, const Substitution& inner);

struct TauParams {
  Int m, n, r;

  bool has_r() const { return r > 0; }
  void validate() const;
  bool operator==(const TauParams& o) const { return m == o.m && n == o.n && r == o.r; }
  std::string str() const;
};

Substitution build_tau(const TauParams& p);

// Example 1.4 style choice: at level k use when_divisible if
// base^(k + shift) divides |u_k|, otherwise fallback.
struct DivisibilityRule {
  unsigned long base = 2;
  unsigned long shift = 2;
  TauParams when_divisible;
  TauParams fallback;
};

class SadicSystem {
 public:
  Word v0;  // π(0)
  Word u0;  // π(1)
  std::vector<TauParams> taus;
  bool repeat_last = false;
  std::optional<DivisibilityRule> rule;

  static SadicSystem repeated(Word v0, Word u0, const TauParams& t);

  void validate() const;
  Substitution pi() const;
  bool infinite() const { return rule.has_value() || repeat_last; }
  bool periodic_tail() const { return !rule && repeat_last && !taus.empty(); }
  // index from which the parameters repeat (only meaningful with periodic_tail)
  std::size_t tail_start() const { return taus.empty() ? 0 : taus.size() - 1; }
  // Number of explicitly available levels; SIZE_MAX when infinite.
  std::size_t available() const;
  // τ-parameters for levels 0..K-1.
  std::vector<TauParams> params(std::size_t K) const;
};

struct Lengths {
  std::vector<Int> v, u;  // index k = 0..K
};

// |v_k|, |u_k| for k = 0..K by direct block counting.
Lengths block_lengths(const SadicSystem& sys, std::size_t K);

struct BlockPair {
  Int len_v, len_u;
  std::optional<Word> v, u;
  bool materialized() const { return v.has_value(); }
};

BlockPair words_uk_vk(const SadicSystem& sys, std::size_t k, std::size_t materialize_limit);
BlockPair words_uk_vk(const SadicSystem& sys, std::size_t k);

// Random access into v_k (u_block=false) or u_k via the block tree.
char symbol_at(const SadicSystem& sys, std::size_t k, bool u_block, const Int& index);
// First N symbols of v_k or u_k without materialising the whole block.
Word expand_prefix(const SadicSystem& sys, std::size_t k, bool u_block, std::size_t N);
// A prefix of length N of some point of X (block-aligned at every level).
Word generated_prefix(const SadicSystem& sys, std::size_t N);

struct PkSk {
  Int len_p, len_s;
  std::optional<Word> p, s;
};

Word common_prefix(const Word& a, const Word& b);
Word periodic_suffix(const Word& v, const Word& u);
std::vector<PkSk> pk_sk_all(const SadicSystem& sys, std::size_t K);
PkSk pk_sk(const SadicSystem& sys, std::size_t k);

bool is_root(const Word& v, const Word& w);
std::size_t occurrences(const Word& w, const Word& v);
std::size_t hamming(const Word& a, const Word& b);

struct Decomposition {
  std::size_t offset = 0;   // start of the first full block
  std::vector<char> blocks; // 'V' / 'U'
  std::size_t head = 0;     // partial block before offset
  std::size_t tail = 0;     // partial block after the last full block
};

// Parse starting exactly at a known block boundary.
Decomposition parse_from(const Word& w, const Word& v, const Word& u, std::size_t start);
// Interior parse with unknown offset.
Decomposition decompose(const Word& w, const Word& v, const Word& u);
Decomposition decompose(const Word& w, const SadicSystem& sys, std::size_t level);

// Ordered pairs (a, b) of level-k blocks (false = v_k, true = u_k) that
// occur consecutively, determined by τ_k.
std::vector<std::pair<bool, bool>> block_pairs(const TauParams& t);

// Membership of a finite word in the language of X.
bool in_language(const SadicSystem& sys, const Word& w);

}  // namespace sadic
