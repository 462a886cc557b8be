#pragma once

#include "sadic/word.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sadic {

// Exact factor sets L_q(X) for q <= q_max.
struct LanguageSample {
  std::size_t q_max = 0;
  std::vector<std::vector<Word>> factors;  // factors[q], sorted
  std::size_t source_depth = 0;
  bool stabilized = false;
  std::string alphabet;
};

// Factors of length q_max come from the block pairs that occur at the
// first level k with |v_k| + 1 >= q_max; shorter factors are their prefixes.
// The pair set at level k+1 is compared as a stabilisation certificate.
LanguageSample sample_language(const SadicSystem& sys, std::size_t q_max);

// Factors of the bi-infinite periodic word ...www...
LanguageSample sample_from_cyclic_word(const Word& w, std::size_t q_max);

std::size_t complexity(const LanguageSample& s, std::size_t q);

struct Special {
  Word w;
  std::string ext;  // F(w) for right-special, preceding letters for left-special
};

std::vector<Special> right_special(const LanguageSample& s, std::size_t q);
std::vector<Special> left_special(const LanguageSample& s, std::size_t q);

struct RauzyGraph {
  std::vector<Word> vertices;
  struct Edge {
    std::size_t from, to;
    Word label;  // the length n+1 factor
  };
  std::vector<Edge> edges;
  std::vector<std::size_t> out_degree() const;
};

RauzyGraph rauzy_graph(const LanguageSample& s, std::size_t n);

// Per-level special-length data: lengths of s_k, p_k, v_k, u_k.
struct LevelData {
  TauParams t;
  Int v, u, s, p;
  Int sum_nm;  // Σ_{j<k} (n_j - m_j - 1)|v_j|
  Int sum_r;   // Σ_{j<k} 1_{r_j}((r_j - 1)|v_j| + |u_j|)
};

// Levels 0..K-1.
std::vector<LevelData> level_data(const SadicSystem& sys, std::size_t K);

struct IncrementInterval {
  std::size_t k;
  bool r_type;
  Int lo, hi;  // (lo, hi]
};

// All increment-formula intervals whose left endpoint is below qbound.
std::vector<IncrementInterval> increment_intervals(const SadicSystem& sys, const Int& qbound);

// 1 + number of intervals containing q; requires q > |s_0|.
std::size_t predicted_increment(const SadicSystem& sys, std::size_t q);
std::vector<std::size_t> predicted_increments(const SadicSystem& sys, std::size_t q_max);

struct SpecialLength {
  std::size_t k;
  bool r_type;
  Int q;
  Int p;
};

// Both displayed formulas at level k (the second only when r_k > 0).
std::vector<SpecialLength> special_length_complexity(const SadicSystem& sys, std::size_t k, const Int& C);

struct Calibration {
  Int C;          // makes the k = 0 formula agree with brute force
  Int C_seed;     // p(|s_0|) - |s_0|
  std::size_t q0;
};

Calibration calibrate_C(const SadicSystem& sys);

struct LimsupEstimate {
  Rat estimate;     // max of p(q_k)/q_k over the tail window of levels
  Rat global_max;   // max over all levels <= K
  std::size_t window_start = 0;
  std::vector<SpecialLength> values;
  std::optional<double> closed_form;  // period-one tails only
  Int C;
};

LimsupEstimate limsup_estimate(const SadicSystem& sys, std::size_t K);

// Limit of p(q_k)/q_k for a system whose parameters repeat one triple.
double closed_form_limsup(const TauParams& t);

struct SeedDetection {
  Word v, u, witness;
  std::size_t q;
};

SeedDetection detect_seed(const LanguageSample& s);

struct LevelInference {
  TauParams params;
  std::vector<char> next_blocks;
  std::vector<std::size_t> gaps;  // the sorted set S
};

LevelInference infer_level(const std::vector<char>& blocks);

}  // namespace sadic
