#pragma once

#include "sadic/word.hpp"

#include <string>
#include <vector>

namespace sadic {

struct DerivedSeqs {
  std::vector<TauParams> params;  // levels 0..K
  std::vector<Int> a;             // a_0..a_K
  std::vector<Int> b;             // b_0..b_K
  Int v_minus1;                   // |u_0| - |v_0|
  std::vector<Int> v;             // |v_0|..|v_{K+1}|
  std::vector<Rat> beta;          // β_0..β_{K-1}
  std::vector<Rat> beta_prod;     // Π_{j<k} β_j for k = 0..K
};

DerivedSeqs derive_ab(const SadicSystem& sys, std::size_t K);

// |v_0|..|v_K| from the two-term recursion seeded with |v_{-1}|.
std::vector<Int> lengths(const SadicSystem& sys, std::size_t K);

struct BetaPair {
  Rat by_definition;
  Rat by_recursion;
};

BetaPair beta(const DerivedSeqs& seqs, std::size_t k);

struct DecayReport {
  std::vector<Rat> eps;         // ε_k, k = 0..K
  double kappa_fit = 0;         // geometric rate of Π β_j
  double C_fit = 0;             // smallest C with Π β_j <= C κ^k on the range
  bool summable = false;        // κ_fit < 1
  bool envelope_ok = false;     // every product of four consecutive β (k >= 2) is < 1
  bool certified = false;       // constraints hold on the same range
};

DecayReport decay_report(const SadicSystem& sys, const DerivedSeqs& seqs, std::size_t K);

struct Verdict {
  std::size_t k;
  std::string rule;   // "svp", "rk", "a2", or "unchecked-by-theory"
  bool ok;
  std::string label;  // case label or the failed inequality
};

struct ConstraintReport {
  std::vector<Verdict> verdicts;
  bool pass = true;
  std::string status() const { return pass ? "necessary-conditions-hold" : "violated"; }
};

ConstraintReport check_constraints(const SadicSystem& sys, std::size_t K);

struct MeanApReport {
  std::size_t k;
  std::size_t prefix_len;
  std::size_t mismatches;
  Rat density;
  Rat bound;       // 8|u_0||v_k|ε_k/|v_{k+1}|
  Rat bound_dvu;   // 8|u_0|2^{Σ_{j<k}1_r}Π_{j<k}(n_j-m_j)/|v_{k+1}|
  bool below() const { return density < bound; }
};

MeanApReport mean_ap_report(const SadicSystem& sys, std::size_t k, std::size_t prefix_len);

// Right side of the Hamming bound for d(v_k u_k, u_k v_k), taken from the
// first level whose v block is a proper suffix of its u block.
struct DvuBound {
  std::size_t anchor;  // 0 or 1
  Int bound;
};

DvuBound dvu_bound(const SadicSystem& sys, std::size_t k);

}  // namespace sadic
