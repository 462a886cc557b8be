#pragma once

#include "sadic/spectrum.hpp"

#include <map>
#include <string>
#include <vector>

namespace sadic {

struct OdometerDescriptor {
  std::vector<Int> moduli;  // g_k = gcd(|v_k|, |v_{k+1}|), k = 0..K
  bool exact = false;       // periodic-tail classification available
  bool finite = false;      // chain stabilises (exact mode only)
  ExponentMap exponents;    // R map
  std::string label() const;
};

struct NilmanifoldDescriptor {
  ExponentMap exponents;  // L map
  bool exact = false;
  Interval alpha;
  std::vector<Offset> offsets;
  std::string label() const;
};

struct MEFDescriptor {
  OdometerDescriptor odometer;
  NilmanifoldDescriptor nilmanifold;
  std::size_t depth = 0;
  bool certified = false;  // constraints hold up to depth
  std::string label() const;
};

MEFDescriptor mef(const SadicSystem& sys, std::size_t K);

struct OdometerPoint {
  std::vector<Int> moduli;
  std::vector<Int> residues;
  bool coherent() const;
};

OdometerPoint odometer_zero(const std::vector<Int>& moduli);
OdometerPoint odometer_step(const OdometerPoint& pt, const Int& n);

// Angle qθ + Σ_p {q z_p}_p mod 1, with z_p known mod p^precision.
Interval character_eval(const Interval& theta, const std::map<unsigned long, Int>& z, const Rat& q,
                        unsigned long precision);

struct LevelOrbitCheck {
  std::size_t k = 0;
  std::size_t transitions = 0;    // level-k blocks examined
  std::size_t decomposed = 0;     // transitions matching p|v_k| + p'|v_{k-1}|
  std::size_t max_p = 0;
  bool cauchy_ok = true;          // |f_k - f_{k+1}| <= 2π(<α p|v_k|> + <α p'|v_{k-1}|>)
  double sup_diff = 0;            // max over the prefix of |f_k - f_{k+1}|
  double eps_bound = 0;           // analytic bound for that sup (0 when not applicable)
  bool eps_applicable = false;
  bool eps_ok = true;
};

struct FactorOrbitReport {
  std::size_t k0 = 0, prefix_len = 0, K = 0;
  bool increments_ok = true;  // j(·,k) grows by one off block starts
  bool nesting_ok = true;     // level-(k+1) starts are level-k starts
  std::vector<LevelOrbitCheck> levels;
  bool all_ok() const;
};

FactorOrbitReport factor_orbit_check(const SadicSystem& sys, std::size_t k0, std::size_t prefix_len, std::size_t K);

enum class GroupComparison { equal, different, unknown_at_depth };
const char* comparison_name(GroupComparison c);

struct ComparisonResult {
  GroupComparison verdict;
  std::string reason;
};

// Exponent-map based comparison; equality needs identical periodic-tail
// length data on both sides.
ComparisonResult compare_eigenvalue_groups(const EigenvalueGroupDescriptor& d1, const EigenvalueGroupDescriptor& d2);

}  // namespace sadic
