#pragma once

#include "sadic/mef.hpp"

#include <string>
#include <vector>

namespace sadic {

// counts[i][j] = occurrences of rows[i] in the image of cols[j]
struct IncidenceMatrix {
  std::string rows, cols;
  std::vector<std::vector<Int>> counts;

  Int max_entry() const;
  std::vector<Int> column_sums() const;
};

IncidenceMatrix incidence(const Substitution& s);
IncidenceMatrix multiply(const IncidenceMatrix& A, const IncidenceMatrix& B);
bool primitive(const IncidenceMatrix& M);

struct PerronEnclosure {
  Interval value;
  std::size_t iterations = 0;
};

// Collatz-Wielandt bounds on M^k 1.
PerronEnclosure perron(const IncidenceMatrix& M, const Rat& tol);

// Letter c has frequency g_{-2}(c) α + g_{-1}(c) α_0 with
// g_{-2}(c) = |u_0|_c - |v_0|_c, g_{-1}(c) = |v_0|_c.
struct LetterFrequency {
  std::string alphabet;
  std::vector<Int> g_minus2, g_minus1;
  std::vector<Rat> coef, shift;  // frequency = coef α + shift
  std::vector<Interval> freq;
};

LetterFrequency letter_frequency(const SadicSystem& sys, std::size_t K);

// Letter counts of v_k, u_k through M_{-1} M_0 ... M_{k-1}.
IncidenceMatrix block_counts(const SadicSystem& sys, std::size_t k);

struct BalanceSeries {
  std::vector<Rat> term_lo, term_hi;  // enclosure of each term
  std::vector<Rat> bound;             // 8 C ε_k
  std::vector<Rat> partial_hi;        // Σ_{j<=k} term_hi
  Rat C;
  double rate_fit = 0;  // geometric rate of the terms over the upper half of the range
  bool bound_ok = true;
};

BalanceSeries balance_series(const SadicSystem& sys, std::size_t K);

struct EmpiricalBalance {
  std::size_t window_length = 0;
  std::size_t windows = 0;
  std::size_t min_count = 0, max_count = 0;
  std::size_t discrepancy() const { return max_count - min_count; }
};

EmpiricalBalance empirical_balance(const SadicSystem& sys, const Word& v, std::size_t window_length,
                                   std::size_t prefix_len);

// μ([w]) = A α_k + B at a level k where all blocks share a suffix of
// length |w| - 1, and equivalently q α + r.
struct CylinderMeasure {
  Interval value;
  std::size_t level = 0;
  Int count_v, count_u;    // |v_k|_w and |u_k|_w
  Int cross_v, cross_u;    // occurrences across a boundary into v_k, u_k
  Rat q, r;
};

CylinderMeasure measure_cylinder(const SadicSystem& sys, const Word& w, std::size_t K);

struct DimensionGroupDescriptor {
  EigenvalueGroupDescriptor group;
  Rat unit = 1;
  std::string positive_cone = "E_X & R+";
};

DimensionGroupDescriptor dimension_group(const SadicSystem& sys, std::size_t K);

// Strong orbit equivalence reduces to equality of the groups.
ComparisonResult orbit_equivalence(const DimensionGroupDescriptor& a, const DimensionGroupDescriptor& b);

}  // namespace sadic
