#pragma once

#include "sadic/structure.hpp"

#include <map>
#include <optional>
#include <vector>

namespace sadic {

// c, e, d for k = -2..K, stored at index k + 2.
struct Convergents {
  std::size_t k0 = 0;
  std::vector<Int> c, e, d;
  bool identity_ok = false;  // e_{k+1}d_k - e_k d_{k+1} checked for every k

  const Int& at(const std::vector<Int>& xs, long k) const { return xs.at(static_cast<std::size_t>(k + 2)); }
  long last() const { return static_cast<long>(d.size()) - 3; }
};

Convergents convergents(const SadicSystem& sys, std::size_t k0, std::size_t K);
// (-1)^k |v_{k0-1}| a_{k0} ... a_{k0+k+1}
Int determinant_rhs(const DerivedSeqs& seqs, std::size_t k0, long k);

// Enclosure of α_{k0} from the last two convergents at depth K.
Interval alpha_k_enclosure(const SadicSystem& sys, std::size_t k0, std::size_t K);
// α = a_0 α_1.
Interval alpha_enclosure(const SadicSystem& sys, std::size_t K);

struct Offset {
  Rat q;    // (-1)^k |v_k| / (|v_0| a_0 ... a_k)
  Rat rho;  // r_k / a_k
};

// α_{k+1} = q_k α + ρ_k for k = 0..K.
std::vector<Offset> eigenvalue_offsets(const SadicSystem& sys, std::size_t K);

struct OffsetCheck {
  std::size_t k;
  bool contained;
  std::size_t alpha_depth;  // depth of the α enclosure that was needed
};

// Containment of q_k[α] + ρ_k in the depth-K α_{k+1} enclosure, k = 0..kmax.
std::vector<OffsetCheck> offset_consistency(const SadicSystem& sys, std::size_t kmax, std::size_t K = 8);

using ExponentMap = std::map<unsigned long, ExtNat>;

struct GroupExponents {
  ExponentMap L, R;
  bool exact = false;  // periodic-tail classification was used
  std::vector<unsigned long> primes;
  // primes outside the map have exponent 0; certified only when exact
  ExtNat get_L(unsigned long p) const;
  ExtNat get_R(unsigned long p) const;
};

GroupExponents group_exponents(const SadicSystem& sys, std::size_t K);

// Negative-power part of the p-adic expansion, in [0, 1).
Rat p_adic_frac(const Rat& q, unsigned long p);

// Length data that determines E_X once the τ parameters repeat.
struct TailSignature {
  Int v_minus1, v0;
  std::vector<Int> a, b;  // up to the first level of the repeating tail
  bool operator==(const TailSignature&) const = default;
};

std::optional<TailSignature> tail_signature(const SadicSystem& sys);

struct EigenvalueGroupDescriptor {
  Interval alpha;
  std::optional<TailSignature> tail;
  GroupExponents exponents;
  std::vector<Offset> offsets;
  std::size_t depth = 0;
};

EigenvalueGroupDescriptor descriptor(const SadicSystem& sys, std::size_t K);

enum class Membership { member, non_member, unknown_at_depth };
const char* membership_name(Membership m);

// Is qα + Σ{q e_p}_p + r in E_X, up to what the depth-K data can certify.
Membership eigenvalue_membership(const EigenvalueGroupDescriptor& desc, const Rat& q, const Rat& r);

// Rational of least denominator in a closed interval.
Rat simplest_rational(const Interval& I);

}  // namespace sadic
