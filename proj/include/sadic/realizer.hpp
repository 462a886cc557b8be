#pragma once

#include "sadic/complexity.hpp"
#include "sadic/spectrum.hpp"

#include <map>
#include <string>
#include <vector>

namespace sadic {

struct TargetSpec {
  std::vector<unsigned long> odometer;  // y_0, y_1, ... (primes or 1)
  bool odometer_repeat = false;         // repeat the list forever
  std::map<unsigned long, ExtNat> nil;  // x_p, absent primes are 0
  Rat delta = 0;

  unsigned long y(std::size_t j) const;
  bool odometer_finite() const;
  bool nil_finite() const;  // every x_p finite (support is finite by construction)
  Int odometer_order() const;  // product of the y's, finite odometers only
  Int nil_order() const;       // Π p^{x_p}, finite nilmanifold exponents only
  void validate() const;
  std::string str() const;
};

enum class Regime { A, B, C };
const char* regime_name(Regime r);
Regime classify(const TargetSpec& t);

enum class RegimeBVariant { corrected, direct };

struct Realization {
  SadicSystem sys;
  Regime regime = Regime::A;
  std::size_t stages = 0;
  std::vector<Int> g;        // bookkept gcd(|v_k|, |v_{k+1}|), k = 0..stages-1
  std::vector<Int> s;        // nilmanifold factors (regime A) or odometer blocks (regime B)
  std::vector<Int> t;        // regime A: t_0 .. t_stages
  std::vector<Int> m_prime;  // regime A: m'_k for k >= 1 (index k)
  std::vector<Int> lengths;  // bookkept |v_0| .. |v_stages|
};

Realization realize(const TargetSpec& target, std::size_t stages,
                    RegimeBVariant variant = RegimeBVariant::corrected);

struct RealizationCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct RealizationReport {
  std::vector<RealizationCheck> checks;  // odometer, nilmanifold, limsup, constraints
  Rat limsup;
  Rat lower_bound, upper_bound;  // analytic bounds at the last tail level
  bool pass() const;
};

RealizationReport verify_realization(const SadicSystem& sys, const TargetSpec& target, std::size_t K,
                                     const Rat& tol);

}  // namespace sadic
