#include "doctest.h"

#include "sadic/realizer.hpp"
#include "sadic/structure.hpp"

using namespace sadic;

namespace {

TargetSpec binary_odometer() {
  TargetSpec t;
  t.odometer = {2};
  t.odometer_repeat = true;
  t.delta = Rat(1, 4);
  return t;
}

TargetSpec free_two() {
  TargetSpec t;
  t.nil[2] = ExtNat::inf();
  t.delta = Rat(1, 4);
  return t;
}

TargetSpec cyclic_three() {
  TargetSpec t;
  t.odometer = {3};
  return t;
}

std::vector<Int> derived_gcds(const SadicSystem& sys, std::size_t K) {
  auto d = derive_ab(sys, K);
  std::vector<Int> g;
  for (std::size_t k = 0; k < K; ++k) g.push_back(gcd(d.v[k], d.v[k + 1]));
  return g;
}

}  // namespace

TEST_CASE("target validation and classification") {
  CHECK(classify(free_two()) == Regime::A);
  CHECK(classify(binary_odometer()) == Regime::B);
  CHECK(classify(cyclic_three()) == Regime::C);
  TargetSpec bad = cyclic_three();
  bad.delta = Rat(1, 4);
  CHECK_THROWS_AS(bad.validate(), Error);
  TargetSpec big = free_two();
  big.delta = Rat(1, 2);
  CHECK_THROWS_AS(big.validate(), Error);
  TargetSpec comp = binary_odometer();
  comp.odometer = {4};
  CHECK_THROWS_AS(comp.validate(), Error);
  CHECK(binary_odometer().y(17) == 2);
  CHECK(cyclic_three().y(1) == 1);
  CHECK(cyclic_three().odometer_order() == 3);
}

TEST_CASE("regime A induction hypotheses") {
  std::vector<TargetSpec> targets{free_two()};
  TargetSpec mixed;
  mixed.odometer = {2, 3, 1, 5};
  mixed.odometer_repeat = true;
  mixed.nil[3] = ExtNat::inf();
  mixed.nil[2] = ExtNat::exact(3);
  mixed.delta = Rat(1, 3);
  targets.push_back(mixed);
  TargetSpec zero = free_two();
  zero.delta = 0;
  targets.push_back(zero);

  for (const auto& tg : targets) {
    auto R = realize(tg, 10);
    REQUIRE(R.regime == Regime::A);
    const auto& l = R.lengths;
    CHECK(l.size() == 11);
    auto derived = lengths(R.sys, 10);
    CHECK(derived == l);
    for (std::size_t k = 1; k + 1 <= 10; ++k) {
      const Int& t = R.t[k + 1];
      Int gk = R.g[k], gk1 = gk * t;
      CHECK(divides(t, l[k + 1] / gk));
      CHECK(gcd(l[k + 1], l[k]) == gk);
      const Int& m = R.sys.taus[k].m;
      CHECK(m < R.m_prime[k]);
      CHECK(m >= R.m_prime[k] - 2 * t);
      CHECK(R.sys.taus[k].n - m == t * R.s[k]);
      auto ps = prime_factors(R.s[k]);
      REQUIRE(ps.size() == 1);
      CHECK_FALSE(divides(Int(ps[0]), l[k + 1] / gk1));
    }
    CHECK(derived_gcds(R.sys, 10) == R.g);
  }

  // finite budgets are spent exactly
  auto R = realize(targets[1], 12);
  unsigned long e2 = 0;
  for (const auto& s : R.s) e2 += valuation(s, 2);
  CHECK(e2 == 3);
}

TEST_CASE("regime B bookkeeping matches the gcd chain") {
  TargetSpec mixed;
  mixed.odometer = {2, 3, 5};
  mixed.odometer_repeat = true;
  mixed.delta = Rat(1, 4);
  TargetSpec withq = mixed;
  withq.odometer = {3};
  withq.nil[2] = ExtNat::exact(1);
  TargetSpec zero = binary_odometer();
  zero.delta = 0;
  for (const auto& tg : {binary_odometer(), mixed, withq, zero}) {
    auto R = realize(tg, 7);
    REQUIRE(R.regime == Regime::B);
    CHECK(derived_gcds(R.sys, 7) == R.g);
    CHECK(lengths(R.sys, 7) == R.lengths);
  }
  // binary odometer: the moduli are powers of two and strictly grow
  auto R = realize(binary_odometer(), 8);
  for (std::size_t k = 0; k + 1 < R.g.size(); ++k) {
    CHECK(R.g[k] < R.g[k + 1]);
    CHECK(prime_factors(R.g[k + 1]) == std::vector<unsigned long>{2});
  }
}

TEST_CASE("direct regime B loses the gcd chain") {
  auto R = realize(binary_odometer(), 6, RegimeBVariant::direct);
  auto g = derived_gcds(R.sys, 6);
  CHECK(g != R.g);
}

TEST_CASE("regime C") {
  auto R = realize(cyclic_three(), 12);
  CHECK(R.sys.v0 == "000");
  CHECK(R.sys.u0 == "000111");
  for (const auto& g : derived_gcds(R.sys, 12)) CHECK(g == 3);
  TargetSpec qr;
  qr.odometer = {5};
  qr.nil[2] = ExtNat::exact(2);
  auto S = realize(qr, 8);
  for (const auto& g : derived_gcds(S.sys, 8)) CHECK(g == 5);
}

TEST_CASE("end-to-end verification") {
  for (const auto& tg : {binary_odometer(), free_two(), cyclic_three()}) {
    auto R = realize(tg, 8);
    auto rep = verify_realization(R.sys, tg, 8, Rat(1, 20));
    for (const auto& c : rep.checks) {
      INFO(tg.str() << " " << c.name << ": " << c.detail);
      CHECK(c.ok);
    }
    CHECK(rep.pass());
  }
  // the analytic bounds bracket the estimate in regime A
  auto R = realize(free_two(), 8);
  auto rep = verify_realization(R.sys, free_two(), 8, Rat(1, 20));
  CHECK(rep.lower_bound <= Rat(5, 4) + Rat(1, 20));
  CHECK(rep.upper_bound >= Rat(5, 4) - Rat(1, 20));
}

TEST_CASE("negative control") {
  for (const auto& tg : {binary_odometer(), free_two(), cyclic_three()}) {
    auto R = realize(tg, 8);
    SadicSystem bad = R.sys;
    bad.taus[6].n += bad.taus[6].m;
    auto rep = verify_realization(bad, tg, 8, Rat(1, 20));
    CHECK_FALSE(rep.pass());
  }
}
