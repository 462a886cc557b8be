#include "doctest.h"

#include "sadic/examples.hpp"
#include "sadic/mef.hpp"

#include <random>

using namespace sadic;

TEST_CASE("odometer arithmetic") {
  OdometerPoint pt{{2, 4, 8}, {1, 3, 7}};
  CHECK(pt.coherent());
  auto nxt = odometer_step(pt, 1);
  CHECK(nxt.residues == std::vector<Int>{0, 0, 0});
  CHECK_FALSE((OdometerPoint{{2, 4, 8}, {1, 2, 7}}).coherent());
  CHECK_THROWS(odometer_step(OdometerPoint{{2, 4}, {0, 1}}, 1));

  // stepping n times equals one step by n
  auto z = odometer_zero({3, 6, 12, 36});
  auto w = z;
  for (int i = 0; i < 100; ++i) w = odometer_step(w, 1);
  CHECK(w.residues == odometer_step(z, 100).residues);
  CHECK(odometer_step(w, -100).residues == z.residues);
}

TEST_CASE("character evaluation") {
  Interval theta(Rat(0), Rat(0));
  auto c = character_eval(theta, {{2, 1}}, Rat(1, 2), 2);
  CHECK(c.lo == Rat(1, 2));
  CHECK(c.hi == Rat(1, 2));
  CHECK_THROWS_AS(character_eval(theta, {{2, 1}}, Rat(1, 8), 2), Error);

  // χ_q(x + y) = χ_q(x) + χ_q(y) mod 1 on exact points
  std::mt19937 rng(3);
  for (int it = 0; it < 200; ++it) {
    Rat q(static_cast<long>(rng() % 200) - 100, static_cast<long>(rng() % 48 + 1));
    q.canonicalize();
    Rat t1(static_cast<long>(rng() % 1000), 1009), t2(static_cast<long>(rng() % 1000), 1013);
    Int z1 = rng() % 1000000, z2 = rng() % 1000000;
    auto f = [&](const Rat& t, const Int& z) {
      return character_eval(Interval(t, t), {{2, z}, {3, z}}, q, 10).lo;
    };
    Rat lhs = character_eval(Interval(t1 + t2, t1 + t2), {{2, z1 + z2}, {3, z1 + z2}}, q, 10).lo;
    Rat rhs = f(t1, z1) + f(t2, z2);
    Rat d = lhs - rhs;
    d.canonicalize();
    CHECK(d.get_den() == 1);
  }
}

TEST_CASE("MEF descriptors of the examples") {
  auto m2 = mef(example_1_2(), 12);
  CHECK(m2.label() == "trivial odometer x M_{2}");
  CHECK(m2.odometer.finite);
  CHECK(m2.certified);
  auto m3 = mef(example_1_3(), 12);
  CHECK(m3.label() == "binary odometer x M_{2}");
  CHECK_FALSE(m3.odometer.finite);
  auto m4 = mef(example_1_4(), 12);
  CHECK(m4.label() == "binary odometer x S^1 (truncated)");

  for (auto sys : {example_1_2(), example_1_3(), example_1_4()}) {
    auto m = mef(sys, 10);
    auto ge = group_exponents(sys, 10);
    CHECK(m.nilmanifold.exponents == ge.L);
    CHECK(m.odometer.exponents == ge.R);
    for (std::size_t k = 0; k + 1 < m.odometer.moduli.size(); ++k)
      CHECK(divides(m.odometer.moduli[k], m.odometer.moduli[k + 1]));
  }
}

TEST_CASE("factor map orbit check on example 1.2") {
  auto rep = factor_orbit_check(example_1_2(), 1, 100000, 6);
  CHECK(rep.increments_ok);
  CHECK(rep.nesting_ok);
  CHECK(rep.levels.size() == 7);
  for (const auto& l : rep.levels) {
    INFO("k = " << l.k);
    CHECK(l.transitions > 0);
    CHECK(l.decomposed == l.transitions);
    CHECK(l.cauchy_ok);
    CHECK(l.eps_ok);
    if (l.k >= 2) CHECK(l.eps_applicable);
  }
  CHECK(rep.all_ok());
  // sup differences decay along the levels
  CHECK(rep.levels[6].sup_diff < rep.levels[2].sup_diff);
}

TEST_CASE("factor map orbit check on other systems") {
  for (auto sys : {example_1_3(), repeated_tau(2, 3, 0), repeated_tau(3, 4, 2)}) {
    auto rep = factor_orbit_check(sys, 1, 50000, 4);
    CHECK(rep.all_ok());
  }
}

TEST_CASE("eigenvalue group comparison") {
  auto d2 = descriptor(example_1_2(), 15), d3 = descriptor(example_1_3(), 15), d4 = descriptor(example_1_4(), 15);
  auto c23 = compare_eigenvalue_groups(d2, d3);
  CHECK(c23.verdict == GroupComparison::different);
  CHECK(c23.reason == "R(2): 0 vs inf");
  CHECK(compare_eigenvalue_groups(d2, d2).verdict == GroupComparison::equal);
  CHECK(compare_eigenvalue_groups(d3, d3).verdict == GroupComparison::equal);
  auto c24 = compare_eigenvalue_groups(d2, d4);
  CHECK(c24.verdict == GroupComparison::different);
  // a non-periodic system never compares equal to itself at finite depth
  CHECK(compare_eigenvalue_groups(d4, d4).verdict == GroupComparison::unknown_at_depth);
  CHECK(std::string(comparison_name(GroupComparison::unknown_at_depth)) == "unknown-at-depth");
}
