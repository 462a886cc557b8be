#include "doctest.h"

#include "sadic/examples.hpp"
#include "sadic/structure.hpp"

#include <cmath>

using namespace sadic;

namespace {

std::vector<SadicSystem> fixtures() {
  return {example_1_2(), example_1_3(), example_1_4(), repeated_tau(2, 3, 0), repeated_tau(4, 5, 0),
          repeated_tau(1, 2, 0), repeated_tau(3, 4, 2), SadicSystem::repeated("001", "00001", {2, 4, 1})};
}

}  // namespace

TEST_CASE("derive_ab examples") {
  auto d2 = derive_ab(example_1_2(), 10);
  CHECK(d2.a[0] == 1);
  for (std::size_t k = 1; k <= 10; ++k) CHECK(d2.a[k] == 2);
  for (std::size_t k = 0; k <= 10; ++k) CHECK(d2.b[k] == 3);
  auto d3 = derive_ab(example_1_3(), 10);
  for (std::size_t k = 1; k <= 10; ++k) CHECK(d3.a[k] == 4);
  for (std::size_t k = 0; k <= 10; ++k) CHECK(d3.b[k] == 8);
  auto d1 = derive_ab(repeated_tau(1, 2, 0), 10);
  for (std::size_t k = 1; k <= 10; ++k) {
    CHECK(d1.a[k] == 1);
    CHECK(d1.b[k] == 1);
  }
}

TEST_CASE("lengths") {
  CHECK(lengths(example_1_2(), 4) == std::vector<Int>{1, 3, 11, 39, 139});
  // direct expansion gives 8·8 + 4·1
  CHECK(lengths(example_1_3(), 2) == std::vector<Int>{1, 8, 68});
  CHECK(words_uk_vk(example_1_3(), 2).v->size() == 68);
  for (const auto& sys : fixtures()) {
    auto L = lengths(sys, 20);
    auto B = block_lengths(sys, 20);
    CHECK(L == B.v);
    auto P = sys.params(1);
    Int direct = (P[0].m - 1) * Int(sys.v0.size()) + Int(sys.u0.size());
    if (P[0].has_r()) direct += (P[0].r - 1) * Int(sys.v0.size()) + Int(sys.u0.size());
    CHECK(L[1] == direct);
  }
}

TEST_CASE("beta recursion and product identity") {
  auto d = derive_ab(example_1_2(), 12);
  CHECK(d.beta[0] == Rat(2, 3));
  CHECK(d.beta[1] == Rat(6, 11));
  CHECK(beta(d, 1).by_recursion == Rat(6, 11));
  for (const auto& sys : fixtures()) {
    auto s = derive_ab(sys, 30);
    Int aprod = 1;
    for (std::size_t k = 0; k < 30; ++k) {
      auto bp = beta(s, k);
      CHECK(bp.by_definition == bp.by_recursion);
      CHECK(bp.by_definition > 0);
      // Π_{j<k} a_{j+1} = (|v_k|/|v_0|) Π_{j<k} β_j
      CHECK(Rat(aprod) == ratio(s.v[k], s.v[0]) * s.beta_prod[k]);
      aprod *= s.a[k + 1];
    }
  }
}

TEST_CASE("gcd divisibility chain") {
  for (const auto& sys : fixtures()) {
    auto s = derive_ab(sys, 30);
    Int prod = s.v[0];
    for (std::size_t k = 0; k < 30; ++k) {
      prod *= s.a[k];
      Int g = gcd(s.v[k], s.v[k + 1]);
      CHECK(divides(g, prod));
      CHECK(divides(g, gcd(s.v[k + 1], s.v[k + 2])));
    }
  }
}

TEST_CASE("decay report") {
  auto sys = example_1_2();
  auto d = derive_ab(sys, 20);
  auto r = decay_report(sys, d, 20);
  for (std::size_t k = 0; k <= 20; ++k) CHECK(r.eps[k] == ratio(ipow(2, k), d.v[k]));
  double kappa = (3 + std::sqrt(17.0)) / 2;
  CHECK(std::fabs(to_double(r.eps[20] / r.eps[19]) - 2 / kappa) < 1e-6);
  CHECK(r.summable);
  CHECK(r.envelope_ok);
  CHECK(r.certified);

  auto fib = repeated_tau(1, 2, 0);
  auto df = derive_ab(fib, 20);
  auto rf = decay_report(fib, df, 20);
  double phi = (1 + std::sqrt(5.0)) / 2;
  for (std::size_t k = 0; k <= 20; ++k) CHECK(rf.eps[k] == ratio(Int(1), df.v[k]));
  CHECK(std::fabs(to_double(rf.eps[20] / rf.eps[19]) - 1 / phi) < 1e-6);

  auto bad = repeated_tau(1, 3, 0);
  auto db = derive_ab(bad, 12);
  auto rb = decay_report(bad, db, 12);
  CHECK_FALSE(rb.certified);
  CHECK(rb.eps.size() == 13);
}

TEST_CASE("check_constraints") {
  auto ok = check_constraints(repeated_tau(3, 5, 0), 10);
  CHECK(ok.pass);
  CHECK(ok.status() == "necessary-conditions-hold");
  CHECK(ok.verdicts[0].rule == "unchecked-by-theory");

  auto bad = check_constraints(repeated_tau(1, 3, 0), 10);
  CHECK_FALSE(bad.pass);
  std::size_t svp_fail = 0;
  for (const auto& v : bad.verdicts)
    if (v.rule == "svp") {
      CHECK_FALSE(v.ok);
      ++svp_fail;
    }
  CHECK(svp_fail == 8);

  auto r = check_constraints(repeated_tau(7, 9, 1), 10);
  CHECK(r.pass);
  bool saw = false;
  for (const auto& v : r.verdicts)
    if (v.rule == "rk") {
      CHECK(v.label == "rk(i)");
      saw = true;
    }
  CHECK(saw);

  // svp(i): n_k = 2m_k + 2 preceded by n = m + 1
  SadicSystem s;
  s.v0 = "0";
  s.u0 = "1";
  s.taus = {{3, 4, 0}, {3, 4, 0}, {3, 8, 0}, {3, 4, 0}, {3, 4, 0}};
  auto ri = check_constraints(s, 4);
  CHECK(ri.pass);
  bool found = false;
  for (const auto& v : ri.verdicts) found = found || v.label == "svp(i)";
  CHECK(found);
  CHECK_THROWS_AS(check_constraints(s, 1), Error);
}

TEST_CASE("dvu bound from the anchor level") {
  for (const auto& sys : fixtures()) {
    for (std::size_t k = dvu_bound(sys, 1).anchor; k <= 8; ++k) {
      auto bp = words_uk_vk(sys, k, 1 << 24);
      if (!bp.materialized()) break;
      Int d = static_cast<unsigned long>(hamming(*bp.v + *bp.u, *bp.u + *bp.v));
      CHECK(d < dvu_bound(sys, k).bound);
    }
  }
  // Example 1.4 has a canonical-length seed but v_0 = a is not a suffix of ab
  CHECK(dvu_bound(example_1_4(), 3).anchor == 1);
  CHECK(dvu_bound(SadicSystem::repeated("0", "10", {3, 5, 0}), 2).anchor == 0);
}

TEST_CASE("mean almost periodicity") {
  auto sys = example_1_2();
  for (std::size_t k = 0; k <= 5; ++k) {
    auto r = mean_ap_report(sys, k, 100000);
    INFO("k = " << k << " density " << to_double(r.density) << " bound " << to_double(r.bound));
    CHECK(r.below());
    CHECK(r.density <= r.bound_dvu);
  }
  CHECK_THROWS_AS(mean_ap_report(sys, 5, 1000), Error);
  // a shift by a full period of a periodic word never differs
  Word per;
  for (int i = 0; i < 100; ++i) per += "00101";
  std::size_t diff = 0;
  for (std::size_t t = 0; t + 5 < per.size(); ++t) diff += per[t] != per[t + 5];
  CHECK(diff == 0);
}
