#include "doctest.h"

#include "sadic/balance.hpp"
#include "sadic/examples.hpp"

#include <cmath>
#include <set>

using namespace sadic;

namespace {

std::vector<SadicSystem> fixtures() {
  return {example_1_2(), example_1_3(), example_1_4(), repeated_tau(2, 3, 0), repeated_tau(4, 5, 0),
          repeated_tau(1, 2, 0), repeated_tau(3, 4, 2)};
}

const Rat tiny = ratio(Int(1), ipow(Int(10), 40));

IncidenceMatrix square(std::vector<std::vector<long>> rows) {
  IncidenceMatrix M;
  M.rows = M.cols = std::string("01").substr(0, rows.size());
  for (auto& r : rows) {
    M.counts.emplace_back();
    for (long x : r) M.counts.back().push_back(Int(x));
  }
  return M;
}

Word letter(const SadicSystem& sys, std::size_t i) { return Word(1, incidence(sys.pi()).rows[i]); }

}  // namespace

TEST_CASE("incidence matrices") {
  auto M = incidence(build_tau({3, 5, 0}));
  CHECK(M.counts == std::vector<std::vector<Int>>{{2, 4}, {1, 1}});
  auto I = incidence(identity_substitution("01"));
  CHECK(I.counts == std::vector<std::vector<Int>>{{1, 0}, {0, 1}});
  CHECK(incidence(build_tau({1, 2, 0})).counts == std::vector<std::vector<Int>>{{0, 1}, {1, 1}});
  for (const TauParams& t : {TauParams{3, 5, 0}, TauParams{7, 9, 1}, TauParams{4, 6, 2}}) {
    auto s = build_tau(t);
    auto cs = incidence(s).column_sums();
    CHECK(cs[0] == Int(static_cast<unsigned long>(s('0').size())));
    CHECK(cs[1] == Int(static_cast<unsigned long>(s('1').size())));
  }
}

TEST_CASE("column identity for M_{-1} M_0 ... M_{k-1}") {
  for (const auto& sys : fixtures()) {
    for (std::size_t k = 0; k <= 5; ++k) {
      auto bp = words_uk_vk(sys, k, 1 << 22);
      if (!bp.materialized()) break;
      auto N = block_counts(sys, k);
      for (std::size_t c = 0; c < N.rows.size(); ++c) {
        Word a(1, N.rows[c]);
        CHECK(N.counts[c][0] == Int(static_cast<unsigned long>(occurrences(*bp.v, a))));
        CHECK(N.counts[c][1] == Int(static_cast<unsigned long>(occurrences(*bp.u, a))));
      }
    }
  }
}

TEST_CASE("Perron enclosures") {
  auto kappa = positive_root(1, -3, -2, tiny);  // (3 + √17)/2
  for (const Rat& tol : {Rat(1, 100), Rat(1, 1000000), Rat(1, 1000000000), ratio(Int(1), ipow(Int(10), 20))}) {
    auto P = perron(square({{2, 4}, {1, 1}}), tol);
    CHECK(P.value.overlaps(kappa));
    CHECK(P.value.lo <= kappa.lo);
    CHECK(kappa.hi <= P.value.hi);
    CHECK(P.value.width() <= tol);
  }
  auto phi = positive_root(1, -1, -1, tiny);
  CHECK(perron(square({{1, 1}, {1, 0}}), Rat(1, 1000000000)).value.overlaps(phi));
  CHECK_THROWS_AS(perron(square({{1, 0}, {0, 1}}), Rat(1, 100)), Error);
  CHECK_FALSE(primitive(square({{0, 1}, {1, 0}})));
  CHECK(primitive(square({{0, 1}, {1, 1}})));
}

TEST_CASE("letter frequencies") {
  auto f = letter_frequency(example_1_2(), 25);
  CHECK(f.g_minus2[1] == 1);
  CHECK(f.g_minus1[1] == 0);
  CHECK(f.freq[1] == alpha_enclosure(example_1_2(), 25));
  CHECK(f.freq[1].overlaps(Interval(Rat(2807, 10000), Rat(2809, 10000))));
  // a seed whose v_0 carries no 1
  auto g = letter_frequency(SadicSystem::repeated("00", "001", {3, 5, 0}), 10);
  CHECK(g.g_minus1[1] == 0);
  CHECK(g.g_minus2[1] == 1);

  for (const auto& sys : fixtures()) {
    auto lf = letter_frequency(sys, 30);
    Interval total(Rat(0), Rat(0));
    for (const auto& I : lf.freq) total = total + I;
    CHECK(total.lo <= 1);
    CHECK(total.hi >= 1);
    // |v_K|_c / |v_K| is a convergent of the depth K-1 enclosure
    for (std::size_t K = 6; K <= 12; ++K) {
      auto N = block_counts(sys, K);
      auto col = N.column_sums();
      auto fK = letter_frequency(sys, K - 1);
      for (std::size_t c = 0; c < N.rows.size(); ++c) {
        Rat x = ratio(N.counts[c][0], col[0]);
        CHECK(fK.freq[c].contains(Interval(x, x)));
      }
    }
  }
}

TEST_CASE("balance series") {
  auto s = balance_series(example_1_2(), 20);
  CHECK(s.bound_ok);
  CHECK(s.C == 1);
  // 2/κ = 4/(3 + √17)
  CHECK(std::abs(s.rate_fit - 4 / (3 + std::sqrt(17.0))) < 1e-3);
  auto g = balance_series(repeated_tau(1, 2, 0), 20);
  CHECK(std::abs(g.rate_fit - (std::sqrt(5.0) - 1) / 2) < 1e-3);

  for (const auto& sys : fixtures()) {
    if (!check_constraints(sys, 20).pass) continue;
    auto b = balance_series(sys, 20);
    CHECK(b.bound_ok);
    for (std::size_t k = 0; k <= 20; ++k) CHECK(b.term_lo[k] <= b.term_hi[k]);
    // geometric envelope over four levels
    CHECK(b.rate_fit < 1);
    for (std::size_t k = 4; k + 4 <= 20; ++k) CHECK(b.term_hi[k + 4] < b.term_hi[k] / 2);
  }
}

TEST_CASE("empirical balance") {
  auto sys = example_1_2();
  std::vector<std::size_t> disc;
  for (std::size_t L : {500, 5000, 50000}) {
    auto e = empirical_balance(sys, "1", L, 1000000);
    CHECK(e.windows == 1000000 - L + 1);
    disc.push_back(e.discrepancy());
  }
  for (auto d : disc) CHECK(d <= 3);
  CHECK(empirical_balance(sys, "0010000", 5000, 1000000).discrepancy() <= 4);
  CHECK(empirical_balance(sys, "11", 5000, 100000).discrepancy() == 0);
  auto x = generated_prefix(sys, 100);
  CHECK(empirical_balance(sys, x.substr(0, 40), 40, 100000).discrepancy() <= 1);
  CHECK_THROWS_AS(empirical_balance(sys, "1", 5000, 6000), Error);
}

TEST_CASE("cylinder measures") {
  auto sys = example_1_2();
  auto one = measure_cylinder(sys, "1", 25);
  CHECK(one.value.overlaps(letter_frequency(sys, 25).freq[1]));
  CHECK(one.value.overlaps(Interval(Rat(2807, 10000), Rat(2809, 10000))));
  CHECK(measure_cylinder(sys, "", 10).value == Interval(Rat(1), Rat(1)));
  CHECK_THROWS_AS(measure_cylinder(sys, "11", 10), Error);
  // every 1 is followed by 00, so [1] = [10] = [100]
  auto ten = measure_cylinder(sys, "10", 25), hundred = measure_cylinder(sys, "100", 25);
  CHECK(ten.value.overlaps(one.value));
  CHECK(hundred.value.overlaps(one.value));
  CHECK(ten.cross_v + ten.cross_u > 0);

  for (const auto& s : fixtures()) {
    auto x = generated_prefix(s, 4000);
    for (std::size_t q = 1; q <= 6; ++q) {
      std::set<Word> ws;
      for (std::size_t i = 0; i + q <= x.size(); ++i) ws.insert(x.substr(i, q));
      Interval total(Rat(0), Rat(0));
      for (const auto& w : ws) {
        auto m = measure_cylinder(s, w, 30);
        CHECK(m.value.lo > 0);
        total = total + m.value;
      }
      INFO("q = " << q);
      CHECK(total.lo <= 1);
      CHECK(total.hi >= 1);
    }
  }
}

TEST_CASE("cylinder measures against long-block frequencies") {
  for (const auto& s : fixtures()) {
    auto bp = words_uk_vk(s, 7, 1 << 24);
    if (!bp.materialized()) continue;
    const Word& v = *bp.v;
    for (const Word& w : {letter(s, 1), letter(s, 0) + letter(s, 1), letter(s, 0) + letter(s, 0) + letter(s, 0)}) {
      if (!in_language(s, w)) continue;
      auto m = measure_cylinder(s, w, 30);
      double emp = double(occurrences(v, w)) / double(v.size());
      CHECK(std::abs(to_double(m.value.mid()) - emp) < 20.0 / double(v.size()) * double(w.size()) + 1e-3);
    }
  }
}

TEST_CASE("cylinder measures lie in the eigenvalue group") {
  for (const auto& s : fixtures()) {
    if (!s.periodic_tail()) continue;
    auto d = descriptor(s, 20);
    auto alpha = alpha_enclosure(s, 30);
    auto x = generated_prefix(s, 2000);
    for (std::size_t q = 1; q <= 5; ++q) {
      std::set<Word> ws;
      for (std::size_t i = 0; i + q <= x.size(); ++i) ws.insert(x.substr(i, q));
      for (const auto& w : ws) {
        auto m = measure_cylinder(s, w, 30);
        CHECK(m.value.overlaps(m.q * alpha + m.r));
        CHECK(eigenvalue_membership(d, m.q, m.r) == Membership::member);
      }
    }
  }
}

TEST_CASE("dimension groups") {
  auto d2 = dimension_group(example_1_2(), 15), d3 = dimension_group(example_1_3(), 15);
  CHECK(d2.unit == 1);
  CHECK(orbit_equivalence(d2, d3).verdict == GroupComparison::different);
  CHECK(orbit_equivalence(d2, d2).verdict == GroupComparison::equal);
  CHECK(orbit_equivalence(d3, d3).verdict == GroupComparison::equal);
}
