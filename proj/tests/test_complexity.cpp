#include "doctest.h"

#include "sadic/complexity.hpp"
#include "sadic/examples.hpp"

#include <cmath>
#include <set>

using namespace sadic;

namespace {

// Brute force: distinct windows of a long generated prefix.
std::vector<std::size_t> brute_counts(const SadicSystem& sys, std::size_t q_max, std::size_t N) {
  Word x = generated_prefix(sys, N);
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q <= q_max; ++q) {
    std::set<std::string_view> seen;
    std::string_view sv(x);
    for (std::size_t i = 0; i + q <= sv.size(); ++i) seen.insert(sv.substr(i, q));
    out.push_back(seen.size());
  }
  return out;
}

std::vector<SadicSystem> fixtures() {
  return {example_1_2(), example_1_3(), repeated_tau(2, 3, 0), repeated_tau(4, 5, 0), example_1_4(),
          repeated_tau(1, 2, 0), repeated_tau(3, 4, 2)};
}

}  // namespace

TEST_CASE("sample_language on example 1.2") {
  auto s = sample_language(example_1_2(), 4);
  CHECK(s.stabilized);
  CHECK(s.factors[3] == std::vector<Word>{"000", "001", "010", "100"});
  CHECK(s.factors[1] == std::vector<Word>{"0", "1"});
  CHECK(s.factors[4] == std::vector<Word>{"0000", "0001", "0010", "0100", "1000", "1001"});
  CHECK(complexity(s, 0) == 1);
  CHECK(complexity(s, 3) == 4);
  CHECK(complexity(s, 4) == 6);
  CHECK_THROWS_AS(complexity(s, 5), Error);
}

TEST_CASE("sample_language agrees with brute force") {
  for (const auto& sys : fixtures()) {
    auto s = sample_language(sys, 60);
    auto b = brute_counts(sys, 60, 200000);
    CHECK(s.stabilized);
    for (std::size_t q = 0; q <= 60; ++q) CHECK(complexity(s, q) == b[q]);
    // prefix/suffix closure
    for (std::size_t q = 0; q < 60; ++q)
      for (const auto& w : s.factors[q + 1]) {
        CHECK(std::binary_search(s.factors[q].begin(), s.factors[q].end(), w.substr(1)));
        CHECK(std::binary_search(s.factors[q].begin(), s.factors[q].end(), w.substr(0, q)));
      }
  }
}

TEST_CASE("right/left special and Rauzy graphs") {
  auto s = sample_language(example_1_2(), 10);
  auto rs = right_special(s, 1);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].w == "0");
  CHECK(rs[0].ext == "01");
  auto r0 = right_special(s, 0);
  REQUIRE(r0.size() == 1);
  CHECK(r0[0].w.empty());

  auto g = rauzy_graph(s, 1);
  CHECK(g.vertices == std::vector<Word>{"0", "1"});
  CHECK(g.edges.size() == 3);
  CHECK(g.edges.size() == complexity(s, 2));
  auto g0 = rauzy_graph(s, 0);
  CHECK(g0.vertices.size() == 1);
  CHECK(g0.edges.size() == 2);
  for (std::size_t n = 0; n + 1 < 10; ++n) {
    auto gn = rauzy_graph(s, n);
    auto deg = gn.out_degree();
    std::set<Word> special;
    for (const auto& sp : right_special(s, n)) special.insert(sp.w);
    for (std::size_t i = 0; i < gn.vertices.size(); ++i)
      CHECK((deg[i] > 1) == (special.count(gn.vertices[i]) > 0));
  }
  CHECK_THROWS_AS(right_special(s, 10), Error);
}

TEST_CASE("RSlem identity") {
  for (const auto& sys : fixtures()) {
    auto s = sample_language(sys, 40);
    std::vector<std::size_t> inc(40, 0);
    for (std::size_t i = 0; i < 40; ++i)
      for (const auto& sp : right_special(s, i)) inc[i] += sp.ext.size() - 1;
    for (std::size_t r = 0; r < 40; ++r) {
      std::size_t acc = complexity(s, r);
      for (std::size_t q = r + 1; q <= 40; ++q) {
        acc += inc[q - 1];
        CHECK(complexity(s, q) == acc);
      }
    }
  }
}

TEST_CASE("predicted increment examples") {
  auto e2 = example_1_2();
  CHECK(predicted_increment(e2, 3) == 2);
  CHECK(predicted_increment(e2, 2) == 1);
  CHECK(predicted_increment(e2, 13) == 2);
  auto iv = increment_intervals(e2, 20);
  REQUIRE(iv.size() >= 2);
  CHECK(iv[0].lo == 2);
  CHECK(iv[0].hi == 3);
  CHECK(iv[1].lo == 11);
  CHECK(iv[1].hi == 14);
  SadicSystem s = SadicSystem::repeated("001", "00001", {3, 5, 0});
  CHECK_THROWS_AS(predicted_increment(s, 3), Error);
}

TEST_CASE("oracle equivalence of increments") {
  for (const auto& sys : fixtures()) {
    const std::size_t Q = 150;
    auto s = sample_language(sys, Q + 1);
    auto pred = predicted_increments(sys, Q);
    std::size_t s0 = periodic_suffix(sys.v0, sys.u0).size();
    for (std::size_t q = s0 + 1; q <= Q; ++q) {
      INFO("q = " << q << " seed " << sys.v0 << "/" << sys.u0);
      CHECK(complexity(s, q + 1) - complexity(s, q) == pred[q]);
    }
  }
}

TEST_CASE("special length complexity") {
  auto e2 = example_1_2();
  auto cal = calibrate_C(e2);
  CHECK(cal.q0 == 3);
  CHECK(cal.C == 0);
  CHECK(cal.C_seed == 1);
  auto v0 = special_length_complexity(e2, 0, cal.C);
  REQUIRE(v0.size() == 1);
  CHECK(v0[0].q == 3);
  CHECK(v0[0].p == 4);
  auto v1 = special_length_complexity(e2, 1, cal.C);
  CHECK(v1[0].q == 14);

  for (const auto& sys : fixtures()) {
    auto c = calibrate_C(sys);
    auto s = sample_language(sys, 200);
    for (std::size_t k = 0; k < 8; ++k) {
      for (const auto& sl : special_length_complexity(sys, k, c.C)) {
        if (sl.q > 200) continue;
        INFO("k = " << k << " r_type " << sl.r_type << " q " << sl.q.get_ui());
        CHECK(Int(static_cast<unsigned long>(complexity(s, sl.q.get_ui()))) == sl.p);
      }
    }
  }
  // r = 0: no ℓ term, so p(q_k) - q_k only changes by the completed intervals
  auto t = repeated_tau(4, 6, 0);
  auto a = special_length_complexity(t, 2, 0);
  auto ld = level_data(t, 3);
  CHECK(a[0].p - a[0].q == ld[2].sum_nm + (6 - 4 - 1) * ld[2].v);
}

TEST_CASE("special lengths agree with summed predicted increments") {
  for (const auto& sys : fixtures()) {
    auto c = calibrate_C(sys);
    auto pred = predicted_increments(sys, 3000);
    // the formula covers q > |s_0|; below that use the sampled increment
    auto small = sample_language(sys, 4);
    std::size_t s0 = periodic_suffix(sys.v0, sys.u0).size();
    for (std::size_t q = 0; q <= s0; ++q) pred[q] = complexity(small, q + 1) - complexity(small, q);
    auto base = special_length_complexity(sys, 0, c.C)[0];
    for (std::size_t k = 1; k < 10; ++k)
      for (const auto& sl : special_length_complexity(sys, k, c.C)) {
        if (sl.q > 3000) continue;
        Int acc = base.p;
        for (std::size_t q = base.q.get_ui(); q < sl.q.get_ui(); ++q) acc += static_cast<unsigned long>(pred[q]);
        CHECK(acc == sl.p);
      }
  }
}

TEST_CASE("limsup estimate") {
  auto est = limsup_estimate(example_1_2(), 12);
  double target = (105 + std::sqrt(17.0)) / 86;
  CHECK(std::fabs(to_double(est.estimate) - target) < 1e-3);
  REQUIRE(est.closed_form.has_value());
  CHECK(std::fabs(*est.closed_form - target) < 1e-12);
  CHECK(est.global_max >= est.estimate);
  for (long m : {2, 3, 5, 9}) {
    double cf = closed_form_limsup({m, m + 1, 0});
    CHECK(std::fabs(cf - 1.0) < 1e-12);
  }
  // reported values equal brute force where sampled
  auto sys = example_1_3();
  auto e = limsup_estimate(sys, 6);
  auto s = sample_language(sys, 300);
  for (const auto& sl : e.values)
    if (sl.q <= 300) CHECK(Int(static_cast<unsigned long>(complexity(s, sl.q.get_ui()))) == sl.p);
}

TEST_CASE("Morse-Hedlund floor") {
  for (const auto& sys : fixtures()) {
    auto s = sample_language(sys, 200);
    for (std::size_t q = 0; q <= 200; ++q) CHECK(complexity(s, q) >= q + 1);
  }
}

TEST_CASE("infer_level") {
  std::vector<char> blocks;
  for (char c : generated_prefix(example_1_2(), 5000)) blocks.push_back(c == '1' ? 'U' : 'V');
  auto inf = infer_level(blocks);
  CHECK(inf.params == TauParams{3, 5, 0});
  CHECK(inf.gaps == std::vector<std::size_t>{2, 4});

  blocks.clear();
  for (char c : generated_prefix(example_1_3(), 20000)) blocks.push_back(c == '1' ? 'U' : 'V');
  auto inf3 = infer_level(blocks);
  CHECK(inf3.params == TauParams{7, 9, 1});
  CHECK(inf3.gaps == std::vector<std::size_t>{0, 6, 8});

  CHECK_THROWS_AS(infer_level({'V', 'U', 'V', 'U', 'V', 'U', 'V', 'U'}), Error);

  // repeated inference recovers every level's parameters
  for (const auto& sys : fixtures()) {
    Word x = generated_prefix(sys, 400000);
    auto bp = words_uk_vk(sys, 0);
    auto d = decompose(x, *bp.v, *bp.u);
    auto cur = d.blocks;
    auto ps = sys.params(6);
    for (std::size_t k = 0; k < 6 && cur.size() > 40; ++k) {
      auto li = infer_level(cur);
      CHECK(li.params == ps[k]);
      cur = li.next_blocks;
    }
  }
}

TEST_CASE("detect_seed round trip") {
  for (const auto& sys : fixtures()) {
    auto s = sample_language(sys, 60);
    auto det = detect_seed(s);
    CHECK(det.v.size() < det.u.size());
    CHECK(det.v[0] != det.u[0]);
    CHECK(det.u.compare(det.u.size() - det.v.size(), det.v.size(), det.v) == 0);
    // decompose a long prefix by the detected pair and infer the levels
    Word x = generated_prefix(sys, 400000);
    auto d = decompose(x, det.v, det.u);
    auto cur = d.blocks;
    SadicSystem rebuilt;
    rebuilt.v0 = det.v;
    rebuilt.u0 = det.u;
    while (cur.size() > 60) {
      auto li = infer_level(cur);
      rebuilt.taus.push_back(li.params);
      cur = li.next_blocks;
    }
    rebuilt.repeat_last = true;
    auto s2 = sample_language(rebuilt, 60);
    CHECK(s2.factors == s.factors);
  }
  // Sturmian bound on the loop lengths
  auto st = sample_language(repeated_tau(2, 3, 0), 60);
  auto det = detect_seed(st);
  CHECK(det.v.size() + det.u.size() <= complexity(st, det.witness.size()) + 1);
  // periodic input
  CHECK_THROWS_AS(detect_seed(sample_from_cyclic_word("001", 20)), Error);
}
