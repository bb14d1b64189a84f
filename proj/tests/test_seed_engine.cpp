#include <doctest.h>

#include <cstdlib>
#include <random>

#include "clusterflow/dynamics.hpp"
#include "clusterflow/seed.hpp"
#include "clusterflow/verify.hpp"

using namespace clusterflow;

namespace {

RatFunc X(int i) { return RatFunc::variable(x_var(i)); }
RatFunc Y(int i) { return RatFunc::variable(y_var(i)); }

// b'_ij = -b_ij if k in {i, j}, else b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2.
ExchangeMatrix mutate_oracle(const ExchangeMatrix& b, int k) {
  ExchangeMatrix out(b.lo(), b.size());
  for (int i = b.lo(); i <= b.hi(); ++i)
    for (int j = b.lo(); j <= b.hi(); ++j) {
      if (i == k || j == k) {
        out.set(i, j, -b(i, j));
        continue;
      }
      const int bik = b(i, k), bkj = b(k, j);
      out.set(i, j, b(i, j) + (std::abs(bik) * bkj + bik * std::abs(bkj)) / 2);
    }
  return out;
}

}  // namespace

TEST_CASE("exchange matrix validation") {
  CHECK_THROWS_AS(ExchangeMatrix::from_rows(1, {{0, 1}, {1, 0}}), InvalidMatrix);
  CHECK_THROWS_AS(ExchangeMatrix::from_rows(1, {{1, 0}, {0, 0}}), InvalidMatrix);
  CHECK_THROWS_AS(ExchangeMatrix::from_rows(1, {{0, 1}, {-1}}), InvalidMatrix);
  const ExchangeMatrix b2 = ExchangeMatrix::from_rows(1, {{0, 2}, {-1, 0}});
  REQUIRE(find_symmetrizer(b2));
  CHECK(*find_symmetrizer(b2) == std::vector<int>{1, 2});
  CHECK_FALSE(is_skew_symmetric(b2));
  CHECK(is_skew_symmetric(somos4_matrix()));
  // Cycle with incompatible ratios: d1 = 2 d2, d2 = 2 d3, d3 = 2 d1.
  CHECK_THROWS_AS(ExchangeMatrix::from_rows(1, {{0, 1, -2}, {-2, 0, 1}, {1, -2, 0}}), InvalidMatrix);
}

TEST_CASE("matrix mutation agrees with the closed formula") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 40; ++t) {
    const ExchangeMatrix b = (t % 2) ? random_skew_matrix(rng, 5) : random_symmetrizable_matrix(rng, 4);
    for (int k = b.lo(); k <= b.hi(); ++k) {
      CHECK(mutate_matrix(b, k) == mutate_oracle(b, k));
      CHECK(mutate_matrix(mutate_matrix(b, k), k) == b);
    }
  }
}

TEST_CASE("seed mutation is an involution") {
  std::mt19937_64 rng(2);
  for (const auto tag : {SemifieldTag::universal, SemifieldTag::tropical, SemifieldTag::trivial}) {
    for (int t = 0; t < 8; ++t) {
      const Seed s0 = initial_seed(random_tree_matrix(rng, 4), tag);
      Seed s = s0;
      for (int step = 0; step < 3; ++step) s = mutate_seed(s, s.b.lo() + static_cast<int>(rng() % 4));
      for (int k = s.b.lo(); k <= s.b.hi(); ++k) CHECK(seeds_equal(mutate_seed(mutate_seed(s, k), k), s));
    }
  }
}

TEST_CASE("A2 with trivial coefficients follows x_{n+1} x_{n-1} = 1 + x_n") {
  Seed s = initial_seed(a2_matrix(), SemifieldTag::trivial);
  std::vector<RatFunc> seq = {X(1), X(2)};
  for (int n = 1; n < 7; ++n) seq.push_back((1 + seq[n]) / seq[n - 1]);
  for (int n = 0; n < 5; ++n) {
    const int k = (n % 2 == 0) ? 1 : 2;
    s = mutate_seed(s, k);
    CHECK(s.x_at(k) == seq[n + 2]);
    CHECK(is_laurent_in_x(s.x_at(k)));
  }
  // Period five up to the transposition.
  CHECK(s.x_at(1) == X(2));
  CHECK(s.x_at(2) == X(1));
}

TEST_CASE("universal Y-seed mutation rule") {
  const ExchangeMatrix b = ExchangeMatrix::from_rows(1, {{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
  const Seed s = mutate_seed(initial_seed(b, SemifieldTag::universal), 2);
  // y'_k = 1/y_k; y'_j = y_j y_k^{[b_kj]+} (1 + y_k)^{-b_kj}.
  CHECK(std::get<RatFunc>(s.y_at(2)) == 1 / Y(2));
  CHECK(std::get<RatFunc>(s.y_at(1)) == Y(1) * (1 + Y(2)));
  CHECK(std::get<RatFunc>(s.y_at(3)) == Y(3) * Y(2) / (1 + Y(2)));
  // x'_2 x_2 = (y_2 x_1 + x_3) / (1 + y_2) since b_12 = 1, b_32 = -1.
  CHECK(s.x_at(2) == (Y(2) * X(1) + X(3)) / ((1 + Y(2)) * X(2)));
  CHECK(s.b == mutate_matrix(b, 2));
}

TEST_CASE("tropical coefficients are the lowest terms of universal ones") {
  const Seed u = mutate_seed(mutate_seed(initial_seed(a2_matrix(), SemifieldTag::universal), 1), 2);
  const Seed t = mutate_seed(mutate_seed(initial_seed(a2_matrix(), SemifieldTag::tropical), 1), 2);
  // y / [y]_T is regular at y = 0 with value 1.
  for (int i = 1; i <= 2; ++i) {
    const RatFunc ratio = std::get<RatFunc>(u.y_at(i)) / embed(t.y_at(i));
    CHECK(ratio.substitute({{y_var(1), RatFunc(0)}, {y_var(2), RatFunc(0)}}) == RatFunc(1));
  }
}

TEST_CASE("Laurent phenomenon on random acyclic seeds") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    Seed s = initial_seed(random_tree_matrix(rng, 4), t % 2 ? SemifieldTag::universal : SemifieldTag::trivial);
    for (int step = 0; step < 6; ++step) {
      const int k = s.b.lo() + static_cast<int>(rng() % 4);
      s = mutate_seed(s, k);
      CHECK(is_laurent_in_x(s.x_at(k)));
    }
    CHECK(s.diagnostics.empty());
  }
}

TEST_CASE("Somos-4 seed relabels under mutation at 1") {
  const ExchangeMatrix b = somos4_matrix(), b1 = mutate_matrix(b, 1);
  // Index 1 moves to 4, 2..4 move to 1..3.
  auto lab = [](int i) { return i == 1 ? 4 : i - 1; };
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) CHECK(b1(i, j) == b(lab(i), lab(j)));
  const auto s = somos4_sequence(10);
  CHECK(s == std::vector<Rat>{1, 1, 1, 1, 2, 3, 7, 23, 59, 314});
}

TEST_CASE("simultaneous mutation needs unconnected indices") {
  const Seed s = initial_seed(somos4_matrix(), SemifieldTag::trivial);
  CHECK_THROWS_AS(apply_word(s, MutationWord{{1, 2}}), NonCommutingSet);
  try {
    apply_word(s.b, MutationWord{{2, 3}});
    FAIL("expected NonCommutingSet");
  } catch (const NonCommutingSet& e) {
    CHECK(e.first == 2);
    CHECK(e.second == 3);
  }
  // A commuting letter equals the sequential mutations in any order.
  const ExchangeMatrix b = liouville_even_matrix(3);
  CHECK(apply_word(b, MutationWord{{0, 2, 4}}) == mutate_matrix(mutate_matrix(mutate_matrix(b, 4), 0), 2));
}

TEST_CASE("LV schedule letters") {
  const MutationWord w = lv_schedule(4, -12, 14);
  REQUIRE(w.size() == 4);
  for (int u = 0; u < 4; ++u) {
    for (int i : w[static_cast<std::size_t>(u)]) {
      CHECK(((i % 3) + 3) % 3 == u % 3);
      CHECK(i >= -12 + 3 * u);
      CHECK(i <= 14 - 3 * u);
    }
  }
  CHECK(w[0].front() == -12);
  CHECK(w[0].back() == 12);
  CHECK_THROWS(lv_schedule(-1, 0, 5));
  // Applying the word to the materialized window never hits a connected pair.
  const ExchangeMatrix m = lv_matrix().materialize(-12, 14);
  CHECK_NOTHROW(apply_word(m, w));
}

TEST_CASE("LV class mutation is a shift") {
  const PeriodicBandedMatrix b = lv_matrix();
  PeriodicBandedMatrix cur = b;
  for (int u = 0; u < 6; ++u) {
    cur = cur.mutate_class(u % 3);
    CHECK(cur == b.shifted(u + 1));
  }
  CHECK(b.shifted(3) == b);
  const ExchangeMatrix m = b.materialize(-9, 11);
  const ExchangeMatrix mm = apply_word(m, MutationWord{{-9, -6, -3, 0, 3, 6, 9}});
  const PeriodicBandedMatrix exact = b.mutate_class(0);
  for (int i = -3; i <= 5; ++i)
    for (int j = -3; j <= 5; ++j) CHECK(mm(i, j) == exact(i, j));
}

TEST_CASE("Liouville quivers are bipartite") {
  CHECK_THROWS_AS(liouville_matrix(2), std::invalid_argument);
  CHECK_THROWS_AS(liouville_matrix(1), std::invalid_argument);
  for (int N = 3; N <= 7; ++N) {
    const ExchangeMatrix b = liouville_matrix(N);
    CHECK(is_skew_symmetric(b));
    MutationWord plus(1);
    for (int i = b.lo(); i <= b.hi(); ++i)
      if (i % 2 == 0) plus[0].push_back(i);
    const ExchangeMatrix bp = apply_word(b, plus);
    // Every even index is a sink or a source, so mu_+ negates B.
    for (int i = b.lo(); i <= b.hi(); ++i)
      for (int j = b.lo(); j <= b.hi(); ++j) CHECK(bp(i, j) == -b(i, j));
  }
}
