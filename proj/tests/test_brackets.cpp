#include <doctest.h>

#include "clusterflow/brackets.hpp"

using namespace clusterflow;

namespace {

LVPoissonParams sample_params() {
  LVPoissonParams p;
  p.a0 = 2;
  p.b0 = -1;
  p.c0 = 3;
  p.a = [](int i) { return Rat(i % 3 - 1); };
  p.b = [](int i) { return Rat(2 - i % 2); };
  p.q = [](int i, int j) { return Rat(i + 3 * j); };
  return p;
}

LVState trivial_run() {
  LVOptions o;
  o.depth = 3;
  o.blocks = 2;
  o.tag = SemifieldTag::trivial;
  return lv_run(o);
}

}  // namespace

TEST_CASE("f-variables follow the cluster formula") {
  const LVState s = trivial_run();
  int seen = 0;
  for (int u = 0; u <= 1; ++u)
    for (int i = s.lo; i <= s.hi; ++i) {
      const auto f = lv_f(s, i, u);
      if (!f) continue;
      const RatFunc oracle = lv_cluster_x(s, u + 1, i - 2) * lv_cluster_x(s, u + 2, i + 2) /
                             (lv_cluster_x(s, u + 2, i - 1) * lv_cluster_x(s, u + 1, i + 1));
      CHECK(*f == oracle);
      ++seen;
    }
  CHECK(seen > 0);
}

TEST_CASE("f-variables are Casimir-like on the LV window") {
  const LVState s = trivial_run();
  const BracketTable t = lv_f_brackets(s, sample_params(), {0, 1});
  CHECK(t.ok());
  CHECK(t.failures() == 0);
  CHECK(t.entries.size() > 50);
  for (const auto& e : t.entries) CHECK(e.expected == 0);
}

TEST_CASE("a bracket off the kernel does not pass") {
  const LVState s = trivial_run();
  const LVPoissonParams params = sample_params();
  PoissonMatrix p = lv_general_P(params, -2, 2);
  p.set(0, 4, p(0, 4) + 1);
  int nonzero = 0;
  for (int i = s.lo; i <= s.hi; ++i) {
    const auto f = lv_f(s, i, 0);
    if (!f) continue;
    for (int j = s.lo; j <= s.hi; ++j) {
      if (!lv_has_cluster_x(s, 0, j)) continue;
      if (!symbolic_bracket(*f, lv_cluster_x(s, 0, j), p).is_zero()) ++nonzero;
    }
  }
  CHECK(nonzero > 0);
}

TEST_CASE("yhat brackets") {
  LVOptions o;
  o.depth = 3;
  o.blocks = 2;
  LVState s = lv_run(o);
  for (const Rat& cy : std::vector<Rat>{Rat(1), Rat(3), Rat(Rat(-2) / 5)}) {
    const BracketTable t = lv_yhat_brackets(s, sample_params(), cy);
    CHECK(t.ok());
    bool plus = false, minus = false;
    for (const auto& e : t.entries) {
      CHECK((e.expected == 0 || e.expected == cy || e.expected == -cy));
      plus = plus || e.expected == cy;
      minus = minus || e.expected == -cy;
    }
    CHECK(plus);
    CHECK(minus);
  }
}

TEST_CASE("Liouville initial brackets") {
  for (int N : {3, 4, 5, 6, 7}) {
    const BracketTable t = liouville_initial_brackets(N, 3);
    CHECK(t.ok());
    // Each y(0) index pairs with two y(1) indices at -cy.
    int hits = 0;
    for (const auto& e : t.entries)
      if (e.expected == -3) ++hits;
    CHECK(hits == 2 * (N % 2 == 0 ? N / 2 : N));
  }
}
