#include <doctest.h>

#include "clusterflow/left_inverse.hpp"

using namespace clusterflow;

namespace {

RatFunc Z() { return RatFunc::variable(symbol_var); }

// (MB)_ij for a row-finite M against a banded B.
Rat times_b(const PeriodicBandedMatrix& b, const std::function<Rat(int, int)>& m, int i, int j) {
  Rat s = 0;
  for (int l = j - b.band(); l <= j + b.band(); ++l) s += m(i, l) * Rat(b(l, j));
  return s;
}

int sign(int e) { return (e % 2 == 0) ? 1 : -1; }

// Example with b_ij = (-1)^i for |i - j| = 1. Solving m B = e_i row by row:
// S+ has m_{i, i+1+2t} = (-1)^{i-1+t}, S- has m_{i, i-1-2t} = (-1)^{i-1+t}.
Rat s_plus_oracle(int i, int j) {
  const int t2 = j - i - 1;
  if (t2 < 0 || t2 % 2 != 0) return 0;
  return sign(i - 1 + t2 / 2);
}

Rat s_minus_oracle(int i, int j) {
  const int t2 = i - 1 - j;
  if (t2 < 0 || t2 % 2 != 0) return 0;
  return sign(i - 1 + t2 / 2);
}

}  // namespace

TEST_CASE("symbol matrix") {
  const Mat<RatFunc> s = symbol_matrix(alternating_chain_matrix());
  CHECK(s(0, 0) == RatFunc(0));
  CHECK(s(0, 1) == 1 + 1 / Z());
  CHECK(s(1, 0) == -1 - Z());
  CHECK(s.det() == Z() + 2 + 1 / Z());
}

TEST_CASE("LV quiver has no left inverse") {
  const PeriodicBandedMatrix b = lv_matrix();
  const LeftInverseResult r = left_inverse_periodic(b);
  CHECK(r.status == LeftInverseStatus::none);
  CHECK(r.det == RatFunc(0));
  REQUIRE_FALSE(r.certificate.empty());
  // Bv = 0 with v of finite support.
  bool nonzero = false;
  for (const auto& [j, v] : r.certificate) nonzero = nonzero || v != 0;
  CHECK(nonzero);
  for (int i = -12; i <= 15; ++i) {
    Rat s = 0;
    for (const auto& [j, v] : r.certificate) s += Rat(b(i, j)) * v;
    CHECK(s == 0);
  }
  CHECK(r.certificate == std::map<int, Rat>{{0, 1}, {1, 1}, {2, 1}});
}

TEST_CASE("alternating-sign chain: expansions match the recursion") {
  const PeriodicBandedMatrix b = alternating_chain_matrix();
  const LeftInverseResult r = left_inverse_periodic(b);
  REQUIRE(r.status == LeftInverseStatus::exists);
  for (int i = -6; i <= 6; ++i)
    for (int j = -8; j <= 8; ++j) {
      CHECK(r.s_plus(i, j) == s_plus_oracle(i, j));
      CHECK(r.s_minus(i, j) == s_minus_oracle(i, j));
      CHECK(r.m(i, j) == (s_plus_oracle(i, j) + s_minus_oracle(i, j)) / 2);
    }
}

TEST_CASE("left inverse identities") {
  const PeriodicBandedMatrix b = alternating_chain_matrix();
  const LeftInverseResult r = left_inverse_periodic(b);
  REQUIRE(r.status == LeftInverseStatus::exists);
  const std::vector<int> d = *b.symmetrizer();
  auto m = [&](int i, int j) { return r.m(i, j); };
  auto sp = [&](int i, int j) { return r.s_plus(i, j); };
  auto sm = [&](int i, int j) { return r.s_minus(i, j); };
  for (int i = -5; i <= 5; ++i)
    for (int j = -5; j <= 5; ++j) {
      const Rat id = (i == j) ? 1 : 0;
      CHECK(times_b(b, m, i, j) == id);
      CHECK(times_b(b, sp, i, j) == id);
      CHECK(times_b(b, sm, i, j) == id);
      // D M skew.
      CHECK(Rat(d[static_cast<std::size_t>(b.residue(i))]) * r.m(i, j) ==
            -Rat(d[static_cast<std::size_t>(b.residue(j))]) * r.m(j, i));
    }
  REQUIRE_FALSE(r.mu_basis.empty());
  for (const auto& mu : r.mu_basis) {
    auto rr = [&](int i, int j) { return r.r(mu, i, j); };
    for (int i = -4; i <= 4; ++i)
      for (int j = -4; j <= 4; ++j) {
        CHECK(times_b(b, rr, i, j) == 0);
        CHECK(r.r(mu, i, j) == -r.r(mu, j, i));
      }
  }
  CHECK(r.admissible({Rat(1) / 2, Rat(1) / 2}));
  CHECK_FALSE(r.admissible({Rat(1), Rat(1)}));
}

TEST_CASE("block-diagonal matrix has a banded inverse") {
  const PeriodicBandedMatrix b(2, {{{0, 1}, 1}, {{1, -1}, -1}});
  const LeftInverseResult r = left_inverse_periodic(b);
  REQUIRE(r.status == LeftInverseStatus::exists);
  CHECK(r.det == RatFunc(1));
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) {
      Rat expect = 0;
      if (i % 2 == 0 && j == i + 1) expect = -1;
      if (i % 2 != 0 && j == i - 1) expect = 1;
      CHECK(r.s_plus(i, j) == expect);
      CHECK(r.s_minus(i, j) == expect);
    }
}
