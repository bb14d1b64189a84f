#include <doctest.h>

#include <random>

#include "clusterflow/poisson.hpp"
#include "clusterflow/seed.hpp"
#include "clusterflow/verify.hpp"

using namespace clusterflow;

namespace {

RatFunc X(int i) { return RatFunc::variable(x_var(i)); }

// Mutated bracket from the other sign choice: p'_ik = -p_ik + sum_l [-b_lk]_+ p_il.
PoissonMatrix mutate_poisson_minus(const PoissonMatrix& p, const ExchangeMatrix& b, int k) {
  PoissonMatrix out = p;
  for (int i = p.lo(); i <= p.hi(); ++i) {
    if (i == k) continue;
    Rat v = -p(i, k);
    for (int l = b.lo(); l <= b.hi(); ++l)
      if (b(l, k) < 0) v += Rat(-b(l, k)) * p(i, l);
    out.set(i, k, v);
  }
  return out;
}

QMatrix scaled_d(const Rat& c, const std::vector<int>& d) { return c * diagonal(d); }

}  // namespace

TEST_CASE("Poisson matrix validation") {
  CHECK_THROWS_AS(PoissonMatrix::from_rows(1, {{0, 1}, {1, 0}}), InvalidMatrix);
  CHECK_THROWS_AS(PoissonMatrix::from_rows(1, {{1, 0}, {0, -1}}), InvalidMatrix);
  PoissonMatrix p(1, 3);
  p.set(1, 3, Rat(2) / 3);
  CHECK(p(3, 1) == Rat(-2) / 3);
  CHECK(p.to_qmatrix().is_skew());
  CHECK_THROWS(p.set(2, 2, Rat(1)));
}

TEST_CASE("A2 bracket mutates by the closed formula") {
  const PoissonMatrix p = PoissonMatrix::from_rows(1, {{0, -1}, {1, 0}});
  CHECK(pb_product(p, a2_matrix()) == QMatrix::identity(2));
  const PoissonMatrix p1 = mutate_poisson(p, a2_matrix(), 1);
  CHECK(p1 == PoissonMatrix::from_rows(1, {{0, 1}, {-1, 0}}));
  // Direct check on the new cluster variable.
  const Seed s = mutate_seed(initial_seed(a2_matrix(), SemifieldTag::trivial), 1);
  const auto r = is_log_canonical(s.x_at(1), s.x_at(2), symbolic_bracket(s.x_at(1), s.x_at(2), p));
  REQUIRE(r);
  CHECK(*r == p1(1, 2));
}

TEST_CASE("mutated bracket agrees with the opposite sign formula") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    const ExchangeMatrix b = (t % 3 == 0) ? random_symmetrizable_matrix(rng, 4) : random_skew_matrix(rng, 4);
    const auto d = *find_symmetrizer(b);
    for (const auto& e : skew_kernel(b)) {
      CHECK(pb_product(e.p, b) == scaled_d(e.c, d));
      for (int k = b.lo(); k <= b.hi(); ++k) {
        const PoissonMatrix pk = mutate_poisson(e.p, b, k);
        CHECK(pk == mutate_poisson_minus(e.p, b, k));
        CHECK(pb_product(pk, mutate_matrix(b, k)) == scaled_d(e.c, d));
        ++checked;
      }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("mutated bracket is log-canonical on the new cluster") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 6; ++t) {
    const ExchangeMatrix b = random_skew_matrix(rng, 4);
    const auto kernel = skew_kernel(b);
    if (kernel.empty()) continue;
    const PoissonMatrix& p = kernel.back().p;
    const int k = b.lo() + static_cast<int>(rng() % 4);
    const Seed s = mutate_seed(initial_seed(b, SemifieldTag::trivial), k);
    const PoissonMatrix pk = mutate_poisson(p, b, k);
    for (int i = b.lo(); i <= b.hi(); ++i)
      for (int j = i + 1; j <= b.hi(); ++j) {
        const auto r = is_log_canonical(s.x_at(i), s.x_at(j), symbolic_bracket(s.x_at(i), s.x_at(j), p));
        REQUIRE(r);
        CHECK(*r == pk(i, j));
      }
  }
}

TEST_CASE("incompatible bracket is rejected with a witness") {
  const ExchangeMatrix a3 = ExchangeMatrix::from_rows(1, {{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
  const PoissonMatrix bad = PoissonMatrix::from_rows(1, {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}});
  // (PB)_{13} = p_12 b_23 = 1.
  CHECK(pb_entry(bad, a3, 1, 3) == 1);
  try {
    mutate_poisson(bad, a3, 3);
    FAIL("expected CompatibilityError");
  } catch (const CompatibilityError& e) {
    CHECK(e.i == 1);
    CHECK(e.k == 3);
    CHECK(e.value == 1);
  }
  CHECK_NOTHROW(mutate_poisson_unchecked(bad, a3, 3));
  const Seed s = mutate_seed(initial_seed(a3, SemifieldTag::trivial), 3);
  CHECK_FALSE(is_log_canonical(s.x_at(1), s.x_at(3), symbolic_bracket(s.x_at(1), s.x_at(3), bad)));
}

TEST_CASE("Somos-4 kernel is one dimensional") {
  const ExchangeMatrix b = somos4_matrix();
  const PoissonMatrix p = PoissonMatrix::from_rows(1, {{0, 1, 2, 3}, {-1, 0, 1, 2}, {-2, -1, 0, 1}, {-3, -2, -1, 0}});
  CHECK(pb_product(p, b).is_zero_matrix());
  const auto kernel = skew_kernel(b);
  REQUIRE(kernel.size() == 1);
  CHECK(kernel[0].c == 0);
  const Rat s = kernel[0].p(1, 2);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) CHECK(kernel[0].p(i, j) == s * p(i, j));
  // B is singular, so c = 0 is forced.
  CHECK(to_qmatrix(b).det() == 0);
}

TEST_CASE("symbolic bracket") {
  const PoissonMatrix p = PoissonMatrix::from_rows(1, {{0, 1}, {-1, 0}});
  CHECK(symbolic_bracket(X(1), X(2), p) == X(1) * X(2));
  CHECK(symbolic_bracket(X(1) + X(2), X(2), p) == X(1) * X(2));
  CHECK(symbolic_bracket(X(1), X(1) * X(1), p) == RatFunc(0));
  CHECK_THROWS_AS(symbolic_bracket(X(1), RatFunc::variable(y_var(1)), p), UncoveredVariable);
  CHECK(is_log_canonical(X(1), X(2), X(1) * X(2) * 3) == Rat(3));
  CHECK_FALSE(is_log_canonical(X(1), X(2), X(1)));
}

TEST_CASE("f-variables and the induced bracket") {
  const ExchangeMatrix b = a2_matrix();
  const Seed s = initial_seed(b, SemifieldTag::trivial);
  const auto f = f_variables(b, s.x);
  // f_i = prod_j x_j^{b_ji}.
  CHECK(f[0] == 1 / X(2));
  CHECK(f[1] == X(1));
  const PoissonMatrix p = PoissonMatrix::from_rows(1, {{0, -1}, {1, 0}});
  const QMatrix pf = induced_Pf(b, p);
  const auto r = is_log_canonical(f[0], f[1], symbolic_bracket(f[0], f[1], p));
  REQUIRE(r);
  CHECK(*r == pf(0, 1));
}

TEST_CASE("two-forms") {
  const ExchangeMatrix b = ExchangeMatrix::from_rows(1, {{0, 2}, {-1, 0}});
  const std::vector<int> d = *find_symmetrizer(b);
  const auto kernel = skew_kernel(b, d);
  REQUIRE(kernel.size() == 1);
  const KernelElement& e = kernel[0];
  REQUIRE(e.c != 0);
  const TwoForm w = two_form(b, d, e.c);
  CHECK(e.p.to_qmatrix() * w.w == w.d * QMatrix::identity(2));

  const Rat cx = 2, cy = 3;
  const ExtendedPoisson ext = assemble_extended(b, cx, cy);
  const QMatrix big = ext.assembled();
  CHECK(big.is_skew());
  const TwoForm w2 = two_form(b, d, ext.px, cx, cy);
  CHECK(w2.d == cx + cy);
  CHECK(big * w2.w == (cx + cy) * QMatrix::identity(4));
  CHECK(ext.pxy == cy * diagonal(d));
  CHECK(ext.py == cy * (diagonal(d) * to_qmatrix(b)));
  CHECK(ext.px.to_qmatrix() * to_qmatrix(b) == cx * diagonal(d));
}

TEST_CASE("extended structure for singular B needs cx = 0") {
  const ExchangeMatrix b = somos4_matrix();
  CHECK_THROWS(assemble_extended(b, 1, 1));
  const ExtendedPoisson ext = assemble_extended(b, 0, 1);
  CHECK(pb_product(ext.px, b).is_zero_matrix());
  CHECK_FALSE(ext.px.to_qmatrix().is_zero_matrix());
}
