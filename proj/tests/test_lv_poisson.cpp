#include <doctest.h>

#include <map>
#include <memory>
#include <random>

#include "clusterflow/lv_poisson.hpp"
#include "clusterflow/seed.hpp"

using namespace clusterflow;

namespace {

std::mt19937 rng(29);

Rat small() { return Rat(static_cast<long>(rng() % 11) - 5) / static_cast<long>(1 + rng() % 3); }

LVPoissonParams random_params() {
  auto a = std::make_shared<std::map<int, Rat>>();
  auto b = std::make_shared<std::map<int, Rat>>();
  auto q = std::make_shared<std::map<std::pair<int, int>, Rat>>();
  LVPoissonParams p;
  p.a0 = small();
  p.b0 = small();
  p.c0 = small();
  p.a = [a](int i) -> Rat {
    if (i == 0) return Rat(0);
    auto it = a->find(i);
    return it != a->end() ? it->second : (*a)[i] = small();
  };
  p.b = [b](int i) -> Rat {
    if (i == 0) return Rat(0);
    auto it = b->find(i);
    return it != b->end() ? it->second : (*b)[i] = small();
  };
  p.q = [q](int i, int j) -> Rat {
    auto it = q->find({i, j});
    return it != q->end() ? it->second : (*q)[{i, j}] = small();
  };
  return p;
}

// Entries p_ij, i < j, flattened.
std::vector<Rat> flatten(const PoissonMatrix& p) {
  std::vector<Rat> v;
  for (int i = p.lo(); i <= p.hi(); ++i)
    for (int j = i + 1; j <= p.hi(); ++j) v.push_back(p(i, j));
  return v;
}

int span_dimension(const std::vector<std::vector<Rat>>& vs) {
  if (vs.empty()) return 0;
  QMatrix m(static_cast<int>(vs.size()), static_cast<int>(vs[0].size()));
  for (std::size_t r = 0; r < vs.size(); ++r)
    for (std::size_t c = 0; c < vs[r].size(); ++c) m(static_cast<int>(r), static_cast<int>(c)) = vs[r][c];
  return m.rank();
}

// Dimension of {P skew : PB = O} by direct elimination over the p_ij, i < j.
int kernel_dimension_oracle(const ExchangeMatrix& b) {
  const int n = b.size(), lo = b.lo();
  std::vector<std::pair<int, int>> unknowns;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) unknowns.emplace_back(i, j);
  QMatrix eq(n * n, static_cast<int>(unknowns.size()));
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto [a, c] = unknowns[u];
    // p_ac = 1, p_ca = -1 contribute to (PB)_{a,k} and (PB)_{c,k}.
    for (int k = 0; k < n; ++k) {
      eq(a * n + k, static_cast<int>(u)) += b(lo + c, lo + k);
      eq(c * n + k, static_cast<int>(u)) -= b(lo + a, lo + k);
    }
  }
  return static_cast<int>(unknowns.size()) - eq.rank();
}

// p'_ij = p_{i-s, j-s} on Z/n.
PoissonMatrix rotate(const PoissonMatrix& p, int s) {
  const int n = p.size();
  PoissonMatrix out(p.lo(), n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.set(i, j, p(((i - s) % n + n) % n, ((j - s) % n + n) % n));
  return out;
}

// Members of the torus kernel fixed by rotation by 3 and mapped to their
// shift by one under mutation of class 0.
int symmetric_dimension_oracle(int m) {
  const ExchangeMatrix b = lv_periodic_matrix(m);
  const auto kernel = skew_kernel(b);
  const int k = static_cast<int>(kernel.size());
  std::vector<std::vector<Rat>> images(static_cast<std::size_t>(k));
  for (int e = 0; e < k; ++e) {
    const PoissonMatrix& p = kernel[static_cast<std::size_t>(e)].p;
    std::vector<Rat> row;
    for (const Rat& v : flatten(rotate(p, 3))) row.push_back(v);
    const auto base = flatten(p);
    for (std::size_t t = 0; t < base.size(); ++t) row[t] -= base[t];
    const auto mutated = flatten(mutate_poisson_class(p, b, 0, 3));
    const auto shifted = flatten(rotate(p, 1));
    for (std::size_t t = 0; t < mutated.size(); ++t) row.push_back(mutated[t] - shifted[t]);
    images[static_cast<std::size_t>(e)] = std::move(row);
  }
  // The constraint map sends kernel coordinates to images; its nullity is the answer.
  QMatrix map(static_cast<int>(images[0].size()), k);
  for (int e = 0; e < k; ++e)
    for (std::size_t t = 0; t < images[0].size(); ++t) map(static_cast<int>(t), e) = images[static_cast<std::size_t>(e)][t];
  return k - map.rank();
}

}  // namespace

TEST_CASE("general LV family solves PB = O away from the window edge") {
  const ExchangeMatrix b = lv_matrix().materialize(-9, 11);
  for (int t = 0; t < 5; ++t) {
    const PoissonMatrix p = lv_general_P(random_params(), -3, 3);
    CHECK(p.lo() == -9);
    CHECK(p.hi() == 11);
    CHECK(p.to_qmatrix().is_skew());
    for (int i = -9; i <= 11; ++i)
      for (int j = -6; j <= 8; ++j) CHECK(pb_entry(p, b, i, j) == 0);
  }
}

TEST_CASE("a perturbed block breaks PB = O") {
  const ExchangeMatrix b = lv_matrix().materialize(-9, 11);
  PoissonMatrix p = lv_general_P(random_params(), -3, 3);
  p.set(0, 1, p(0, 1) + 1);
  bool some_nonzero = false;
  for (int i = -9; i <= 11; ++i)
    for (int j = -6; j <= 8; ++j) some_nonzero = some_nonzero || pb_entry(p, b, i, j) != 0;
  CHECK(some_nonzero);
}

TEST_CASE("periodic LV kernel dimensions") {
  for (int m : {3, 4}) {
    const ExchangeMatrix b = lv_periodic_matrix(m);
    const int dim = kernel_dimension_oracle(b);
    CHECK(static_cast<int>(skew_kernel(b).size()) == dim);
    CHECK(lv_periodic_parameter_count(m) == dim);
  }
  CHECK(lv_periodic_parameter_count(3) == 10);
  CHECK(lv_periodic_parameter_count(4) == 15);
}

TEST_CASE("constant a, b sub-family of the periodic kernel") {
  for (int m : {3, 4}) {
    const ExchangeMatrix b = lv_periodic_matrix(m);
    std::vector<std::vector<Rat>> members;
    // Unit parameters: a0, b0, c0, then each q(i, j).
    for (int u = 0; u < 3; ++u)
      members.push_back(flatten(lv_periodic_P(m, Rat(u == 0), Rat(u == 1), Rat(u == 2), [](int, int) { return Rat(0); })));
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        members.push_back(flatten(
            lv_periodic_P(m, 0, 0, 0, [i, j](int a, int c) { return Rat(a == i && c == j ? 1 : 0); })));
    const int dim = span_dimension(members);
    CHECK(dim == lv_periodic_constant_ab_count(m));
    CHECK(dim == 3 + m * (m - 1) / 2);
    const PoissonMatrix p = lv_periodic_P(m, 1, 2, 3, [](int i, int j) { return Rat(i + 2 * j); });
    CHECK(pb_product(p, b).is_zero_matrix());
  }
  CHECK(lv_periodic_constant_ab_count(3) == 6);
  CHECK(lv_periodic_constant_ab_count(4) == 9);
}

TEST_CASE("schedule-invariant periodic members") {
  for (int m : {3, 4, 5}) CHECK(lv_periodic_symmetric_count(m) == symmetric_dimension_oracle(m));
  CHECK(lv_periodic_symmetric_count(3) == 2);
  CHECK(lv_periodic_symmetric_count(4) == 2);
  CHECK(lv_periodic_symmetric_count(5) == 3);
}

TEST_CASE("symmetric family is carried to its shift by the schedule") {
  SymLVParams s;
  s.a0 = Rat(3) / 2;
  s.q = [](int d) { return Rat(d * d - 3 * d + 1); };
  PoissonMatrix p = lv_symmetric_P(s, -6, 6);
  const PoissonMatrix p0 = p;
  for (int u = 0; u < 3; ++u) {
    // B(u) is the u-fold shift; only the middle of the window is trusted.
    p = mutate_poisson_class(p, lv_matrix().shifted(u).materialize(-18, 20), u, 3);
    for (int i = -9; i <= 11; ++i)
      for (int j = -9; j <= 11; ++j) CHECK(p(i, j) == p0(i - u - 1, j - u - 1));
  }
  // The general family with a = b = 0 and q(i, j) = q(j - i) contains it.
  const LVPoissonParams g = general_params(s);
  CHECK(lv_general_P(g, -6, 6) == p0);
}
