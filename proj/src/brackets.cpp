#include "clusterflow/brackets.hpp"

#include <functional>

#include "clusterflow/seed.hpp"

namespace clusterflow {

namespace {

int mod(int i, int n) { return ((i % n) + n) % n; }

std::string label(const std::string& name, int i, int u) {
  return name + "_" + std::to_string(i) + "(" + std::to_string(u) + ")";
}

struct Named {
  std::string name;
  RatFunc value;
};

template <class Bracket>
void add_entry(BracketTable& t, const Named& a, const Named& b, const Rat& expected, const Bracket& bracket) {
  BracketEntry e;
  e.left = a.name;
  e.right = b.name;
  e.expected = expected;
  e.observed = is_log_canonical(a.value, b.value, bracket(a.value, b.value));
  t.entries.push_back(std::move(e));
}

}  // namespace

int BracketTable::failures() const {
  int n = 0;
  for (const auto& e : entries) n += e.ok() ? 0 : 1;
  return n;
}

bool lv_has_cluster_x(const LVState& s, int seed, int j) { return s.has_x(seed + mod(j - seed, 3), j); }

const RatFunc& lv_cluster_x(const LVState& s, int seed, int j) { return s.x.at({seed + mod(j - seed, 3), j}); }

std::optional<RatFunc> lv_f(const LVState& s, int i, int u) {
  const std::pair<int, int> need[4] = {{u + 1, i - 2}, {u + 2, i + 2}, {u + 2, i - 1}, {u + 1, i + 1}};
  for (const auto& [seed, j] : need)
    if (!lv_has_cluster_x(s, seed, j)) return std::nullopt;
  return lv_cluster_x(s, u + 1, i - 2) * lv_cluster_x(s, u + 2, i + 2) /
         (lv_cluster_x(s, u + 2, i - 1) * lv_cluster_x(s, u + 1, i + 1));
}

ExtendedPoisson lv_extended_poisson(const LVState& s, const LVPoissonParams& params, const Rat& cy) {
  ExtendedPoisson e;
  e.px = lv_general_P(params, s.lo / 3, (s.hi - 2) / 3);
  const int n = e.px.size();
  e.pxy = cy * QMatrix::identity(n);
  e.py = cy * to_qmatrix(lv_matrix().materialize(s.lo, s.hi));
  e.cx = 0;
  e.cy = cy;
  return e;
}

BracketTable lv_f_brackets(const LVState& s, const LVPoissonParams& params, const std::vector<int>& seeds) {
  const PoissonMatrix p = lv_general_P(params, s.lo / 3, (s.hi - 2) / 3);
  auto bracket = [&p](const RatFunc& f, const RatFunc& g) { return symbolic_bracket(f, g, p); };
  BracketTable t;
  std::vector<Named> fs;
  for (int u : seeds) {
    std::vector<Named> xs;
    for (int j = s.lo; j <= s.hi; ++j)
      if (lv_has_cluster_x(s, u, j)) xs.push_back({label("x", j, u), lv_cluster_x(s, u, j)});
    for (int i = s.lo; i <= s.hi; ++i) {
      const auto f = lv_f(s, i, u);
      if (!f) continue;
      Named nf{label("f", i, u), *f};
      for (const auto& x : xs) add_entry(t, nf, x, Rat(0), bracket);
      fs.push_back(std::move(nf));
    }
  }
  for (std::size_t a = 0; a < fs.size(); ++a)
    for (std::size_t b = a + 1; b < fs.size(); ++b) add_entry(t, fs[a], fs[b], Rat(0), bracket);
  return t;
}

BracketTable lv_yhat_brackets(LVState& s, const LVPoissonParams& params, const Rat& cy) {
  const ExtendedPoisson e = lv_extended_poisson(s, params, cy);
  auto bracket = [&e](const RatFunc& f, const RatFunc& g) { return symbolic_bracket(f, g, e); };
  auto collect = [&s](int u, int r) {
    std::vector<std::pair<int, Named>> out;  // (block, value)
    for (int i = s.lo; i <= s.hi; ++i) {
      if (mod(i, 3) != r) continue;
      try {
        out.push_back({(i - r) / 3, Named{label("yhat", i, u), lv_yhat_value(s, u, i)}});
      } catch (const std::out_of_range&) {
        // not certified on this window
      }
    }
    return out;
  };
  const auto a = collect(0, 0);
  const auto b = collect(1, 1);
  BracketTable t;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t l = k + 1; l < a.size(); ++l) add_entry(t, a[k].second, a[l].second, Rat(0), bracket);
  for (std::size_t k = 0; k < b.size(); ++k)
    for (std::size_t l = k + 1; l < b.size(); ++l) add_entry(t, b[k].second, b[l].second, Rat(0), bracket);
  for (const auto& [i, ya] : a)
    for (const auto& [j, yb] : b) {
      const Rat expected = cy * (Rat(j == i - 1 ? 1 : 0) - Rat(j == i ? 1 : 0));
      add_entry(t, ya, yb, expected, bracket);
    }
  return t;
}

BracketTable liouville_initial_brackets(int N, const Rat& cy) {
  const ExchangeMatrix b = liouville_matrix(N);
  const int n = b.size();
  ExtendedPoisson e;
  e.px = PoissonMatrix(b.lo(), n);
  e.pxy = QMatrix(n, n);
  const auto d = find_symmetrizer(b);
  e.py = cy * (diagonal(*d) * to_qmatrix(b));
  e.cy = cy;
  auto bracket = [&e](const RatFunc& f, const RatFunc& g) { return symbolic_bracket(f, g, e); };

  const Seed s0 = initial_seed(b, SemifieldTag::universal, false);
  std::vector<int> evens;
  for (int i = b.lo(); i <= b.hi(); ++i)
    if (mod(i, 2) == 0) evens.push_back(i);
  const Seed s1 = apply_word(s0, MutationWord{evens});

  const bool odd = N % 2 == 1;
  const int period = odd ? N : N / 2;
  std::vector<Named> a, c;
  for (int k = 0; k < period; ++k) {
    const std::string an = odd ? "y_" + std::to_string(k) + "+(0)" : label("y", 2 * k, 0);
    const std::string cn = odd ? "y_" + std::to_string(k) + "-(1)" : label("y", 2 * k + 1, 1);
    a.push_back({an, embed(s0.y_at(2 * k))});
    c.push_back({cn, embed(s1.y_at(2 * k + 1))});
  }
  BracketTable t;
  for (int k = 0; k < period; ++k)
    for (int l = k + 1; l < period; ++l) {
      add_entry(t, a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(l)], Rat(0), bracket);
      add_entry(t, c[static_cast<std::size_t>(k)], c[static_cast<std::size_t>(l)], Rat(0), bracket);
    }
  for (int k = 0; k < period; ++k)
    for (int j = 0; j < period; ++j) {
      const int hits = odd ? (j == mod(k + 1, period)) + (j == mod(k - 1, period))
                           : (j == k) + (j == mod(k - 1, period));
      add_entry(t, a[static_cast<std::size_t>(k)], c[static_cast<std::size_t>(j)], Rat(-hits) * cy, bracket);
    }
  return t;
}

}  // namespace clusterflow
