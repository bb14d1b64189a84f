#include "clusterflow/dynamics.hpp"

#include <algorithm>
#include <set>
#include <type_traits>
#include <stdexcept>

#include "clusterflow/windowed_run.hpp"

namespace clusterflow {

namespace {

int mod3(int i) { return ((i % 3) + 3) % 3; }

AtomPool& pool_of(LVState& s) {
  if (!s.pool) s.pool = std::make_shared<AtomPool>();
  return *s.pool;
}

// Coefficient factor picked up by y_i for a mutation at k, i.e. y'_i / y_i.
RatFunc coefficient_factor(const RatFunc& yk, int bki) {
  return std::get<RatFunc>(mutated_coefficient(SemifieldTag::universal, RatFunc(1), yk, bki));
}

}  // namespace

std::vector<RatFunc> lv_constant_initial_coefficients(const Rat& delta) {
  if (delta == -1) throw std::invalid_argument("delta = -1 makes 1 + delta vanish");
  const PeriodicBandedMatrix b0 = lv_matrix();
  const PeriodicBandedMatrix b1 = b0.mutate_class(0);
  const RatFunc d(delta);
  RatFunc f1(1), f2(1);
  for (int k = -b0.band(); k <= 2 + b0.band(); ++k) {
    if (mod3(k) == 0 && b0(k, 1) != 0) f1 *= coefficient_factor(d, b0(k, 1));
    if (mod3(k) == 0 && b0(k, 2) != 0) f2 *= coefficient_factor(d, b0(k, 2));
    if (mod3(k) == 1 && b1(k, 2) != 0) f2 *= coefficient_factor(d, b1(k, 2));
  }
  return {d, d / f1, d / f2};
}

LVState lv_run(const LVOptions& opt) {
  if (opt.depth < 0) throw std::invalid_argument("depth must be non-negative");
  LVState s;
  s.options = opt;
  const int blocks = opt.blocks < 0 ? opt.depth + 2 : opt.blocks;
  s.lo = -3 * blocks;
  s.hi = 3 * blocks + 2;
  const int x_depth = opt.x_depth < 0 ? opt.depth : opt.x_depth;
  SemifieldTag tag = opt.tag;
  WindowedRun::InitialY init;
  if (opt.delta) {
    tag = SemifieldTag::universal;
    s.options.tag = tag;
    std::vector<RatFunc> c = lv_constant_initial_coefficients(*opt.delta);
    init = [c](int i) { return CoefValue(c[static_cast<std::size_t>(mod3(i))]); };
  }
  WindowedRun w(lv_matrix(), s.lo, s.hi, tag, true, init);
  if (tag == SemifieldTag::universal) w.use_factored_coefficients(pool_of(s));

  // x_j keeps its forward value from the seed where it was created until
  // the next mutation at j, so it is recorded under that forward time.
  auto record = [&](int u) {
    for (int i = w.lo(); i <= w.hi(); ++i) {
      const int d = mod3(i - u);
      if (w.x_safe(i) && !s.x.count({u + d, i})) s.x.emplace(Site{u + d, i}, w.x(i));
      if (d != 0 || !w.y_safe(i)) continue;
      if (w.factored()) {
        s.fy.emplace(Site{u, i}, w.y_factored(i));
      } else {
        s.y.emplace(Site{u, i}, w.y(i));
      }
    }
    s.x_frontier.push_back(w.x_frontier());
  };
  record(0);
  for (int u = 0; u < opt.depth; ++u) {
    if (u >= x_depth) w.stop_tracking_x();
    w.mutate_class(u);
    record(u + 1);
  }
  s.matrix = w.exact_matrix();
  return s;
}

Factored lv_factored_x(LVState& s, int u, int i) {
  auto it = s.fx_cache.find({u, i});
  if (it != s.fx_cache.end()) return it->second;
  Factored f = pool_of(s).factor(s.x.at({u, i}));
  s.fx_cache.emplace(Site{u, i}, f);
  return f;
}

Factored lv_factored_y(LVState& s, int u, int i) {
  auto it = s.fy.find({u, i});
  if (it != s.fy.end()) return it->second;
  Factored f = pool_of(s).factor(embed(s.y.at({u, i})));
  s.fy.emplace(Site{u, i}, f);
  return f;
}

Factored lv_yhat(LVState& s, int u, int i) {
  return lv_factored_y(s, u, i) * lv_factored_x(s, u + 1, i - 2) * lv_factored_x(s, u + 2, i + 2) /
         (lv_factored_x(s, u + 2, i - 1) * lv_factored_x(s, u + 1, i + 1));
}

RatFunc lv_yhat_value(LVState& s, int u, int i) { return pool_of(s).to_ratfunc(lv_yhat(s, u, i)); }

std::string to_string(LVRelation r) {
  switch (r) {
    case LVRelation::x_rel: return "x-rel";
    case LVRelation::y_rel: return "y-rel";
    case LVRelation::yhat_rel: return "yhat-rel";
    case LVRelation::yhat_rel_alt: return "yhat-rel-alt";
  }
  return "?";
}

namespace {

// Both sides of the Y-system written over the pool; `v` supplies the
// variables (y or yhat).
template <class V>
bool y_system_holds(AtomPool& pool, int u, int i, V&& v) {
  Factored lhs = v(u, i) * v(u + 3, i);
  Factored rhs = pool.one_plus(v(u + 1, i - 2)) * pool.one_plus(v(u + 2, i + 2)) /
                 (pool.one_plus(inverse(v(u + 1, i + 1))) * pool.one_plus(inverse(v(u + 2, i - 1))));
  return pool.equal(lhs, rhs);
}

bool tropical_y_system_holds(const LVState& s, int u, int i) {
  const SemifieldTag tag = s.options.tag;
  auto y = [&](int a, int b) -> const CoefValue& { return s.y.at({a, b}); };
  CoefValue lhs = semifield_mul(y(u, i), y(u + 3, i));
  CoefValue num = semifield_mul(one_plus(tag, y(u + 1, i - 2)), one_plus(tag, y(u + 2, i + 2)));
  CoefValue den = semifield_mul(one_plus(tag, semifield_pow(y(u + 1, i + 1), -1)),
                                one_plus(tag, semifield_pow(y(u + 2, i - 1), -1)));
  return lhs == semifield_div(num, den);
}

}  // namespace

std::vector<RelationResult> check_lv_relation(LVState& s, LVRelation r) {
  std::vector<RelationResult> out;
  const SemifieldTag tag = s.options.tag;
  if (r == LVRelation::y_rel && tag == SemifieldTag::trivial) return out;
  AtomPool& pool = pool_of(s);
  std::set<Site> sites;
  for (const auto& kv : s.x) sites.insert(kv.first);
  for (const auto& kv : s.y) sites.insert(kv.first);
  for (const auto& kv : s.fy) sites.insert(kv.first);
  for (const Site& site : sites) {
    const auto [u, i] = site;
    if (mod3(i - u) != 0 || u < 0) continue;
    bool holds = false;
    try {
      switch (r) {
        case LVRelation::x_rel: {
          Factored y = lv_factored_y(s, u, i);
          Factored onep = tag == SemifieldTag::universal
                              ? pool.one_plus(y)
                              : pool.factor(embed(one_plus(tag, s.y.at({u, i}))));
          Factored lhs = lv_factored_x(s, u, i) * lv_factored_x(s, u + 3, i) * onep;
          Factored rhs = pool.sum(y * lv_factored_x(s, u + 1, i - 2) * lv_factored_x(s, u + 2, i + 2),
                                  lv_factored_x(s, u + 2, i - 1) * lv_factored_x(s, u + 1, i + 1));
          holds = pool.equal(lhs, rhs);
          break;
        }
        case LVRelation::y_rel:
          if (tag == SemifieldTag::universal) {
            holds = y_system_holds(pool, u, i, [&](int a, int b) { return lv_factored_y(s, a, b); });
          } else {
            holds = tropical_y_system_holds(s, u, i);
          }
          break;
        case LVRelation::yhat_rel:
          holds = y_system_holds(pool, u, i, [&](int a, int b) { return lv_yhat(s, a, b); });
          break;
        case LVRelation::yhat_rel_alt: {
          auto v = [&](int a, int b) { return lv_yhat(s, a, b); };
          Factored lhs = v(u + 2, i - 1) / v(u, i) * pool.one_plus(v(u + 1, i - 2)) / pool.one_plus(v(u + 1, i + 1));
          Factored rhs = v(u + 3, i) / v(u + 1, i + 1) * pool.one_plus(v(u + 2, i - 1)) / pool.one_plus(v(u + 2, i + 2));
          holds = pool.equal(lhs, rhs);
          break;
        }
      }
    } catch (const std::out_of_range&) {
      continue;  // some ingredient is outside the certified window
    }
    out.push_back({to_string(r), u, i, holds});
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool is_zero_value(const Rat& v) { return v == 0; }
bool is_zero_value(const RatFunc& v) { return v.is_zero(); }

Rat quotient(const Rat& a, const Rat& b) { return a / b; }
RatFunc quotient(const RatFunc& a, const RatFunc& b) {
  // Tau values stay Laurent; try the cheap exact division first.
  if (a.is_laurent() && b.is_laurent()) {
    if (auto q = exact_div_laurent(a.num(), b.num())) return RatFunc(*q);
  }
  return a / b;
}

}  // namespace

template <class T>
BasicTauLattice<T> tau_run(const T& delta, const std::map<std::pair<int, int>, T>& init, int steps) {
  const T one(1);
  const T opd = one + delta;
  if (is_zero_value(opd)) throw std::invalid_argument("1 + delta must be nonzero");
  if (init.empty()) throw std::invalid_argument("no initial data");
  int s0 = init.begin()->first.first + init.begin()->first.second;
  for (const auto& kv : init) s0 = std::min(s0, kv.first.first + kv.first.second);
  for (const auto& kv : init) {
    const int level = kv.first.first + kv.first.second;
    if (level > s0 + 2) throw std::invalid_argument("initial data must lie on three consecutive levels");
  }
  const T a = delta / opd, b = one / opd;
  BasicTauLattice<T> lat;
  lat.delta = delta;
  lat.tau = init;
  auto get = [&](int n, int t) -> const T* {
    auto it = lat.tau.find({n, t});
    return it == lat.tau.end() ? nullptr : &it->second;
  };
  for (int level = s0 + 3; level <= s0 + 2 + steps; ++level) {
    std::set<std::pair<int, int>> cand;
    for (const auto& kv : lat.tau) {
      const auto [n, t] = kv.first;
      if (n + t != level - 1) continue;
      cand.insert({n + 1, t});
      cand.insert({n, t + 1});
    }
    for (const auto& [n, t] : cand) {
      const T* A = get(n - 1, t - 2);
      const T* B = get(n, t - 2);
      const T* C = get(n - 1, t);
      const T* D = get(n - 1, t - 1);
      const T* E = get(n, t - 1);
      if (!A || !B || !C || !D || !E) continue;
      if (is_zero_value(*A)) throw LatticeDivisionByZero(n - 1, t - 2);
      T value = quotient(a * (*B) * (*C) + b * (*D) * (*E), *A);
      lat.tau.emplace(std::make_pair(n, t), std::move(value));
    }
  }
  if constexpr (std::is_same_v<T, Rat>) {
    for (const auto& kv : lat.tau) {
      const auto [n, t] = kv.first;
      const T* up = get(n, t + 1);
      const T* dn = get(n + 1, t - 1);
      const T* side = get(n + 1, t);
      if (!up || !dn || !side) continue;
      T den = *side * kv.second;
      if (is_zero_value(den)) continue;
      lat.u_values.emplace(kv.first, (*up) * (*dn) / den);
    }
  }
  return lat;
}

std::vector<RelationResult> check_u_relation(const TauLattice& lat) {
  std::vector<RelationResult> out;
  auto get = [&](int n, int t) -> const Rat* {
    auto it = lat.u_values.find({n, t});
    return it == lat.u_values.end() ? nullptr : &it->second;
  };
  for (const auto& kv : lat.u_values) {
    const auto [n, t] = kv.first;
    const Rat* nw = get(n + 1, t + 1);
    const Rat* right = get(n + 1, t);
    const Rat* up = get(n, t + 1);
    if (!nw || !right || !up) continue;
    Rat lhs = (*nw) * (1 + lat.delta * (*right));
    Rat rhs = kv.second * (1 + lat.delta * (*up));
    out.push_back({"u-rel", t, n, lhs == rhs});
  }
  return out;
}

Factored lattice_u(const SymbolicTauLattice& lat, AtomPool& pool, int n, int t) {
  auto f = [&](int a, int b) { return pool.factor(lat.tau.at({a, b})); };
  return f(n, t + 1) * f(n + 1, t - 1) / (f(n + 1, t) * f(n, t));
}

std::vector<RelationResult> check_u_relation(const SymbolicTauLattice& lat, AtomPool& pool) {
  std::vector<RelationResult> out;
  const Factored delta = pool.factor(lat.delta);
  std::map<std::pair<int, int>, Factored> cache;
  auto u = [&](int n, int t) -> const Factored& {
    auto it = cache.find({n, t});
    if (it != cache.end()) return it->second;
    return cache.emplace(std::make_pair(n, t), lattice_u(lat, pool, n, t)).first->second;
  };
  for (const auto& kv : lat.tau) {
    const auto [n, t] = kv.first;
    try {
      Factored lhs = u(n + 1, t + 1) * pool.one_plus(delta * u(n + 1, t));
      Factored rhs = u(n, t) * pool.one_plus(delta * u(n, t + 1));
      out.push_back({"u-rel", t, n, pool.equal(lhs, rhs)});
    } catch (const std::out_of_range&) {
    }
  }
  return out;
}

template TauLattice tau_run<Rat>(const Rat&, const std::map<std::pair<int, int>, Rat>&, int);
template SymbolicTauLattice tau_run<RatFunc>(const RatFunc&, const std::map<std::pair<int, int>, RatFunc>&, int);

std::pair<int, int> lv_to_lattice(int u, int i) {
  if (mod3(i - u) != 0) throw std::invalid_argument("not a forward point");
  return {(2 * u + i) / 3, (u - i) / 3};
}

std::pair<int, int> lattice_to_lv(int t, int n) { return {t + n, t - 2 * n}; }

std::map<std::pair<int, int>, RatFunc> lv_tau_initial(int lo, int hi) {
  std::map<std::pair<int, int>, RatFunc> out;
  for (int u = 0; u <= 2; ++u) {
    for (int i = lo; i <= hi; ++i) {
      if (mod3(i - u) != 0) continue;
      const auto [t, n] = lv_to_lattice(u, i);
      out.emplace(std::make_pair(n, t), RatFunc::variable(x_var(i)));
    }
  }
  return out;
}

IdentifyReport identify_lv(LVState& state, const SymbolicTauLattice& lat) {
  if (!state.options.delta) throw std::invalid_argument("identification needs constant coefficients");
  AtomPool& pool = pool_of(state);
  const Factored delta = Factored::constant(*state.options.delta);
  IdentifyReport rep;
  for (const auto& [site, xv] : state.x) {
    const auto [u, i] = site;
    if (mod3(i - u) != 0) continue;
    const auto [t, n] = lv_to_lattice(u, i);
    auto it = lat.tau.find({n, t});
    if (it == lat.tau.end()) continue;
    ++rep.x_sites;
    if (it->second == xv) {
      ++rep.x_matches;
    } else {
      rep.mismatches.push_back(site);
    }
  }
  for (const auto& kv : state.x) {
    const auto [u, i] = kv.first;
    if (mod3(i - u) != 0) continue;
    const auto [t, n] = lv_to_lattice(u, i);
    // yhat_i(u) involves tau on levels u .. u+2, i.e. u^{t+1}_n.
    Factored yh, lu;
    try {
      lu = lattice_u(lat, pool, n, t + 1);
      yh = lv_yhat(state, u, i);
    } catch (const std::out_of_range&) {
      continue;
    }
    ++rep.yhat_sites;
    if (pool.equal(yh, delta * lu)) {
      ++rep.yhat_matches;
    } else {
      rep.mismatches.push_back(kv.first);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

ExchangeMatrix liouville_matrix(int N) {
  if (N < 2) throw std::invalid_argument("the period N must be at least 2");
  if (N == 2) throw std::invalid_argument("N = 2 (m = 1) has no well-formed even quiver; use N >= 3");
  return N % 2 == 0 ? liouville_even_matrix(N / 2) : liouville_odd_matrix((N - 1) / 2);
}

int liouville_index(int N, int n, int t) {
  n = ((n % N) + N) % N;
  if (N % 2 == 0) return n;
  return (t % 2 == 0) ? plus_index(n) : minus_index(n);
}

namespace {

bool has_forward_point(int N, int n, int t) {
  if (N % 2 != 0) return true;
  return ((n + t) % 2 + 2) % 2 == 0;
}

// Flat indices mutated at time u: even indices at even u.
std::vector<int> liouville_class(const ExchangeMatrix& b, int u) {
  std::vector<int> out;
  for (int i = b.lo(); i <= b.hi(); ++i) {
    if (((i - u) % 2 + 2) % 2 == 0) out.push_back(i);
  }
  return out;
}

}  // namespace

LiouvilleState liouville_run(int N, int steps, const std::map<std::pair<int, int>, RatFunc>& initial) {
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  LiouvilleState st;
  st.N = N;
  st.odd = N % 2 != 0;
  st.steps = steps;
  const ExchangeMatrix b = liouville_matrix(N);
  Seed seed = initial_seed(b, SemifieldTag::universal, false);

  auto datum = [&](int n, int t) {
    auto it = initial.find({n, t});
    if (it != initial.end()) return it->second;
    return RatFunc::variable(y_var(liouville_index(N, n, t)));
  };
  // chi on t = 0 is y(0) directly; chi on t = 1 fixes y(0) at the odd-class
  // indices through the first half step.
  for (int n = 0; n < N; ++n) {
    if (has_forward_point(N, n, 0)) seed.y_at(liouville_index(N, n, 0)) = datum(n, 0);
  }
  const std::vector<int> first = liouville_class(b, 0);
  for (int n = 0; n < N; ++n) {
    if (!has_forward_point(N, n, 1)) continue;
    const int j = liouville_index(N, n, 1);
    RatFunc f(1);
    for (int k : first) {
      if (b(k, j) != 0) f *= coefficient_factor(std::get<RatFunc>(seed.y_at(k)), b(k, j));
    }
    seed.y_at(j) = datum(n, 1) / f;
  }

  auto record = [&](int t) {
    for (int n = 0; n < N; ++n) {
      if (!has_forward_point(N, n, t)) continue;
      st.chi[{n, t}] = std::get<RatFunc>(seed.y_at(liouville_index(N, n, t)));
    }
  };
  for (int t = 0; t <= steps + 1; ++t) {
    record(t);
    if (t <= steps) seed = apply_word(seed, MutationWord{liouville_class(b, t)});
  }
  st.seed = std::move(seed);
  return st;
}

std::vector<RelationResult> check_liouville(const LiouvilleState& s) {
  std::vector<RelationResult> out;
  const RatFunc one(1);
  auto chi = [&](int n, int t) -> const RatFunc* {
    n = ((n % s.N) + s.N) % s.N;
    auto it = s.chi.find({n, t});
    return it == s.chi.end() ? nullptr : &it->second;
  };
  int t_max = 0;
  for (const auto& kv : s.chi) t_max = std::max(t_max, kv.first.second);
  // The centre (n, t) itself carries no value for even N.
  for (int t = 1; t < t_max; ++t) {
    for (int n = 0; n < s.N; ++n) {
      const RatFunc* next = chi(n, t + 1);
      const RatFunc* prev = chi(n, t - 1);
      const RatFunc* left = chi(n - 1, t);
      const RatFunc* right = chi(n + 1, t);
      if (!next || !prev || !left || !right) continue;
      out.push_back({"liouville", t, n, (*next) * (*prev) == (one + *left) * (one + *right)});
    }
  }
  return out;
}

}  // namespace clusterflow
