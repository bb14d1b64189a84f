#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clusterflow/exchange_matrix.hpp"
#include "clusterflow/factored.hpp"
#include "clusterflow/seed.hpp"

namespace clusterflow {

// (u, i): time and index of a forward mutation point.
using Site = std::pair<int, int>;

struct RelationResult {
  std::string relation;
  int u = 0;
  int i = 0;
  bool residual_zero = false;
};

// ---------------------------------------------------------------------------
// Lotka-Volterra: the 3-periodic quiver mutated along classes 0, 1, 2, 0, ...

struct LVOptions {
  int depth = 3;
  // Window of blocks -L..L, i.e. indices -3L..3L+2. Negative: depth + 2.
  int blocks = -1;
  SemifieldTag tag = SemifieldTag::universal;
  // Last seed whose cluster variables are computed. Negative: depth.
  int x_depth = -1;
  // Constant coefficients: y_i(u) = delta at every forward point. Implies
  // universal coefficients with constant values.
  std::optional<Rat> delta;
};

struct LVState {
  LVOptions options;
  int lo = 0;
  int hi = 0;
  PeriodicBandedMatrix matrix;  // B(depth)
  // Forward values x_i(u), y_i(u) for u = i mod 3, only where certified.
  std::map<Site, RatFunc> x;
  std::map<Site, CoefValue> y;   // tropical and trivial runs
  std::map<Site, Factored> fy;   // universal runs, over *pool
  std::shared_ptr<AtomPool> pool;
  // Certified x index range per seed; empty (first > second) when none.
  std::vector<std::pair<int, int>> x_frontier;

  bool has_x(int u, int i) const { return x.count({u, i}) != 0; }
  bool has_y(int u, int i) const { return y.count({u, i}) != 0 || fy.count({u, i}) != 0; }

  // Underlying caches; filled lazily by the relation checks.
  std::map<Site, Factored> fx_cache;
};

// y_i(0) for i = 0, 1, 2 (then 3-periodic) making y = delta at every forward
// point.
std::vector<RatFunc> lv_constant_initial_coefficients(const Rat& delta);

LVState lv_run(const LVOptions& options);

// Coefficient and cluster variable at a forward point in the ambient field,
// factored over state.pool. Throw std::out_of_range when not certified.
Factored lv_factored_x(LVState& s, int u, int i);
Factored lv_factored_y(LVState& s, int u, int i);
Factored lv_yhat(LVState& s, int u, int i);
RatFunc lv_yhat_value(LVState& s, int u, int i);

enum class LVRelation { x_rel, y_rel, yhat_rel, yhat_rel_alt };
std::string to_string(LVRelation r);

// Residual check at every forward point whose ingredients are all certified.
// The y relation over the trivial semifield is vacuous and yields no points.
std::vector<RelationResult> check_lv_relation(LVState& s, LVRelation r);

// ---------------------------------------------------------------------------
// Bilinear form on the (n, t) lattice, organised by diagonal levels t + n.

template <class T>
struct BasicTauLattice {
  T delta;
  std::map<std::pair<int, int>, T> tau;      // (n, t)
  std::map<std::pair<int, int>, T> u_values; // (n, t); numeric lattices only
};
using TauLattice = BasicTauLattice<Rat>;
using SymbolicTauLattice = BasicTauLattice<RatFunc>;

class LatticeDivisionByZero : public std::domain_error {
 public:
  LatticeDivisionByZero(int n, int t)
      : std::domain_error("zero denominator at lattice site (n=" + std::to_string(n) + ", t=" + std::to_string(t) + ")"),
        n(n),
        t(t) {}
  int n, t;
};

// `init` holds tau on three consecutive levels t + n = s0, s0+1, s0+2 (the
// recursion spans four levels). Every site the data determines on the next
// `steps` levels is computed, then u = tau^{t+1}_n tau^{t-1}_{n+1} /
// (tau^t_{n+1} tau^t_n) wherever defined. Symbolic lattices leave u_values
// empty: the reduced ratios are large, so u is handled in factored form.
template <class T>
BasicTauLattice<T> tau_run(const T& delta, const std::map<std::pair<int, int>, T>& init, int steps);

// u^{t+1}_{n+1} (1 + delta u^t_{n+1}) = u^t_n (1 + delta u^{t+1}_n) at every
// site where all four values exist.
std::vector<RelationResult> check_u_relation(const TauLattice& lattice);

// u^t_n over `pool`; throws std::out_of_range when a tau value is missing.
Factored lattice_u(const SymbolicTauLattice& lattice, AtomPool& pool, int n, int t);
std::vector<RelationResult> check_u_relation(const SymbolicTauLattice& lattice, AtomPool& pool);

// (u, i) -> (t, n) = ((2u + i) / 3, (u - i) / 3).
std::pair<int, int> lv_to_lattice(int u, int i);
std::pair<int, int> lattice_to_lv(int t, int n);

// tau^t_n = x_{t - 2n} on levels 0, 1, 2: the LV initial cluster as lattice
// data.
std::map<std::pair<int, int>, RatFunc> lv_tau_initial(int lo, int hi);

struct IdentifyReport {
  int x_sites = 0, x_matches = 0;
  int yhat_sites = 0, yhat_matches = 0;
  std::vector<Site> mismatches;
  bool ok() const { return mismatches.empty() && x_sites > 0 && yhat_sites > 0; }
};

// x_i(u) against tau^t_n and yhat_i(u) / delta against u^{t+1}_n at every
// forward point present in both runs.
IdentifyReport identify_lv(LVState& state, const SymbolicTauLattice& lattice);

// ---------------------------------------------------------------------------
// N-periodic Liouville equation.

struct LiouvilleState {
  int N = 0;
  bool odd = false;
  int steps = 0;
  Seed seed;                                      // after the last step
  std::map<std::pair<int, int>, RatFunc> chi;     // (n, t)
};

// Quiver for N: the even family for N = 2m, the doubled odd family for
// N = 2m + 1. Throws std::invalid_argument for N = 2 and N < 2.
ExchangeMatrix liouville_matrix(int N);
// Flat index carrying chi_{n,t}: n for even N; n_+ (t even) or n_- (t odd)
// for odd N.
int liouville_index(int N, int n, int t);

// chi_{n,t} for t = 0 .. steps + 1 from chi on t = 0, 1 (only the sites with
// a forward point: n + t even for even N, all n for odd N). Missing initial
// data defaults to symbolic values (the coefficient generator of the
// carrying index).
LiouvilleState liouville_run(int N, int steps, const std::map<std::pair<int, int>, RatFunc>& initial = {});

// chi_{n,t+1} chi_{n,t-1} = (1 + chi_{n-1,t})(1 + chi_{n+1,t}) wherever all
// values exist.
std::vector<RelationResult> check_liouville(const LiouvilleState& s);

}  // namespace clusterflow
