#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clusterflow/dynamics.hpp"
#include "clusterflow/lv_poisson.hpp"
#include "clusterflow/poisson.hpp"

namespace clusterflow {

// One bracket {f, g} = r f g compared against its expected coefficient.
struct BracketEntry {
  std::string left, right;
  Rat expected;
  std::optional<Rat> observed;  // nullopt: not log-canonical
  bool ok() const { return observed && *observed == expected; }
};

struct BracketTable {
  std::vector<BracketEntry> entries;
  int failures() const;
  bool ok() const { return !entries.empty() && failures() == 0; }
};

// Value of x_j in seed `seed` of an LV run.
const RatFunc& lv_cluster_x(const LVState& s, int seed, int j);
bool lv_has_cluster_x(const LVState& s, int seed, int j);
// f_i(u) = x_{i-2}(u+1) x_{i+2}(u+2) / (x_{i-1}(u+2) x_{i+1}(u+1)).
std::optional<RatFunc> lv_f(const LVState& s, int i, int u);

// Brackets on the LV run window: Px from `params`, Pxy = cy I, Py = cy B.
ExtendedPoisson lv_extended_poisson(const LVState& s, const LVPoissonParams& params, const Rat& cy);

// {f_i(u), x_j(u)} = 0 and {f_i(u), f_j(v)} = 0 for u, v in `seeds`, over
// every index whose values the run certifies. The run should track x only.
BracketTable lv_f_brackets(const LVState& s, const LVPoissonParams& params, const std::vector<int>& seeds);

// {yhat_3i(0), yhat_3j(0)} = {yhat_3i+1(1), yhat_3j+1(1)} = 0 and
// {yhat_3i(0), yhat_3j+1(1)} = cy (-delta_{j,i} + delta_{j,i-1}). Needs a
// universal run of depth >= 3.
BracketTable lv_yhat_brackets(LVState& s, const LVPoissonParams& params, const Rat& cy);

// Initial Liouville data y(0) on the even flat indices and y(1) = mu_+(y) on
// the odd ones, with {y_i, y_j} = cy b_ij y_i y_j. Even N = 2m:
//   {y_2k(0), y_2j+1(1)} = -cy (delta_{j,k} + delta_{j,k-1});
// odd N: {y_i+(0), y_j-(1)} = -cy (delta_{j,i+1} + delta_{j,i-1});
// all other pairs 0.
BracketTable liouville_initial_brackets(int N, const Rat& cy);

}  // namespace clusterflow
