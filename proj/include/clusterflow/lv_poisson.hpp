#pragma once

#include <functional>

#include "clusterflow/exchange_matrix.hpp"
#include "clusterflow/poisson.hpp"

namespace clusterflow {

// Solutions of PB = O for the LV quiver, written in 3x3 blocks
// P(i, j) = (p_{3i+r, 3j+s})_{r,s}. With S the all-ones matrix and
// Q_{ij} = diag(q(i,j), q(i,j) + a(i) - a(j), q(i,j) + b(i) - b(j)):
//   P(0,0) = [[0, a0, b0], [-a0, 0, c0], [-b0, -c0, 0]],
//   P(i,i) = P(0,0) + Q_{0,i} S - S Q_{0,i},
//   P(i,j) = P(i,i) + Q_{ij} S  (i < j),   P(j,i) = -P(i,j)^T.
struct LVPoissonParams {
  Rat a0 = 0, b0 = 0, c0 = 0;
  std::function<Rat(int)> a = [](int) { return Rat(0); };
  std::function<Rat(int)> b = [](int) { return Rat(0); };
  std::function<Rat(int, int)> q = [](int, int) { return Rat(0); };
};

// The family invariant under the LV mutation schedule:
//   P(i,i) = [[0, a0, 2a0], [-a0, 0, a0], [-2a0, -a0, 0]],
//   P(i,j) = P(0,0) + q(j - i) S  (i < j).
struct SymLVParams {
  Rat a0 = 0;
  std::function<Rat(int)> q = [](int) { return Rat(0); };
};

LVPoissonParams general_params(const SymLVParams& s);

// Indices 3 lo_block .. 3 hi_block + 2.
PoissonMatrix lv_general_P(const LVPoissonParams& params, int lo_block, int hi_block);
PoissonMatrix lv_symmetric_P(const SymLVParams& params, int lo_block, int hi_block);
// Periodic quiver on Z/3m, m >= 3, from the block formulas on blocks
// 0 .. m-1 (a, b read on 0 .. m-1, q(i, j) for 0 <= i < j < m).
PoissonMatrix lv_periodic_P(int m, const LVPoissonParams& params);
PoissonMatrix lv_periodic_P(int m, const Rat& a0, const Rat& b0, const Rat& c0,
                            const std::function<Rat(int, int)>& q);
ExchangeMatrix lv_periodic_matrix(int m);

// Dimension of {P skew : P B = O} on the torus. Non-constant a and b survive
// the periodic reduction, so this is 3 + m(m-1)/2 + 2(m-1).
int lv_periodic_parameter_count(int m);
// The sub-family with constant a and b: 3 + m(m-1)/2.
int lv_periodic_constant_ab_count(int m);
// Members invariant under the schedule (shift by one per step and by three
// within a seed): a0 and q_d, d = 1 .. m-1, with q_{m-d} = -q_d.
int lv_periodic_symmetric_count(int m);

// Mutation at every index of the window congruent to r mod period. Entries
// whose update reaches past the window edge are not meaningful; use the
// inner window only.
PoissonMatrix mutate_poisson_class(const PoissonMatrix& p, const ExchangeMatrix& b, int r, int period);

}  // namespace clusterflow
