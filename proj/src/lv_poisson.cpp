#include "clusterflow/lv_poisson.hpp"

#include <array>
#include <stdexcept>

namespace clusterflow {

namespace {

using Block = std::array<std::array<Rat, 3>, 3>;

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

Block p00(const Rat& a0, const Rat& b0, const Rat& c0) {
  Block m{};
  m[0][1] = a0;
  m[0][2] = b0;
  m[1][2] = c0;
  m[1][0] = -a0;
  m[2][0] = -b0;
  m[2][1] = -c0;
  return m;
}

// Entry (r, s) of the LV block P(i, j).
Rat general_entry(const LVPoissonParams& pp, int i, int j, int r, int s) {
  if (i > j) return -general_entry(pp, j, i, s, r);
  const Block base = p00(pp.a0, pp.b0, pp.c0);
  // P(i,i) = P(0,0) + Delta S - S Delta with Delta = diag(0, a(0)-a(i), b(0)-b(i));
  // the scalar part q(0, i) of Q_{0,i} cancels.
  const Rat delta[3] = {Rat(0), pp.a(0) - pp.a(i), pp.b(0) - pp.b(i)};
  Rat v = base[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] + delta[r] - delta[s];
  if (i < j) {
    const Rat qij = pp.q(i, j);
    const Rat diag[3] = {qij, qij + pp.a(i) - pp.a(j), qij + pp.b(i) - pp.b(j)};
    v += diag[r];
  }
  return v;
}

}  // namespace

LVPoissonParams general_params(const SymLVParams& s) {
  LVPoissonParams p;
  p.a0 = s.a0;
  p.b0 = 2 * s.a0;
  p.c0 = s.a0;
  auto q = s.q;
  p.q = [q](int i, int j) { return j - i == 0 ? Rat(0) : q(j - i); };
  return p;
}

PoissonMatrix lv_general_P(const LVPoissonParams& params, int lo_block, int hi_block) {
  if (hi_block < lo_block) throw std::invalid_argument("empty block window");
  const int lo = 3 * lo_block;
  const int n = 3 * (hi_block - lo_block + 1);
  PoissonMatrix p(lo, n);
  for (int u = lo; u < lo + n; ++u)
    for (int v = u + 1; v < lo + n; ++v) {
      const int i = floor_div(u, 3), j = floor_div(v, 3);
      p.set(u, v, general_entry(params, i, j, u - 3 * i, v - 3 * j));
    }
  p.c = Rat(0);
  return p;
}

PoissonMatrix lv_symmetric_P(const SymLVParams& params, int lo_block, int hi_block) {
  return lv_general_P(general_params(params), lo_block, hi_block);
}

PoissonMatrix lv_periodic_P(int m, const LVPoissonParams& params) {
  if (m < 3) throw std::invalid_argument("periodic LV needs m >= 3");
  return lv_general_P(params, 0, m - 1);
}

PoissonMatrix lv_periodic_P(int m, const Rat& a0, const Rat& b0, const Rat& c0,
                            const std::function<Rat(int, int)>& q) {
  LVPoissonParams pp;
  pp.a0 = a0;
  pp.b0 = b0;
  pp.c0 = c0;
  pp.q = q;
  return lv_periodic_P(m, pp);
}

ExchangeMatrix lv_periodic_matrix(int m) {
  if (m < 3) throw std::invalid_argument("periodic LV needs m >= 3");
  const PeriodicBandedMatrix lv = lv_matrix();
  const int n = 3 * m;
  ExchangeMatrix b(0, n);
  for (int i = 0; i < n; ++i)
    for (int d = -lv.band(); d <= lv.band(); ++d) {
      const int v = lv(i, i + d);
      if (v != 0) b.add(i, ((i + d) % n + n) % n, v);
    }
  validate_skew_symmetrizable(b);
  return b;
}

int lv_periodic_parameter_count(int m) { return lv_periodic_constant_ab_count(m) + 2 * (m - 1); }

int lv_periodic_constant_ab_count(int m) { return 3 + m * (m - 1) / 2; }

int lv_periodic_symmetric_count(int m) { return 1 + (m - 1) / 2; }

PoissonMatrix mutate_poisson_class(const PoissonMatrix& p, const ExchangeMatrix& b, int r, int period) {
  PoissonMatrix out = p;
  ExchangeMatrix bb = b;
  for (int k = b.lo(); k <= b.hi(); ++k) {
    if (((k - r) % period + period) % period != 0) continue;
    out = mutate_poisson_unchecked(out, bb, k);
    bb = mutate_matrix(bb, k);
  }
  return out;
}

}  // namespace clusterflow
