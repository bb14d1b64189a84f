#pragma once

#include <functional>
#include <vector>

#include "clusterflow/exchange_matrix.hpp"
#include "clusterflow/factored.hpp"
#include "clusterflow/seed.hpp"

namespace clusterflow {

// Finite window [lo, hi] of a seed over an infinite periodic-banded matrix,
// advanced by composite class mutations. Every stored value carries a flag
// saying whether it provably agrees with the infinite seed; values that
// cannot be trusted are never computed.
class WindowedRun {
 public:
  using InitialY = std::function<CoefValue(int)>;

  // init_y overrides the initial coefficients (default: the generators).
  WindowedRun(const PeriodicBandedMatrix& rule, int lo, int hi, SemifieldTag tag, bool track_x = true,
              const InitialY& init_y = {});

  // Universal coefficients only: from now on the coefficients are kept as
  // products over `pool`, which keeps deep Y-system values small. Cluster
  // variables, while tracked, still see the expanded coefficient.
  void use_factored_coefficients(AtomPool& pool);
  bool factored() const { return pool_ != nullptr; }

  // Stops computing new cluster variables; values already certified stay
  // certified until their index is mutated.
  void stop_tracking_x() { x_live_ = false; }

  // Simultaneous mutation at every window index congruent to r modulo the
  // period.
  void mutate_class(int r);

  int lo() const { return seed_.b.lo(); }
  int hi() const { return seed_.b.hi(); }
  int depth() const { return depth_; }
  SemifieldTag tag() const { return seed_.tag; }
  bool track_x() const { return seed_.track_x; }

  // The infinite matrix after the mutations applied so far.
  const PeriodicBandedMatrix& exact_matrix() const { return exact_; }
  const Seed& seed() const { return seed_; }

  bool x_safe(int i) const { return seed_.b.contains(i) && x_ok_[off(i)]; }
  bool y_safe(int i) const { return seed_.b.contains(i) && y_ok_[off(i)]; }
  // Column k of the window matrix equals column k of the infinite matrix and
  // no nonzero entry of that column lies outside the window.
  bool column_safe(int k) const;

  // Throw std::logic_error when the value is not certified.
  const RatFunc& x(int i) const;
  const CoefValue& y(int i) const;
  // Coefficient in factored form; requires use_factored_coefficients.
  const Factored& y_factored(int i) const;

  // Conservative certificate: distance to the window boundary at least
  // depth * band.
  bool margin_safe(int i) const;

  // Smallest and largest index whose cluster variable is certified; empty
  // range (hi < lo) when none is.
  std::pair<int, int> x_frontier() const;

 private:
  std::size_t off(int i) const { return static_cast<std::size_t>(i - seed_.b.lo()); }

  PeriodicBandedMatrix exact_;
  Seed seed_;
  std::vector<char> x_ok_, y_ok_;
  AtomPool* pool_ = nullptr;
  std::vector<Factored> fy_;
  bool x_live_ = true;
  int band0_ = 0;
  int depth_ = 0;
};

}  // namespace clusterflow
