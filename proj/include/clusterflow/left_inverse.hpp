#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "clusterflow/exchange_matrix.hpp"
#include "clusterflow/qmatrix.hpp"

namespace clusterflow {

// Symbol variable z of a periodic-banded matrix.
constexpr Var symbol_var = 0;

// p x p matrix B(z) with B_rs(z) = sum_t b_{r, s + p t} z^t.
Mat<RatFunc> symbol_matrix(const PeriodicBandedMatrix& b);

enum class LeftInverseStatus { exists, none, undecided };
std::string to_string(LeftInverseStatus s);

// Left inverses M of B with DM skew, for periodic-banded B.
//
// If det B(z) != 0, A = B(z)^{-1} has two expansions S+ (in powers of z) and
// S- (in powers of 1/z), each a left inverse of B. The members are
//   M_lambda = diag(lambda) S+ + diag(1 - lambda) S-,   lambda per residue,
// with lambda_r + lambda_s = 1 whenever A_rs is not Laurent. lambda = 1/2
// always qualifies. Differences of members give R = diag(mu)(S+ - S-) with
// RB = O and DR skew.
//
// If det B(z) == 0, a nonzero Laurent vector V(z) with B(z) V(z) = 0 gives a
// finite-support vector v, v_{s + p q} = [z^{-q}] V_s, with Bv = 0, so no
// left inverse exists.
class LeftInverseResult {
 public:
  LeftInverseStatus status = LeftInverseStatus::undecided;
  PeriodicBandedMatrix matrix;
  RatFunc det;
  std::map<int, Rat> certificate;       // status none
  Mat<RatFunc> inverse_symbol;          // status exists
  std::vector<std::vector<Rat>> mu_basis;  // directions of admissible lambda - 1/2

  // Entries of S+ and S-.
  Rat s_plus(int i, int j) const;
  Rat s_minus(int i, int j) const;
  // M_lambda; lambda defaults to 1/2 everywhere.
  Rat m(int i, int j) const;
  Rat m(const std::vector<Rat>& lambda, int i, int j) const;
  Rat r(const std::vector<Rat>& mu, int i, int j) const;
  bool admissible(const std::vector<Rat>& lambda) const;

 private:
  friend LeftInverseResult left_inverse_periodic(const PeriodicBandedMatrix& b);
  struct Series;
  Rat coefficient(int r, int s, int t, bool plus) const;
  std::shared_ptr<std::map<std::pair<int, int>, Series>> cache_;
};

LeftInverseResult left_inverse_periodic(const PeriodicBandedMatrix& b);

}  // namespace clusterflow
