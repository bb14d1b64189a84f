#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "clusterflow/exchange_matrix.hpp"
#include "clusterflow/rat_func.hpp"
#include "clusterflow/seed.hpp"

namespace clusterflow {

// Integer matrix on the index range of an exchange matrix. C is indexed
// (initial j, current i): column i holds the exponents of [y'_i]_T.
using IntMatrix = ExchangeMatrix;

IntMatrix identity_matrix(int lo, int n);

class BranchDisagreement : public std::runtime_error {
 public:
  BranchDisagreement(const std::vector<int>& path, int j, int i);
  std::vector<int> path;
  int j, i;
};

// One step of the C recursion at k with the current matrix b:
//   c''_{ji} = -c_{ji}                                          i == k,
//   c''_{ji} = c_{ji} + c_{jk} [eps b_ki]_+ + [-eps c_{jk}]_+ b_ki  i != k.
// Both eps = 1 and eps = -1 are evaluated, together with the split form
// (eps = sign of b_ki); any disagreement throws BranchDisagreement.
IntMatrix c_mutate(const IntMatrix& c, const ExchangeMatrix& b, int k, const std::vector<int>& path = {});

struct CStep {
  std::vector<int> path;  // mutations applied so far
  ExchangeMatrix b;
  IntMatrix c;
};

// Letters of the word are flattened (indices inside a letter commute).
std::vector<int> flatten(const MutationWord& word);
std::vector<CStep> c_walk(const ExchangeMatrix& b, const std::vector<int>& word);

// G = D^{-1} (C^{-1})^T D, i.e. (C^{-1})^T for skew-symmetric B (d empty or
// all ones). Throws std::domain_error if G is not integral.
IntMatrix g_matrix(const IntMatrix& c, const std::vector<int>& d = {});
// D^{-1} G^T D C = I; G^T C = I when D = I.
bool gt_c_is_identity(const IntMatrix& g, const IntMatrix& c, const std::vector<int>& d = {});

class NotPolynomial : public std::domain_error {
 public:
  NotPolynomial(int i, const std::string& what)
      : std::domain_error("F-polynomial " + std::to_string(i) + " " + what), index(i) {}
  int index;
};

// F_i = x_i with principal (tropical) coefficients at x = 1. Throws
// NotPolynomial for a negative exponent or a denominator.
std::vector<LaurentPoly> f_polynomials(const Seed& principal);
std::vector<LaurentPoly> f_polynomials(const ExchangeMatrix& b, const std::vector<int>& word);

struct SeparationStep {
  std::vector<int> path;
  bool gt_c = false;             // D^{-1} G^T D C = I
  bool f_constant_one = false;   // every F has constant term 1
  bool y_matches = false;        // y' = y^{c_i} prod_j F_j^{b'_ji}
  bool x_matches = false;        // x' = x^{g_i} F_i(yhat) / F_i(y)
  bool tropical_matches = false; // [y'_i]_T from the tropical walk equals column i of C
  bool g_from_x = false;         // principal x'_i at y = 0 equals x^{g_i}
  bool lowest_monomial = false;  // y'_i / y^{c_i} is regular at y = 0 with value 1
  bool ok() const {
    return gt_c && f_constant_one && y_matches && x_matches && tropical_matches && g_from_x && lowest_monomial;
  }
};

struct SeparationReport {
  bool skew_symmetric = true;  // false: skew-symmetrizable input, accepted with this flag
  std::vector<SeparationStep> steps;  // initial seed first
  std::string first_failure;
  bool ok() const;
};

SeparationReport separation_check(const ExchangeMatrix& b, const std::vector<int>& word);

}  // namespace clusterflow
