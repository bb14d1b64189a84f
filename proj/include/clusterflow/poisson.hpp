#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clusterflow/exchange_matrix.hpp"
#include "clusterflow/qmatrix.hpp"
#include "clusterflow/rat_func.hpp"
#include "clusterflow/semifield.hpp"

namespace clusterflow {

// Log-canonical bracket {x_i, x_j} = p_ij x_i x_j on the index range
// [lo, lo + n). Only i < j is stored.
class PoissonMatrix {
 public:
  PoissonMatrix() = default;
  PoissonMatrix(int lo, int n);
  // Rejects a nonzero diagonal or a non-skew pair with InvalidMatrix.
  static PoissonMatrix from_rows(int lo, const std::vector<std::vector<Rat>>& rows);
  static PoissonMatrix from_qmatrix(int lo, const QMatrix& m);

  int lo() const { return lo_; }
  int hi() const { return lo_ + n_ - 1; }
  int size() const { return n_; }
  bool contains(int i) const { return i >= lo_ && i < lo_ + n_; }

  Rat operator()(int i, int j) const;
  // Sets p_ij and p_ji = -p_ij; i == j requires v == 0.
  void set(int i, int j, const Rat& v);

  // Constant c with PB = cD, when known.
  std::optional<Rat> c;

  QMatrix to_qmatrix() const;
  PoissonMatrix restrict_to(int lo, int hi) const;

  friend bool operator==(const PoissonMatrix& a, const PoissonMatrix& b) {
    return a.lo_ == b.lo_ && a.n_ == b.n_ && a.p_ == b.p_;
  }
  friend bool operator!=(const PoissonMatrix& a, const PoissonMatrix& b) { return !(a == b); }

 private:
  std::size_t idx(int i, int j) const;  // requires i < j
  int lo_ = 0;
  int n_ = 0;
  std::vector<Rat> p_;
};

std::string format(const PoissonMatrix& p);

// Brackets of cluster variables and coefficients:
//   {x_i, x_j} = px_ij x_i x_j, {x_i, y_j} = pxy_ij x_i y_j,
//   {y_i, y_j} = py_ij y_i y_j,
// with all three blocks on the index range of px.
struct ExtendedPoisson {
  PoissonMatrix px;
  QMatrix pxy;
  QMatrix py;
  Rat cx = 0;
  Rat cy = 0;

  int lo() const { return px.lo(); }
  int size() const { return px.size(); }
  // [[Px, Pxy], [-Pxy^T, Py]].
  QMatrix assembled() const;
};

class UncoveredVariable : public std::out_of_range {
 public:
  explicit UncoveredVariable(Var v)
      : std::out_of_range("variable " + default_var_name(v) + " is outside the Poisson structure"), var(v) {}
  Var var;
};

// {f, g} by the Leibniz rule from the log-canonical brackets of the
// variables. Throws UncoveredVariable when f or g mentions a variable the
// structure does not cover (for a PoissonMatrix: any y variable).
RatFunc symbolic_bracket(const RatFunc& f, const RatFunc& g, const PoissonMatrix& p);
RatFunc symbolic_bracket(const RatFunc& f, const RatFunc& g, const ExtendedPoisson& p);

// r with bracket == r f g, or nullopt when the ratio is not a constant.
std::optional<Rat> is_log_canonical(const RatFunc& f, const RatFunc& g, const RatFunc& bracket);

class CompatibilityError : public std::invalid_argument {
 public:
  CompatibilityError(int i, int k, const Rat& value)
      : std::invalid_argument("(PB)_{" + std::to_string(i) + "," + std::to_string(k) + "} = " + to_string(value) +
                              " is off the diagonal; the bracket is not compatible with mutation at " +
                              std::to_string(k)),
        i(i),
        k(k),
        value(value) {}
  int i, k;
  Rat value;
};

// (PB)_{ik} over the shared index range.
Rat pb_entry(const PoissonMatrix& p, const ExchangeMatrix& b, int i, int k);
QMatrix pb_product(const PoissonMatrix& p, const ExchangeMatrix& b);

// P' for mutation at k. Column k of PB must vanish off the diagonal;
// otherwise CompatibilityError names the first offending row. B and P must
// share their index range.
PoissonMatrix mutate_poisson(const PoissonMatrix& p, const ExchangeMatrix& b, int k);
// The same formula without the compatibility check.
PoissonMatrix mutate_poisson_unchecked(const PoissonMatrix& p, const ExchangeMatrix& b, int k);

struct KernelElement {
  PoissonMatrix p;
  Rat c;
};

// Basis of {(P, c) : P skew, PB = cD}. D defaults to the minimal symmetrizer
// of B.
std::vector<KernelElement> skew_kernel(const ExchangeMatrix& b, const std::vector<int>& d);
std::vector<KernelElement> skew_kernel(const ExchangeMatrix& b);

// f_i = prod_j x_j^{b_ji} for the cluster x (indexed from b.lo()).
std::vector<RatFunc> f_variables(const ExchangeMatrix& b, const std::vector<RatFunc>& x);
// B^T P B.
QMatrix induced_Pf(const ExchangeMatrix& b, const PoissonMatrix& p);

struct TwoForm {
  QMatrix w;
  Rat d;  // P W = d I
};

// W = B D^{-1} for PB = cD with c != 0; d = c.
TwoForm two_form(const ExchangeMatrix& b, const std::vector<int>& d, const Rat& c);
// [[B D^{-1}, -D^{-1}], [D^{-1}, cy^{-1} D^{-1} P D^{-1}]] with d = cx + cy.
// Requires cy != 0 and cx + cy != 0.
TwoForm two_form(const ExchangeMatrix& b, const std::vector<int>& d, const PoissonMatrix& p, const Rat& cx,
                 const Rat& cy);

// Pxy = cy D, Py = cy D B, and Px = cx D B^{-1} when B is invertible. For a
// singular B the caller supplies Px with Px B = O (cx must be 0); without it
// the first element of the skew kernel is used.
ExtendedPoisson assemble_extended(const ExchangeMatrix& b, const Rat& cx, const Rat& cy,
                                  const std::optional<PoissonMatrix>& px = std::nullopt);

}  // namespace clusterflow
