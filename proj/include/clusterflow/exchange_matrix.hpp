#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace clusterflow {

class InvalidMatrix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Finite integer matrix on the index range [lo, lo + n).
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;
  ExchangeMatrix(int lo, int n);
  // Rows indexed from lo. Validates skew-symmetrizability.
  static ExchangeMatrix from_rows(int lo, const std::vector<std::vector<int>>& rows);

  int lo() const { return lo_; }
  int hi() const { return lo_ + n_ - 1; }
  int size() const { return n_; }
  bool contains(int i) const { return i >= lo_ && i < lo_ + n_; }

  int operator()(int i, int j) const { return a_[idx(i, j)]; }
  void set(int i, int j, int v) { a_[idx(i, j)] = v; }
  void add(int i, int j, int v) { a_[idx(i, j)] += v; }

  // Largest |i - j| over nonzero entries.
  int band() const;
  // Rows and columns of [lo, hi] only.
  ExchangeMatrix restrict_to(int lo, int hi) const;
  std::vector<std::vector<int>> rows() const;

  friend bool operator==(const ExchangeMatrix& a, const ExchangeMatrix& b) {
    return a.lo_ == b.lo_ && a.n_ == b.n_ && a.a_ == b.a_;
  }
  friend bool operator!=(const ExchangeMatrix& a, const ExchangeMatrix& b) { return !(a == b); }

 private:
  std::size_t idx(int i, int j) const;
  int lo_ = 0;
  int n_ = 0;
  std::vector<int> a_;
};

// Minimal positive integer symmetrizer d (indexed from B.lo()) with
// d_i b_ij = -d_j b_ji, or nullopt if B is not skew-symmetrizable.
std::optional<std::vector<int>> find_symmetrizer(const ExchangeMatrix& b);
// Throws InvalidMatrix naming the offending pair.
void validate_skew_symmetrizable(const ExchangeMatrix& b);
bool is_skew_symmetric(const ExchangeMatrix& b);

// Matrix mutation at k.
ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, int k);

// Infinite matrix with b_{i+p, j+p} = b_{ij}, nonzero only for |i - j| <= band.
// rule maps (i mod p, j - i) to b_ij.
class PeriodicBandedMatrix {
 public:
  using Rule = std::map<std::pair<int, int>, int>;

  PeriodicBandedMatrix() = default;
  PeriodicBandedMatrix(int period, Rule rule);

  int period() const { return period_; }
  int band() const { return band_; }
  const Rule& rule() const { return rule_; }
  int residue(int i) const { return ((i % period_) + period_) % period_; }

  int operator()(int i, int j) const;
  ExchangeMatrix materialize(int lo, int hi) const;

  // Composite mutation at every index congruent to r mod p. The indices of a
  // class must be pairwise unconnected; otherwise InvalidMatrix is thrown.
  PeriodicBandedMatrix mutate_class(int r) const;
  // b'_{ij} = b_{i-s, j-s}.
  PeriodicBandedMatrix shifted(int s) const;

  // Symmetrizer on residue classes, or nullopt.
  std::optional<std::vector<int>> symmetrizer() const;

  friend bool operator==(const PeriodicBandedMatrix& a, const PeriodicBandedMatrix& b) {
    return a.period_ == b.period_ && a.rule_ == b.rule_;
  }
  friend bool operator!=(const PeriodicBandedMatrix& a, const PeriodicBandedMatrix& b) {
    return !(a == b);
  }

 private:
  int period_ = 1;
  int band_ = 0;
  Rule rule_;
};

// Named matrices.
ExchangeMatrix a2_matrix();      // [[0,1],[-1,0]] on indices 1, 2
ExchangeMatrix somos4_matrix();  // indices 1..4
PeriodicBandedMatrix lv_matrix();
PeriodicBandedMatrix alternating_chain_matrix();
ExchangeMatrix liouville_even_matrix(int m);  // N = 2m, indices 0..2m-1, m >= 2
// N = 2m + 1 on the doubled set {i+, i-}: i+ -> 2i, i- -> 2i + 1.
ExchangeMatrix liouville_odd_matrix(int m);  // m >= 1
constexpr int plus_index(int i) { return 2 * i; }
constexpr int minus_index(int i) { return 2 * i + 1; }

}  // namespace clusterflow
