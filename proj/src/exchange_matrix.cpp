#include "clusterflow/exchange_matrix.hpp"

#include <cstdlib>
#include <functional>
#include <numeric>

namespace clusterflow {

ExchangeMatrix::ExchangeMatrix(int lo, int n) : lo_(lo), n_(n), a_(static_cast<std::size_t>(n) * n, 0) {
  if (n < 0) throw InvalidMatrix("negative matrix size");
}

std::size_t ExchangeMatrix::idx(int i, int j) const {
  if (!contains(i) || !contains(j)) {
    throw std::out_of_range("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside [" + std::to_string(lo_) + "," + std::to_string(hi()) + "]");
  }
  return static_cast<std::size_t>(i - lo_) * n_ + static_cast<std::size_t>(j - lo_);
}

ExchangeMatrix ExchangeMatrix::from_rows(int lo, const std::vector<std::vector<int>>& rows) {
  ExchangeMatrix b(lo, static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw InvalidMatrix("matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      b.set(lo + static_cast<int>(i), lo + static_cast<int>(j), rows[i][j]);
    }
  }
  validate_skew_symmetrizable(b);
  return b;
}

int ExchangeMatrix::band() const {
  int w = 0;
  for (int i = lo_; i <= hi(); ++i)
    for (int j = lo_; j <= hi(); ++j)
      if ((*this)(i, j) != 0) w = std::max(w, std::abs(i - j));
  return w;
}

ExchangeMatrix ExchangeMatrix::restrict_to(int lo, int hi) const {
  ExchangeMatrix b(lo, hi - lo + 1);
  for (int i = lo; i <= hi; ++i)
    for (int j = lo; j <= hi; ++j) b.set(i, j, (*this)(i, j));
  return b;
}

std::vector<std::vector<int>> ExchangeMatrix::rows() const {
  std::vector<std::vector<int>> r(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_)));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[i][j] = (*this)(lo_ + i, lo_ + j);
  return r;
}

namespace {

// Constraint d_i * a = d_j * b with a, b > 0.
struct Link {
  int i, j;
  long a, b;
};

// Propagates d over the links, then scales each component to minimal
// positive integers.
std::optional<std::vector<int>> symmetrize(int n, const std::vector<Link>& links) {
  std::vector<std::vector<const Link*>> adj(static_cast<std::size_t>(n));
  for (const auto& l : links) adj[l.i].push_back(&l);
  std::vector<long> num(static_cast<std::size_t>(n), 0), den(static_cast<std::size_t>(n), 1);
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    num[s] = 1;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (const Link* l : adj[i]) {
        long nj = num[i] * l->a, dj = den[i] * l->b;
        long g = std::gcd(nj, dj);
        nj /= g;
        dj /= g;
        if (comp[l->j] < 0) {
          comp[l->j] = ncomp;
          num[l->j] = nj;
          den[l->j] = dj;
          stack.push_back(l->j);
        } else if (num[l->j] * dj != nj * den[l->j]) {
          return std::nullopt;
        }
      }
    }
    ++ncomp;
  }
  std::vector<int> d(static_cast<std::size_t>(n));
  for (int c = 0; c < ncomp; ++c) {
    long l = 1;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) l = std::lcm(l, den[i]);
    long g = 0;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) g = std::gcd(g, num[i] * (l / den[i]));
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) d[i] = static_cast<int>(num[i] * (l / den[i]) / g);
  }
  return d;
}

}  // namespace

std::optional<std::vector<int>> find_symmetrizer(const ExchangeMatrix& b) {
  std::vector<Link> links;
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      int x = b(b.lo() + i, b.lo() + j), y = b(b.lo() + j, b.lo() + i);
      if ((x == 0) != (y == 0) || (x != 0 && (x > 0) == (y > 0))) return std::nullopt;
      if (x != 0) links.push_back({i, j, std::abs(x), std::abs(y)});
    }
  return symmetrize(b.size(), links);
}

void validate_skew_symmetrizable(const ExchangeMatrix& b) {
  for (int i = b.lo(); i <= b.hi(); ++i) {
    if (b(i, i) != 0) throw InvalidMatrix("nonzero diagonal entry at " + std::to_string(i));
    for (int j = b.lo(); j <= b.hi(); ++j) {
      int x = b(i, j), y = b(j, i);
      if ((x == 0) != (y == 0) || (x != 0 && (x > 0) == (y > 0))) {
        throw InvalidMatrix("sign pattern not skew at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  if (!find_symmetrizer(b)) throw InvalidMatrix("matrix is not skew-symmetrizable");
}

bool is_skew_symmetric(const ExchangeMatrix& b) {
  for (int i = b.lo(); i <= b.hi(); ++i)
    for (int j = b.lo(); j <= b.hi(); ++j)
      if (b(i, j) != -b(j, i)) return false;
  return true;
}

namespace {

int mutated_entry(int bij, int bik, int bkj) {
  // b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2, always an integer.
  return bij + (std::abs(bik) * bkj + bik * std::abs(bkj)) / 2;
}

}  // namespace

ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, int k) {
  if (!b.contains(k)) throw std::out_of_range("mutation index " + std::to_string(k) + " outside matrix");
  ExchangeMatrix r = b;
  for (int i = b.lo(); i <= b.hi(); ++i) {
    for (int j = b.lo(); j <= b.hi(); ++j) {
      if (i == k || j == k) {
        r.set(i, j, -b(i, j));
      } else {
        r.set(i, j, mutated_entry(b(i, j), b(i, k), b(k, j)));
      }
    }
  }
  return r;
}

PeriodicBandedMatrix::PeriodicBandedMatrix(int period, Rule rule) : period_(period) {
  if (period < 1) throw InvalidMatrix("period must be positive");
  for (auto& [key, v] : rule) {
    if (key.first < 0 || key.first >= period) throw InvalidMatrix("rule class out of range");
    if (v == 0) continue;
    if (key.second == 0) throw InvalidMatrix("nonzero diagonal in rule");
    rule_[key] = v;
    band_ = std::max(band_, std::abs(key.second));
  }
  for (const auto& [key, v] : rule_) {
    int j = key.first + key.second;
    int back = (*this)(j, key.first);
    if (back == 0 || (back > 0) == (v > 0)) {
      throw InvalidMatrix("rule not skew at class " + std::to_string(key.first) + ", offset " +
                          std::to_string(key.second));
    }
  }
  if (!symmetrizer()) throw InvalidMatrix("periodic matrix is not skew-symmetrizable");
}

int PeriodicBandedMatrix::operator()(int i, int j) const {
  int off = j - i;
  if (std::abs(off) > band_) return 0;
  auto it = rule_.find({residue(i), off});
  return it == rule_.end() ? 0 : it->second;
}

ExchangeMatrix PeriodicBandedMatrix::materialize(int lo, int hi) const {
  if (hi < lo) throw std::invalid_argument("empty window");
  ExchangeMatrix b(lo, hi - lo + 1);
  for (int i = lo; i <= hi; ++i)
    for (int j = std::max(lo, i - band_); j <= std::min(hi, i + band_); ++j) b.set(i, j, (*this)(i, j));
  return b;
}

PeriodicBandedMatrix PeriodicBandedMatrix::mutate_class(int r) const {
  r = residue(r);
  for (const auto& [key, v] : rule_) {
    if (key.first == r && residue(key.first + key.second) == r) {
      throw InvalidMatrix("class " + std::to_string(r) + " is not commuting: b(" + std::to_string(r) + "," +
                          std::to_string(r + key.second) + ") = " + std::to_string(v));
    }
  }
  Rule out;
  for (int c = 0; c < period_; ++c) {
    for (int off = -2 * band_; off <= 2 * band_; ++off) {
      if (off == 0) continue;
      int i = c, j = c + off;
      int v;
      if (residue(i) == r || residue(j) == r) {
        v = -(*this)(i, j);
      } else {
        v = (*this)(i, j);
        for (int k = i - band_; k <= i + band_; ++k) {
          if (residue(k) != r) continue;
          v = mutated_entry(v, (*this)(i, k), (*this)(k, j));
        }
      }
      if (v != 0) out[{c, off}] = v;
    }
  }
  return PeriodicBandedMatrix(period_, std::move(out));
}

PeriodicBandedMatrix PeriodicBandedMatrix::shifted(int s) const {
  Rule out;
  for (const auto& [key, v] : rule_) out[{residue(key.first + s), key.second}] = v;
  return PeriodicBandedMatrix(period_, std::move(out));
}

std::optional<std::vector<int>> PeriodicBandedMatrix::symmetrizer() const {
  // d depends only on the residue class: d_c |b_{c, c+o}| = d_{c+o} |b_{c+o, c}|.
  std::vector<Link> links;
  for (const auto& [key, v] : rule_) {
    int back = (*this)(key.first + key.second, key.first);
    if (back == 0 || (back > 0) == (v > 0)) return std::nullopt;
    links.push_back({key.first, residue(key.first + key.second), std::abs(v), std::abs(back)});
  }
  return symmetrize(period_, links);
}

ExchangeMatrix a2_matrix() { return ExchangeMatrix::from_rows(1, {{0, 1}, {-1, 0}}); }

ExchangeMatrix somos4_matrix() {
  return ExchangeMatrix::from_rows(1, {{0, -1, 2, -1}, {1, 0, -3, 2}, {-2, 3, 0, -1}, {1, -2, 1, 0}});
}

PeriodicBandedMatrix lv_matrix() {
  PeriodicBandedMatrix::Rule r{
      {{0, 1}, 1},  {{0, -1}, 1}, {{0, 2}, -1}, {{0, -2}, -1},
      {{1, 1}, 1},  {{1, 2}, 1},  {{1, -3}, 1}, {{1, -1}, -1}, {{1, -2}, -1}, {{1, 3}, -1},
      {{2, 1}, -1}, {{2, -1}, -1}, {{2, 2}, 1}, {{2, -2}, 1},
  };
  return PeriodicBandedMatrix(3, r);
}

PeriodicBandedMatrix alternating_chain_matrix() {
  // b_ij = (-1)^i (delta_{i,j+1} + delta_{i,j-1})
  PeriodicBandedMatrix::Rule r{{{0, 1}, 1}, {{0, -1}, 1}, {{1, 1}, -1}, {{1, -1}, -1}};
  return PeriodicBandedMatrix(2, r);
}

ExchangeMatrix liouville_even_matrix(int m) {
  if (m < 2) throw std::invalid_argument("even Liouville matrix needs m >= 2");
  int n = 2 * m;
  ExchangeMatrix b(0, n);
  auto mod = [n](int i) { return ((i % n) + n) % n; };
  for (int k = 0; k < m; ++k) {
    b.add(2 * k, mod(2 * k - 1), -1);
    b.add(2 * k, mod(2 * k + 1), -1);
    b.add(2 * k + 1, mod(2 * k), 1);
    b.add(2 * k + 1, mod(2 * k + 2), 1);
  }
  validate_skew_symmetrizable(b);
  return b;
}

ExchangeMatrix liouville_odd_matrix(int m) {
  if (m < 1) throw std::invalid_argument("odd Liouville matrix needs m >= 1");
  int n = 2 * m + 1;
  ExchangeMatrix b(0, 2 * n);
  auto mod = [n](int i) { return ((i % n) + n) % n; };
  for (int k = 0; k < n; ++k) {
    b.add(plus_index(k), minus_index(mod(k - 1)), -1);
    b.add(plus_index(k), minus_index(mod(k + 1)), -1);
    b.add(minus_index(k), plus_index(mod(k + 1)), 1);
    b.add(minus_index(k), plus_index(mod(k - 1)), 1);
  }
  validate_skew_symmetrizable(b);
  return b;
}

}  // namespace clusterflow
