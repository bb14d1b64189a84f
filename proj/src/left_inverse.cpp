#include "clusterflow/left_inverse.hpp"

#include <stdexcept>

namespace clusterflow {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

std::int32_t z_exponent(const Monomial& m) {
  for (const auto& e : m.entries())
    if (e.first != symbol_var) throw std::invalid_argument("symbol entry in a variable other than z");
  return m.exponent(symbol_var);
}

// Power series inverse of a polynomial with nonzero constant term, grown on
// demand.
struct InverseSeries {
  std::vector<Rat> d;  // d[0] != 0
  std::vector<Rat> c;
  const Rat& at(int k) {
    while (static_cast<int>(c.size()) <= k) {
      const int n = static_cast<int>(c.size());
      if (n == 0) {
        c.push_back(Rat(1) / d[0]);
        continue;
      }
      Rat s = 0;
      for (int i = 1; i <= n && i < static_cast<int>(d.size()); ++i)
        s += d[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(n - i)];
      c.push_back(-s / d[0]);
    }
    return c[static_cast<std::size_t>(k)];
  }
};

}  // namespace

struct LeftInverseResult::Series {
  std::vector<std::pair<int, Rat>> num;  // (exponent, coefficient)
  int den_degree = 0;
  bool laurent = false;
  InverseSeries plus;   // 1 / den(z)
  InverseSeries minus;  // 1 / (z^{-deg} den(z)) in powers of 1/z
};

std::string to_string(LeftInverseStatus s) {
  switch (s) {
    case LeftInverseStatus::exists:
      return "exists";
    case LeftInverseStatus::none:
      return "none";
    case LeftInverseStatus::undecided:
      return "undecided";
  }
  return "?";
}

Mat<RatFunc> symbol_matrix(const PeriodicBandedMatrix& b) {
  const int p = b.period();
  Mat<RatFunc> m(p, p);
  for (const auto& [key, v] : b.rule()) {
    const int r = key.first;
    const int j = r + key.second;
    const int s = ((j % p) + p) % p;
    const int t = floor_div(j - s, p);
    m(r, s) += RatFunc(LaurentPoly::monomial(Monomial::of(symbol_var, t), Rat(v)));
  }
  return m;
}

Rat LeftInverseResult::coefficient(int r, int s, int t, bool plus) const {
  if (status != LeftInverseStatus::exists) throw std::logic_error("no left inverse to expand");
  auto it = cache_->find({r, s});
  if (it == cache_->end()) {
    const RatFunc& a = inverse_symbol(r, s);
    Series ser;
    for (const auto& term : a.num().terms()) ser.num.emplace_back(z_exponent(term.mono), term.coef);
    ser.laurent = a.is_laurent();
    int deg = 0;
    std::map<int, Rat> dc;
    for (const auto& term : a.den().terms()) {
      const int e = z_exponent(term.mono);
      dc[e] = term.coef;
      deg = std::max(deg, e);
    }
    ser.den_degree = deg;
    ser.plus.d.assign(static_cast<std::size_t>(deg + 1), Rat(0));
    ser.minus.d.assign(static_cast<std::size_t>(deg + 1), Rat(0));
    for (const auto& [e, c] : dc) {
      ser.plus.d[static_cast<std::size_t>(e)] = c;
      ser.minus.d[static_cast<std::size_t>(deg - e)] = c;
    }
    it = cache_->emplace(std::make_pair(r, s), std::move(ser)).first;
  }
  Series& ser = it->second;
  Rat sum = 0;
  for (const auto& [e, c] : ser.num) {
    const int k = plus ? t - e : e - ser.den_degree - t;
    if (k < 0) continue;
    sum += c * (plus ? ser.plus.at(k) : ser.minus.at(k));
  }
  return sum;
}

Rat LeftInverseResult::s_plus(int i, int j) const {
  const int p = matrix.period();
  const int r = matrix.residue(i), s = matrix.residue(j);
  return coefficient(r, s, floor_div(j - s, p) - floor_div(i - r, p), true);
}

Rat LeftInverseResult::s_minus(int i, int j) const {
  const int p = matrix.period();
  const int r = matrix.residue(i), s = matrix.residue(j);
  return coefficient(r, s, floor_div(j - s, p) - floor_div(i - r, p), false);
}

Rat LeftInverseResult::m(int i, int j) const { return (s_plus(i, j) + s_minus(i, j)) / 2; }

Rat LeftInverseResult::m(const std::vector<Rat>& lambda, int i, int j) const {
  const Rat& l = lambda.at(static_cast<std::size_t>(matrix.residue(i)));
  return l * s_plus(i, j) + (1 - l) * s_minus(i, j);
}

Rat LeftInverseResult::r(const std::vector<Rat>& mu, int i, int j) const {
  return mu.at(static_cast<std::size_t>(matrix.residue(i))) * (s_plus(i, j) - s_minus(i, j));
}

bool LeftInverseResult::admissible(const std::vector<Rat>& lambda) const {
  if (status != LeftInverseStatus::exists) return false;
  const int p = matrix.period();
  if (static_cast<int>(lambda.size()) != p) return false;
  for (int r = 0; r < p; ++r)
    for (int s = 0; s < p; ++s)
      if (!inverse_symbol(r, s).is_laurent() &&
          lambda[static_cast<std::size_t>(r)] + lambda[static_cast<std::size_t>(s)] != 1)
        return false;
  return true;
}

LeftInverseResult left_inverse_periodic(const PeriodicBandedMatrix& b) {
  LeftInverseResult res;
  res.matrix = b;
  res.cache_ = std::make_shared<std::map<std::pair<int, int>, LeftInverseResult::Series>>();
  const Mat<RatFunc> sym = symbol_matrix(b);
  const int p = b.period();
  res.det = sym.det();

  if (!res.det.is_zero()) {
    res.status = LeftInverseStatus::exists;
    res.inverse_symbol = *sym.inverse();
    QMatrix eq(p * p, p);
    int rows = 0;
    for (int r = 0; r < p; ++r)
      for (int s = r; s < p; ++s)
        if (!res.inverse_symbol(r, s).is_laurent() || !res.inverse_symbol(s, r).is_laurent()) {
          eq(rows, r) += 1;
          eq(rows, s) += 1;
          ++rows;
        }
    res.mu_basis = eq.nullspace();
    return res;
  }

  // det == 0: a kernel vector over Q(z), with denominators cleared.
  const auto kernel = sym.nullspace();
  if (kernel.empty()) return res;  // unreachable for a singular square matrix
  std::vector<RatFunc> v = kernel.front();
  RatFunc scale(1);
  for (const auto& e : v)
    if (!e.is_zero()) scale = scale * RatFunc((e * scale).den());
  for (auto& e : v) e = e * scale;
  res.status = LeftInverseStatus::none;
  for (int s = 0; s < p; ++s) {
    const RatFunc& e = v[static_cast<std::size_t>(s)];
    for (const auto& term : e.num().terms()) {
      const int q = -z_exponent(term.mono);
      res.certificate[s + p * q] = term.coef;
    }
  }
  return res;
}

}  // namespace clusterflow
