#include "clusterflow/poisson.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "clusterflow/semifield.hpp"

namespace clusterflow {

PoissonMatrix::PoissonMatrix(int lo, int n)
    : lo_(lo), n_(n), p_(n > 1 ? static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2 : 0, Rat(0)) {
  if (n < 0) throw std::invalid_argument("negative Poisson matrix size");
}

PoissonMatrix PoissonMatrix::from_rows(int lo, const std::vector<std::vector<Rat>>& rows) {
  const int n = static_cast<int>(rows.size());
  PoissonMatrix p(lo, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw InvalidMatrix("Poisson matrix rows must have equal length");
  }
  for (int i = 0; i < n; ++i) {
    const auto& ri = rows[static_cast<std::size_t>(i)];
    if (ri[static_cast<std::size_t>(i)] != 0)
      throw InvalidMatrix("nonzero diagonal entry p_" + std::to_string(lo + i) + "," + std::to_string(lo + i));
    for (int j = i + 1; j < n; ++j) {
      const Rat& a = ri[static_cast<std::size_t>(j)];
      const Rat& b = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (a != -b)
        throw InvalidMatrix("p_" + std::to_string(lo + i) + "," + std::to_string(lo + j) + " and p_" +
                            std::to_string(lo + j) + "," + std::to_string(lo + i) + " are not opposite");
      p.set(lo + i, lo + j, a);
    }
  }
  return p;
}

PoissonMatrix PoissonMatrix::from_qmatrix(int lo, const QMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidMatrix("Poisson matrix must be square");
  std::vector<std::vector<Rat>> rows(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) rows[static_cast<std::size_t>(i)].push_back(m(i, j));
  return from_rows(lo, rows);
}

std::size_t PoissonMatrix::idx(int i, int j) const {
  const auto a = static_cast<std::size_t>(i - lo_);
  const auto b = static_cast<std::size_t>(j - lo_);
  const auto n = static_cast<std::size_t>(n_);
  // Row a of the strict upper triangle starts after a rows of decreasing length.
  return a * n - a * (a + 1) / 2 + (b - a - 1);
}

Rat PoissonMatrix::operator()(int i, int j) const {
  if (!contains(i) || !contains(j)) throw std::out_of_range("Poisson index out of range");
  if (i == j) return Rat(0);
  return i < j ? p_[idx(i, j)] : Rat(-p_[idx(j, i)]);
}

void PoissonMatrix::set(int i, int j, const Rat& v) {
  if (!contains(i) || !contains(j)) throw std::out_of_range("Poisson index out of range");
  if (i == j) {
    if (v != 0) throw InvalidMatrix("Poisson matrix diagonal must vanish");
    return;
  }
  if (i < j)
    p_[idx(i, j)] = v;
  else
    p_[idx(j, i)] = -v;
}

QMatrix PoissonMatrix::to_qmatrix() const {
  QMatrix m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(lo_ + i, lo_ + j);
  return m;
}

PoissonMatrix PoissonMatrix::restrict_to(int lo, int hi) const {
  if (!contains(lo) || !contains(hi) || hi < lo) throw std::out_of_range("restriction outside the Poisson range");
  PoissonMatrix r(lo, hi - lo + 1);
  for (int i = lo; i <= hi; ++i)
    for (int j = i + 1; j <= hi; ++j) r.set(i, j, (*this)(i, j));
  r.c = c;
  return r;
}

std::string format(const PoissonMatrix& p) {
  std::ostringstream os;
  os << "indices " << p.lo() << ".." << p.hi() << "\n" << format(p.to_qmatrix());
  return os.str();
}

QMatrix ExtendedPoisson::assembled() const {
  const int n = size();
  QMatrix m(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m(i, j) = px(lo() + i, lo() + j);
      m(i, n + j) = pxy(i, j);
      m(n + i, j) = -pxy(j, i);
      m(n + i, n + j) = py(i, j);
    }
  return m;
}

namespace {

using Coefficient = std::function<Rat(Var, Var)>;
using Covers = std::function<bool(Var)>;

std::vector<Var> all_variables(const RatFunc& f) {
  std::vector<Var> vs = f.num().variables();
  const std::vector<Var> dv = f.den().variables();
  vs.insert(vs.end(), dv.begin(), dv.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// v d/dv f = A_v / den^2 (A_v = E_v(num) when den == 1, over den^1).
LaurentPoly euler_numerator(const RatFunc& f, Var v) {
  if (f.is_laurent()) return f.num().euler(v);
  return f.num().euler(v) * f.den() - f.num() * f.den().euler(v);
}

RatFunc bracket_impl(const RatFunc& f, const RatFunc& g, const Coefficient& pi, const Covers& covers) {
  const std::vector<Var> vf = all_variables(f);
  const std::vector<Var> vg = all_variables(g);
  for (Var v : vf)
    if (!covers(v)) throw UncoveredVariable(v);
  for (Var v : vg)
    if (!covers(v)) throw UncoveredVariable(v);
  if (vf.empty() || vg.empty()) return RatFunc();

  std::vector<LaurentPoly> bw;
  bw.reserve(vg.size());
  for (Var w : vg) bw.push_back(euler_numerator(g, w));

  LaurentPoly num;
  for (Var v : vf) {
    LaurentPoly cv;
    for (std::size_t k = 0; k < vg.size(); ++k) {
      const Rat c = pi(v, vg[k]);
      if (c != 0) cv += bw[k].scaled(c);
    }
    if (cv.is_zero()) continue;
    num += euler_numerator(f, v) * cv;
  }
  LaurentPoly den = LaurentPoly::constant(Rat(1));
  if (!f.is_laurent()) den = den * f.den() * f.den();
  if (!g.is_laurent()) den = den * g.den() * g.den();
  return RatFunc::fraction(num, den);
}

}  // namespace

RatFunc symbolic_bracket(const RatFunc& f, const RatFunc& g, const PoissonMatrix& p) {
  return bracket_impl(
      f, g, [&p](Var v, Var w) { return p(var_index(v), var_index(w)); },
      [&p](Var v) { return is_x_var(v) && p.contains(var_index(v)); });
}

RatFunc symbolic_bracket(const RatFunc& f, const RatFunc& g, const ExtendedPoisson& p) {
  const int lo = p.lo();
  return bracket_impl(
      f, g,
      [&p, lo](Var v, Var w) -> Rat {
        const int i = var_index(v), j = var_index(w);
        if (is_x_var(v) && is_x_var(w)) return p.px(i, j);
        if (is_x_var(v)) return p.pxy(i - lo, j - lo);
        if (is_x_var(w)) return -p.pxy(j - lo, i - lo);
        return p.py(i - lo, j - lo);
      },
      [&p](Var v) { return p.px.contains(var_index(v)); });
}

std::optional<Rat> is_log_canonical(const RatFunc& f, const RatFunc& g, const RatFunc& bracket) {
  if (f.is_zero() || g.is_zero()) return std::nullopt;
  return (bracket / (f * g)).constant_value();
}

namespace {

void check_same_range(const PoissonMatrix& p, const ExchangeMatrix& b) {
  if (p.lo() != b.lo() || p.size() != b.size())
    throw std::invalid_argument("Poisson and exchange matrices must share their index range");
}

}  // namespace

Rat pb_entry(const PoissonMatrix& p, const ExchangeMatrix& b, int i, int k) {
  Rat s = 0;
  for (int l = b.lo(); l <= b.hi(); ++l) {
    const int blk = b(l, k);
    if (blk != 0) s += p(i, l) * blk;
  }
  return s;
}

QMatrix pb_product(const PoissonMatrix& p, const ExchangeMatrix& b) {
  check_same_range(p, b);
  return p.to_qmatrix() * to_qmatrix(b);
}

PoissonMatrix mutate_poisson_unchecked(const PoissonMatrix& p, const ExchangeMatrix& b, int k) {
  check_same_range(p, b);
  if (!b.contains(k)) throw std::out_of_range("mutation index out of range");
  PoissonMatrix r = p;
  for (int i = b.lo(); i <= b.hi(); ++i) {
    if (i == k) continue;
    Rat v = -p(i, k);
    for (int l = b.lo(); l <= b.hi(); ++l) {
      const int blk = b(l, k);
      if (blk > 0) v += p(i, l) * blk;
    }
    r.set(i, k, v);
  }
  return r;
}

PoissonMatrix mutate_poisson(const PoissonMatrix& p, const ExchangeMatrix& b, int k) {
  check_same_range(p, b);
  if (!b.contains(k)) throw std::out_of_range("mutation index out of range");
  for (int i = b.lo(); i <= b.hi(); ++i) {
    if (i == k) continue;
    const Rat v = pb_entry(p, b, i, k);
    if (v != 0) throw CompatibilityError(i, k, v);
  }
  return mutate_poisson_unchecked(p, b, k);
}

std::vector<KernelElement> skew_kernel(const ExchangeMatrix& b, const std::vector<int>& d) {
  const int n = b.size();
  if (static_cast<int>(d.size()) != n) throw std::invalid_argument("symmetrizer size mismatch");
  // Unknowns: p_ij (i < j) in PoissonMatrix storage order, then c.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const int unknowns = static_cast<int>(pairs.size()) + 1;
  QMatrix eq(n * n, unknowns);
  for (int u = 0; u + 1 < unknowns; ++u) {
    const auto [i, j] = pairs[static_cast<std::size_t>(u)];
    // p_ij contributes to row i and p_ji = -p_ij to row j.
    for (int s = 0; s < n; ++s) {
      eq(i * n + s, u) += Rat(b(b.lo() + j, b.lo() + s));
      eq(j * n + s, u) -= Rat(b(b.lo() + i, b.lo() + s));
    }
  }
  for (int r = 0; r < n; ++r) eq(r * n + r, unknowns - 1) = Rat(-d[static_cast<std::size_t>(r)]);

  std::vector<KernelElement> out;
  for (const auto& v : eq.nullspace()) {
    KernelElement k{PoissonMatrix(b.lo(), n), v.back()};
    for (int u = 0; u + 1 < unknowns; ++u) {
      const auto [i, j] = pairs[static_cast<std::size_t>(u)];
      k.p.set(b.lo() + i, b.lo() + j, v[static_cast<std::size_t>(u)]);
    }
    k.p.c = k.c;
    out.push_back(std::move(k));
  }
  return out;
}

std::vector<KernelElement> skew_kernel(const ExchangeMatrix& b) {
  const auto d = find_symmetrizer(b);
  if (!d) throw InvalidMatrix("exchange matrix is not skew-symmetrizable");
  return skew_kernel(b, *d);
}

std::vector<RatFunc> f_variables(const ExchangeMatrix& b, const std::vector<RatFunc>& x) {
  if (static_cast<int>(x.size()) != b.size()) throw std::invalid_argument("cluster size mismatch");
  std::vector<RatFunc> f;
  for (int i = b.lo(); i <= b.hi(); ++i) {
    RatFunc v(1);
    for (int j = b.lo(); j <= b.hi(); ++j) {
      const int e = b(j, i);
      if (e != 0) v *= x[static_cast<std::size_t>(j - b.lo())].pow(e);
    }
    f.push_back(std::move(v));
  }
  return f;
}

QMatrix induced_Pf(const ExchangeMatrix& b, const PoissonMatrix& p) {
  check_same_range(p, b);
  const QMatrix bq = to_qmatrix(b);
  return bq.transpose() * p.to_qmatrix() * bq;
}

namespace {

QMatrix inverse_diagonal(const std::vector<int>& d) {
  QMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) throw std::invalid_argument("symmetrizer entries must be nonzero");
    m(static_cast<int>(i), static_cast<int>(i)) = Rat(1) / d[i];
  }
  return m;
}

}  // namespace

TwoForm two_form(const ExchangeMatrix& b, const std::vector<int>& d, const Rat& c) {
  if (c == 0) throw std::invalid_argument("the 2-form needs PB = cD with c != 0");
  return {to_qmatrix(b) * inverse_diagonal(d), c};
}

TwoForm two_form(const ExchangeMatrix& b, const std::vector<int>& d, const PoissonMatrix& p, const Rat& cx,
                 const Rat& cy) {
  if (cy == 0) throw std::invalid_argument("the extended 2-form needs cy != 0");
  if (cx + cy == 0) throw std::invalid_argument("the extended 2-form needs cx + cy != 0");
  check_same_range(p, b);
  const int n = b.size();
  const QMatrix di = inverse_diagonal(d);
  const QMatrix w11 = to_qmatrix(b) * di;
  const QMatrix w22 = Rat(Rat(1) / cy) * (di * p.to_qmatrix() * di);
  QMatrix w(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      w(i, j) = w11(i, j);
      w(i, n + j) = -di(i, j);
      w(n + i, j) = di(i, j);
      w(n + i, n + j) = w22(i, j);
    }
  return {w, cx + cy};
}

ExtendedPoisson assemble_extended(const ExchangeMatrix& b, const Rat& cx, const Rat& cy,
                                  const std::optional<PoissonMatrix>& px) {
  const auto d = find_symmetrizer(b);
  if (!d) throw InvalidMatrix("exchange matrix is not skew-symmetrizable");
  const QMatrix dq = diagonal(*d);
  const QMatrix bq = to_qmatrix(b);

  ExtendedPoisson e;
  e.cx = cx;
  e.cy = cy;
  e.pxy = cy * dq;
  e.py = cy * (dq * bq);
  if (const auto inv = bq.inverse()) {
    e.px = PoissonMatrix::from_qmatrix(b.lo(), cx * (dq * *inv));
    e.px.c = cx;
    if (px && *px != e.px) throw std::invalid_argument("Px must equal cx D B^{-1} for an invertible B");
    return e;
  }
  if (cx != 0) throw std::invalid_argument("singular B forces cx = 0");
  if (px) {
    if (!pb_product(*px, b).is_zero_matrix()) throw std::invalid_argument("Px must satisfy Px B = O");
    e.px = *px;
  } else {
    const auto kernel = skew_kernel(b, *d);
    if (kernel.empty()) throw std::invalid_argument("no skew P with PB = O");
    e.px = kernel.front().p;
  }
  e.px.c = Rat(0);
  return e;
}

}  // namespace clusterflow
