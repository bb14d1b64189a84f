#include "clusterflow/tropical.hpp"

#include <map>
#include <sstream>

#include "clusterflow/qmatrix.hpp"
#include "clusterflow/semifield.hpp"

namespace clusterflow {

namespace {

int pos(int v) { return v > 0 ? v : 0; }

std::string path_string(const std::vector<int>& path) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < path.size(); ++i) os << (i ? "," : "") << path[i];
  os << ")";
  return os.str();
}

RatFunc y_monomial(const IntMatrix& m, int i, Var (*var)(int)) {
  std::vector<Monomial::Entry> e;
  for (int j = m.lo(); j <= m.hi(); ++j)
    if (m(j, i) != 0) e.emplace_back(var(j), m(j, i));
  return RatFunc::monomial(Monomial(std::move(e)));
}

Var yv(int j) { return y_var(j); }
Var xv(int j) { return x_var(j); }

}  // namespace

BranchDisagreement::BranchDisagreement(const std::vector<int>& p, int j_, int i_)
    : std::runtime_error("C-matrix branches disagree at entry (" + std::to_string(j_) + "," + std::to_string(i_) +
                         ") after path " + path_string(p)),
      path(p),
      j(j_),
      i(i_) {}

IntMatrix identity_matrix(int lo, int n) {
  IntMatrix m(lo, n);
  for (int i = lo; i < lo + n; ++i) m.set(i, i, 1);
  return m;
}

IntMatrix c_mutate(const IntMatrix& c, const ExchangeMatrix& b, int k, const std::vector<int>& path) {
  if (!b.contains(k)) throw std::out_of_range("mutation index out of range");
  IntMatrix out(c.lo(), c.size());
  for (int j = c.lo(); j <= c.hi(); ++j)
    for (int i = c.lo(); i <= c.hi(); ++i) {
      const int cji = c(j, i), cjk = c(j, k), bki = b(k, i);
      if (i == k) {
        out.set(j, i, -cji);
        continue;
      }
      const int plus = cji + cjk * pos(bki) + pos(-cjk) * bki;
      const int minus = cji + cjk * pos(-bki) + pos(cjk) * bki;
      const int split = bki <= 0 ? cji + pos(-cjk) * bki : cji + pos(cjk) * bki;
      if (plus != minus || plus != split) {
        std::vector<int> p = path;
        p.push_back(k);
        throw BranchDisagreement(p, j, i);
      }
      out.set(j, i, plus);
    }
  return out;
}

std::vector<int> flatten(const MutationWord& word) {
  std::vector<int> out;
  for (const auto& letter : word) out.insert(out.end(), letter.begin(), letter.end());
  return out;
}

std::vector<CStep> c_walk(const ExchangeMatrix& b, const std::vector<int>& word) {
  std::vector<CStep> steps;
  steps.push_back({{}, b, identity_matrix(b.lo(), b.size())});
  for (int k : word) {
    const CStep& last = steps.back();
    CStep next;
    next.c = c_mutate(last.c, last.b, k, last.path);
    next.b = mutate_matrix(last.b, k);
    next.path = last.path;
    next.path.push_back(k);
    steps.push_back(std::move(next));
  }
  return steps;
}

namespace {

int d_at(const std::vector<int>& d, int i) { return d.empty() ? 1 : d.at(static_cast<std::size_t>(i)); }

}  // namespace

IntMatrix g_matrix(const IntMatrix& c, const std::vector<int>& d) {
  QMatrix q(c.size(), c.size());
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < c.size(); ++j) q(i, j) = Rat(c(c.lo() + i, c.lo() + j));
  const auto inv = q.inverse();
  if (!inv) throw std::domain_error("C-matrix is singular");
  IntMatrix g(c.lo(), c.size());
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < c.size(); ++j) {
      const Rat v = (*inv)(j, i) * d_at(d, j) / d_at(d, i);
      if (v.get_den() != 1 || !v.get_num().fits_sint_p()) throw std::domain_error("C-matrix is not unimodular");
      g.set(c.lo() + i, c.lo() + j, static_cast<int>(v.get_num().get_si()));
    }
  return g;
}

bool gt_c_is_identity(const IntMatrix& g, const IntMatrix& c, const std::vector<int>& d) {
  // (D^{-1} G^T D)_{il} = g_li d_l / d_i.
  for (int i = c.lo(); i <= c.hi(); ++i)
    for (int j = c.lo(); j <= c.hi(); ++j) {
      Rat s = 0;
      for (int l = c.lo(); l <= c.hi(); ++l)
        s += Rat(g(l, i)) * d_at(d, l - c.lo()) / d_at(d, i - c.lo()) * c(l, j);
      if (s != (i == j ? 1 : 0)) return false;
    }
  return true;
}

std::vector<LaurentPoly> f_polynomials(const Seed& principal) {
  if (principal.tag != SemifieldTag::tropical) throw SemifieldMismatch("F-polynomials need a tropical seed");
  std::map<Var, RatFunc> ones;
  for (int j = principal.b.lo(); j <= principal.b.hi(); ++j) ones[x_var(j)] = RatFunc(1);
  std::vector<LaurentPoly> out;
  for (int i = principal.b.lo(); i <= principal.b.hi(); ++i) {
    const RatFunc f = principal.x_at(i).substitute(ones);
    if (!f.is_laurent()) throw NotPolynomial(i, "has a denominator");
    if (f.num().has_negative_exponent()) throw NotPolynomial(i, "has a negative exponent");
    out.push_back(f.num());
  }
  return out;
}

std::vector<LaurentPoly> f_polynomials(const ExchangeMatrix& b, const std::vector<int>& word) {
  Seed s = initial_seed(b, SemifieldTag::tropical);
  for (int k : word) s = mutate_seed(s, k);
  return f_polynomials(s);
}

bool SeparationReport::ok() const {
  if (steps.empty()) return false;
  for (const auto& s : steps)
    if (!s.ok()) return false;
  return true;
}

SeparationReport separation_check(const ExchangeMatrix& b, const std::vector<int>& word) {
  SeparationReport rep;
  rep.skew_symmetric = is_skew_symmetric(b);
  const auto dd = find_symmetrizer(b);
  if (!dd) throw InvalidMatrix("exchange matrix is not skew-symmetrizable");
  const std::vector<int>& d = *dd;
  const std::vector<CStep> walk = c_walk(b, word);

  std::map<Var, RatFunc> yhat;
  for (int j = b.lo(); j <= b.hi(); ++j) {
    RatFunc v = RatFunc::variable(y_var(j));
    for (int l = b.lo(); l <= b.hi(); ++l)
      if (b(l, j) != 0) v *= RatFunc::variable(x_var(l)).pow(b(l, j));
    yhat[y_var(j)] = v;
  }
  std::map<Var, RatFunc> y_zero;
  std::map<Var, Rat> y_origin;
  for (int j = b.lo(); j <= b.hi(); ++j) {
    y_zero[y_var(j)] = RatFunc(0);
    y_origin[y_var(j)] = Rat(0);
  }

  Seed uni = initial_seed(b, SemifieldTag::universal);
  Seed trop = initial_seed(b, SemifieldTag::tropical);
  for (std::size_t step = 0; step < walk.size(); ++step) {
    if (step > 0) {
      const int k = walk[step].path.back();
      uni = mutate_seed(uni, k);
      trop = mutate_seed(trop, k);
    }
    const CStep& cs = walk[step];
    SeparationStep r;
    r.path = cs.path;
    const IntMatrix g = g_matrix(cs.c, d);
    r.gt_c = gt_c_is_identity(g, cs.c, d);

    std::vector<LaurentPoly> f;
    try {
      f = f_polynomials(trop);
    } catch (const NotPolynomial&) {
      rep.steps.push_back(r);
      if (rep.first_failure.empty()) rep.first_failure = "F not polynomial after " + path_string(cs.path);
      continue;
    }
    r.f_constant_one = true;
    for (const auto& fi : f)
      if (fi.coefficient(Monomial()) != 1) r.f_constant_one = false;

    r.y_matches = r.x_matches = r.tropical_matches = r.g_from_x = r.lowest_monomial = true;
    for (int i = b.lo(); i <= b.hi(); ++i) {
      const std::size_t ii = static_cast<std::size_t>(i - b.lo());
      const RatFunc yc = y_monomial(cs.c, i, yv);
      RatFunc yrec = yc;
      for (int j = b.lo(); j <= b.hi(); ++j) {
        const int e = cs.b(j, i);
        if (e != 0) yrec *= RatFunc(f[static_cast<std::size_t>(j - b.lo())]).pow(e);
      }
      const RatFunc& ydirect = std::get<RatFunc>(uni.y_at(i));
      if (yrec != ydirect) r.y_matches = false;

      const RatFunc xg = y_monomial(g, i, xv);
      const RatFunc xrec = xg * evaluate_poly(f[ii], yhat) / RatFunc(f[ii]);
      if (xrec != uni.x_at(i)) r.x_matches = false;

      if (embed(trop.y_at(i)) != yc) r.tropical_matches = false;
      if (trop.x_at(i).substitute(y_zero) != xg) r.g_from_x = false;

      try {
        if ((ydirect / yc).evaluate(y_origin) != 1) r.lowest_monomial = false;
      } catch (const DivisionByZero&) {
        r.lowest_monomial = false;
      }
    }
    if (!r.ok() && rep.first_failure.empty()) rep.first_failure = "separation fails after " + path_string(cs.path);
    rep.steps.push_back(std::move(r));
  }
  return rep;
}

}  // namespace clusterflow
