#include <cstdint>
#include <cstdlib>
#include <map>
#include <random>

#include "clusterflow/detail/modp.hpp"
#include "clusterflow/laurent_poly.hpp"

namespace clusterflow {

std::size_t max_terms() {
  static const std::size_t cap = [] {
    const char* env = std::getenv("CLUSTERFLOW_MAX_TERMS");
    if (env == nullptr || *env == '\0') return std::size_t{200000};
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) return std::size_t{200000};
    return static_cast<std::size_t>(v);
  }();
  return cap;
}

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::pair<Rat, IntPoly> integral_primitive(const LaurentPoly& p) {
  if (p.is_zero()) return {Rat(0), IntPoly()};
  BigInt l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
  BigInt g = 0;
  for (const auto& t : p.terms()) {
    BigInt num = t.coef.get_num() * (l / t.coef.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (p.leading().coef < 0) g = -g;
  std::vector<IntPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    BigInt num = t.coef.get_num() * (l / t.coef.get_den());
    terms.push_back({t.mono, BigInt(num / g)});
  }
  Rat scale(g, l);
  scale.canonicalize();
  // Terms are already ordered; from_terms keeps them as is.
  return {scale, IntPoly::from_terms(std::move(terms))};
}

LaurentPoly to_rational(const IntPoly& p) {
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.mono, Rat(t.coef)});
  return LaurentPoly::from_terms(std::move(terms));
}

namespace {

struct DescLex {
  bool operator()(const Monomial& a, const Monomial& b) const { return lex_compare(a, b) > 0; }
};

IntPoly positive(const IntPoly& p) {
  return (!p.is_zero() && p.leading().coef < 0) ? -p : p;
}

IntPoly primitive(const IntPoly& p) {
  if (p.is_zero()) return p;
  BigInt c = content(p);
  if (p.leading().coef < 0) c = -c;
  if (c == 1) return p;
  std::vector<IntPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.mono, BigInt(t.coef / c)});
  return IntPoly::from_terms(std::move(terms));
}

}  // namespace

std::optional<IntPoly> exact_div(const IntPoly& n, const IntPoly& d) {
  if (d.is_zero()) throw std::domain_error("exact_div: division by zero polynomial");
  if (n.is_zero()) return IntPoly();
  const auto& lt = d.leading();
  if (d.is_monomial()) {
    std::vector<IntPoly::Term> terms;
    terms.reserve(n.size());
    for (const auto& t : n.terms()) {
      if (!lt.mono.divides(t.mono)) return std::nullopt;
      if (!mpz_divisible_p(t.coef.get_mpz_t(), lt.coef.get_mpz_t())) return std::nullopt;
      terms.push_back({t.mono / lt.mono, BigInt(t.coef / lt.coef)});
    }
    return IntPoly::from_terms(std::move(terms));
  }
  {
    IntPoly q;
    int st = packed_exact_div(n, d, q);
    if (st == 1) return q;
    if (st == 0) return std::nullopt;
  }
  std::vector<Var> vars = n.variables();
  for (Var v : d.variables()) {
    if (!std::binary_search(vars.begin(), vars.end(), v)) return std::nullopt;
  }
  std::map<Var, std::int32_t> bound;
  for (Var v : vars) {
    std::int32_t b = n.degree(v) - d.degree(v);
    if (b < 0) return std::nullopt;
    if (n.min_degree(v) < d.min_degree(v)) return std::nullopt;
    bound[v] = b;
  }
  if (n.size() < 2) return std::nullopt;

  std::map<Monomial, BigInt, DescLex> r;
  for (const auto& t : n.terms()) r.emplace_hint(r.end(), t.mono, t.coef);
  std::vector<IntPoly::Term> q;
  BigInt qc;
  while (!r.empty()) {
    auto it = r.begin();
    if (!lt.mono.divides(it->first)) return std::nullopt;
    Monomial qm = it->first / lt.mono;
    for (const auto& [v, e] : qm.entries()) {
      auto b = bound.find(v);
      if (b == bound.end() || e > b->second) return std::nullopt;
    }
    if (!mpz_divisible_p(it->second.get_mpz_t(), lt.coef.get_mpz_t())) return std::nullopt;
    qc = it->second / lt.coef;
    for (const auto& s : d.terms()) {
      Monomial m = s.mono * qm;
      auto [pos, fresh] = r.try_emplace(std::move(m));
      pos->second -= qc * s.coef;
      if (pos->second == 0) r.erase(pos);
    }
    q.push_back({std::move(qm), qc});
    if (q.size() > max_terms()) throw TermLimitExceeded(q.size());
  }
  return IntPoly::from_terms(std::move(q));
}

std::optional<LaurentPoly> exact_div_laurent(const LaurentPoly& n, const LaurentPoly& d) {
  if (d.is_zero()) throw std::domain_error("exact_div_laurent: division by zero polynomial");
  if (n.is_zero()) return LaurentPoly();
  auto [sn, in] = integral_primitive(n);
  auto [sd, id] = integral_primitive(d);
  Monomial mn = in.content_monomial();
  Monomial md = id.content_monomial();
  auto q = exact_div(in.shifted(mn.inverse()), id.shifted(md.inverse()));
  // Both sides are primitive, so the integral quotient is exact over Q as
  // well (Gauss); a failure over Z is a failure over Q.
  if (!q) return std::nullopt;
  return to_rational(q->shifted(mn / md)).scaled(sn / sd);
}

namespace {

// Evaluation points beyond this many bits make the heuristic slower than the
// recursive remainder sequence.
constexpr int kHeuBitBudget = 1 << 20;
using namespace modp;

// Degree of gcd of two dense polynomials over Z/p.
int gcd_degree_mod(Dense a, Dense b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    if (a.size() < b.size()) std::swap(a, b);
    std::uint64_t inv = invmod(b.back());
    while (a.size() >= b.size() && !a.empty()) {
      std::uint64_t f = mulmod(a.back(), inv);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = submod(a[i + shift], mulmod(f, b[i]));
      trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

Dense image(const IntPoly& p, Var v, const std::map<Var, std::uint64_t>& point) {
  Dense out(static_cast<std::size_t>(p.degree(v)) + 1, 0);
  for (const auto& t : p.terms()) {
    std::uint64_t c = mpz_fdiv_ui(t.coef.get_mpz_t(), kPrime);
    std::uint32_t ev = 0;
    for (const auto& [w, e] : t.mono.entries()) {
      if (w == v) {
        ev = static_cast<std::uint32_t>(e);
      } else {
        c = mulmod(c, powmod(point.at(w), static_cast<std::uint64_t>(e)));
      }
    }
    out[ev] = addmod(out[ev], c);
  }
  return out;
}

// Coefficients of p viewed as a polynomial in the variables of `vars`.
std::vector<IntPoly> coefficients_in(const IntPoly& p, const std::vector<Var>& vars) {
  std::map<Monomial, std::vector<IntPoly::Term>, DescLex> groups;
  for (const auto& t : p.terms()) {
    std::vector<Monomial::Entry> outer, inner;
    for (const auto& e : t.mono.entries()) {
      if (std::binary_search(vars.begin(), vars.end(), e.first)) {
        outer.push_back(e);
      } else {
        inner.push_back(e);
      }
    }
    groups[Monomial(std::move(outer))].push_back({Monomial(std::move(inner)), t.coef});
  }
  std::vector<IntPoly> out;
  out.reserve(groups.size());
  for (auto& g : groups) out.push_back(IntPoly::from_terms(std::move(g.second)));
  // Smaller coefficients first so the running gcd shrinks early.
  std::sort(out.begin(), out.end(),
            [](const IntPoly& a, const IntPoly& b) { return a.size() < b.size(); });
  return out;
}

IntPoly gcd_primitive(const IntPoly& a, const IntPoly& b);

IntPoly gcd_of_list(IntPoly g, const std::vector<IntPoly>& polys) {
  for (const auto& p : polys) {
    if (g.is_constant()) break;
    g = gcd_primitive(g, primitive(p));
  }
  return g;
}

// Polynomial in v with coefficients in the remaining variables.
struct Univariate {
  std::vector<IntPoly> c;  // c[i] multiplies v^i
  int deg() const { return static_cast<int>(c.size()) - 1; }
};

Univariate split(const IntPoly& p, Var v) {
  Univariate u;
  u.c.resize(static_cast<std::size_t>(p.degree(v)) + 1);
  std::vector<std::vector<IntPoly::Term>> buckets(u.c.size());
  for (const auto& t : p.terms()) {
    std::int32_t e = t.mono.exponent(v);
    buckets[static_cast<std::size_t>(e)].push_back({t.mono.without(v), t.coef});
  }
  for (std::size_t i = 0; i < buckets.size(); ++i) u.c[i] = IntPoly::from_terms(std::move(buckets[i]));
  return u;
}

IntPoly join(const Univariate& u, Var v) {
  IntPoly out;
  for (std::size_t i = 0; i < u.c.size(); ++i) {
    out += u.c[i].shifted(Monomial::of(v, static_cast<std::int32_t>(i)));
  }
  return out;
}

void trim(Univariate& u) {
  while (!u.c.empty() && u.c.back().is_zero()) u.c.pop_back();
}

IntPoly univariate_content(const Univariate& u) {
  IntPoly g;
  for (const auto& c : u.c) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? positive(primitive(c)) : gcd_primitive(g, primitive(c));
    if (g.is_constant()) break;
  }
  return g;
}

Univariate divide_content(const Univariate& u, const IntPoly& g) {
  if (g.is_one()) return u;
  Univariate r;
  for (const auto& c : u.c) r.c.push_back(c.is_zero() ? c : *exact_div(c, g));
  return r;
}

// Pseudo-remainder of a by b in v.
Univariate prem(Univariate a, const Univariate& b) {
  const IntPoly& lb = b.c.back();
  while (!a.c.empty() && a.deg() >= b.deg()) {
    IntPoly la = a.c.back();
    int shift = a.deg() - b.deg();
    for (auto& c : a.c) c *= lb;
    for (int i = 0; i <= b.deg(); ++i) {
      a.c[static_cast<std::size_t>(i + shift)] -= la * b.c[static_cast<std::size_t>(i)];
    }
    trim(a);
  }
  return a;
}

BigInt max_norm(const IntPoly& p) {
  BigInt m = 0;
  for (const auto& t : p.terms()) {
    if (abs(t.coef) > m) m = abs(t.coef);
  }
  return m;
}

IntPoly symmetric_mod(const IntPoly& p, const BigInt& m) {
  BigInt half = m / 2;
  std::vector<IntPoly::Term> terms;
  BigInt r;
  for (const auto& t : p.terms()) {
    mpz_fdiv_r(r.get_mpz_t(), t.coef.get_mpz_t(), m.get_mpz_t());
    if (r > half) r -= m;
    if (r != 0) terms.push_back({t.mono, r});
  }
  return IntPoly::from_terms(std::move(terms));
}

// Recovers a polynomial in v from its image at v = xi, reading coefficients
// as balanced base-xi digits.
IntPoly interpolate(IntPoly h, const BigInt& xi, Var v) {
  std::vector<IntPoly::Term> out;
  std::int32_t i = 0;
  while (!h.is_zero()) {
    IntPoly g = symmetric_mod(h, xi);
    for (const auto& t : g.terms()) out.push_back({t.mono * Monomial::of(v, i), t.coef});
    h = h - g;
    std::vector<IntPoly::Term> q;
    q.reserve(h.size());
    for (const auto& t : h.terms()) q.push_back({t.mono, BigInt(t.coef / xi)});
    h = IntPoly::from_terms(std::move(q));
    ++i;
  }
  return positive(IntPoly::from_terms(std::move(out)));
}

struct GcdTriple {
  IntPoly h, cf, cg;
};

// Heuristic gcd by evaluation at a large integer and balanced interpolation
// (Char, Geddes and Gonnet). Any returned h divides both inputs and is their
// gcd; nullopt means the heuristic gave up.
std::optional<GcdTriple> heu_gcd(const IntPoly& f0, const IntPoly& g0, int budget) {
  if (f0.is_constant() && g0.is_constant()) {
    BigInt a = f0.constant_value(), b = g0.constant_value(), h;
    mpz_gcd(h.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (h == 0) return std::nullopt;
    return GcdTriple{IntPoly::constant(h), IntPoly::constant(BigInt(a / h)), IntPoly::constant(BigInt(b / h))};
  }
  BigInt cf = content(f0), cg = content(g0), gc;
  mpz_gcd(gc.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  IntPoly f = f0, g = g0;
  if (gc != 1) {
    auto scale_down = [&](const IntPoly& p) {
      std::vector<IntPoly::Term> t;
      for (const auto& x : p.terms()) t.push_back({x.mono, BigInt(x.coef / gc)});
      return IntPoly::from_terms(std::move(t));
    };
    f = scale_down(f0);
    g = scale_down(g0);
  }
  std::vector<Var> vf = f.variables(), vg = g.variables();
  Var v = !vf.empty() ? vf.front() : vg.front();
  if (!vg.empty() && !vf.empty()) v = std::min(vf.front(), vg.front());
  BigInt fn = max_norm(f), gn = max_norm(g);
  BigInt bound = 2 * std::min(fn, gn) + 29;
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), bound.get_mpz_t());
  BigInt xi = std::min(bound, BigInt(99 * root));
  BigInt lf = abs(f.leading().coef), lg = abs(g.leading().coef);
  BigInt alt = 2 * std::min(BigInt(fn / lf), BigInt(gn / lg)) + 2;
  if (alt > xi) xi = alt;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) > static_cast<std::size_t>(budget)) return std::nullopt;
    IntPoly ff = f.eval(v, xi), gg = g.eval(v, xi);
    if (!ff.is_zero() && !gg.is_zero()) {
      auto inner = heu_gcd(ff, gg, budget);
      if (!inner) return std::nullopt;
      IntPoly h = primitive(interpolate(inner->h, xi, v));
      if (!h.is_zero()) {
        if (auto qf = exact_div(f, h)) {
          if (auto qg = exact_div(g, h)) return GcdTriple{h.scaled(gc), *qf, *qg};
        }
      }
      IntPoly cff = interpolate(inner->cf, xi, v);
      if (!cff.is_zero()) {
        if (auto hf = exact_div(f, cff)) {
          if (auto qg = exact_div(g, *hf)) return GcdTriple{hf->scaled(gc), cff, *qg};
        }
      }
      IntPoly cfg = interpolate(inner->cg, xi, v);
      if (!cfg.is_zero()) {
        if (auto hg = exact_div(g, cfg)) {
          if (auto qf = exact_div(f, *hg)) return GcdTriple{hg->scaled(gc), *qf, cfg};
        }
      }
    }
    BigInt r4;
    mpz_sqrt(r4.get_mpz_t(), xi.get_mpz_t());
    mpz_sqrt(r4.get_mpz_t(), r4.get_mpz_t());
    xi = 73794 * xi * r4 / 27011;
  }
  return std::nullopt;
}

IntPoly gcd_prs(const IntPoly& a, const IntPoly& b, Var v) {
  Univariate ua = split(a, v), ub = split(b, v);
  IntPoly ca = univariate_content(ua), cb = univariate_content(ub);
  IntPoly cg = gcd_primitive(ca, cb);
  Univariate A = divide_content(ua, ca), B = divide_content(ub, cb);
  if (A.deg() < B.deg()) std::swap(A, B);
  while (true) {
    Univariate R = prem(A, B);
    if (R.c.empty()) break;
    if (R.deg() == 0) {
      return cg;
    }
    A = std::move(B);
    B = divide_content(R, univariate_content(R));
  }
  IntPoly g = positive(primitive(join(B, v)));
  return positive(cg * g);
}

IntPoly gcd_primitive(const IntPoly& a0, const IntPoly& b0) {
  if (a0.is_zero()) return positive(primitive(b0));
  if (b0.is_zero()) return positive(primitive(a0));
  Monomial ma = a0.content_monomial(), mb = b0.content_monomial();
  Monomial m = Monomial::meet(ma, mb);
  IntPoly a = a0.shifted(ma.inverse()), b = b0.shifted(mb.inverse());
  IntPoly mono = IntPoly::monomial(m);
  if (a.is_constant() || b.is_constant()) return mono;

  std::vector<Var> va = a.variables(), vb = b.variables();
  std::vector<Var> only_a, only_b, common;
  std::set_difference(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(only_a));
  std::set_difference(vb.begin(), vb.end(), va.begin(), va.end(), std::back_inserter(only_b));
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
  if (common.empty()) return mono;
  if (!only_a.empty()) return mono * gcd_of_list(positive(primitive(b)), coefficients_in(a, only_a));
  if (!only_b.empty()) return mono * gcd_of_list(positive(primitive(a)), coefficients_in(b, only_b));

  if (b.size() <= a.size()) {
    if (auto q = exact_div(a, b)) return mono * positive(primitive(b));
  } else {
    if (auto q = exact_div(b, a)) return mono * positive(primitive(a));
  }

  // Modular images: if the image gcd in v is constant for a point where the
  // leading coefficients survive, the true gcd does not involve v.
  std::uint64_t seed = 0x5bd1e995ULL ^ (a.size() * 1315423911ULL) ^ (b.size() << 17);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(2, kPrime - 1);
  Var best = common.front();
  int best_deg = -1;
  for (Var v : common) {
    int da = a.degree(v), db = b.degree(v);
    int found = -1;
    for (int attempt = 0; attempt < 3 && found < 0; ++attempt) {
      std::map<Var, std::uint64_t> point;
      for (Var w : common) {
        if (w != v) point[w] = dist(rng);
      }
      Dense ia = image(a, v, point), ib = image(b, v, point);
      modp::trim(ia);
      modp::trim(ib);
      if (static_cast<int>(ia.size()) - 1 != da || static_cast<int>(ib.size()) - 1 != db) continue;
      found = gcd_degree_mod(ia, ib);
    }
    if (found == 0) {
      std::vector<Var> one{v};
      std::vector<IntPoly> cs = coefficients_in(a, one);
      std::vector<IntPoly> cb = coefficients_in(b, one);
      cs.insert(cs.end(), cb.begin(), cb.end());
      std::sort(cs.begin(), cs.end(),
                [](const IntPoly& x, const IntPoly& y) { return x.size() < y.size(); });
      IntPoly g = positive(primitive(cs.front()));
      cs.erase(cs.begin());
      return mono * gcd_of_list(g, cs);
    }
    int span = std::max(da, db);
    if (best_deg < 0 || span < best_deg) {
      best = v;
      best_deg = span;
    }
  }
  if (auto t = heu_gcd(a, b, kHeuBitBudget)) return mono * positive(primitive(t->h));
  return mono * gcd_prs(a, b, best);
}

}  // namespace

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() && b.is_zero()) return IntPoly();
  if (a.has_negative_exponent() || b.has_negative_exponent()) {
    throw std::invalid_argument("poly_gcd: negative exponents");
  }
  BigInt ca = content(a), cb = content(b);
  BigInt g;
  mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  IntPoly h = gcd_primitive(primitive(a), primitive(b));
  return h.scaled(g);
}

}  // namespace clusterflow
