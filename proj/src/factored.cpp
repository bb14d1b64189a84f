#include "clusterflow/factored.hpp"

#include <algorithm>
#include <stdexcept>

namespace clusterflow {

using namespace modp;

namespace {

void add_exp(std::map<int, int>& e, int id, int k) {
  if (k == 0) return;
  int& v = e[id];
  v += k;
  if (v == 0) e.erase(id);
}

std::size_t poly_hash(const IntPoly& p) {
  std::size_t h = p.size();
  for (const auto& t : p.terms()) {
    h = h * 1000003u ^ t.mono.hash();
    h = h * 1000003u ^ static_cast<std::size_t>(mpz_fdiv_ui(t.coef.get_mpz_t(), 1000000007ul));
  }
  return h;
}

std::int64_t total_degree(const IntPoly& p) {
  std::int64_t d = 0;
  for (const auto& t : p.terms()) d = std::max(d, t.mono.total_degree());
  return d;
}

}  // namespace

Factored operator*(const Factored& a, const Factored& b) {
  Factored r;
  r.c = a.c * b.c;
  if (r.c == 0) return r;
  r.m = a.m * b.m;
  r.e = a.e;
  for (const auto& [id, k] : b.e) add_exp(r.e, id, k);
  return r;
}

Factored inverse(const Factored& a) {
  if (a.c == 0) throw DivisionByZero();
  Factored r;
  r.c = 1 / a.c;
  r.m = a.m.inverse();
  for (const auto& [id, k] : a.e) r.e[id] = -k;
  return r;
}

Factored operator/(const Factored& a, const Factored& b) { return a * inverse(b); }

Factored pow(const Factored& a, int k) {
  if (k < 0) return pow(inverse(a), -k);
  Factored r;
  if (k == 0) return r;
  r.c = LaurentPoly::power(a.c, k);
  r.m = a.m.pow(k);
  for (const auto& [id, v] : a.e) r.e[id] = v * k;
  return r;
}

AtomPool::AtomPool() : seed_(0x243f6a8885a308d3ull) {}

std::uint64_t AtomPool::line_point(Var v) const {
  auto it = line_.find(v);
  if (it != line_.end()) return it->second;
  // Deterministic pseudo-random point per variable.
  std::uint64_t x = seed_ ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) * 0x9e3779b97f4a7c15ull);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  std::uint64_t r = 2 + x % (kPrime - 3);
  line_.emplace(v, r);
  return r;
}

// Image under x_v -> r_v * t.
Dense AtomPool::line_image(const IntPoly& p) const {
  Dense out(static_cast<std::size_t>(total_degree(p)) + 1, 0);
  for (const auto& t : p.terms()) {
    std::uint64_t c = mpz_fdiv_ui(t.coef.get_mpz_t(), kPrime);
    for (const auto& [v, e] : t.mono.entries()) c = mulmod(c, powmod(line_point(v), static_cast<std::uint64_t>(e)));
    std::size_t d = static_cast<std::size_t>(t.mono.total_degree());
    out[d] = addmod(out[d], c);
  }
  trim(out);
  return out;
}

int AtomPool::intern(IntPoly p) {
  std::size_t h = poly_hash(p);
  auto& bucket = by_hash_[h];
  for (int id : bucket) {
    if (atoms_[static_cast<std::size_t>(id)].poly == p) return id;
  }
  Atom a;
  a.total_degree = total_degree(p);
  a.vars = p.variables();
  a.image = line_image(p);
  a.poly = std::move(p);
  atoms_.push_back(std::move(a));
  int id = static_cast<int>(atoms_.size()) - 1;
  bucket.push_back(id);
  return id;
}

std::map<int, int> AtomPool::factor_primitive(IntPoly p) {
  std::map<int, int> out;
  if (p.is_constant()) return out;
  std::vector<Var> vars = p.variables();
  std::int64_t deg = total_degree(p);
  Dense img = line_image(p);
  for (std::size_t idx = atoms_.size(); idx-- > 0;) {
    const Atom& a = atoms_[idx];
    if (!a.parts.empty() || a.total_degree > deg) continue;
    if (!std::includes(vars.begin(), vars.end(), a.vars.begin(), a.vars.end())) continue;
    while (a.total_degree <= deg) {
      bool image_ok = a.image.empty() || img.empty() || a.image.size() <= 1 ||
                      remainder(img, a.image).empty();
      if (!image_ok) break;
      auto q = exact_div(p, a.poly);
      if (!q) break;
      add_exp(out, static_cast<int>(idx), 1);
      p = std::move(*q);
      if (p.is_constant()) return out;
      deg = total_degree(p);
      if (!a.image.empty() && !img.empty()) img = quotient(img, a.image);
      vars = p.variables();
    }
    if (p.is_constant()) break;
  }
  if (!p.is_constant()) add_exp(out, intern(std::move(p)), 1);
  return out;
}

Factored AtomPool::factor(const LaurentPoly& p) {
  Factored f;
  if (p.is_zero()) {
    f.c = 0;
    return f;
  }
  auto [scale, ip] = integral_primitive(p);
  Monomial mono = ip.content_monomial();
  f.c = scale;
  f.m = mono;
  f.e = factor_primitive(ip.shifted(mono.inverse()));
  return f;
}

Factored AtomPool::factor(const RatFunc& r) { return factor(r.num()) / factor(r.den()); }

Factored AtomPool::normalize(const Factored& a) const {
  bool any = false;
  for (const auto& [id, k] : a.e) {
    if (!atoms_[static_cast<std::size_t>(id)].parts.empty()) any = true;
  }
  if (!any) return a;
  Factored r;
  r.c = a.c;
  r.m = a.m;
  std::vector<std::pair<int, int>> stack(a.e.begin(), a.e.end());
  while (!stack.empty()) {
    auto [id, k] = stack.back();
    stack.pop_back();
    const Atom& at = atoms_[static_cast<std::size_t>(id)];
    if (at.parts.empty()) {
      add_exp(r.e, id, k);
    } else {
      for (const auto& [pid, pk] : at.parts) stack.emplace_back(pid, pk * k);
    }
  }
  return r;
}

std::pair<LaurentPoly, LaurentPoly> AtomPool::expand_parts(const Factored& a) const {
  std::vector<Monomial::Entry> pos, neg;
  for (const auto& [v, k] : a.m.entries()) (k > 0 ? pos : neg).emplace_back(v, k > 0 ? k : -k);
  LaurentPoly num = LaurentPoly::monomial(Monomial(std::move(pos)), a.c);
  LaurentPoly den = LaurentPoly::monomial(Monomial(std::move(neg)));
  // Smallest factors first keeps intermediate products small.
  std::vector<std::pair<std::size_t, std::pair<int, int>>> order;
  for (const auto& [id, k] : a.e) order.push_back({atom(id).size(), {id, k}});
  std::sort(order.begin(), order.end());
  for (const auto& [sz, ik] : order) {
    LaurentPoly f = to_rational(atom(ik.first)).pow(static_cast<unsigned>(ik.second > 0 ? ik.second : -ik.second));
    if (ik.second > 0) {
      num *= f;
    } else {
      den *= f;
    }
  }
  return {num, den};
}

LaurentPoly AtomPool::expand(const Factored& a) const {
  Factored n = normalize(a);
  for (const auto& [id, k] : n.e) {
    if (k < 0) throw std::logic_error("expand: negative atom exponent");
  }
  return expand_parts(n).first;
}

RatFunc AtomPool::to_ratfunc(const Factored& a) const {
  auto [num, den] = expand_parts(normalize(a));
  return RatFunc::fraction(num, den);
}

Factored AtomPool::sum(const Factored& a0, const Factored& b0) {
  if (a0.is_zero()) return b0;
  if (b0.is_zero()) return a0;
  Factored a = normalize(a0), b = normalize(b0);
  // Pull out the common part so that both remaining summands are polynomials.
  Factored g;
  g.m = Monomial::meet(a.m, b.m);
  for (const auto& [id, k] : a.e) {
    auto it = b.e.find(id);
    int kb = it == b.e.end() ? 0 : it->second;
    int m = std::min(k, kb);
    if (m != 0) g.e[id] = m;
  }
  for (const auto& [id, k] : b.e) {
    if (a.e.count(id) == 0 && k < 0) g.e[id] = k;
  }
  Factored ra = a / g, rb = b / g;
  LaurentPoly s = expand_parts(ra).first + expand_parts(rb).first;
  return g * factor(s);
}

void AtomPool::split(int id, const std::vector<std::pair<int, int>>& parts) {
  atoms_[static_cast<std::size_t>(id)].parts = parts;
}

bool AtomPool::equal(const Factored& a, const Factored& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  for (;;) {
    Factored r = normalize(a / b);
    if (r.e.empty()) return r.c == 1 && r.m.is_one();
    std::vector<int> ids;
    for (const auto& [id, k] : r.e) ids.push_back(id);
    bool refined = false;
    for (std::size_t i = 0; i < ids.size() && !refined; ++i) {
      for (std::size_t j = i + 1; j < ids.size() && !refined; ++j) {
        const IntPoly& p = atom(ids[i]);
        const IntPoly& q = atom(ids[j]);
        IntPoly g = poly_gcd(p, q);
        if (g.is_constant()) continue;
        IntPoly pg = *exact_div(p, g), qg = *exact_div(q, g);
        const int pi = ids[i], qi = ids[j];
        if (pg.is_constant()) {
          split(qi, {{pi, 1}, {intern(std::move(qg)), 1}});
        } else if (qg.is_constant()) {
          split(pi, {{qi, 1}, {intern(std::move(pg)), 1}});
        } else {
          int gid = intern(std::move(g));
          int a1 = intern(std::move(pg));
          int b1 = intern(std::move(qg));
          split(pi, {{gid, 1}, {a1, 1}});
          split(qi, {{gid, 1}, {b1, 1}});
        }
        refined = true;
      }
    }
    // Pairwise coprime atoms factor uniquely: any survivor means a != b.
    if (!refined) return false;
  }
}

}  // namespace clusterflow
