#include "clusterflow/rat_func.hpp"

#include <sstream>

namespace clusterflow {

namespace {

IntPoly to_int(const LaurentPoly& p) {
  std::vector<IntPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.mono, t.coef.get_num()});
  return IntPoly::from_terms(std::move(terms));
}

// p = scale * mono * core, core integral primitive with positive leading
// coefficient and no monomial factor.
struct Parts {
  Rat scale;
  Monomial mono;
  IntPoly core;
};

Parts split(const LaurentPoly& p) {
  auto [s, ip] = integral_primitive(p);
  Monomial m = ip.content_monomial();
  return {s, m, ip.shifted(m.inverse())};
}

LaurentPoly assemble(const Parts& p) {
  return to_rational(p.core).shifted(p.mono).scaled(p.scale);
}

IntPoly divide(const IntPoly& a, const IntPoly& b) {
  if (b.is_one()) return a;
  auto q = exact_div(a, b);
  if (!q) throw std::logic_error("internal: inexact division by a gcd");
  return *q;
}

}  // namespace

RatFunc RatFunc::fraction(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) return RatFunc();
  Parts n = split(num), d = split(den);
  Rat scale = n.scale / d.scale;
  Monomial mono = n.mono / d.mono;
  if (d.core.is_constant()) {
    return RatFunc(to_rational(n.core).shifted(mono).scaled(scale), LaurentPoly::constant(Rat(1)), 0);
  }
  IntPoly g = poly_gcd(n.core, d.core);
  IntPoly nc = divide(n.core, g), dc = divide(d.core, g);
  if (dc.leading().coef < 0) {
    dc = -dc;
    scale = -scale;
  }
  return RatFunc(to_rational(nc).shifted(mono).scaled(scale), to_rational(dc), 0);
}

std::optional<Rat> RatFunc::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return num_.constant_value();
}

std::vector<Var> RatFunc::variables() const {
  std::vector<Var> a = num_.variables(), b = den_.variables(), out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.is_laurent() && b.is_laurent()) return RatFunc(a.num_ * b.num_);
  Parts an = split(a.num_), bn = split(b.num_);
  IntPoly ad = to_int(a.den_), bd = to_int(b.den_);
  IntPoly g1 = bd.is_one() ? bd : poly_gcd(an.core, bd);
  IntPoly g2 = ad.is_one() ? ad : poly_gcd(bn.core, ad);
  Parts n{an.scale * bn.scale, an.mono * bn.mono, divide(an.core, g1) * divide(bn.core, g2)};
  IntPoly d = divide(ad, g2) * divide(bd, g1);
  return RatFunc(assemble(n), to_rational(d), 0);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_laurent() && b.is_laurent()) return RatFunc(a.num_ + b.num_);
  // n/d + m is already reduced because gcd(n + m d, d) = gcd(n, d) = 1.
  if (b.is_laurent()) return RatFunc(a.num_ + b.num_ * a.den_, a.den_, 0);
  if (a.is_laurent()) return RatFunc(a.num_ * b.den_ + b.num_, b.den_, 0);
  if (a.den_ == b.den_) {
    LaurentPoly n = a.num_ + b.num_;
    if (n.is_zero()) return RatFunc();
    Parts p = split(n);
    IntPoly d = to_int(a.den_);
    IntPoly h = poly_gcd(p.core, d);
    p.core = divide(p.core, h);
    return RatFunc(assemble(p), to_rational(divide(d, h)), 0);
  }
  IntPoly ad = to_int(a.den_), bd = to_int(b.den_);
  IntPoly g = (ad.is_one() || bd.is_one()) ? IntPoly::constant(BigInt(1)) : poly_gcd(ad, bd);
  IntPoly ad1 = divide(ad, g), bd1 = divide(bd, g);
  LaurentPoly n = a.num_ * to_rational(bd1) + b.num_ * to_rational(ad1);
  if (n.is_zero()) return RatFunc();
  Parts p = split(n);
  IntPoly d = ad1 * bd1;
  if (!g.is_one()) {
    IntPoly h = poly_gcd(p.core, g);
    p.core = divide(p.core, h);
    d *= divide(g, h);
  }
  return RatFunc(assemble(p), to_rational(d), 0);
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, 0); }

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Parts n = split(num_);
  LaurentPoly new_num = den_.shifted(n.mono.inverse()).scaled(Rat(1) / n.scale);
  return RatFunc(std::move(new_num), to_rational(n.core), 0);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

std::optional<RatFunc> try_divide(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) return std::nullopt;
  return a / b;
}

RatFunc RatFunc::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  if (k == 0) return RatFunc(Rat(1));
  if (k == 1) return *this;
  return RatFunc(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)), 0);
}

RatFunc RatFunc::partial(Var v) const {
  if (is_laurent()) return RatFunc(num_.partial(v));
  LaurentPoly n = num_.partial(v) * den_ - num_ * den_.partial(v);
  return fraction(n, den_ * den_);
}

RatFunc evaluate_poly(const LaurentPoly& p, const std::map<Var, RatFunc>& values) {
  std::map<std::pair<Var, std::int32_t>, RatFunc> cache;
  auto power = [&](Var v, std::int32_t e) -> const RatFunc& {
    auto key = std::make_pair(v, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto val = values.find(v);
    RatFunc base = val == values.end() ? RatFunc::variable(v) : val->second;
    return cache.emplace(key, base.pow(e)).first->second;
  };
  // Group terms whose substituted denominators agree, so most additions stay
  // in the Laurent fast path.
  RatFunc total;
  LaurentPoly laurent_part;
  for (const auto& t : p.terms()) {
    RatFunc term(t.coef);
    for (const auto& [v, e] : t.mono.entries()) term *= power(v, e);
    if (term.is_laurent()) {
      laurent_part += term.num();
    } else {
      total += term;
    }
  }
  return total + RatFunc(laurent_part);
}

RatFunc RatFunc::substitute(const std::map<Var, RatFunc>& values) const {
  RatFunc n = evaluate_poly(num_, values);
  if (is_laurent()) return n;
  return n / evaluate_poly(den_, values);
}

Rat RatFunc::evaluate(const std::map<Var, Rat>& point) const {
  auto eval = [&](const LaurentPoly& p) {
    Rat s = 0;
    for (const auto& t : p.terms()) {
      Rat term = t.coef;
      for (const auto& [v, e] : t.mono.entries()) {
        auto it = point.find(v);
        if (it == point.end()) throw std::invalid_argument("evaluate: unassigned variable");
        if (e < 0 && it->second == 0) throw DivisionByZero();
        term *= LaurentPoly::power(it->second, e);
      }
      s += term;
    }
    return s;
  };
  Rat d = eval(den_);
  if (d == 0) throw DivisionByZero();
  return eval(num_) / d;
}

std::string format_poly(const LaurentPoly& p, const VarNamer& name) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rat c = t.coef;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    } else if (c < 0 && !t.mono.is_one()) {
      os << "-";
      c = -c;
    }
    first = false;
    bool unit = c == 1 && !t.mono.is_one();
    bool star = false;
    if (!unit) {
      os << to_string(c);
      star = true;
    }
    for (const auto& [v, e] : t.mono.entries()) {
      if (star) os << "*";
      os << name(v);
      if (e != 1) os << "^" << (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
      star = true;
    }
  }
  return os.str();
}

std::string format(const RatFunc& f, const VarNamer& name) {
  if (f.is_laurent()) return format_poly(f.num(), name);
  return "(" + format_poly(f.num(), name) + ")/(" + format_poly(f.den(), name) + ")";
}

}  // namespace clusterflow
