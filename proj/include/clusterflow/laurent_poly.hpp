#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "clusterflow/monomial.hpp"
#include "clusterflow/rational.hpp"

namespace clusterflow {

class TermLimitExceeded : public std::runtime_error {
 public:
  explicit TermLimitExceeded(std::size_t n)
      : std::runtime_error("polynomial term limit exceeded (" + std::to_string(n) +
                           " terms); raise CLUSTERFLOW_MAX_TERMS"),
        terms(n) {}
  std::size_t terms;
};

// Cap on the size of any polynomial produced by multiplication. Read once from
// CLUSTERFLOW_MAX_TERMS (default 200000).
std::size_t max_terms();

template <class C>
class basic_poly;

// Product over packed exponent keys; false when the operands do not fit the
// packed layout and the generic path must be used.
template <class C>
bool packed_mul(const basic_poly<C>& a, const basic_poly<C>& b, basic_poly<C>& out);

// Sparse Laurent polynomial over C. Terms are kept strictly decreasing in
// lex_compare order with nonzero coefficients.
template <class C>
class basic_poly {
 public:
  struct Term {
    Monomial mono;
    C coef;
  };

  basic_poly() = default;

  static basic_poly constant(const C& c) {
    basic_poly p;
    if (c != 0) p.t_.push_back({Monomial(), c});
    return p;
  }
  static basic_poly monomial(Monomial m, const C& c = C(1)) {
    basic_poly p;
    if (c != 0) p.t_.push_back({std::move(m), c});
    return p;
  }
  static basic_poly variable(Var v) { return monomial(Monomial::of(v)); }

  static basic_poly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return lex_compare(a.mono, b.mono) > 0;
    });
    basic_poly p;
    for (auto& t : terms) {
      if (!p.t_.empty() && p.t_.back().mono == t.mono) {
        p.t_.back().coef += t.coef;
        if (p.t_.back().coef == 0) p.t_.pop_back();
      } else if (t.coef != 0) {
        p.t_.push_back(std::move(t));
      }
    }
    return p;
  }

  // Terms must already be strictly decreasing with nonzero coefficients.
  static basic_poly from_sorted(std::vector<Term> terms) {
    basic_poly p;
    p.t_ = std::move(terms);
    return p;
  }

  const std::vector<Term>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].mono.is_one()); }
  bool is_monomial() const { return t_.size() == 1; }
  bool is_one() const { return t_.size() == 1 && t_[0].mono.is_one() && t_[0].coef == 1; }
  const Term& leading() const { return t_.front(); }
  C constant_value() const { return t_.empty() ? C(0) : t_[0].coef; }

  C coefficient(const Monomial& m) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& a, const Monomial& b) {
      return lex_compare(a.mono, b) > 0;
    });
    return (it != t_.end() && it->mono == m) ? it->coef : C(0);
  }

  bool has_negative_exponent() const {
    return std::any_of(t_.begin(), t_.end(),
                       [](const Term& t) { return t.mono.has_negative_exponent(); });
  }

  std::vector<Var> variables() const {
    std::vector<Var> vs;
    for (const auto& t : t_)
      for (const auto& e : t.mono.entries()) vs.push_back(e.first);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  std::int32_t degree(Var v) const {
    std::int32_t d = 0;
    bool first = true;
    for (const auto& t : t_) {
      std::int32_t e = t.mono.exponent(v);
      if (first || e > d) d = e;
      first = false;
    }
    return d;
  }

  std::int32_t min_degree(Var v) const {
    std::int32_t d = 0;
    bool first = true;
    for (const auto& t : t_) {
      std::int32_t e = t.mono.exponent(v);
      if (first || e < d) d = e;
      first = false;
    }
    return d;
  }

  // Componentwise minimum exponent over all terms (absent exponents count as 0).
  Monomial content_monomial() const {
    if (t_.empty()) return Monomial();
    Monomial m = t_[0].mono;
    for (std::size_t i = 1; i < t_.size(); ++i) m = Monomial::meet(m, t_[i].mono);
    return m;
  }

  basic_poly shifted(const Monomial& m) const {
    if (m.is_one()) return *this;
    basic_poly p;
    p.t_.reserve(t_.size());
    for (const auto& t : t_) p.t_.push_back({t.mono * m, t.coef});
    return p;
  }

  basic_poly scaled(const C& c) const {
    basic_poly p;
    if (c == 0) return p;
    p.t_ = t_;
    for (auto& t : p.t_) t.coef *= c;
    return p;
  }

  basic_poly operator-() const { return scaled(C(-1)); }

  friend basic_poly operator+(const basic_poly& a, const basic_poly& b) {
    return combine(a, b, false);
  }
  friend basic_poly operator-(const basic_poly& a, const basic_poly& b) {
    return combine(a, b, true);
  }
  basic_poly& operator+=(const basic_poly& b) { return *this = *this + b; }
  basic_poly& operator-=(const basic_poly& b) { return *this = *this - b; }

  friend basic_poly operator*(const basic_poly& a, const basic_poly& b) {
    if (a.is_zero() || b.is_zero()) return basic_poly();
    if (a.is_monomial()) return b.shifted(a.t_[0].mono).scaled(a.t_[0].coef);
    if (b.is_monomial()) return a.shifted(b.t_[0].mono).scaled(b.t_[0].coef);
    {
      basic_poly out;
      if (packed_mul(a, b, out)) return out;
    }
    const std::size_t cap = max_terms();
    std::unordered_map<Monomial, C, MonomialHash> acc;
    acc.reserve(std::min(a.size() * b.size(), cap) + 1);
    for (const auto& s : a.t_) {
      for (const auto& t : b.t_) {
        auto [it, fresh] = acc.try_emplace(s.mono * t.mono, s.coef);
        if (fresh) {
          it->second *= t.coef;
        } else {
          C prod = s.coef;
          prod *= t.coef;
          it->second += prod;
        }
        if (fresh && acc.size() > cap) throw TermLimitExceeded(acc.size());
      }
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& kv : acc) {
      if (kv.second != 0) terms.push_back({kv.first, std::move(kv.second)});
    }
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
      return lex_compare(x.mono, y.mono) > 0;
    });
    basic_poly p;
    p.t_ = std::move(terms);
    return p;
  }
  basic_poly& operator*=(const basic_poly& b) { return *this = *this * b; }

  basic_poly pow(unsigned k) const {
    basic_poly result = constant(C(1));
    basic_poly base = *this;
    while (k > 0) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return result;
  }

  friend bool operator==(const basic_poly& a, const basic_poly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i) {
      if (a.t_[i].mono != b.t_[i].mono || a.t_[i].coef != b.t_[i].coef) return false;
    }
    return true;
  }
  friend bool operator!=(const basic_poly& a, const basic_poly& b) { return !(a == b); }

  basic_poly partial(Var v) const {
    basic_poly p;
    for (const auto& t : t_) {
      std::int32_t e = t.mono.exponent(v);
      if (e == 0) continue;
      p.t_.push_back({t.mono * Monomial::of(v, -1), t.coef * C(e)});
    }
    // Lowering one exponent of every term by the same amount keeps the order.
    return p;
  }

  // Multiplies each term by its exponent in v (Euler operator v * d/dv).
  basic_poly euler(Var v) const {
    basic_poly p;
    for (const auto& t : t_) {
      std::int32_t e = t.mono.exponent(v);
      if (e != 0) p.t_.push_back({t.mono, t.coef * C(e)});
    }
    return p;
  }

  // Substitutes v = value. Negative exponents need an invertible value.
  basic_poly eval(Var v, const C& value) const {
    std::vector<Term> terms;
    terms.reserve(t_.size());
    for (const auto& t : t_) {
      std::int32_t e = t.mono.exponent(v);
      if (e == 0) {
        terms.push_back(t);
        continue;
      }
      terms.push_back({t.mono.without(v), t.coef * power(value, e)});
    }
    return from_terms(std::move(terms));
  }

  static C power(const C& value, std::int32_t e) {
    C r(1), b = value;
    bool neg = e < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-static_cast<long>(e)) : static_cast<unsigned long>(e);
    while (k) {
      if (k & 1ul) r *= b;
      k >>= 1ul;
      if (k) b *= b;
    }
    if (neg) r = C(1) / r;
    return r;
  }

 private:
  static basic_poly combine(const basic_poly& a, const basic_poly& b, bool subtract) {
    basic_poly p;
    p.t_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
      int c = (i == a.t_.size()) ? -1 : (j == b.t_.size()) ? 1 : lex_compare(a.t_[i].mono, b.t_[j].mono);
      if (c > 0) {
        p.t_.push_back(a.t_[i++]);
      } else if (c < 0) {
        p.t_.push_back(b.t_[j++]);
        if (subtract) p.t_.back().coef = -p.t_.back().coef;
      } else {
        C s = subtract ? C(a.t_[i].coef - b.t_[j].coef) : C(a.t_[i].coef + b.t_[j].coef);
        if (s != 0) p.t_.push_back({a.t_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    return p;
  }

  std::vector<Term> t_;
};

using LaurentPoly = basic_poly<Rat>;
using IntPoly = basic_poly<BigInt>;

// p = scale * q with q integral, primitive, positive leading coefficient.
std::pair<Rat, IntPoly> integral_primitive(const LaurentPoly& p);
LaurentPoly to_rational(const IntPoly& p);
BigInt content(const IntPoly& p);

// Exact quotient n / d in the Laurent ring over Q, or nullopt if d does not
// divide n.
std::optional<LaurentPoly> exact_div_laurent(const LaurentPoly& n, const LaurentPoly& d);

// Packed-key division used by exact_div: 1 exact, 0 not divisible, -1 the
// exponents do not fit the packed layout.
int packed_exact_div(const IntPoly& n, const IntPoly& d, IntPoly& q);

// Exact quotient over Z of polynomials with nonnegative exponents.
std::optional<IntPoly> exact_div(const IntPoly& n, const IntPoly& d);

// Greatest common divisor over Z of polynomials with nonnegative exponents.
// Result has positive leading coefficient and integer content
// gcd(content(a), content(b)); gcd(0, 0) = 0.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

}  // namespace clusterflow
