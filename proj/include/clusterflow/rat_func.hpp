#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "clusterflow/laurent_poly.hpp"

namespace clusterflow {

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

// Reduced rational function num/den. Canonical form:
//  * den is an integral primitive polynomial with no monomial factor and a
//    positive leading coefficient, den == 1 exactly when the value is Laurent;
//  * num carries the rational scale and any negative exponents;
//  * gcd(num, den) == 1.
class RatFunc {
 public:
  RatFunc() : den_(LaurentPoly::constant(Rat(1))) {}
  RatFunc(const Rat& c) : num_(LaurentPoly::constant(c)), den_(LaurentPoly::constant(Rat(1))) {}
  RatFunc(long c) : RatFunc(Rat(c)) {}
  RatFunc(LaurentPoly p) : num_(std::move(p)), den_(LaurentPoly::constant(Rat(1))) {}

  static RatFunc variable(Var v) { return RatFunc(LaurentPoly::variable(v)); }
  static RatFunc monomial(const Monomial& m) { return RatFunc(LaurentPoly::monomial(m)); }
  // Throws DivisionByZero when den == 0.
  static RatFunc fraction(const LaurentPoly& num, const LaurentPoly& den);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const { return den_.is_one(); }
  bool is_constant() const { return is_laurent() && num_.is_constant(); }
  std::optional<Rat> constant_value() const;
  std::vector<Var> variables() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);  // throws DivisionByZero
  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

  RatFunc inverse() const;
  RatFunc pow(int k) const;
  RatFunc partial(Var v) const;

  // Substitutes variables; variables missing from the map are kept.
  RatFunc substitute(const std::map<Var, RatFunc>& values) const;
  // Exact value at a rational point; throws DivisionByZero if den vanishes.
  Rat evaluate(const std::map<Var, Rat>& point) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  RatFunc(LaurentPoly num, LaurentPoly den, int) : num_(std::move(num)), den_(std::move(den)) {}

  LaurentPoly num_;
  LaurentPoly den_;
};

std::optional<RatFunc> try_divide(const RatFunc& a, const RatFunc& b);

// Evaluates a Laurent polynomial at rational-function arguments.
RatFunc evaluate_poly(const LaurentPoly& p, const std::map<Var, RatFunc>& values);

using VarNamer = std::function<std::string(Var)>;
std::string format_poly(const LaurentPoly& p, const VarNamer& name);
std::string format(const RatFunc& f, const VarNamer& name);

}  // namespace clusterflow
