#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "clusterflow/rat_func.hpp"

namespace clusterflow {

// Cluster variable x_i and coefficient y_i share one variable space:
// x_i -> 2i, y_i -> 2i + 1.
constexpr Var x_var(int i) { return 2 * i; }
constexpr Var y_var(int i) { return 2 * i + 1; }
constexpr bool is_x_var(Var v) { return (v & 1) == 0; }
constexpr int var_index(Var v) { return v >> 1; }
std::string default_var_name(Var v);

enum class SemifieldTag { universal, tropical, trivial };

std::string to_string(SemifieldTag tag);
SemifieldTag parse_semifield(const std::string& name);

// Element of Trop(y): exponent vector over the initial coefficients, stored
// as a monomial in the y-variables.
class TropPoint {
 public:
  TropPoint() = default;
  explicit TropPoint(Monomial m) : m_(std::move(m)) {}
  static TropPoint generator(int i) { return TropPoint(Monomial::of(y_var(i))); }

  const Monomial& monomial() const { return m_; }
  std::int32_t exponent(int i) const { return m_.exponent(y_var(i)); }

  friend TropPoint operator*(const TropPoint& a, const TropPoint& b) { return TropPoint(a.m_ * b.m_); }
  friend TropPoint operator/(const TropPoint& a, const TropPoint& b) { return TropPoint(a.m_ / b.m_); }
  TropPoint pow(int k) const { return TropPoint(m_.pow(k)); }
  friend bool operator==(const TropPoint& a, const TropPoint& b) { return a.m_ == b.m_; }

 private:
  Monomial m_;
};

struct TrivialOne {
  friend bool operator==(TrivialOne, TrivialOne) { return true; }
};

using CoefValue = std::variant<RatFunc, TropPoint, TrivialOne>;

class SemifieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

SemifieldTag tag_of(const CoefValue& v);

// The semifield addition of the given semifield. Mixing element kinds, or a
// kind that does not belong to `tag`, throws SemifieldMismatch.
CoefValue semifield_sum(SemifieldTag tag, const CoefValue& a, const CoefValue& b);
CoefValue semifield_mul(const CoefValue& a, const CoefValue& b);
CoefValue semifield_div(const CoefValue& a, const CoefValue& b);
CoefValue semifield_pow(const CoefValue& a, int k);
CoefValue semifield_one(SemifieldTag tag);

// 1 (+) a.
CoefValue one_plus(SemifieldTag tag, const CoefValue& a);

// Image in the ambient field: identity for the universal semifield, the
// Laurent monomial y^e for a tropical point, 1 for the trivial semifield.
RatFunc embed(const CoefValue& v);

}  // namespace clusterflow
