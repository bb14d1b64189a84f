#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace clusterflow {

using Var = std::int32_t;

// Laurent monomial: sparse exponent vector sorted by variable, no zero
// exponents stored.
class Monomial {
 public:
  using Entry = std::pair<Var, std::int32_t>;

  Monomial() = default;
  explicit Monomial(std::vector<Entry> entries);
  static Monomial of(Var v, std::int32_t e = 1);

  const std::vector<Entry>& entries() const { return e_; }
  std::int32_t exponent(Var v) const;
  bool is_one() const { return e_.empty(); }
  bool has_negative_exponent() const;
  std::int64_t total_degree() const;

  Monomial operator*(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;
  Monomial pow(std::int32_t k) const;
  Monomial inverse() const { return pow(-1); }
  Monomial without(Var v) const;

  // Componentwise min / max.
  static Monomial meet(const Monomial& a, const Monomial& b);
  static Monomial join(const Monomial& a, const Monomial& b);

  // True when every exponent of *this is <= the matching one of o.
  bool divides(const Monomial& o) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e_ != b.e_; }

  std::size_t hash() const;

 private:
  std::vector<Entry> e_;
};

// Lexicographic group order, smaller variable index more significant.
// Returns -1, 0, 1.
int lex_compare(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace clusterflow
