#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "clusterflow/detail/modp.hpp"
#include "clusterflow/rat_func.hpp"

namespace clusterflow {

// c * m * prod_a atom_a^e_a with atoms taken from an AtomPool. Products and
// quotients never expand anything; only sums do.
struct Factored {
  Rat c = 1;
  Monomial m;
  std::map<int, int> e;  // atom id -> nonzero exponent

  static Factored constant(const Rat& v) {
    Factored f;
    f.c = v;
    return f;
  }
  static Factored monomial(const Monomial& mono) {
    Factored f;
    f.m = mono;
    return f;
  }
  bool is_zero() const { return c == 0; }
};

Factored operator*(const Factored& a, const Factored& b);
Factored operator/(const Factored& a, const Factored& b);
Factored pow(const Factored& a, int k);
Factored inverse(const Factored& a);

// Shared set of atoms: integral primitive polynomials with nonnegative
// exponents, no monomial factor and positive leading coefficient. Atoms may
// later be split into finer atoms; values that mention a split atom are
// rewritten by normalize().
class AtomPool {
 public:
  AtomPool();

  std::size_t size() const { return atoms_.size(); }
  const IntPoly& atom(int id) const { return atoms_.at(static_cast<std::size_t>(id)).poly; }

  // Writes p over the pool: known atoms are divided out, an irreducible-looking
  // remainder becomes a new atom.
  Factored factor(const LaurentPoly& p);
  Factored factor(const RatFunc& f);

  Factored sum(const Factored& a, const Factored& b);
  Factored one_plus(const Factored& a) { return sum(Factored::constant(1), a); }

  // Rewrites split atoms into their parts.
  Factored normalize(const Factored& a) const;

  // Exact equality. Atoms that survive in a / b are refined by gcds until
  // they are pairwise coprime, after which unique factorization decides.
  bool equal(const Factored& a, const Factored& b);

  LaurentPoly expand(const Factored& a) const;  // requires no negative atom exponents
  RatFunc to_ratfunc(const Factored& a) const;

 private:
  struct Atom {
    IntPoly poly;
    std::int64_t total_degree = 0;
    std::vector<Var> vars;
    modp::Dense image;
    std::vector<std::pair<int, int>> parts;  // nonempty once split
  };

  int intern(IntPoly p);
  modp::Dense line_image(const IntPoly& p) const;
  std::uint64_t line_point(Var v) const;
  void split(int id, const std::vector<std::pair<int, int>>& parts);
  // Factors an integral primitive polynomial with no monomial content.
  std::map<int, int> factor_primitive(IntPoly p);
  // numerator and denominator products of a (positive and negative atom
  // exponents, monomial split by sign), expanded.
  std::pair<LaurentPoly, LaurentPoly> expand_parts(const Factored& a) const;

  std::vector<Atom> atoms_;
  std::unordered_map<std::size_t, std::vector<int>> by_hash_;
  std::uint64_t seed_;
  mutable std::map<Var, std::uint64_t> line_;
};

}  // namespace clusterflow
