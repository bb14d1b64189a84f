#include "clusterflow/seed.hpp"

namespace clusterflow {

bool is_laurent_in_x(const RatFunc& f) {
  for (Var v : f.den().variables()) {
    if (is_x_var(v)) return false;
  }
  return true;
}

Seed initial_seed(const ExchangeMatrix& b, SemifieldTag tag, bool track_x) {
  validate_skew_symmetrizable(b);
  Seed s;
  s.b = b;
  s.d = *find_symmetrizer(b);
  s.tag = tag;
  s.track_x = track_x;
  for (int i = b.lo(); i <= b.hi(); ++i) {
    if (track_x) s.x.push_back(RatFunc::variable(x_var(i)));
    switch (tag) {
      case SemifieldTag::universal: s.y.emplace_back(RatFunc::variable(y_var(i))); break;
      case SemifieldTag::tropical: s.y.emplace_back(TropPoint::generator(i)); break;
      case SemifieldTag::trivial: s.y.emplace_back(TrivialOne{}); break;
    }
  }
  return s;
}

namespace {

RatFunc exchange_quotient(const RatFunc& numerator, const RatFunc& denominator_coef, const RatFunc& xk) {
  // Laurent fast path: clusters and coefficients without denominators.
  if (numerator.is_laurent() && xk.is_laurent() && denominator_coef.is_laurent() &&
      denominator_coef.num().is_monomial()) {
    LaurentPoly den = xk.num() * denominator_coef.num();
    if (auto q = exact_div_laurent(numerator.num(), den)) return RatFunc(*q);
  }
  return numerator / (denominator_coef * xk);
}

}  // namespace

RatFunc exchange_x(const Seed& s, int k) {
  const CoefValue& yk = s.y_at(k);
  RatFunc pos_f(Rat(1)), neg_f(Rat(1));
  for (int j = s.b.lo(); j <= s.b.hi(); ++j) {
    int bjk = s.b(j, k);
    if (bjk > 0) pos_f *= s.x_at(j).pow(bjk);
    if (bjk < 0) neg_f *= s.x_at(j).pow(-bjk);
  }
  RatFunc numerator = embed(yk) * pos_f + neg_f;
  return exchange_quotient(numerator, embed(one_plus(s.tag, yk)), s.x_at(k));
}

CoefValue mutated_coefficient(SemifieldTag tag, const CoefValue& yi, const CoefValue& yk, int bki) {
  if (bki > 0) return semifield_mul(yi, semifield_pow(semifield_div(yk, one_plus(tag, yk)), bki));
  if (bki < 0) return semifield_mul(yi, semifield_pow(one_plus(tag, yk), -bki));
  return yi;
}

Seed mutate_seed(const Seed& s, int k) {
  if (!s.b.contains(k)) throw std::out_of_range("mutation index " + std::to_string(k) + " outside seed");
  Seed r = s;
  r.b = mutate_matrix(s.b, k);
  if (s.track_x) {
    RatFunc xk_new = exchange_x(s, k);
    bool laurent = s.tag == SemifieldTag::universal ? is_laurent_in_x(xk_new) : xk_new.is_laurent();
    if (!laurent) {
      r.diagnostics.push_back("mutation at " + std::to_string(k) +
                              ": exchange relation is not Laurent in the initial cluster");
    }
    r.x_at(k) = std::move(xk_new);
  }
  const CoefValue& yk = s.y_at(k);
  for (int i = s.b.lo(); i <= s.b.hi(); ++i) {
    if (i == k) continue;
    int bki = s.b(k, i);
    if (bki != 0) r.y_at(i) = mutated_coefficient(s.tag, s.y_at(i), yk, bki);
  }
  r.y_at(k) = semifield_pow(yk, -1);
  return r;
}

namespace {

void check_commuting(const ExchangeMatrix& b, const std::vector<int>& letter) {
  for (std::size_t a = 0; a < letter.size(); ++a) {
    for (std::size_t c = a + 1; c < letter.size(); ++c) {
      if (letter[a] == letter[c]) throw NonCommutingSet(letter[a], letter[c]);
      if (b(letter[a], letter[c]) != 0) throw NonCommutingSet(letter[a], letter[c]);
    }
  }
}

}  // namespace

Seed apply_word(const Seed& s, const MutationWord& word) {
  Seed r = s;
  for (const auto& letter : word) {
    for (int k : letter) {
      if (!r.b.contains(k)) throw std::out_of_range("mutation index " + std::to_string(k) + " outside seed");
    }
    check_commuting(r.b, letter);
    for (int k : letter) r = mutate_seed(r, k);
  }
  return r;
}

ExchangeMatrix apply_word(const ExchangeMatrix& b, const MutationWord& word) {
  ExchangeMatrix r = b;
  for (const auto& letter : word) {
    for (int k : letter) {
      if (!r.contains(k)) throw std::out_of_range("mutation index " + std::to_string(k) + " outside matrix");
    }
    check_commuting(r, letter);
    for (int k : letter) r = mutate_matrix(r, k);
  }
  return r;
}

MutationWord lv_schedule(int depth, int lo, int hi) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  MutationWord w;
  for (int u = 0; u < depth; ++u) {
    std::vector<int> letter;
    for (int i = lo + 3 * u; i <= hi - 3 * u; ++i)
      if (((i - u) % 3 + 3) % 3 == 0) letter.push_back(i);
    w.push_back(std::move(letter));
  }
  return w;
}

}  // namespace clusterflow
