#include "clusterflow/semifield.hpp"

namespace clusterflow {

std::string default_var_name(Var v) {
  return (is_x_var(v) ? "x" : "y") + std::to_string(var_index(v));
}

std::string to_string(SemifieldTag tag) {
  switch (tag) {
    case SemifieldTag::universal: return "universal";
    case SemifieldTag::tropical: return "tropical";
    case SemifieldTag::trivial: return "trivial";
  }
  return "?";
}

SemifieldTag parse_semifield(const std::string& name) {
  if (name == "universal") return SemifieldTag::universal;
  if (name == "tropical") return SemifieldTag::tropical;
  if (name == "trivial") return SemifieldTag::trivial;
  throw std::invalid_argument("unknown semifield '" + name + "'");
}

SemifieldTag tag_of(const CoefValue& v) {
  if (std::holds_alternative<RatFunc>(v)) return SemifieldTag::universal;
  if (std::holds_alternative<TropPoint>(v)) return SemifieldTag::tropical;
  return SemifieldTag::trivial;
}

static void require_same(const CoefValue& a, const CoefValue& b) {
  if (a.index() != b.index()) {
    throw SemifieldMismatch("semifield elements of different kinds: " + to_string(tag_of(a)) +
                            " and " + to_string(tag_of(b)));
  }
}

CoefValue semifield_sum(SemifieldTag tag, const CoefValue& a, const CoefValue& b) {
  require_same(a, b);
  if (tag_of(a) != tag) {
    throw SemifieldMismatch("element of the " + to_string(tag_of(a)) + " semifield used in the " +
                            to_string(tag) + " semifield");
  }
  switch (tag) {
    case SemifieldTag::universal:
      return std::get<RatFunc>(a) + std::get<RatFunc>(b);
    case SemifieldTag::tropical:
      return TropPoint(
          Monomial::meet(std::get<TropPoint>(a).monomial(), std::get<TropPoint>(b).monomial()));
    case SemifieldTag::trivial:
      return TrivialOne{};
  }
  return TrivialOne{};
}

CoefValue semifield_mul(const CoefValue& a, const CoefValue& b) {
  require_same(a, b);
  if (auto* p = std::get_if<RatFunc>(&a)) return *p * std::get<RatFunc>(b);
  if (auto* p = std::get_if<TropPoint>(&a)) return *p * std::get<TropPoint>(b);
  return TrivialOne{};
}

CoefValue semifield_div(const CoefValue& a, const CoefValue& b) {
  require_same(a, b);
  if (auto* p = std::get_if<RatFunc>(&a)) return *p / std::get<RatFunc>(b);
  if (auto* p = std::get_if<TropPoint>(&a)) return *p / std::get<TropPoint>(b);
  return TrivialOne{};
}

CoefValue semifield_pow(const CoefValue& a, int k) {
  if (auto* p = std::get_if<RatFunc>(&a)) return p->pow(k);
  if (auto* p = std::get_if<TropPoint>(&a)) return p->pow(k);
  return TrivialOne{};
}

CoefValue semifield_one(SemifieldTag tag) {
  switch (tag) {
    case SemifieldTag::universal: return RatFunc(Rat(1));
    case SemifieldTag::tropical: return TropPoint();
    case SemifieldTag::trivial: return TrivialOne{};
  }
  return TrivialOne{};
}

CoefValue one_plus(SemifieldTag tag, const CoefValue& a) {
  return semifield_sum(tag, semifield_one(tag), a);
}

RatFunc embed(const CoefValue& v) {
  if (auto* p = std::get_if<RatFunc>(&v)) return *p;
  if (auto* p = std::get_if<TropPoint>(&v)) return RatFunc::monomial(p->monomial());
  return RatFunc(Rat(1));
}

}  // namespace clusterflow
