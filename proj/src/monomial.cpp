#include "clusterflow/monomial.hpp"

#include <algorithm>

namespace clusterflow {

Monomial::Monomial(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (const auto& [v, k] : entries) {
    if (!e_.empty() && e_.back().first == v) {
      e_.back().second += k;
      if (e_.back().second == 0) e_.pop_back();
    } else if (k != 0) {
      e_.emplace_back(v, k);
    }
  }
}

Monomial Monomial::of(Var v, std::int32_t e) {
  Monomial m;
  if (e != 0) m.e_.emplace_back(v, e);
  return m;
}

std::int32_t Monomial::exponent(Var v) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), v,
                             [](const Entry& a, Var x) { return a.first < x; });
  return (it != e_.end() && it->first == v) ? it->second : 0;
}

bool Monomial::has_negative_exponent() const {
  return std::any_of(e_.begin(), e_.end(), [](const Entry& a) { return a.second < 0; });
}

std::int64_t Monomial::total_degree() const {
  std::int64_t d = 0;
  for (const auto& a : e_) d += a.second;
  return d;
}

namespace {

template <class Op>
std::vector<Monomial::Entry> merge(const std::vector<Monomial::Entry>& a,
                                   const std::vector<Monomial::Entry>& b, Op op) {
  std::vector<Monomial::Entry> r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    Var v;
    std::int32_t x = 0, y = 0;
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      v = a[i].first;
      x = a[i++].second;
    } else if (i == a.size() || b[j].first < a[i].first) {
      v = b[j].first;
      y = b[j++].second;
    } else {
      v = a[i].first;
      x = a[i++].second;
      y = b[j++].second;
    }
    std::int32_t z = op(x, y);
    if (z != 0) r.emplace_back(v, z);
  }
  return r;
}

}  // namespace

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  if (e_.empty()) return o;
  if (o.e_.empty()) return *this;
  m.e_ = merge(e_, o.e_, [](std::int32_t x, std::int32_t y) { return x + y; });
  return m;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial m;
  if (o.e_.empty()) return *this;
  m.e_ = merge(e_, o.e_, [](std::int32_t x, std::int32_t y) { return x - y; });
  return m;
}

Monomial Monomial::pow(std::int32_t k) const {
  Monomial m;
  if (k == 0) return m;
  m.e_ = e_;
  for (auto& a : m.e_) a.second *= k;
  return m;
}

Monomial Monomial::without(Var v) const {
  Monomial m;
  for (const auto& a : e_) {
    if (a.first != v) m.e_.push_back(a);
  }
  return m;
}

Monomial Monomial::meet(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.e_ = merge(a.e_, b.e_, [](std::int32_t x, std::int32_t y) { return std::min(x, y); });
  return m;
}

Monomial Monomial::join(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.e_ = merge(a.e_, b.e_, [](std::int32_t x, std::int32_t y) { return std::max(x, y); });
  return m;
}

bool Monomial::divides(const Monomial& o) const {
  std::size_t i = 0, j = 0;
  while (i < e_.size() || j < o.e_.size()) {
    if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first)) {
      if (e_[i].second > 0) return false;
      ++i;
    } else if (i == e_.size() || o.e_[j].first < e_[i].first) {
      if (o.e_[j].second < 0) return false;
      ++j;
    } else {
      if (e_[i].second > o.e_[j].second) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& [v, k] : e_) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v)) * 0x9e3779b97f4a7c15ULL;
    h *= 0x100000001b3ULL;
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(k)) + 0x7f4a7c15ULL;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int lex_compare(const Monomial& a, const Monomial& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].first == y[j].first) {
      if (x[i].second != y[j].second) return x[i].second > y[j].second ? 1 : -1;
      ++i;
      ++j;
    } else if (x[i].first < y[j].first) {
      return x[i].second > 0 ? 1 : -1;
    } else {
      return y[j].second > 0 ? -1 : 1;
    }
  }
  if (i < x.size()) return x[i].second > 0 ? 1 : -1;
  if (j < y.size()) return y[j].second > 0 ? -1 : 1;
  return 0;
}

}  // namespace clusterflow
