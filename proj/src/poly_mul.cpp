#include <algorithm>
#include <cstdint>
#include <iterator>
#include <queue>
#include <vector>

#include "clusterflow/laurent_poly.hpp"

namespace clusterflow {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

int bit_width(std::uint64_t v) {
  int w = 0;
  while (v) {
    ++w;
    v >>= 1;
  }
  return w;
}

// Exponent vectors of a product packed into one 128-bit word. The smallest
// variable occupies the highest field so that unsigned key order matches
// lex_compare.
struct Layout {
  std::vector<Var> vars;
  std::vector<std::int32_t> min_a, min_b;
  std::vector<int> shift;
  std::vector<u128> mask;
  u128 off_a = 0, off_b = 0;

  int index(Var v) const {
    return static_cast<int>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
  }

  u128 encode(const Monomial& m, u128 off) const {
    u128 k = off;
    for (const auto& [v, e] : m.entries()) {
      k += static_cast<u128>(static_cast<i128>(e)) << shift[index(v)];
    }
    return k;
  }

  Monomial decode(u128 k) const {
    std::vector<Monomial::Entry> es;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      auto f = static_cast<std::int64_t>((k >> shift[i]) & mask[i]);
      auto e = static_cast<std::int32_t>(f + min_a[i] + min_b[i]);
      if (e != 0) es.emplace_back(vars[i], e);
    }
    return Monomial(std::move(es));
  }
};

template <class C>
bool make_layout(const basic_poly<C>& a, const basic_poly<C>& b, Layout& lay) {
  std::vector<Var> va = a.variables(), vb = b.variables();
  std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(lay.vars));
  const std::size_t n = lay.vars.size();
  std::vector<std::int32_t> max_a(n, 0), max_b(n, 0);
  lay.min_a.assign(n, 0);
  lay.min_b.assign(n, 0);
  auto scan = [&](const basic_poly<C>& p, std::vector<std::int32_t>& lo,
                  std::vector<std::int32_t>& hi) {
    for (const auto& t : p.terms()) {
      for (const auto& [v, e] : t.mono.entries()) {
        int i = lay.index(v);
        lo[i] = std::min(lo[i], e);
        hi[i] = std::max(hi[i], e);
      }
    }
  };
  scan(a, lay.min_a, max_a);
  scan(b, lay.min_b, max_b);
  lay.shift.assign(n, 0);
  lay.mask.assign(n, 0);
  int total = 0;
  std::vector<int> width(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t range = static_cast<std::int64_t>(max_a[i]) - lay.min_a[i] + max_b[i] - lay.min_b[i];
    width[i] = std::max(1, bit_width(static_cast<std::uint64_t>(range)));
    total += width[i];
    if (total > 127) return false;
  }
  int pos = total;
  for (std::size_t i = 0; i < n; ++i) {
    pos -= width[i];
    lay.shift[i] = pos;
    lay.mask[i] = (static_cast<u128>(1) << width[i]) - 1;
    lay.off_a -= static_cast<u128>(static_cast<i128>(lay.min_a[i])) << pos;
    lay.off_b -= static_cast<u128>(static_cast<i128>(lay.min_b[i])) << pos;
  }
  return true;
}

// Open-addressing map from packed key to an accumulator slot.
template <class V>
class KeyTable {
 public:
  explicit KeyTable(std::size_t hint) {
    std::size_t cap = 16;
    while (cap < 2 * hint) cap <<= 1;
    slot_.assign(cap, kEmpty);
  }

  V& at(u128 key, bool& fresh) {
    if (2 * (keys_.size() + 1) > slot_.size()) grow();
    std::size_t m = slot_.size() - 1;
    std::size_t h = hash(key) & m;
    while (slot_[h] != kEmpty) {
      if (keys_[slot_[h]] == key) {
        fresh = false;
        return vals_[slot_[h]];
      }
      h = (h + 1) & m;
    }
    slot_[h] = static_cast<std::uint32_t>(keys_.size());
    keys_.push_back(key);
    vals_.emplace_back();
    fresh = true;
    return vals_.back();
  }

  std::size_t size() const { return keys_.size(); }
  const std::vector<u128>& keys() const { return keys_; }
  std::vector<V>& vals() { return vals_; }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  static std::size_t hash(u128 k) {
    std::uint64_t x = static_cast<std::uint64_t>(k) ^ (static_cast<std::uint64_t>(k >> 64) * 0x9e3779b97f4a7c15ull);
    x ^= x >> 31;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 29;
    return static_cast<std::size_t>(x);
  }

  void grow() {
    std::vector<std::uint32_t> s(slot_.size() * 2, kEmpty);
    std::size_t m = s.size() - 1;
    for (std::uint32_t i = 0; i < keys_.size(); ++i) {
      std::size_t h = hash(keys_[i]) & m;
      while (s[h] != kEmpty) h = (h + 1) & m;
      s[h] = i;
    }
    slot_ = std::move(s);
  }

  std::vector<std::uint32_t> slot_;
  std::vector<u128> keys_;
  std::vector<V> vals_;
};

bool small_int(const Rat& c, std::int64_t& out) {
  if (c.get_den() != 1 || !mpz_fits_slong_p(c.get_num_mpz_t())) return false;
  out = mpz_get_si(c.get_num_mpz_t());
  return true;
}
bool small_int(const BigInt& c, std::int64_t& out) {
  if (!mpz_fits_slong_p(c.get_mpz_t())) return false;
  out = mpz_get_si(c.get_mpz_t());
  return true;
}

BigInt from_i128(i128 v) {
  bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
  BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

template <class C>
void finish(const Layout& lay, const std::vector<u128>& keys, std::vector<C>& vals,
            basic_poly<C>& out) {
  std::vector<std::uint32_t> order;
  order.reserve(keys.size());
  for (std::uint32_t i = 0; i < keys.size(); ++i) {
    if (vals[i] != 0) order.push_back(i);
  }
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t x, std::uint32_t y) { return keys[x] > keys[y]; });
  std::vector<typename basic_poly<C>::Term> terms;
  terms.reserve(order.size());
  for (std::uint32_t i : order) terms.push_back({lay.decode(keys[i]), std::move(vals[i])});
  out = basic_poly<C>::from_sorted(std::move(terms));
}

}  // namespace

template <class C>
bool packed_mul(const basic_poly<C>& a, const basic_poly<C>& b, basic_poly<C>& out) {
  Layout lay;
  if (!make_layout(a, b, lay)) return false;
  const std::size_t cap = max_terms();
  std::vector<u128> ka, kb;
  ka.reserve(a.size());
  kb.reserve(b.size());
  for (const auto& t : a.terms()) ka.push_back(lay.encode(t.mono, lay.off_a));
  for (const auto& t : b.terms()) kb.push_back(lay.encode(t.mono, lay.off_b));

  // Machine-word path when every partial sum provably fits in 127 bits.
  std::vector<std::int64_t> ca(a.size()), cb(b.size());
  bool small = true;
  std::uint64_t ma = 0, mb = 0;
  for (std::size_t i = 0; small && i < a.size(); ++i) {
    small = small_int(a.terms()[i].coef, ca[i]);
    if (small) ma = std::max<std::uint64_t>(ma, ca[i] < 0 ? -static_cast<std::uint64_t>(ca[i]) : ca[i]);
  }
  for (std::size_t i = 0; small && i < b.size(); ++i) {
    small = small_int(b.terms()[i].coef, cb[i]);
    if (small) mb = std::max<std::uint64_t>(mb, cb[i] < 0 ? -static_cast<std::uint64_t>(cb[i]) : cb[i]);
  }
  if (small) small = bit_width(ma) + bit_width(mb) + bit_width(std::min(a.size(), b.size())) <= 125;

  const std::size_t hint = std::min(a.size() * b.size(), std::min(cap, std::size_t{1} << 22));
  if (small) {
    KeyTable<i128> tab(hint);
    for (std::size_t i = 0; i < ka.size(); ++i) {
      for (std::size_t j = 0; j < kb.size(); ++j) {
        bool fresh;
        i128& acc = tab.at(ka[i] + kb[j], fresh);
        acc += static_cast<i128>(ca[i]) * cb[j];
        if (fresh && tab.size() > cap) throw TermLimitExceeded(tab.size());
      }
    }
    std::vector<C> vals;
    vals.reserve(tab.size());
    for (i128 v : tab.vals()) vals.push_back(C(from_i128(v)));
    finish(lay, tab.keys(), vals, out);
    return true;
  }
  KeyTable<C> tab(hint);
  C prod;
  for (std::size_t i = 0; i < ka.size(); ++i) {
    const C& x = a.terms()[i].coef;
    for (std::size_t j = 0; j < kb.size(); ++j) {
      bool fresh;
      C& acc = tab.at(ka[i] + kb[j], fresh);
      prod = x * b.terms()[j].coef;
      acc += prod;
      if (fresh && tab.size() > cap) throw TermLimitExceeded(tab.size());
    }
  }
  finish(lay, tab.keys(), tab.vals(), out);
  return true;
}

int packed_exact_div(const IntPoly& n, const IntPoly& d, IntPoly& q) {
  std::vector<Var> vars = n.variables();
  const std::size_t nv = vars.size();
  auto index = [&](Var v) {
    return static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
  };
  std::vector<std::int32_t> nmin(nv, 0), nmax(nv, 0), dmin(nv, 0), dmax(nv, 0);
  for (const auto& t : n.terms()) {
    for (const auto& [v, e] : t.mono.entries()) {
      std::size_t i = index(v);
      nmin[i] = std::min(nmin[i], e);
      nmax[i] = std::max(nmax[i], e);
    }
  }
  for (const auto& t : d.terms()) {
    for (const auto& [v, e] : t.mono.entries()) {
      std::size_t i = index(v);
      if (i == nv || vars[i] != v) return 0;
      dmin[i] = std::min(dmin[i], e);
      dmax[i] = std::max(dmax[i], e);
    }
  }
  // Degrees in each variable add under multiplication, which bounds the
  // quotient exponents.
  std::vector<std::int32_t> qmin(nv), qmax(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    qmin[i] = nmin[i] - dmin[i];
    qmax[i] = nmax[i] - dmax[i];
    if (qmin[i] > qmax[i]) return 0;
  }
  std::vector<int> shift(nv);
  std::vector<u128> mask(nv);
  int total = 0;
  for (std::size_t i = 0; i < nv; ++i) {
    total += std::max(1, bit_width(static_cast<std::uint64_t>(nmax[i] - nmin[i])));
    if (total > 127) return -1;
  }
  int pos = total;
  for (std::size_t i = 0; i < nv; ++i) {
    int w = std::max(1, bit_width(static_cast<std::uint64_t>(nmax[i] - nmin[i])));
    pos -= w;
    shift[i] = pos;
    mask[i] = (static_cast<u128>(1) << w) - 1;
  }
  // Field values: n relative to nmin, d relative to dmin, quotient relative
  // to qmin, so that key(q) + key(d) = key(n).
  auto encode = [&](const Monomial& m, const std::vector<std::int32_t>& base) {
    u128 k = 0;
    std::size_t i = 0;
    for (const auto& [v, e] : m.entries()) {
      while (vars[i] != v) {
        k += static_cast<u128>(static_cast<std::uint64_t>(-base[i])) << shift[i];
        ++i;
      }
      k += static_cast<u128>(static_cast<std::uint64_t>(e - base[i])) << shift[i];
      ++i;
    }
    for (; i < nv; ++i) k += static_cast<u128>(static_cast<std::uint64_t>(-base[i])) << shift[i];
    return k;
  };
  auto field = [&](u128 k, std::size_t i) {
    return static_cast<std::int64_t>((k >> shift[i]) & mask[i]);
  };

  std::vector<u128> kd;
  kd.reserve(d.size());
  for (const auto& t : d.terms()) kd.push_back(encode(t.mono, dmin));
  const u128 lead = kd[0];
  const BigInt& lc = d.terms()[0].coef;

  KeyTable<BigInt> rem(n.size() + d.size());
  std::priority_queue<u128> heap;
  for (const auto& t : n.terms()) {
    bool fresh;
    u128 k = encode(t.mono, nmin);
    rem.at(k, fresh) = t.coef;
    heap.push(k);
  }
  const std::size_t cap = max_terms();
  std::vector<std::pair<u128, BigInt>> quot;
  BigInt qc, prod;
  while (!heap.empty()) {
    u128 k = heap.top();
    heap.pop();
    bool fresh;
    BigInt& r = rem.at(k, fresh);
    if (r == 0) continue;
    // Quotient exponent per variable must lie in [qmin, qmax].
    u128 qk = 0;
    for (std::size_t i = 0; i < nv; ++i) {
      std::int64_t e = field(k, i) + nmin[i] - (field(lead, i) + dmin[i]);
      if (e < qmin[i] || e > qmax[i]) return 0;
      qk += static_cast<u128>(static_cast<std::uint64_t>(e - qmin[i])) << shift[i];
    }
    if (!mpz_divisible_p(r.get_mpz_t(), lc.get_mpz_t())) return 0;
    mpz_divexact(qc.get_mpz_t(), r.get_mpz_t(), lc.get_mpz_t());
    for (std::size_t j = 0; j < kd.size(); ++j) {
      u128 key = qk + kd[j];
      BigInt& slot = rem.at(key, fresh);
      bool was_zero = slot == 0;
      mpz_mul(prod.get_mpz_t(), qc.get_mpz_t(), d.terms()[j].coef.get_mpz_t());
      slot -= prod;
      if (was_zero && slot != 0) heap.push(key);
    }
    quot.emplace_back(qk, qc);
    if (quot.size() > cap) throw TermLimitExceeded(quot.size());
    if (rem.size() > 8 * cap) throw TermLimitExceeded(rem.size());
  }
  std::vector<IntPoly::Term> terms;
  terms.reserve(quot.size());
  for (auto& [k, c] : quot) {
    std::vector<Monomial::Entry> es;
    for (std::size_t i = 0; i < nv; ++i) {
      auto e = static_cast<std::int32_t>(field(k, i) + qmin[i]);
      if (e != 0) es.emplace_back(vars[i], e);
    }
    terms.push_back({Monomial(std::move(es)), std::move(c)});
  }
  // Quotient terms are produced in decreasing order.
  q = IntPoly::from_sorted(std::move(terms));
  return 1;
}

template bool packed_mul<Rat>(const basic_poly<Rat>&, const basic_poly<Rat>&, basic_poly<Rat>&);
template bool packed_mul<BigInt>(const basic_poly<BigInt>&, const basic_poly<BigInt>&,
                                 basic_poly<BigInt>&);

}  // namespace clusterflow
