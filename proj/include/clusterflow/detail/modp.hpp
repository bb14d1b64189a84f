#pragma once

#include <cstdint>
#include <vector>

// Arithmetic modulo the Mersenne prime 2^61 - 1, shared by the gcd and the
// factor-pool filters.
namespace clusterflow::modp {

constexpr std::uint64_t kPrime = 2305843009213693951ULL;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(z & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
  std::uint64_t s = lo + hi;
  if (s >= kPrime) s -= kPrime;
  return s;
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, b);
    b = mulmod(b, b);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

// Dense univariate polynomial, coefficient of t^i at index i.
using Dense = std::vector<std::uint64_t>;

inline void trim(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// a mod b; b must be nonzero after trimming.
inline Dense remainder(Dense a, Dense b) {
  trim(a);
  trim(b);
  std::uint64_t inv = invmod(b.back());
  while (a.size() >= b.size() && !a.empty()) {
    std::uint64_t f = mulmod(a.back(), inv);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = submod(a[i + shift], mulmod(f, b[i]));
    trim(a);
  }
  return a;
}

// Quotient of an exact division a / b.
inline Dense quotient(Dense a, Dense b) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) return {};
  Dense q(a.size() - b.size() + 1, 0);
  std::uint64_t inv = invmod(b.back());
  while (a.size() >= b.size() && !a.empty()) {
    std::uint64_t f = mulmod(a.back(), inv);
    std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = submod(a[i + shift], mulmod(f, b[i]));
    a.pop_back();
    trim(a);
  }
  return q;
}

}  // namespace clusterflow::modp
