#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "clusterflow/exchange_matrix.hpp"
#include "clusterflow/semifield.hpp"

namespace clusterflow {

// Seed (B, x, y) over a finite index range. x and y are indexed from b.lo().
// When track_x is false only (B, y) evolve.
struct Seed {
  ExchangeMatrix b;
  std::vector<int> d;
  SemifieldTag tag = SemifieldTag::universal;
  bool track_x = true;
  std::vector<RatFunc> x;
  std::vector<CoefValue> y;
  // Mutations whose exchange relation did not divide out to a Laurent
  // expression are recorded here rather than silently accepted.
  std::vector<std::string> diagnostics;

  const RatFunc& x_at(int i) const { return x.at(static_cast<std::size_t>(i - b.lo())); }
  const CoefValue& y_at(int i) const { return y.at(static_cast<std::size_t>(i - b.lo())); }
  RatFunc& x_at(int i) { return x.at(static_cast<std::size_t>(i - b.lo())); }
  CoefValue& y_at(int i) { return y.at(static_cast<std::size_t>(i - b.lo())); }
};

// x_i = x_var(i); y_i = y_var(i) (universal), the i-th generator (tropical),
// or 1 (trivial).
Seed initial_seed(const ExchangeMatrix& b, SemifieldTag tag, bool track_x = true);

Seed mutate_seed(const Seed& s, int k);

// New cluster variable x'_k of the exchange relation at k.
RatFunc exchange_x(const Seed& s, int k);
// Coefficient y'_i after mutation at k, given b_ki.
CoefValue mutated_coefficient(SemifieldTag tag, const CoefValue& yi, const CoefValue& yk, int bki);

// Each letter is a set of pairwise unconnected indices mutated together.
using MutationWord = std::vector<std::vector<int>>;

class NonCommutingSet : public std::invalid_argument {
 public:
  NonCommutingSet(int i, int j)
      : std::invalid_argument("indices " + std::to_string(i) + " and " + std::to_string(j) +
                              " are connected and cannot be mutated together"),
        first(i),
        second(j) {}
  int first, second;
};

// Letters 0 .. depth-1 of the LV schedule on the window [lo, hi]. Letter u
// holds the indices congruent to u mod 3 in [lo + 3u, hi - 3u]: after u
// letters only that range agrees with the infinite quiver.
MutationWord lv_schedule(int depth, int lo, int hi);

Seed apply_word(const Seed& s, const MutationWord& word);
ExchangeMatrix apply_word(const ExchangeMatrix& b, const MutationWord& word);

// True when x_i is Laurent in the initial cluster variables with
// coefficients in the ambient semifield: for universal coefficients the
// denominator may only involve y-variables.
bool is_laurent_in_x(const RatFunc& f);

}  // namespace clusterflow
