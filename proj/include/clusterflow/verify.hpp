#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "clusterflow/exchange_matrix.hpp"
#include "clusterflow/serialize.hpp"

namespace clusterflow {

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  // LV runs.
  int lv_depth = 6;
  int lv_blocks = -1;  // negative: depth + 2
  // Liouville runs.
  int liouville_steps = 4;
  Rat cx = 2, cy = 3;
};

// Random exchange matrices on indices 1..n.
// Orientation of a random labelled tree: finite or affine type for n <= 6.
ExchangeMatrix random_tree_matrix(std::mt19937_64& rng, int n);
// Skew-symmetric with entries in {-1, 0, 1}.
ExchangeMatrix random_skew_matrix(std::mt19937_64& rng, int n);
// S D with S as above and d_i in {1, 2}.
ExchangeMatrix random_symmetrizable_matrix(std::mt19937_64& rng, int n);

bool seeds_equal(const Seed& a, const Seed& b);

// s_1 .. s_n of s_{k+4} s_k = s_{k+3} s_{k+1} + s_{k+2}^2 from cyclic
// mutation of the Somos-4 seed with the given initial cluster.
std::vector<Rat> somos4_sequence(int n_terms, const std::vector<Rat>& initial = {1, 1, 1, 1});

Report verify_algebra(const VerifyOptions& o = {});
Report verify_seeds(const VerifyOptions& o = {});       // involutivity, Laurent, LV schedule
Report verify_somos(const VerifyOptions& o = {});
Report verify_poisson(const VerifyOptions& o = {});     // random (B, P) pairs and the named examples
Report verify_lv(const VerifyOptions& o = {});          // T/Y/yhat relations and the tau lattice
Report verify_lv_poisson(const VerifyOptions& o = {});  // infinite and periodic LV families
Report verify_brackets(const VerifyOptions& o = {});
Report verify_liouville(const VerifyOptions& o = {});
Report verify_tropical(const VerifyOptions& o = {});

std::vector<std::string> suite_names();
// Throws std::invalid_argument for an unknown name.
Report run_suite(const std::string& name, const VerifyOptions& o = {});

}  // namespace clusterflow
