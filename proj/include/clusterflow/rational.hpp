#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace clusterflow {

using Rat = mpq_class;
using BigInt = mpz_class;

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on anything else,
// including a zero denominator.
Rat parse_rat(std::string_view text);

// "p/q", with "/q" omitted when q == 1.
std::string to_string(const Rat& value);
std::string to_string(const BigInt& value);

}  // namespace clusterflow
