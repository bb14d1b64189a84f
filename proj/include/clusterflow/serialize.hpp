#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "clusterflow/exchange_matrix.hpp"
#include "clusterflow/poisson.hpp"
#include "clusterflow/qmatrix.hpp"
#include "clusterflow/rat_func.hpp"
#include "clusterflow/seed.hpp"

namespace clusterflow {

using json = nlohmann::json;

// Rationals are strings "p/q"; Laurent polynomials are arrays of
// {"coeff": "p/q", "exps": {"<var>": e}} in canonical term order.
json to_json(const Rat& r);
json to_json(const LaurentPoly& p);
// {"num": ..., "den": ..., "text": ...}; den is omitted when it is 1.
json to_json(const RatFunc& f);
json to_json(const ExchangeMatrix& b);  // {"lo", "rows"}
json to_json(const PeriodicBandedMatrix& b);
json to_json(const QMatrix& m);         // rows of rational strings
json to_json(const PoissonMatrix& p);   // {"lo", "rows", "c"?}
json to_json(const CoefValue& v);
json to_json(const Seed& s);

LaurentPoly poly_from_json(const json& j);
RatFunc ratfunc_from_json(const json& j);
// Accepts {"lo": l, "rows": [[...]]} or a bare array of rows (lo = 1).
ExchangeMatrix matrix_from_json(const json& j);
PoissonMatrix poisson_from_json(const json& j);

// Outcome of one named check. The witness says what failed, in a form a
// script can read back.
struct Check {
  std::string name;
  bool passed = false;
  json witness;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  bool ok() const;
  void add(std::string name, bool passed, json witness = json::object());
};

json to_json(const Report& r);
// Columns suite,check,status,witness; the witness is compact JSON.
std::string to_csv(const Report& r);

}  // namespace clusterflow
