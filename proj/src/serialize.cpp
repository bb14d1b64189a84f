#include "clusterflow/serialize.hpp"

#include <algorithm>
#include <sstream>

namespace clusterflow {

json to_json(const Rat& r) { return to_string(r); }

json to_json(const LaurentPoly& p) {
  json out = json::array();
  for (const auto& t : p.terms()) {
    json exps = json::object();
    for (const auto& [v, e] : t.mono.entries()) exps[std::to_string(v)] = e;
    out.push_back({{"coeff", to_string(t.coef)}, {"exps", exps}});
  }
  return out;
}

json to_json(const RatFunc& f) {
  json j = {{"num", to_json(f.num())}, {"text", format(f, default_var_name)}};
  if (!f.is_laurent()) j["den"] = to_json(f.den());
  return j;
}

json to_json(const ExchangeMatrix& b) { return {{"lo", b.lo()}, {"rows", b.rows()}}; }

json to_json(const PeriodicBandedMatrix& b) {
  json rule = json::array();
  for (const auto& [key, v] : b.rule()) rule.push_back({{"residue", key.first}, {"offset", key.second}, {"value", v}});
  return {{"period", b.period()}, {"band", b.band()}, {"rule", rule}};
}

json to_json(const QMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const PoissonMatrix& p) {
  json j = {{"lo", p.lo()}, {"rows", to_json(p.to_qmatrix())}};
  if (p.c) j["c"] = to_string(*p.c);
  return j;
}

json to_json(const CoefValue& v) {
  if (const auto* t = std::get_if<TropPoint>(&v)) {
    json exps = json::object();
    for (const auto& [var, e] : t->monomial().entries()) exps[std::to_string(var_index(var))] = e;
    return {{"tropical", exps}, {"text", format(embed(v), default_var_name)}};
  }
  if (std::holds_alternative<TrivialOne>(v)) return "1";
  return to_json(std::get<RatFunc>(v));
}

json to_json(const Seed& s) {
  json j = {{"semifield", to_string(s.tag)}, {"b", to_json(s.b)}, {"d", s.d}};
  json xs = json::array(), ys = json::array();
  for (int i = s.b.lo(); i <= s.b.hi(); ++i) {
    if (s.track_x) xs.push_back({{"index", i}, {"value", to_json(s.x_at(i))}});
    ys.push_back({{"index", i}, {"value", to_json(s.y_at(i))}});
  }
  if (s.track_x) j["x"] = xs;
  j["y"] = ys;
  if (!s.diagnostics.empty()) j["diagnostics"] = s.diagnostics;
  return j;
}

LaurentPoly poly_from_json(const json& j) {
  std::vector<LaurentPoly::Term> terms;
  for (const auto& t : j) {
    std::vector<Monomial::Entry> e;
    for (const auto& [k, v] : t.at("exps").items()) e.emplace_back(std::stoi(k), v.get<int>());
    std::sort(e.begin(), e.end());
    terms.push_back({Monomial(std::move(e)), parse_rat(t.at("coeff").get<std::string>())});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

RatFunc ratfunc_from_json(const json& j) {
  const LaurentPoly num = poly_from_json(j.at("num"));
  if (!j.contains("den")) return RatFunc(num);
  return RatFunc::fraction(num, poly_from_json(j.at("den")));
}

ExchangeMatrix matrix_from_json(const json& j) {
  if (j.is_array()) return ExchangeMatrix::from_rows(1, j.get<std::vector<std::vector<int>>>());
  return ExchangeMatrix::from_rows(j.value("lo", 1), j.at("rows").get<std::vector<std::vector<int>>>());
}

PoissonMatrix poisson_from_json(const json& j) {
  std::vector<std::vector<Rat>> rows;
  for (const auto& r : j.at("rows")) {
    std::vector<Rat> row;
    for (const auto& v : r) row.push_back(v.is_string() ? parse_rat(v.get<std::string>()) : Rat(v.get<long>()));
    rows.push_back(std::move(row));
  }
  PoissonMatrix p = PoissonMatrix::from_rows(j.value("lo", 1), rows);
  if (j.contains("c")) p.c = parse_rat(j.at("c").get<std::string>());
  return p;
}

bool Report::ok() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

void Report::add(std::string name, bool passed, json witness) {
  checks.push_back({std::move(name), passed, std::move(witness)});
}

json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j = {{"check", c.name}, {"status", c.passed ? "pass" : "fail"}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    checks.push_back(j);
  }
  return {{"suite", r.suite}, {"status", r.ok() ? "pass" : "fail"}, {"checks", checks}};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const Report& r) {
  std::ostringstream os;
  os << "suite,check,status,witness\n";
  for (const auto& c : r.checks)
    os << csv_field(r.suite) << ',' << csv_field(c.name) << ',' << (c.passed ? "pass" : "fail") << ','
       << csv_field(c.witness.empty() ? "" : c.witness.dump()) << '\n';
  return os.str();
}

}  // namespace clusterflow
