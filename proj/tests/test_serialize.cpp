#include <doctest.h>

#include "clusterflow/seed.hpp"
#include "clusterflow/serialize.hpp"

using namespace clusterflow;

namespace {

RatFunc X(int i) { return RatFunc::variable(x_var(i)); }

}  // namespace

TEST_CASE("rational functions round-trip") {
  const std::vector<RatFunc> samples = {
      RatFunc(0), RatFunc(Rat(-7) / 3), X(1) * X(2) / X(3), (X(1) + 2 * X(2)) / (X(1) - X(3)),
      (X(2) * X(4) + X(3) * X(3)) / X(1)};
  for (const auto& f : samples) {
    const json j = to_json(f);
    CHECK(ratfunc_from_json(j) == f);
    CHECK(ratfunc_from_json(json::parse(j.dump())) == f);
    CHECK(j.contains("den") == !f.is_laurent());
  }
}

TEST_CASE("matrices round-trip") {
  const ExchangeMatrix b = somos4_matrix();
  CHECK(matrix_from_json(to_json(b)) == b);
  CHECK(matrix_from_json(json::parse("[[0,1],[-1,0]]")) == a2_matrix());
  CHECK(matrix_from_json(json::parse(R"({"lo": 0, "rows": [[0,1],[-1,0]]})")).lo() == 0);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[0,1],[1,0]]")), InvalidMatrix);

  PoissonMatrix p = PoissonMatrix::from_rows(1, {{0, Rat(1) / 2}, {Rat(-1) / 2, 0}});
  p.c = Rat(3);
  const PoissonMatrix q = poisson_from_json(json::parse(to_json(p).dump()));
  CHECK(q == p);
  REQUIRE(q.c);
  CHECK(*q.c == 3);
}

TEST_CASE("periodic matrix and seed output") {
  const json j = to_json(lv_matrix());
  CHECK(j["period"] == 3);
  CHECK(j["band"] == 3);
  CHECK(j["rule"].size() == lv_matrix().rule().size());
  const Seed s = mutate_seed(initial_seed(a2_matrix(), SemifieldTag::tropical), 1);
  const json js = to_json(s);
  CHECK(js["semifield"] == "tropical");
  CHECK(js["x"].size() == 2);
  CHECK(js["y"][0]["value"]["tropical"]["1"] == -1);
}

TEST_CASE("report formats") {
  Report r{"demo", {}};
  CHECK_FALSE(r.ok());
  r.add("first", true);
  r.add("second, quoted \"x\"", false, {{"n", 2}});
  CHECK_FALSE(r.ok());
  const json j = to_json(r);
  CHECK(j["suite"] == "demo");
  CHECK(j["status"] == "fail");
  CHECK(j["checks"][0].contains("witness") == false);
  CHECK(j["checks"][1]["witness"]["n"] == 2);
  CHECK(to_csv(r) ==
        "suite,check,status,witness\n"
        "demo,first,pass,\n"
        "demo,\"second, quoted \"\"x\"\"\",fail,\"{\"\"n\"\":2}\"\n");
  Report ok{"demo", {}};
  ok.add("only", true);
  CHECK(ok.ok());
}
