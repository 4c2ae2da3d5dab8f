// Copyright 2026 The SCARP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <random>
#include <string>

#include "scarp/instance_io.hpp"
#include "fixtures.hpp"

using namespace scarp;
using scarp::testing::counterexample;
using scarp::testing::optimal_plan;

namespace {

const char* kFig3 = R"(# four-vertex counterexample
NAME fig3
VERTICES 4
CAPACITY 8
DEPOT 1
EDGES 5
1 2 1 1
1 3 1 1
1 4 1 1
2 3 1 12
3 4 1 1
)";

const char* kSmallVal = R"(NOMBRE : tiny3
COMENTARIO : 0  (cota superior)
VERTICES : 3
ARISTAS_REQ : 3
ARISTAS_NOREQ : 0
VEHICULOS : 2
CAPACIDAD : 5
TIPO_COSTES_ARISTAS : EXPLICITOS
COSTE_TOTAL_REQ : 6
LISTA_ARISTAS_REQ :
( 1, 2)  coste 1  demanda 2
( 2, 3)  coste 2  demanda 3
( 1, 3)  coste 3  demanda 4
DEPOSITO :   1
END
)";

}  // namespace

TEST_CASE("canonical parse of the counterexample") {
  const Instance g = parse_canonical(kFig3);
  CHECK(g.name() == "fig3");
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_edges() == 5);
  CHECK(g.capacity() == 8.0);
  CHECK(g.depot() == 0);
  CHECK(g.total_demand() == 16.0);
  CHECK(write_canonical(parse_canonical(write_canonical(g))) == write_canonical(g));
}

TEST_CASE("canonical parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_canonical("NAME a\nVERTICES 2\nCAPACITY 1\nDEPOT 1\nEDGES 0\n"),
                       "line 5: EDGES count is zero", ParseError);
  CHECK_THROWS_WITH_AS(parse_canonical("NAME a\nCAPACITY 1\n"), doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_canonical("NAME a\nVERTICES 2\nCAPACITY 1\nDEPOT 1\nEDGES 1\n1 3 1 1\n"),
                       doctest::Contains("outside"), ParseError);
  CHECK_THROWS_AS(parse_canonical("NAME a\nVERTICES 2\nCAPACITY 1\nDEPOT 1\nEDGES 2\n1 2 1 1\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_canonical("NAME a\nVERTICES 3\nCAPACITY 1\nDEPOT 1\nEDGES 1\n1 2 1 1\n"),
                  ValidationError);
}

TEST_CASE("canonical parse normalizes reversed edges") {
  const Instance g = parse_canonical("NAME r\nVERTICES 5\nCAPACITY 4\nDEPOT 1\nEDGES 4\n"
                                     "1 2 1 0\n2 3 1 0\n3 4 1 0\n5 3 1.0 2.0\n");
  const auto e = g.find_edge(2, 4);
  REQUIRE(e.has_value());
  CHECK(g.edge(*e).i == 2);
  CHECK(g.edge(*e).j == 4);
  CHECK(g.edge(*e).demand == 2.0);
}

TEST_CASE("parse-write-parse is idempotent on random instances") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    const Instance g = scarp::testing::random_tiny(rng, k);
    const std::string once = write_canonical(g);
    const Instance back = parse_canonical(once);
    CHECK(write_canonical(back) == once);
    CHECK(back.total_demand() == g.total_demand());
  }
}

TEST_CASE("val layout") {
  ValMetadata meta;
  const Instance g = parse_val(kSmallVal, &meta);
  CHECK(g.name() == "tiny3");
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 3);
  CHECK(g.capacity() == 5.0);
  CHECK(g.total_demand() == 9.0);
  CHECK(meta.vehicles == 2);

  std::string truncated(kSmallVal);
  truncated = truncated.substr(0, truncated.find("LISTA_ARISTAS_REQ"));
  CHECK_THROWS_WITH_AS(parse_val(truncated), doctest::Contains("missing section LISTA_ARISTAS_REQ"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_val(std::string(kSmallVal).replace(0, 6, "NOMBRA")),
                       doctest::Contains("unknown keyword"), ParseError);
  std::string miscount(kSmallVal);
  miscount.replace(miscount.find("ARISTAS_REQ : 3"), 15, "ARISTAS_REQ : 4");
  CHECK_THROWS_WITH_AS(parse_val(miscount), doctest::Contains("ARISTAS_REQ is 4"), ParseError);
}

TEST_CASE("solution documents round-trip") {
  const Instance g = counterexample();
  const ShortestPathTable sp = dijkstra_all(g);
  const SolutionFile file = make_solution_file(g, sp, optimal_plan(g), 7.0, 0.0);
  CHECK(file.objective == 7.0);
  const std::string text = write_solution(file);
  CHECK(read_solution(text, g) == file);
  CHECK(write_solution(read_solution(text)) == text);

  SolutionFile stub;
  stub.instance = "empty";
  CHECK(read_solution(write_solution(stub)) == stub);

  const Solution back = solution_from_file(g, read_solution(text, g));
  CHECK(back.routes == optimal_plan(g).routes);
  CHECK(back.spray == optimal_plan(g).spray);
}

TEST_CASE("solution documents reject bad references") {
  const std::string bad = R"({"instance":"x","formulation":"basic","objective":null,
    "lower_bound":null,"gap_percent":null,
    "routes":[{"robot":1,"vertices":[1,2,1],"spray":[{"edge":[9,9],"amount":1}]}]})";
  CHECK_THROWS_AS(read_solution(bad), ValidationError);
  const std::string open_route = R"({"instance":"x","formulation":"basic",
    "routes":[{"robot":1,"vertices":[1,2],"spray":[]}]})";
  CHECK_THROWS_AS(read_solution(open_route), ValidationError);
  const std::string missing = R"({"instance":"x","formulation":"basic",
    "routes":[{"robot":1,"vertices":[1,2,1],"spray":[{"edge":[2,4],"amount":1}]}]})";
  CHECK_NOTHROW(read_solution(missing));
  CHECK_THROWS_AS(read_solution(missing, counterexample()), ValidationError);
  CHECK_THROWS_AS(read_solution("{"), ParseError);
}

TEST_CASE("trace csv") {
  const std::vector<TracePoint> trace{{0.0, 1.0, 9.0, 1, 0}, {0.5, 7.0, 7.0, 3, 1}};
  CHECK(write_trace_csv(trace) == "time_s,lb,ub,nodes,accepted_heuristics\n0,1,9,1,0\n0.5,7,7,3,1\n");
  CHECK(write_trace_csv({}) == "time_s,lb,ub,nodes,accepted_heuristics\n");
}
