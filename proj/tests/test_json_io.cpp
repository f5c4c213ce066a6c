#include <catch_amalgamated.hpp>

#include "arrtower/arrtower.hpp"
#include "arrtower/json_io.hpp"

using namespace arrtower;

TEST_CASE("partition round trip", "[json]") {
  for (const auto& p : enumerate_r_equal_partitions(6, 2)) {
    Json j = to_json(p);
    CHECK(partition_from_json(j) == p);
    CHECK(partition_from_json(Json::parse(j.dump())) == p);
  }
  CHECK(to_json(Partition::parse("(1,2,3)(4)(5)")).dump() == "[[1,2,3],[4],[5]]");
  CHECK_THROWS_AS(partition_from_json(Json::parse("[[1,2],[]]")), UsageError);
  CHECK_THROWS_AS(partition_from_json(Json::parse("[[1,\"2\"]]")), UsageError);
  CHECK_THROWS_AS(partition_from_json(Json::parse("{}")), UsageError);
  CHECK_THROWS(partition_from_json(Json::parse("[[1,2],[2,3]]")));
}

TEST_CASE("graded group round trip", "[json]") {
  GradedGroup g;
  g.add(-1, 1);
  g.add(3, 2, {BigInt(2), BigInt(6)});
  BigInt huge = BigInt(1) << 100;
  g.add(7, 0, {huge});
  Json j = to_json(g);
  CHECK(j[2]["torsion"][0].is_string());
  CHECK(j[2]["torsion"][0].get<std::string>() == huge.str());
  CHECK(graded_group_from_json(Json::parse(j.dump())) == g);
  CHECK(to_json(GradedGroup{}).dump() == "[]");
  GradedGroup small;
  small.add(3, 2);
  CHECK(to_json(small).dump() == R"([{"degree":3,"rank":2,"torsion":[]}])");
}

TEST_CASE("simplicial complex round trip", "[json]") {
  auto c = SimplicialComplex::from_faces({"a", "b", "c", "d"}, {{0, 1, 2}, {2, 3}});
  Json j = to_json(c);
  CHECK(j["faces"]["0"].size() == 4);
  CHECK(j["faces"]["1"].size() == 4);
  CHECK(j["faces"]["2"].size() == 1);
  auto back = simplicial_complex_from_json(Json::parse(j.dump()));
  CHECK(to_json(back) == j);
  CHECK(reduced_homology(back) == reduced_homology(c));
}

TEST_CASE("report shapes", "[json]") {
  IntervalHomology h;
  Json ledger = to_json(contribution_ledger(4, 3, 2, h));
  REQUIRE(ledger.is_array());
  CHECK(ledger.size() == 5);  // every element except the bottom
  for (const auto& rec : ledger) {
    CHECK(rec.contains("x"));
    CHECK(rec.contains("label"));
    CHECK(rec["codim"].is_number_integer());
  }

  Json cube = to_json(verify_totalcokernel_theorem(4, 3, 2, h));
  CHECK(cube["verdict"] == "PASS");
  CHECK(cube["vertices"].size() == 16);
  CHECK(cube["total_cokernel"] == cube["tfiber"]);

  Json conn = to_json(connectivity_report({3, 3, 5, 2}, &h));
  CHECK(conn["cartesian_closed_form"] == 9);
  CHECK(conn["layer_connectivity"] == 3);
  CHECK(conn["consistent"] == true);
  CHECK(to_json(Connectivity::infinite()) == "infinite");
  CHECK(rational_to_string(Rational(7, 2)) == "7/2");
  CHECK(rational_to_string(Rational(4)) == "4");
}
