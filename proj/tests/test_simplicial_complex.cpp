#include <catch_amalgamated.hpp>

#include "arrtower/lattice.hpp"
#include "arrtower/simplicial_complex.hpp"
#include "oracles.hpp"

using namespace arrtower;

TEST_CASE("small complexes", "[complex]") {
  SimplicialComplex empty = SimplicialComplex::from_faces({}, {});
  CHECK(empty.dimension() == -1);
  CHECK(face_vector(empty).empty());
  CHECK(reduced_euler_characteristic(empty) == -1);

  auto triangle = SimplicialComplex::from_faces({"a", "b", "c"}, {{0, 1, 2}});
  CHECK(face_vector(triangle) == std::vector<std::size_t>{3, 3, 1});
  CHECK(reduced_euler_characteristic(triangle) == 0);
  CHECK(triangle.is_closed());
  CHECK(triangle.find_face(std::vector<SimplicialComplex::Vertex>{0, 2}).value() == 1);
  CHECK_FALSE(triangle.find_face(std::vector<SimplicialComplex::Vertex>{0, 3}).has_value());

  CHECK_THROWS_AS(SimplicialComplex::from_faces({"a"}, {{0, 0}}), UsageError);
  CHECK_THROWS_AS(SimplicialComplex::from_faces({"a"}, {{1}}), UsageError);
}

TEST_CASE("middle row of the four-point lattice is a 4-point antichain", "[complex]") {
  RLattice lat(4, 3);
  auto c = interval_order_complex(lat, 0, lat.size() - 1);
  CHECK(face_vector(c) == std::vector<std::size_t>{4});
  CHECK(reduced_euler_characteristic(c) == 3);
  CHECK(order_complex(std::vector<Partition>{}).dimension() == -1);
}

TEST_CASE("proper part of Pi_{5,3}: 15 vertices, edges = comparable pairs", "[complex]") {
  RLattice lat(5, 3);
  auto c = interval_order_complex(lat, 0, lat.size() - 1);
  auto inside = open_interval(lat, lat.bottom(), lat.top());
  std::size_t comparable = 0;
  for (const auto& a : inside)
    for (const auto& b : inside)
      if (strictly_refines(a, b)) ++comparable;
  CHECK(comparable == 20);
  CHECK(face_vector(c) == std::vector<std::size_t>{15, comparable});
  CHECK(c.dimension() == 1);
}

TEST_CASE("faces are exactly the chains (k <= 7)", "[complex]") {
  for (int r = 2; r <= 4; ++r)
    for (int k = r; k <= 7; ++k) {
      RLattice lat(k, r);
      // Whole proper part plus every lower interval of a two-block element.
      std::vector<std::size_t> tops{lat.size() - 1};
      for (std::size_t i = 1; i + 1 < lat.size(); ++i)
        if (lat[i].block_count() == 2 && tops.size() < 4) tops.push_back(i);
      for (std::size_t y : tops) {
        auto c = interval_order_complex(lat, 0, y);
        auto inside = lat.open_interval_indices(0, y);
        std::vector<std::vector<bool>> less(inside.size(), std::vector<bool>(inside.size()));
        for (std::size_t a = 0; a < inside.size(); ++a)
          for (std::size_t b = 0; b < inside.size(); ++b)
            less[a][b] = strictly_refines(lat[inside[a]], lat[inside[b]]);
        auto f = oracle::chain_counts(less);
        auto got = face_vector(c);
        INFO("k=" << k << " r=" << r << " y=" << lat[y].to_string());
        REQUIRE(got.size() == f.size());
        for (std::size_t d = 0; d < f.size(); ++d) CHECK(got[d] == f[d]);
        CHECK(c.is_closed());
        // Every stored face is a chain.
        for (int d = 1; d <= c.dimension(); ++d)
          for (std::size_t i = 0; i < c.face_count(d); ++i) {
            auto face = c.face(d, i);
            for (std::size_t t = 0; t + 1 < face.size(); ++t) REQUIRE(less[face[t]][face[t + 1]]);
          }
      }
    }
}

TEST_CASE("non-linear-extension input is sorted canonically", "[complex]") {
  // 3 < 0 < 2, 1 isolated: indices do not follow the order.
  auto c = order_complex(
      4, [](std::size_t i, std::size_t j) {
        return (i == 3 && j == 0) || (i == 0 && j == 2) || (i == 3 && j == 2);
      },
      [](std::size_t i) { return std::to_string(i); });
  CHECK(face_vector(c) == std::vector<std::size_t>{4, 3, 1});
  CHECK(c.is_closed());
}

TEST_CASE("face budget is enforced", "[complex]") {
  RLattice lat(6, 2);
  CHECK_THROWS_AS(order_complex(
                      lat.size(), [&](std::size_t i, std::size_t j) { return lat.less(i, j); },
                      [&](std::size_t i) { return lat[i].to_string(); }, 100),
                  ResourceError);
}
