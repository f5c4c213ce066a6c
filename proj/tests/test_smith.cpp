#include <catch_amalgamated.hpp>

#include <random>

#include "arrtower/smith.hpp"
#include "oracles.hpp"

using namespace arrtower;

namespace {

std::vector<BigInt> big(std::initializer_list<long long> v) {
  std::vector<BigInt> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("classic 3x3 example", "[smith]") {
  auto m = SparseMatrix<BigInt>::from_dense({big({2, 4, 4}), big({-6, 6, 12}), big({10, -4, -16})});
  auto s = smith_normal_form(m);
  CHECK(s.rank == 3);
  CHECK(s.invariant_factors == big({2, 6, 12}));
}

TEST_CASE("degenerate shapes", "[smith]") {
  CHECK(smith_normal_form(SparseMatrix<int>(0, 0)).rank == 0);
  CHECK(smith_normal_form(SparseMatrix<int>(3, 0)).rank == 0);
  CHECK(smith_normal_form(SparseMatrix<int>(0, 4)).rank == 0);
  CHECK(smith_normal_form(SparseMatrix<int>(3, 3)).rank == 0);
  auto id = SparseMatrix<int>::identity(5);
  auto s = smith_normal_form(id);
  CHECK(s.rank == 5);
  CHECK(s.invariant_factors.empty());
}

TEST_CASE("random matrices agree with determinantal divisors", "[smith]") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> entry(-4, 4), dim(1, 4), sparse(0, 2);
  for (int trial = 0; trial < 300; ++trial) {
    int rows = dim(rng), cols = dim(rng);
    std::vector<std::vector<BigInt>> dense(rows, std::vector<BigInt>(cols));
    for (auto& row : dense)
      for (auto& v : row) v = sparse(rng) == 0 ? 0 : entry(rng);
    auto s = smith_normal_form(SparseMatrix<BigInt>::from_dense(dense));
    INFO("trial " << trial);
    CHECK(s.rank == oracle::rank_over_q(dense));
    CHECK(s.invariant_factors == oracle::invariant_factors_by_minors(dense));
  }
}

TEST_CASE("overflow falls back to arbitrary precision", "[smith]") {
  BigInt huge = BigInt(1) << 80;
  auto m = SparseMatrix<BigInt>::from_dense({{huge, BigInt(1)}, {BigInt(0), huge}});
  auto s = smith_normal_form(m);
  CHECK(s.rank == 2);
  REQUIRE(s.invariant_factors.size() == 1);
  CHECK(s.invariant_factors[0] == huge * huge);

  // Entries that fit but whose products do not.
  long long big_entry = 3'000'000'000LL;
  auto m2 = SparseMatrix<BigInt>::from_dense(
      {{BigInt(1), BigInt(big_entry)}, {BigInt(big_entry), BigInt(1)}});
  auto s2 = smith_normal_form(m2);
  CHECK(s2.rank == 2);
  REQUIRE(s2.invariant_factors.size() == 1);
  CHECK(s2.invariant_factors[0] == BigInt(big_entry) * big_entry - 1);
}

TEST_CASE("rank certificate over GF(p)", "[smith]") {
  // 2^31 - 1 divides the determinant: rank drops mod p and the certificate
  // must account for it.
  long long p = 2147483647LL;
  auto m = SparseMatrix<BigInt>::from_dense({{BigInt(p), BigInt(0)}, {BigInt(0), BigInt(1)}});
  auto s = smith_normal_form(m);
  CHECK(s.rank == 2);
  CHECK(s.invariant_factors == big({p}));
  CHECK(detail::rank_mod_prime(m) == 1);
}

TEST_CASE("sparse matrix basics", "[smith]") {
  auto a = SparseMatrix<int>::from_dense({{1, 0, 2}, {0, 3, 0}});
  auto t = a.transpose();
  CHECK(t.rows() == 3);
  CHECK(t.at(2, 0) == 2);
  CHECK((a * t) == SparseMatrix<int>::from_dense({{5, 0}, {0, 9}}));
  CHECK(a.nonzeros() == 3);
  CHECK_THROWS_AS(SparseMatrix<int>::from_dense({{1, 2}, {3}}), UsageError);
}
