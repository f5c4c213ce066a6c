#include <catch_amalgamated.hpp>

#include <thread>

#include "arrtower/interval_homology.hpp"
#include "oracles.hpp"

using namespace arrtower;

TEST_CASE("join path equals direct reduction (k <= 6)", "[intervals]") {
  for (int r = 2; r <= 4; ++r) {
    IntervalHomology fast;
    for (int k = 1; k <= 6; ++k)
      for (const auto& x : enumerate_r_equal_partitions(k, r)) {
        if (x.block_count() == k) continue;
        INFO(x.to_string() << " r=" << r);
        CHECK(fast.of(x, r) == direct_interval_homology(x, r));
      }
  }
}

TEST_CASE("checked mode cross-checks every multi-block profile", "[intervals]") {
  IntervalHomology checked(VerificationMode::checked);
  for (const auto& x : enumerate_r_equal_partitions(7, 3))
    if (x.block_count() < 7) CHECK_NOTHROW(checked.of(x, 3));
  CHECK(checked.mode() == VerificationMode::checked);
}

TEST_CASE("reduced Euler characteristic is the Moebius function", "[intervals]") {
  for (int r = 2; r <= 3; ++r)
    for (int k = 2; k <= 6; ++k) {
      auto elements = enumerate_r_equal_partitions(k, r);
      std::vector<std::vector<bool>> less(elements.size(), std::vector<bool>(elements.size()));
      for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j)
          less[i][j] = strictly_refines(elements[i], elements[j]);
      auto mu = oracle::moebius_from_bottom(less);
      IntervalHomology h;
      for (std::size_t i = 1; i < elements.size(); ++i)
        CHECK(BigInt(h.of(elements[i], r).euler_characteristic()) == mu[i]);
    }
}

TEST_CASE("known proper parts", "[intervals]") {
  IntervalHomology h;
  GradedGroup empty;
  empty.add(-1, 1);
  CHECK(h.proper_part(3, 3) == empty);
  GradedGroup four;
  four.add(0, 3);
  CHECK(h.proper_part(4, 3) == four);
  GradedGroup five;
  five.add(1, 6);
  CHECK(h.proper_part(5, 3) == five);
  GradedGroup pi5;
  pi5.add(2, 24);
  CHECK(h.proper_part(5, 2) == pi5);
  CHECK_THROWS_AS(h.proper_part(2, 3), UsageError);
}

TEST_CASE("cache is keyed by block profile", "[intervals]") {
  IntervalHomology h;
  h.of(Partition::parse("(1,2,3)(4)(5)"), 3);
  auto size = h.cache_size();
  h.of(Partition::parse("(1)(2,4,5)(3)"), 3);
  CHECK(h.cache_size() == size);
  CHECK(block_profile(Partition::parse("(1,2,3)(4)(5,6,7,8)")) == std::vector<int>{4, 3});
}

TEST_CASE("invalid intervals", "[intervals]") {
  IntervalHomology h;
  CHECK_THROWS_AS(h.of(Partition::discrete(4), 3), UsageError);
  CHECK_THROWS_AS(h.of(Partition::parse("(1,2)(3)"), 3), UsageError);
  CHECK_THROWS_AS(direct_interval_homology(Partition::discrete(3), 2), UsageError);
}

TEST_CASE("top-degree law (k <= 6)", "[intervals]") {
  IntervalHomology h;
  for (int r = 2; r <= 4; ++r)
    for (int k = r; k <= 6; ++k)
      for (const auto& x : singleton_free_elements(k, r)) {
        int top = k - x.block_count() * (r - 1) - 2;
        auto g = h.of(x, r);
        INFO(x.to_string() << " r=" << r);
        CHECK(g.max_degree() == top);
        CHECK(g.rank(top) > 0);
      }
}

TEST_CASE("concurrent lookups share one computation", "[intervals]") {
  IntervalHomology shared;
  Partition top = Partition::single_block(6);
  std::vector<GradedGroup> results(8);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < results.size(); ++t)
    threads.emplace_back([&, t] { results[t] = shared.of(top, 2); });
  for (auto& th : threads) th.join();
  GradedGroup want;
  want.add(3, 120);
  for (const auto& g : results) CHECK(g == want);
  CHECK(shared.cache_size() == 1);

  SizeGuard small;
  small.max_k = 4;
  IntervalHomology guarded(VerificationMode::fast, small);
  CHECK_THROWS_AS(guarded.of(top, 2), ResourceError);
  CHECK_THROWS_AS(guarded.of(top, 2), ResourceError);  // failures are not cached
  CHECK(guarded.cache_size() == 0);
}
