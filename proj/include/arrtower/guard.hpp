#ifndef ARRTOWER_GUARD_HPP
#define ARRTOWER_GUARD_HPP

#include <charconv>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <string_view>

#include "arrtower/error.hpp"

namespace arrtower {

/// Hard limit imposed by the fixed-width partition encoding.
inline constexpr int kMaxGroundSize = 16;

/// Default bound on the ground-set size k for lattice enumeration.
inline constexpr int kDefaultMaxK = 12;

/// Default bound on k for restriction cubes (2^k vertices).
inline constexpr int kDefaultMaxCubeK = 8;

/// Default bound on the number of faces of a single order complex; the
/// proper part of Pi_8 (the largest r = 2 case in reach) has about 10^7.
inline constexpr std::size_t kDefaultMaxFaces = 20'000'000;

/// Size guards. Values come from the defaults, optionally overridden by the
/// ARRTOWER_MAX_K environment variable or an explicit setting.
struct SizeGuard {
  int max_k = kDefaultMaxK;
  int max_cube_k = kDefaultMaxCubeK;
  std::size_t max_faces = kDefaultMaxFaces;

  static SizeGuard from_environment() {
    SizeGuard g;
    if (const char* env = std::getenv("ARRTOWER_MAX_K")) {
      std::string_view s(env);
      int value = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || ptr != s.data() + s.size() || value < 1)
        throw UsageError("ARRTOWER_MAX_K must be a positive integer, got '" +
                         std::string(s) + "'");
      g.max_k = value;
    }
    return g;
  }

  void check_k(int k) const {
    if (k > max_k)
      throw ResourceError("ground size k=" + std::to_string(k) +
                              " exceeds the size guard max_k=" +
                              std::to_string(max_k),
                          max_k);
    if (k > kMaxGroundSize)
      throw ResourceError("ground size k=" + std::to_string(k) +
                              " exceeds the encoding limit " +
                              std::to_string(kMaxGroundSize),
                          kMaxGroundSize);
  }

  void check_cube_k(int k) const {
    check_k(k);
    if (k > max_cube_k)
      throw ResourceError("cube dimension k=" + std::to_string(k) +
                              " exceeds the cube guard max_cube_k=" +
                              std::to_string(max_cube_k),
                          max_cube_k);
  }
};

/// Process-wide default guard, read once from the environment.
inline const SizeGuard& default_guard() {
  static const SizeGuard guard = SizeGuard::from_environment();
  return guard;
}

}  // namespace arrtower

#endif  // ARRTOWER_GUARD_HPP
