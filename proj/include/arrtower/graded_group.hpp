#ifndef ARRTOWER_GRADED_GROUP_HPP
#define ARRTOWER_GRADED_GROUP_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arrtower/error.hpp"
#include "arrtower/smith.hpp"
#include "arrtower/sparse_matrix.hpp"

namespace arrtower {

/// Finitely generated abelian group Z^rank + Z/d_1 + ... + Z/d_t with
/// d_1 | d_2 | ... | d_t and every d_i >= 2.
struct GroupComponent {
  std::uint64_t rank = 0;
  std::vector<BigInt> torsion;

  bool is_zero() const noexcept { return rank == 0 && torsion.empty(); }
  bool is_free() const noexcept { return torsion.empty(); }

  friend bool operator==(const GroupComponent&, const GroupComponent&) = default;
};

/// Direct sum of two components, re-normalising the invariant factors.
inline GroupComponent direct_sum(const GroupComponent& a, const GroupComponent& b) {
  GroupComponent out;
  out.rank = a.rank + b.rank;
  if (a.torsion.empty()) {
    out.torsion = b.torsion;
  } else if (b.torsion.empty()) {
    out.torsion = a.torsion;
  } else {
    std::vector<BigInt> all = a.torsion;
    all.insert(all.end(), b.torsion.begin(), b.torsion.end());
    out.torsion = detail::normalize_invariant_factors(std::move(all));
  }
  return out;
}

/// Z-graded finitely generated abelian group. Zero degrees are not stored.
class GradedGroup {
 public:
  GradedGroup() = default;

  /// Adds (as a direct summand) Z^rank + torsion in the given degree.
  void add(int degree, std::uint64_t rank, std::vector<BigInt> torsion = {}) {
    GroupComponent c{rank, detail::normalize_invariant_factors(std::move(torsion))};
    add(degree, c);
  }

  void add(int degree, const GroupComponent& c) {
    if (c.is_zero()) return;
    auto it = components_.find(degree);
    if (it == components_.end())
      components_.emplace(degree, c);
    else
      it->second = direct_sum(it->second, c);
  }

  GroupComponent component(int degree) const {
    auto it = components_.find(degree);
    return it == components_.end() ? GroupComponent{} : it->second;
  }

  std::uint64_t rank(int degree) const { return component(degree).rank; }

  const std::map<int, GroupComponent>& components() const noexcept { return components_; }

  bool is_zero() const noexcept { return components_.empty(); }

  bool is_free() const noexcept {
    for (const auto& [d, c] : components_)
      if (!c.is_free()) return false;
    return true;
  }

  std::optional<int> min_degree() const {
    if (components_.empty()) return std::nullopt;
    return components_.begin()->first;
  }

  std::optional<int> max_degree() const {
    if (components_.empty()) return std::nullopt;
    return components_.rbegin()->first;
  }

  std::uint64_t total_rank() const noexcept {
    std::uint64_t t = 0;
    for (const auto& [d, c] : components_) t += c.rank;
    return t;
  }

  /// sum_d (-1)^d rank_d
  long long euler_characteristic() const noexcept {
    long long chi = 0;
    for (const auto& [d, c] : components_) {
      long long r = static_cast<long long>(c.rank);
      chi += (d % 2 == 0) ? r : -r;
    }
    return chi;
  }

  GradedGroup shifted(int by) const {
    GradedGroup out;
    for (const auto& [d, c] : components_) out.components_.emplace(d + by, c);
    return out;
  }

  friend GradedGroup operator+(const GradedGroup& a, const GradedGroup& b) {
    GradedGroup out = a;
    for (const auto& [d, c] : b.components_) out.add(d, c);
    return out;
  }

  GradedGroup& operator+=(const GradedGroup& b) {
    for (const auto& [d, c] : b.components_) add(d, c);
    return *this;
  }

  friend bool operator==(const GradedGroup&, const GradedGroup&) = default;

  /// "deg:Z^r+Z/d" pieces joined by ", "; "0" for the zero group.
  std::string to_string() const {
    if (components_.empty()) return "0";
    std::string out;
    for (const auto& [d, c] : components_) {
      if (!out.empty()) out += ", ";
      out += std::to_string(d) + ":" + component_to_string(c, false);
    }
    return out;
  }

  /// Z^r (+) Z/d notation; `unicode` selects the blackboard-bold rendering.
  static std::string component_to_string(const GroupComponent& c, bool unicode) {
    std::string z = unicode ? "ℤ" : "Z";
    std::string plus = unicode ? " ⊕ " : " + ";
    std::string out;
    if (c.rank > 0) out = c.rank == 1 ? z : z + "^" + std::to_string(c.rank);
    for (const auto& t : c.torsion) {
      if (!out.empty()) out += plus;
      out += z + "/" + t.str();
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::map<int, GroupComponent> components_;
};

/// Reduced homology of a join A * B for free inputs:
/// H_t(A*B) = sum_{p+q=t-1} H_p(A) (x) H_q(B).
inline GradedGroup join(const GradedGroup& a, const GradedGroup& b) {
  if (!a.is_free() || !b.is_free())
    throw TorsionError("join formula requires free homology");
  GradedGroup out;
  for (const auto& [p, ca] : a.components())
    for (const auto& [q, cb] : b.components()) out.add(p + q + 1, ca.rank * cb.rank);
  return out;
}

/// Reduced homology of the iterated suspension.
inline GradedGroup suspend(const GradedGroup& g, int times = 1) { return g.shifted(times); }

}  // namespace arrtower

#endif  // ARRTOWER_GRADED_GROUP_HPP
