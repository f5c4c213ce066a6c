#ifndef ARRTOWER_HOMOLOGY_HPP
#define ARRTOWER_HOMOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "arrtower/error.hpp"
#include "arrtower/graded_group.hpp"
#include "arrtower/simplicial_complex.hpp"
#include "arrtower/smith.hpp"
#include "arrtower/sparse_matrix.hpp"

namespace arrtower {

/// Boundary matrices of a simplicial chain complex, optionally augmented by
/// C_{-1} = Z. `boundary(d)` is the map C_d -> C_{d-1} for d = 0..dim.
class ChainComplex {
 public:
  using Matrix = SparseMatrix<int>;

  ChainComplex() = default;
  ChainComplex(bool augmented, std::vector<Matrix> boundaries)
      : augmented_(augmented), boundaries_(std::move(boundaries)) {}

  bool augmented() const noexcept { return augmented_; }
  int top_degree() const noexcept { return static_cast<int>(boundaries_.size()) - 1; }
  const Matrix& boundary(int d) const { return boundaries_.at(static_cast<std::size_t>(d)); }

  /// Rank of the chain group C_d; C_{-1} is Z when augmented.
  std::size_t chain_rank(int d) const {
    if (d == -1) return augmented_ ? 1 : 0;
    if (d < -1 || d > top_degree()) return 0;
    return boundaries_[d].cols();
  }

  /// Whether every composite boundary(d-1) * boundary(d) vanishes.
  bool squares_to_zero() const {
    for (int d = 1; d <= top_degree(); ++d)
      if (!(boundaries_[d - 1] * boundaries_[d]).is_zero()) return false;
    return true;
  }

 private:
  bool augmented_ = true;
  std::vector<Matrix> boundaries_;
};

/// Boundary map C_d -> C_{d-1} with the alternating-sign convention: the
/// facet omitting the j-th vertex (ascending order) carries (-1)^j. For d = 0
/// this is the augmentation (all ones) when `augmented`, otherwise a 0 x f_0
/// matrix.
inline SparseMatrix<int> boundary_matrix(const SimplicialComplex& c, int d, bool augmented = true) {
  using Matrix = SparseMatrix<int>;
  if (d == 0) {
    Matrix m(augmented ? 1 : 0, c.face_count(0));
    if (augmented)
      for (std::size_t j = 0; j < c.face_count(0); ++j) m.set_column(j, {{0u, 1}});
    return m;
  }
  Matrix m(c.face_count(d - 1), c.face_count(d));
  std::vector<SimplicialComplex::Vertex> facet;
  for (std::size_t j = 0; j < c.face_count(d); ++j) {
    auto f = c.face(d, j);
    Matrix::Column col;
    col.reserve(f.size());
    for (std::size_t skip = 0; skip < f.size(); ++skip) {
      facet.clear();
      for (std::size_t t = 0; t < f.size(); ++t)
        if (t != skip) facet.push_back(f[t]);
      auto row = c.find_face(facet);
      if (!row) throw IntegrityError("simplicial complex is not closed under faces");
      col.emplace_back(static_cast<std::uint32_t>(*row), skip % 2 == 0 ? 1 : -1);
    }
    m.set_column(j, std::move(col));
  }
  return m;
}

inline ChainComplex boundary_matrices(const SimplicialComplex& c, bool augmented = true) {
  std::vector<SparseMatrix<int>> maps;
  for (int d = 0; d <= c.dimension(); ++d) maps.push_back(boundary_matrix(c, d, augmented));
  return ChainComplex(augmented, std::move(maps));
}

struct HomologyOptions {
  SmithOptions smith;
  /// Cancel reduction/coreduction pairs before Smith reduction.
  bool collapse = true;
};

/// Augmented chain complex of c after cancelling elementary pairs.
///
/// A cell a whose only surviving face is b (or a face b whose only surviving
/// coface is a) is removed together with its partner. All simplicial
/// incidences are +-1, and since a has no other surviving face (b no other
/// surviving coface) the reduced boundary is the plain restriction of the
/// original one: no fill-in, and the homology is unchanged. The surviving
/// cells index the returned matrices; `surviving[d + 1]` counts cells of
/// degree d for d = -1..dim.
struct CollapsedComplex {
  ChainComplex complex;
  std::vector<std::size_t> surviving;
};

inline CollapsedComplex collapse(const SimplicialComplex& c) {
  using Index = std::uint32_t;
  const int top = c.dimension();
  const std::size_t slots = static_cast<std::size_t>(top + 2);  // degrees -1..top
  std::vector<std::size_t> count(slots);
  count[0] = 1;
  for (int d = 0; d <= top; ++d) count[d + 1] = c.face_count(d);
  for (auto n : count)
    if (n > std::numeric_limits<Index>::max()) throw ResourceError("too many faces", n);

  // faces[s]: flat facet indices of cells in slot s (s >= 1), width s.
  std::vector<std::vector<Index>> faces(slots);
  std::vector<SimplicialComplex::Vertex> facet;
  for (int d = 0; d <= top; ++d) {
    auto& out = faces[d + 1];
    out.resize(count[d + 1] * static_cast<std::size_t>(d + 1));
    for (std::size_t j = 0; j < count[d + 1]; ++j) {
      if (d == 0) {
        out[j] = 0;
        continue;
      }
      auto f = c.face(d, j);
      for (std::size_t skip = 0; skip < f.size(); ++skip) {
        facet.clear();
        for (std::size_t t = 0; t < f.size(); ++t)
          if (t != skip) facet.push_back(f[t]);
        auto row = c.find_face(facet);
        if (!row) throw IntegrityError("simplicial complex is not closed under faces");
        out[j * f.size() + skip] = static_cast<Index>(*row);
      }
    }
  }
  // Coface lists in CSR form: cofaces of cells in slot s live in slot s + 1.
  std::vector<std::vector<std::size_t>> co_start(slots);
  std::vector<std::vector<Index>> co(slots);
  for (std::size_t s = 0; s < slots; ++s) {
    co_start[s].assign(count[s] + 1, 0);
    if (s + 1 == slots) continue;
    for (Index b : faces[s + 1]) ++co_start[s][b + 1];
    for (std::size_t i = 0; i < count[s]; ++i) co_start[s][i + 1] += co_start[s][i];
    co[s].resize(faces[s + 1].size());
    std::vector<std::size_t> fill(co_start[s].begin(), co_start[s].end() - 1);
    const std::size_t w = s + 1;  // cells of slot s + 1 have s + 1 faces
    for (std::size_t j = 0; j < count[s + 1]; ++j)
      for (std::size_t t = 0; t < w; ++t) co[s][fill[faces[s + 1][j * w + t]]++] = static_cast<Index>(j);
  }

  std::vector<std::vector<char>> alive(slots);
  std::vector<std::vector<Index>> nface(slots), ncoface(slots);
  for (std::size_t s = 0; s < slots; ++s) {
    alive[s].assign(count[s], 1);
    nface[s].assign(count[s], static_cast<Index>(s == 0 ? 0 : s));
    ncoface[s].resize(count[s]);
    for (std::size_t i = 0; i < count[s]; ++i)
      ncoface[s][i] = static_cast<Index>(co_start[s][i + 1] - co_start[s][i]);
  }

  // Breadth-first from one vertex: coreductions then spread through the
  // complex like a spanning-tree search.
  std::deque<std::pair<std::uint32_t, Index>> queue;
  auto remove = [&](std::size_t s, Index i) {
    alive[s][i] = 0;
    if (s + 1 < slots)
      for (std::size_t t = co_start[s][i]; t < co_start[s][i + 1]; ++t) {
        Index a = co[s][t];
        if (alive[s + 1][a] && --nface[s + 1][a] == 1) queue.emplace_back(s + 1, a);
      }
    for (std::size_t t = 0; t < s; ++t) {
      Index b = faces[s][i * s + t];
      if (alive[s - 1][b] && --ncoface[s - 1][b] == 1) queue.emplace_back(s - 1, b);
    }
  };
  if (slots > 1 && count[1] > 0) queue.emplace_back(1, 0);
  for (std::size_t s = 0; s < slots; ++s)
    for (std::size_t i = 0; i < count[s]; ++i)
      if (ncoface[s][i] == 1) queue.emplace_back(s, static_cast<Index>(i));
  while (!queue.empty()) {
    auto [s, i] = queue.front();
    queue.pop_front();
    if (!alive[s][i]) continue;
    if (nface[s][i] == 1) {
      for (std::size_t t = 0; t < s; ++t) {
        Index b = faces[s][i * s + t];
        if (alive[s - 1][b]) {
          remove(s, i);
          remove(s - 1, b);
          break;
        }
      }
    } else if (ncoface[s][i] == 1) {
      for (std::size_t t = co_start[s][i]; t < co_start[s][i + 1]; ++t) {
        Index a = co[s][t];
        if (alive[s + 1][a]) {
          remove(s, i);
          remove(s + 1, a);
          break;
        }
      }
    }
  }
  for (auto& v : co) std::vector<Index>().swap(v);

  // Renumber survivors and restrict the boundary maps.
  CollapsedComplex out;
  std::vector<std::vector<Index>> renumber(slots);
  out.surviving.resize(slots);
  for (std::size_t s = 0; s < slots; ++s) {
    renumber[s].assign(count[s], std::numeric_limits<Index>::max());
    Index next = 0;
    for (std::size_t i = 0; i < count[s]; ++i)
      if (alive[s][i]) renumber[s][i] = next++;
    out.surviving[s] = next;
  }
  std::vector<SparseMatrix<int>> maps;
  for (std::size_t s = 1; s < slots; ++s) {
    SparseMatrix<int> m(out.surviving[s - 1], out.surviving[s]);
    for (std::size_t i = 0; i < count[s]; ++i) {
      if (!alive[s][i]) continue;
      SparseMatrix<int>::Column col;
      for (std::size_t t = 0; t < s; ++t) {
        Index b = faces[s][i * s + t];
        if (alive[s - 1][b]) col.emplace_back(renumber[s - 1][b], s == 1 || t % 2 == 0 ? 1 : -1);
      }
      m.set_column(renumber[s][i], std::move(col));
    }
    maps.push_back(std::move(m));
  }
  out.complex = ChainComplex(true, std::move(maps));
  return out;
}

/// Reduced integral homology H~_d for d >= -1. The empty complex has
/// H~_{-1} = Z; nonempty complexes have H~_{-1} = 0.
///
/// By default the chain complex is first shrunk by `collapse`; otherwise the
/// full boundary matrices are reduced one degree at a time.
inline GradedGroup reduced_homology(const SimplicialComplex& c, const HomologyOptions& options = {}) {
  int top = c.dimension();
  std::vector<std::size_t> chains(static_cast<std::size_t>(top + 2));
  // smith[d] describes boundary(d) for d = 0..top; boundary(top + 1) = 0.
  std::vector<SmithForm> smith(static_cast<std::size_t>(top + 1));
  if (options.collapse) {
    auto reduced = collapse(c);
    chains = reduced.surviving;
    for (int d = 0; d <= top; ++d) smith[d] = smith_normal_form(reduced.complex.boundary(d), options.smith);
  } else {
    chains[0] = 1;
    for (int d = 0; d <= top; ++d) {
      chains[d + 1] = c.face_count(d);
      smith[d] = smith_normal_form(boundary_matrix(c, d, true), options.smith);
    }
  }
  auto rank_of = [&](int d) -> std::size_t {
    if (d < 0 || d > top) return 0;
    return smith[d].rank;
  };
  GradedGroup h;
  for (int d = -1; d <= top; ++d) {
    std::size_t cycles = chains[d + 1] - rank_of(d);
    std::size_t boundaries = rank_of(d + 1);
    std::vector<BigInt> torsion;
    if (d + 1 <= top) torsion = smith[d + 1].invariant_factors;
    h.add(d, cycles - boundaries, torsion);
  }
  if (h.euler_characteristic() != reduced_euler_characteristic(c))
    throw IntegrityError("homology ranks disagree with the reduced Euler characteristic");
  return h;
}

/// Reduced homology of the open lower interval (0, x) of an r-equal
/// partition lattice through the product decomposition of [0, x]:
/// the interval is the (c-1)-fold suspension of the join of the proper parts
/// of Pi_{k_i, r}, one factor per non-singleton block (a singleton block is a
/// one-point factor and drops out). `base` maps a block size k_i to the
/// reduced homology of the proper part of Pi_{k_i, r}.
inline GradedGroup homology_of_interval_via_join(const std::vector<int>& block_sizes,
                                                 const std::map<int, GradedGroup>& base) {
  std::vector<int> sizes;
  for (int s : block_sizes) {
    if (s < 1) throw UsageError("block sizes must be positive");
    if (s > 1) sizes.push_back(s);
  }
  if (sizes.empty()) throw UsageError("the interval (0, 0) is not defined");
  GradedGroup acc;
  bool first = true;
  for (int s : sizes) {
    auto it = base.find(s);
    if (it == base.end())
      throw UsageError("no base homology supplied for block size " + std::to_string(s));
    if (!it->second.is_free()) throw TorsionError("join formula requires free homology");
    acc = first ? it->second : join(acc, it->second);
    first = false;
  }
  return suspend(acc, static_cast<int>(sizes.size()) - 1);
}

}  // namespace arrtower

#endif  // ARRTOWER_HOMOLOGY_HPP
