#ifndef ARRTOWER_SIMPLICIAL_COMPLEX_HPP
#define ARRTOWER_SIMPLICIAL_COMPLEX_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arrtower/error.hpp"
#include "arrtower/lattice.hpp"
#include "arrtower/partition.hpp"

namespace arrtower {

/// Finite abstract simplicial complex with explicitly stored faces.
///
/// Faces of dimension d are sorted (d+1)-tuples of vertex indices, kept in
/// one flat array per dimension in lexicographic order. The empty complex
/// (no vertices) has dimension -1.
class SimplicialComplex {
 public:
  using Vertex = std::uint32_t;

  SimplicialComplex() = default;

  /// Takes ownership of per-dimension flat face arrays. Faces must already be
  /// sorted tuples in lexicographic order; closure is not checked here.
  SimplicialComplex(std::vector<std::string> vertices, std::vector<std::vector<Vertex>> faces)
      : vertices_(std::move(vertices)), faces_(std::move(faces)) {
    while (!faces_.empty() && faces_.back().empty()) faces_.pop_back();
  }

  /// Closure of the given faces (any order, any vertex order within a face).
  static SimplicialComplex from_faces(std::vector<std::string> vertices,
                                      std::vector<std::vector<Vertex>> generators) {
    std::vector<std::vector<std::vector<Vertex>>> by_dim;
    for (auto& g : generators) {
      std::sort(g.begin(), g.end());
      if (std::adjacent_find(g.begin(), g.end()) != g.end())
        throw UsageError("simplex lists a vertex twice");
      for (Vertex v : g)
        if (v >= vertices.size()) throw UsageError("simplex references an unknown vertex");
      if (g.empty()) continue;
      // All nonempty subsets of g.
      std::size_t n = g.size();
      if (n > 20) throw UsageError("simplex too large to close");
      if (by_dim.size() < n) by_dim.resize(n);
      for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
        std::vector<Vertex> face;
        for (std::size_t i = 0; i < n; ++i)
          if (bits & (1u << i)) face.push_back(g[i]);
        by_dim[face.size() - 1].push_back(std::move(face));
      }
    }
    for (Vertex v = 0; v < vertices.size(); ++v) {
      if (by_dim.empty()) by_dim.resize(1);
      by_dim[0].push_back({v});
    }
    std::vector<std::vector<Vertex>> flat(by_dim.size());
    for (std::size_t d = 0; d < by_dim.size(); ++d) {
      auto& list = by_dim[d];
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      for (const auto& f : list) flat[d].insert(flat[d].end(), f.begin(), f.end());
    }
    return SimplicialComplex(std::move(vertices), std::move(flat));
  }

  int dimension() const noexcept { return static_cast<int>(faces_.size()) - 1; }
  bool empty() const noexcept { return faces_.empty(); }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }

  std::size_t face_count(int d) const noexcept {
    if (d < 0 || d > dimension()) return 0;
    return faces_[d].size() / static_cast<std::size_t>(d + 1);
  }

  std::span<const Vertex> face(int d, std::size_t i) const {
    std::size_t w = static_cast<std::size_t>(d + 1);
    return {faces_[d].data() + i * w, w};
  }

  /// Index of a face in the canonical list for its dimension.
  std::optional<std::size_t> find_face(std::span<const Vertex> f) const {
    int d = static_cast<int>(f.size()) - 1;
    if (d < 0 || d > dimension()) return std::nullopt;
    std::size_t lo = 0, hi = face_count(d);
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      auto m = face(d, mid);
      if (std::lexicographical_compare(m.begin(), m.end(), f.begin(), f.end()))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < face_count(d)) {
      auto m = face(d, lo);
      if (std::equal(m.begin(), m.end(), f.begin(), f.end())) return lo;
    }
    return std::nullopt;
  }

  /// Every codimension-one face of every stored simplex is stored.
  bool is_closed() const {
    std::vector<Vertex> facet;
    for (int d = 1; d <= dimension(); ++d) {
      for (std::size_t i = 0; i < face_count(d); ++i) {
        auto f = face(d, i);
        for (std::size_t skip = 0; skip < f.size(); ++skip) {
          facet.clear();
          for (std::size_t j = 0; j < f.size(); ++j)
            if (j != skip) facet.push_back(f[j]);
          if (!find_face(facet)) return false;
        }
      }
    }
    return true;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<std::vector<Vertex>> faces_;
};

/// (f_0, f_1, ...): number of faces per dimension.
inline std::vector<std::size_t> face_vector(const SimplicialComplex& c) {
  std::vector<std::size_t> f;
  for (int d = 0; d <= c.dimension(); ++d) f.push_back(c.face_count(d));
  return f;
}

/// -1 + sum_d (-1)^d f_d.
inline long long reduced_euler_characteristic(const SimplicialComplex& c) {
  long long chi = -1;
  for (int d = 0; d <= c.dimension(); ++d) {
    long long f = static_cast<long long>(c.face_count(d));
    chi += (d % 2 == 0) ? f : -f;
  }
  return chi;
}

/// Order complex of a finite strict partial order on `count` items: vertices
/// are the items (labelled by `label(i)`), d-faces are chains of length d+1.
/// Throws ResourceError once more than `max_faces` chains are found.
template <class StrictLess, class Label>
SimplicialComplex order_complex(std::size_t count, StrictLess less, Label label,
                                std::size_t max_faces = std::numeric_limits<std::size_t>::max()) {
  using Vertex = SimplicialComplex::Vertex;
  std::vector<std::vector<Vertex>> up(count);
  bool linear_extension = true;
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j)
      if (i != j && less(i, j)) {
        up[i].push_back(static_cast<Vertex>(j));
        if (j < i) linear_extension = false;
      }

  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) labels.push_back(label(i));

  std::vector<std::vector<Vertex>> faces;
  std::vector<Vertex> chain;
  std::vector<Vertex> sorted;
  std::size_t emitted = 0;
  auto emit = [&] {
    if (++emitted > max_faces)
      throw ResourceError("order complex exceeds the face budget of " + std::to_string(max_faces),
                          static_cast<int>(std::min<std::size_t>(max_faces, std::numeric_limits<int>::max())));
    std::size_t d = chain.size() - 1;
    if (faces.size() <= d) faces.resize(d + 1);
    if (linear_extension) {
      faces[d].insert(faces[d].end(), chain.begin(), chain.end());
    } else {
      sorted = chain;
      std::sort(sorted.begin(), sorted.end());
      faces[d].insert(faces[d].end(), sorted.begin(), sorted.end());
    }
  };
  // Depth-first walk up the poset; with a linear extension and ascending
  // successor lists the preorder is already lexicographic per dimension.
  auto walk = [&](auto&& self, Vertex v) -> void {
    chain.push_back(v);
    emit();
    for (Vertex w : up[v]) self(self, w);
    chain.pop_back();
  };
  for (std::size_t i = 0; i < count; ++i) walk(walk, static_cast<Vertex>(i));

  if (!linear_extension) {
    for (std::size_t d = 0; d < faces.size(); ++d) {
      std::size_t w = d + 1;
      std::size_t n = faces[d].size() / w;
      std::vector<std::vector<Vertex>> rows(n);
      for (std::size_t i = 0; i < n; ++i)
        rows[i].assign(faces[d].begin() + i * w, faces[d].begin() + (i + 1) * w);
      std::sort(rows.begin(), rows.end());
      faces[d].clear();
      for (const auto& r : rows) faces[d].insert(faces[d].end(), r.begin(), r.end());
    }
  }
  return SimplicialComplex(std::move(labels), std::move(faces));
}

/// Order complex of a list of distinct partitions under strict refinement.
inline SimplicialComplex order_complex(const std::vector<Partition>& elements,
                                       std::size_t max_faces = std::numeric_limits<std::size_t>::max()) {
  return order_complex(
      elements.size(),
      [&](std::size_t i, std::size_t j) { return strictly_refines(elements[i], elements[j]); },
      [&](std::size_t i) { return elements[i].to_string(); }, max_faces);
}

/// Order complex of the open interval (x, y) of a lattice.
inline SimplicialComplex interval_order_complex(const RLattice& lat, std::size_t x, std::size_t y) {
  auto inside = lat.open_interval_indices(x, y);
  return order_complex(
      inside.size(), [&](std::size_t i, std::size_t j) { return lat.less(inside[i], inside[j]); },
      [&](std::size_t i) { return lat[inside[i]].to_string(); }, lat.guard().max_faces);
}

}  // namespace arrtower

#endif  // ARRTOWER_SIMPLICIAL_COMPLEX_HPP
