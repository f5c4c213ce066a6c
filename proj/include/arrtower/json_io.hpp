#ifndef ARRTOWER_JSON_IO_HPP
#define ARRTOWER_JSON_IO_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

#include "arrtower/arrangement.hpp"
#include "arrtower/connectivity.hpp"
#include "arrtower/cube.hpp"
#include "arrtower/error.hpp"
#include "arrtower/graded_group.hpp"
#include "arrtower/partition.hpp"
#include "arrtower/simplicial_complex.hpp"

namespace arrtower {

using Json = nlohmann::ordered_json;

// Partitions: array of blocks, each an ascending array of 1-based elements.

inline Json to_json(const Partition& p) {
  Json out = Json::array();
  for (const auto& b : p.blocks()) out.push_back(b);
  return out;
}

inline Partition partition_from_json(const Json& j) {
  if (!j.is_array()) throw UsageError("partition JSON must be an array of blocks");
  std::vector<std::vector<int>> blocks;
  int k = 0;
  for (const auto& b : j) {
    if (!b.is_array() || b.empty()) throw UsageError("partition blocks must be nonempty arrays");
    std::vector<int> block;
    for (const auto& e : b) {
      if (!e.is_number_integer()) throw UsageError("partition elements must be integers");
      block.push_back(e.get<int>());
    }
    k += static_cast<int>(block.size());
    blocks.push_back(std::move(block));
  }
  return Partition::from_blocks(k, blocks);
}

/// Invariant factors as integers, or decimal strings beyond 64 bits.
inline Json torsion_to_json(const std::vector<BigInt>& torsion) {
  Json out = Json::array();
  for (const auto& t : torsion) {
    if (t <= std::numeric_limits<std::int64_t>::max())
      out.push_back(static_cast<std::int64_t>(t));
    else
      out.push_back(t.str());
  }
  return out;
}

/// [{"degree": d, "rank": r, "torsion": [...]}, ...], ascending degree,
/// zero components omitted.
inline Json to_json(const GradedGroup& g) {
  Json out = Json::array();
  for (const auto& [d, c] : g.components())
    out.push_back({{"degree", d}, {"rank", c.rank}, {"torsion", torsion_to_json(c.torsion)}});
  return out;
}

inline GradedGroup graded_group_from_json(const Json& j) {
  if (!j.is_array()) throw UsageError("graded group JSON must be an array");
  GradedGroup g;
  for (const auto& e : j) {
    std::vector<BigInt> torsion;
    for (const auto& t : e.at("torsion"))
      torsion.push_back(t.is_string() ? BigInt(t.get<std::string>()) : BigInt(t.get<std::int64_t>()));
    g.add(e.at("degree").get<int>(), e.at("rank").get<std::uint64_t>(), torsion);
  }
  return g;
}

inline Json to_json(const SimplicialComplex& c) {
  Json faces = Json::object();
  for (int d = 0; d <= c.dimension(); ++d) {
    Json list = Json::array();
    for (std::size_t i = 0; i < c.face_count(d); ++i) {
      auto f = c.face(d, i);
      list.push_back(std::vector<SimplicialComplex::Vertex>(f.begin(), f.end()));
    }
    faces[std::to_string(d)] = std::move(list);
  }
  return {{"vertices", c.vertices()}, {"faces", std::move(faces)}};
}

inline SimplicialComplex simplicial_complex_from_json(const Json& j) {
  auto vertices = j.at("vertices").get<std::vector<std::string>>();
  std::vector<std::vector<SimplicialComplex::Vertex>> generators;
  for (const auto& [d, list] : j.at("faces").items())
    for (const auto& f : list) generators.push_back(f.get<std::vector<SimplicialComplex::Vertex>>());
  return SimplicialComplex::from_faces(std::move(vertices), std::move(generators));
}

inline Json to_json(const LedgerRecord& rec) {
  return {{"x", to_json(rec.x)},
          {"label", rec.x.to_string()},
          {"codim", rec.codim},
          {"interval_homology", to_json(rec.interval_homology)},
          {"contributions", to_json(rec.contributions)}};
}

inline Json to_json(const ContributionLedger& ledger) {
  Json out = Json::array();
  for (const auto& rec : ledger) out.push_back(to_json(rec));
  return out;
}

inline Json to_json(const Connectivity& c) {
  if (c.is_infinite()) return "infinite";
  return c.value();
}

inline std::string rational_to_string(const Rational& q) {
  std::string s = std::to_string(q.numerator());
  if (q.denominator() != 1) s += "/" + std::to_string(q.denominator());
  return s;
}

inline Json to_json(const CubeVerification& v) {
  Json vertices = Json::array();
  for (std::size_t s = 0; s < v.vertex_ranks.size(); ++s) {
    Json ranks = Json::object();
    for (const auto& [d, r] : v.vertex_ranks[s]) ranks[std::to_string(d)] = r;
    vertices.push_back({{"subset", s}, {"ranks", std::move(ranks)}});
  }
  Json edges = Json::array();
  for (const auto& e : v.edges) {
    Json ranks = Json::object();
    for (const auto& [d, r] : e.ranks) ranks[std::to_string(d)] = r;
    edges.push_back({{"subset", e.subset}, {"direction", e.direction}, {"ranks", std::move(ranks)}});
  }
  return {{"k", v.k},
          {"r", v.r},
          {"n", v.n},
          {"verdict", v.pass ? "PASS" : "FAIL"},
          {"within_guarantee", v.within_guarantee},
          {"total_cokernel", to_json(v.total_cokernel)},
          {"tfiber", to_json(v.tfiber)},
          {"dual_total_kernel", to_json(v.dual_total_kernel)},
          {"checks",
           {{"functorial", v.functorial},
            {"split_injective", v.split_injective},
            {"image_is_singleton_summands", v.image_is_singleton_summands},
            {"dual_rank_agrees", v.dual_rank_agrees}}},
          {"diff", v.diff},
          {"vertices", std::move(vertices)},
          {"edges", std::move(edges)}};
}

inline Json to_json(const ConnectivityReport& rep) {
  Json out = {{"k", rep.query.k},
              {"r", rep.query.r},
              {"n", rep.query.n},
              {"m", rep.query.m},
              {"regime", to_string(rep.regime)},
              {"cartesian_closed_form", to_json(rep.cartesian_closed_form)},
              {"cartesian_bruteforce", to_json(rep.cartesian_bruteforce)},
              {"homological_minimal_degree",
               rep.homological_minimal_degree ? to_json(*rep.homological_minimal_degree) : Json()},
              {"layer_connectivity", rep.layer ? to_json(*rep.layer) : Json()}};
  if (rep.convergence) {
    out["convergence"] = {{"converges", rep.convergence->converges},
                          {"threshold", rational_to_string(rep.convergence->threshold)},
                          {"criterion", rep.convergence->criterion}};
  } else {
    out["convergence"] = nullptr;
  }
  if (rep.comparison) {
    const auto& c = *rep.comparison;
    out["comparison"] = {{"classification", to_string(c.classification)},
                         {"space_connectivity", c.space_connectivity},
                         {"stabilization_connectivity", c.stabilization_connectivity},
                         {"note", c.note}};
  } else {
    out["comparison"] = nullptr;
  }
  out["consistent"] = rep.consistent;
  out["notes"] = rep.notes;
  return out;
}

}  // namespace arrtower

#endif  // ARRTOWER_JSON_IO_HPP
