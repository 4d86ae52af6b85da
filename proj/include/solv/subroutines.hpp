#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "solv/magma.hpp"
#include "solv/pcp.hpp"

namespace solv {

struct ClosureResult {
  std::vector<ElementId> elements;  // discovery order, generators first
  bool overflow = false;
};

/// Breadth-first closure of the generators under the oracle product, both
/// orders. Stops with overflow once more than `cap` elements are found.
ClosureResult closure(std::span<const ElementId> generators, MagmaOracle& oracle,
                      std::size_t cap);

/// Anchors h_1..h_t and relative orders m_1..m_t, bottom-up.
struct DecompositionResult {
  bool success = false;
  std::vector<ElementId> h;
  std::vector<std::uint32_t> m;
  std::string failure;  // reason when !success

  std::uint64_t order() const;
  PowerAnchor anchor() const { return {h.at(0), m.at(0)}; }
};

/// Classical stand-in for the polycyclic decomposition of a black-box
/// solvable group. Closure, full group check on the closure, derived
/// series, then each abelian layer is refined into cyclic steps by adding
/// the element of largest order modulo the current subgroup. Succeeds on
/// every solvable closure of size <= cap; fails otherwise.
DecompositionResult find_polycyclic_series(std::span<const ElementId> generators,
                                           MagmaOracle& oracle, std::size_t cap);

/// Eventual period of p_1 = g, p_{r+1} = g * p_r. Equals the order of g in a
/// group. nullopt if no repeat shows up within cap steps.
std::optional<std::uint64_t> find_period(ElementId g, MagmaOracle& oracle, std::size_t cap);

/// Per-level lookup from element to the lexicographically first exponent
/// vector whose right-associated anchored product equals it.
class FactorizationIndex {
 public:
  FactorizationIndex(std::vector<std::uint32_t> m, std::size_t n);

  std::size_t levels() const { return m_.size(); }
  std::optional<ExponentVector> lookup(std::size_t level, ElementId g) const;
  /// Vectors at this level whose image was already claimed.
  std::uint64_t collisions(std::size_t level) const { return collisions_[level]; }
  /// Distinct elements in the level's image.
  std::uint64_t image_size(std::size_t level) const { return image_size_[level]; }

 private:
  friend std::optional<FactorizationIndex> build_factorization_index(
      std::span<const ElementId>, std::span<const std::uint32_t>, MagmaOracle&, std::uint64_t);

  std::vector<std::uint32_t> m_;
  std::vector<std::vector<std::int64_t>> rank_of_;  // [level][element], -1 if absent
  std::vector<std::uint64_t> collisions_;
  std::vector<std::uint64_t> image_size_;
};

inline constexpr std::uint64_t kDefaultIndexCap = 4096;

/// Enumerates every level's exponent vectors in lexicographic order and
/// evaluates h_i^{a_i}·(···(h_2^{a_2}·h_1^{a_1})) with anchored powers,
/// first image wins. nullopt when prod m_i exceeds cap.
std::optional<FactorizationIndex> build_factorization_index(std::span<const ElementId> h,
                                                            std::span<const std::uint32_t> m,
                                                            MagmaOracle& oracle,
                                                            std::uint64_t cap = kDefaultIndexCap);

/// Factorization of g over H_level, or nullopt when g is not in its image.
std::optional<ExponentVector> decompose(ElementId g, const FactorizationIndex& index,
                                        std::size_t level);

/// Exponents of the power relations h_i^{m_i} (r) and conjugation relations
/// h_i^{n_i-1}·(h_k·h_i) (s), each a vector over H_{i-1}.
struct RelationSet {
  std::vector<std::uint32_t> m;
  std::vector<std::uint64_t> n;
  std::vector<ExponentVector> r;               // r[i-2] for 2 <= i <= t
  std::vector<std::vector<ExponentVector>> s;  // s[i-2][k-1]

  PcRelations to_presentation() const { return {m, r, s}; }
};

struct RelationOutcome {
  std::optional<RelationSet> relations;
  std::string failure;
};

/// Decomposes both relation families over H_{i-1}, then recomputes each
/// right-hand side with oracle products and compares with the left-hand
/// side. Any missing decomposition or mismatch is a failure.
RelationOutcome extract_and_verify_relations(std::span<const ElementId> h,
                                             std::span<const std::uint32_t> m,
                                             std::span<const std::uint64_t> n,
                                             const FactorizationIndex& index,
                                             MagmaOracle& oracle);

/// h_i^{a_i}·(h_{i-1}^{a_{i-1}}·(···(h_2^{a_2}·h_1^{a_1}))), level-i vectors use
/// the innermost i anchors. Every factor is a pow_right with the h^0 anchor.
ElementId psi_product(MagmaOracle& oracle, std::span<const ElementId> h, const PowerAnchor& anchor,
                      const ExponentVector& v);

}  // namespace solv
