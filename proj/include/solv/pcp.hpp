#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "solv/magma.hpp"

namespace solv {

/// Element (a_j, ..., a_1) of G_j. Stored little-end first: a[0] = a_1.
struct ExponentVector {
  std::vector<std::uint32_t> a;

  ExponentVector() = default;
  explicit ExponentVector(std::vector<std::uint32_t> little_end) : a(std::move(little_end)) {}
  /// Builds from the written order (a_j, ..., a_1).
  static ExponentVector written(std::vector<std::uint32_t> high_first);
  static ExponentVector zero(std::size_t level) {
    return ExponentVector(std::vector<std::uint32_t>(level, 0));
  }
  /// x_{level,k}: a single 1 at index k from the right.
  static ExponentVector basis(std::size_t level, std::size_t k);

  std::size_t level() const { return a.size(); }
  /// a_k for 1 <= k <= level.
  std::uint32_t operator[](std::size_t k) const { return a[k - 1]; }
  /// Components in written order (a_j, ..., a_1).
  std::vector<std::uint32_t> high_first() const { return {a.rbegin(), a.rend()}; }
  std::string str() const;

  bool operator==(const ExponentVector&) const = default;
};

/// Raw power-conjugate data. m[i-1] = m_i; u[i-2] = u_i (level i-1) for
/// 2 <= i <= t; v[i-2][k-1] = v_{i,k} (level i-1) for 1 <= k < i <= t.
struct PcRelations {
  std::vector<std::uint32_t> m;
  std::vector<ExponentVector> u;
  std::vector<std::vector<ExponentVector>> v;

  std::size_t t() const { return m.size(); }
};

/// Serialization: {"t": t, "m": [m_1..m_t], "u": [u_2..u_t], "v": [[v_{2,1}],
/// [v_{3,1}, v_{3,2}], ...]}, every exponent list written (a_j, ..., a_1).
nlohmann::json relations_to_json(const PcRelations& relations);
PcRelations relations_from_json(const nlohmann::json& doc);

/// Outcome of the consistency checks at one level.
struct LevelCheck {
  std::size_t level = 0;
  bool a = false;
  std::optional<bool> b;  // only evaluated when (a) passed
  std::optional<bool> c;  // only evaluated when (a) and (b) passed
  /// First failing relation: for (a) the relation index i and generator k
  /// (k = 0 for the power relation of generator i); for (c) the index i.
  std::size_t witness_i = 0;
  std::size_t witness_k = 0;

  bool passed() const { return a && b.value_or(false) && c.value_or(false); }
  std::string describe() const;
};

struct ConsistencyReport {
  std::vector<LevelCheck> levels;  // levels 2..t in order, stops at first failure
  bool passed = false;
};

/// A power-conjugate presentation of the magmas G_1, ..., G_t.
///
/// Level 1 is always a group (Z_{m_1}). Level j becomes verified once
/// check_level(j) passes, which proves G_j is a solvable group and phi_j an
/// automorphism of G_{j-1}. Products at unverified levels follow the
/// two-branch definition literally and carry no group-law guarantees.
///
/// Elements are also addressed by rank, the mixed-radix value with a_1 least
/// significant; rank order is lexicographic order on (a_j, ..., a_1).
class PcPresentation {
 public:
  explicit PcPresentation(PcRelations relations);

  std::size_t t() const { return rel_.t(); }
  std::uint32_t m(std::size_t i) const { return rel_.m[i - 1]; }
  const ExponentVector& u(std::size_t i) const { return rel_.u[i - 2]; }
  const ExponentVector& v(std::size_t i, std::size_t k) const { return rel_.v[i - 2][k - 1]; }
  const PcRelations& relations() const { return rel_; }

  /// N_j = m_1 * ... * m_j; N_0 = 1.
  std::uint64_t order(std::size_t j) const { return orders_[j]; }
  std::size_t verified_level() const { return verified_level_; }
  bool phi_is_homomorphism(std::size_t j) const { return hom_[j]; }

  std::uint64_t rank(const ExponentVector& x) const;
  ExponentVector unrank(std::size_t j, std::uint64_t r) const;

  // Rank-level arithmetic behind the ExponentVector API.
  std::uint64_t product_rank(std::size_t j, std::uint64_t x, std::uint64_t y) const;
  std::uint64_t phi_rank(std::size_t j, std::uint64_t x) const;
  std::uint64_t phi_iterate_rank(std::size_t j, std::uint64_t x, std::uint64_t b, bool fast) const;
  std::uint64_t power_rank(std::size_t j, std::uint64_t x, std::uint64_t e) const;

  /// Runs conditions (a), (b), (c) for level j; on success marks it verified.
  LevelCheck check_level(std::size_t j);

  /// Products of G_j at or below this order are cached once verified.
  static constexpr std::uint64_t kTableCacheOrder = 1024;
  static constexpr std::uint64_t kPhiCacheOrder = 1u << 16;

 private:
  std::uint64_t phi_fast(std::size_t j, std::uint64_t x, std::uint64_t b) const;
  std::uint64_t apply_basis_images(std::size_t j, const std::vector<std::uint64_t>& images,
                                   std::uint64_t x) const;
  void build_caches(std::size_t j);

  PcRelations rel_;
  std::vector<std::uint64_t> orders_;
  std::vector<std::uint64_t> u_rank_;                   // index i
  std::vector<std::vector<std::uint64_t>> v_rank_;      // [i][k]
  std::size_t verified_level_ = 1;
  std::vector<char> hom_;                               // index j: (a) passed
  std::vector<std::vector<std::uint32_t>> table_;       // index j, N_j x N_j
  std::vector<std::vector<std::uint32_t>> phi_map_;     // index j, over G_{j-1}
};

ExponentVector pc_identity(const PcPresentation& p, std::size_t j);
ExponentVector pc_product(const PcPresentation& p, std::size_t j, const ExponentVector& x,
                          const ExponentVector& y);
ExponentVector pc_phi(const PcPresentation& p, std::size_t j, const ExponentVector& x);
ExponentVector pc_power(const PcPresentation& p, std::size_t j, const ExponentVector& x,
                        std::uint64_t e);
/// x^(N_j - 1). Requires j <= verified_level.
ExponentVector pc_inverse(const PcPresentation& p, std::size_t j, const ExponentVector& x);

enum class PhiPath { kAuto, kFast, kSlow };
/// phi_j applied b times to x (level j-1). kAuto takes the doubling path
/// when condition (a) has passed at level j, the literal b-fold path
/// otherwise; kFast requires (a).
ExponentVector phi_iterate(const PcPresentation& p, std::size_t j, const ExponentVector& x,
                           std::uint64_t b, PhiPath path = PhiPath::kAuto);

LevelCheck check_level(PcPresentation& p, std::size_t j);
/// Levels 2..t in order, stopping at the first failure.
ConsistencyReport check_consistency(PcPresentation& p);

inline constexpr std::uint64_t kMaxEnumerationOrder = 4096;

/// N_t x N_t table of G_t, elements indexed by rank.
TableMagma enumerate_table(const PcPresentation& p);

}  // namespace solv
