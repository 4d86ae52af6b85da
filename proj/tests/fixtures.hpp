#pragma once

#include <random>
#include <vector>

#include "solv/pcp.hpp"

namespace fixtures {

using solv::ExponentVector;
using solv::PcPresentation;
using solv::PcRelations;

inline solv::PcRelations s3_relations() {
  return {{3, 2}, {ExponentVector::written({0})}, {{ExponentVector::written({2})}}};
}

inline solv::PcRelations z6_relations() {
  return {{3, 2}, {ExponentVector::written({1})}, {{ExponentVector::written({1})}}};
}

inline ExponentVector random_vector(const std::vector<std::uint32_t>& m, std::size_t level,
                                    std::mt19937_64& rng) {
  std::vector<std::uint32_t> a(level);
  for (std::size_t k = 0; k < level; ++k) a[k] = static_cast<std::uint32_t>(rng() % m[k]);
  return ExponentVector(a);
}

/// Relative orders from {2,3,4} with product <= max_order.
inline std::vector<std::uint32_t> random_orders(std::mt19937_64& rng, std::uint64_t max_order,
                                                std::size_t max_levels = 6) {
  std::vector<std::uint32_t> m;
  std::uint64_t order = 1;
  const std::size_t target = 1 + rng() % max_levels;
  while (m.size() < target) {
    const std::uint32_t mi = 2 + static_cast<std::uint32_t>(rng() % 3);
    if (order * mi > max_order) break;
    m.push_back(mi);
    order *= mi;
  }
  if (m.empty()) m.push_back(2);
  return m;
}

/// Every u and v uniformly random.
inline PcRelations random_relations(std::mt19937_64& rng, std::uint64_t max_order) {
  PcRelations rel;
  rel.m = random_orders(rng, max_order);
  for (std::size_t i = 2; i <= rel.m.size(); ++i) {
    rel.u.push_back(random_vector(rel.m, i - 1, rng));
    std::vector<ExponentVector> row;
    for (std::size_t k = 1; k < i; ++k) row.push_back(random_vector(rel.m, i - 1, rng));
    rel.v.push_back(std::move(row));
  }
  return rel;
}

/// Level by level, redraws a level's relations (up to `tries` times) until
/// check_level passes, so deep consistent presentations show up often.
inline PcRelations conditioned_relations(std::mt19937_64& rng, std::uint64_t max_order,
                                         int tries = 200) {
  PcRelations rel;
  rel.m = random_orders(rng, max_order);
  PcRelations prefix{{rel.m[0]}, {}, {}};
  for (std::size_t i = 2; i <= rel.m.size(); ++i) {
    prefix.m.push_back(rel.m[i - 1]);
    prefix.u.push_back({});
    prefix.v.push_back({});
    for (int attempt = 0; attempt < tries; ++attempt) {
      prefix.u.back() = random_vector(rel.m, i - 1, rng);
      std::vector<ExponentVector> row;
      for (std::size_t k = 1; k < i; ++k) row.push_back(random_vector(rel.m, i - 1, rng));
      prefix.v.back() = std::move(row);
      PcPresentation p(prefix);
      if (solv::check_consistency(p).passed) break;
    }
  }
  return prefix;
}

/// Direct-product style presentation: trivial action, random power relations.
inline PcRelations abelian_relations(std::mt19937_64& rng, std::uint64_t max_order) {
  PcRelations rel;
  rel.m = random_orders(rng, max_order);
  for (std::size_t i = 2; i <= rel.m.size(); ++i) {
    rel.u.push_back(ExponentVector::zero(i - 1));
    std::vector<ExponentVector> row;
    for (std::size_t k = 1; k < i; ++k) row.push_back(ExponentVector::basis(i - 1, k));
    rel.v.push_back(std::move(row));
  }
  return rel;
}

}  // namespace fixtures
