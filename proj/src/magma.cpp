#include "solv/magma.hpp"

#include <utility>

namespace solv {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 over (master, index)
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

TableMagma::TableMagma(std::size_t n, std::vector<ElementId> cells, std::string name)
    : n_(n), cells_(std::move(cells)), name_(std::move(name)) {
  if (n_ == 0) {
    throw std::invalid_argument("magma size must be at least 1");
  }
  if (cells_.size() != n_ * n_) {
    throw std::invalid_argument("table must have size*size cells, got " +
                                std::to_string(cells_.size()));
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] >= n_) {
      throw std::invalid_argument("table entry at row " + std::to_string(i / n_) +
                                  ", column " + std::to_string(i % n_) +
                                  " is not an element of the magma");
    }
  }
}

TableMagma TableMagma::from_rows(const std::vector<std::vector<ElementId>>& rows,
                                 std::string name) {
  const std::size_t n = rows.size();
  std::vector<ElementId> cells;
  cells.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw std::invalid_argument("row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(n));
    }
    cells.insert(cells.end(), rows[i].begin(), rows[i].end());
  }
  return TableMagma(n, std::move(cells), std::move(name));
}

const char* phase_name(Phase phase) {
  switch (phase) {
    case Phase::kUnlabeled: return "unlabeled";
    case Phase::kDecomposition: return "decomposition";
    case Phase::kPeriod: return "period";
    case Phase::kRelations: return "relations";
    case Phase::kEmbedding: return "embedding";
    case Phase::kHomomorphism: return "homomorphism";
    case Phase::kCount: break;
  }
  return "invalid";
}

namespace {

ElementId anchored_zero_power(MagmaOracle& oracle, const std::optional<PowerAnchor>& anchor) {
  if (!anchor) {
    throw ContractViolation("pow_right: exponent 0 needs a power anchor");
  }
  if (anchor->m1 == 0) {
    throw ContractViolation("pow_right: anchor exponent must be positive");
  }
  return pow_right(oracle, anchor->h1, anchor->m1, std::nullopt);
}

}  // namespace

ElementId pow_right(MagmaOracle& oracle, ElementId g, std::uint64_t r,
                    const std::optional<PowerAnchor>& anchor) {
  if (r == 0) {
    return anchored_zero_power(oracle, anchor);
  }
  if (g >= oracle.size()) {
    throw ContractViolation("pow_right: element id out of range");
  }
  if (r == 1) {
    return g;
  }
  // h^r = h^(r/2) squared, with one extra h on the left for odd r.
  const ElementId half = pow_right(oracle, g, r / 2, std::nullopt);
  const ElementId squared = oracle.product(half, half);
  return (r & 1) ? oracle.product(g, squared) : squared;
}

ElementId pow_right_fold(MagmaOracle& oracle, ElementId g, std::uint64_t r,
                         const std::optional<PowerAnchor>& anchor) {
  if (r == 0) {
    return anchored_zero_power(oracle, anchor);
  }
  if (g >= oracle.size()) {
    throw ContractViolation("pow_right_fold: element id out of range");
  }
  ElementId acc = g;
  for (std::uint64_t i = 1; i < r; ++i) {
    acc = oracle.product(g, acc);
  }
  return acc;
}

std::uint64_t pow_right_cost(std::uint64_t r) {
  std::uint64_t cost = 0;
  while (r > 1) {
    cost += (r & 1) ? 2 : 1;
    r /= 2;
  }
  return cost;
}

ElementId sample_uniform(std::size_t n, Rng& rng) {
  if (n == 0) {
    throw ContractViolation("sample_uniform: empty magma");
  }
  std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
  return static_cast<ElementId>(dist(rng));
}

}  // namespace solv
