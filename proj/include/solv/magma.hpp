#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace solv {

/// Dense element index in [0, n).
using ElementId = std::uint32_t;

/// Random stream used by every randomized operation.
using Rng = std::mt19937_64;

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Deterministic stream seed for sub-task `index` of a run seeded with `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// A finite magma: the set {0..n-1} with a total operation stored row-major.
/// Immutable after construction; closure is checked on construction.
class TableMagma {
 public:
  TableMagma(std::size_t n, std::vector<ElementId> cells, std::string name = {});

  static TableMagma from_rows(const std::vector<std::vector<ElementId>>& rows,
                              std::string name = {});

  std::size_t size() const { return n_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Uncounted table read. Ground-truth oracles and generators use this; the
  /// tester goes through MagmaOracle.
  ElementId at(ElementId g, ElementId h) const { return cells_[g * n_ + h]; }
  std::span<const ElementId> cells() const { return cells_; }

  bool operator==(const TableMagma& other) const {
    return n_ == other.n_ && cells_ == other.cells_;
  }

 private:
  std::size_t n_;
  std::vector<ElementId> cells_;
  std::string name_;
};

/// Tester phases used to tally oracle calls.
enum class Phase : std::uint8_t {
  kUnlabeled,
  kDecomposition,  // step 2
  kPeriod,         // step 3
  kRelations,      // step 4
  kEmbedding,      // step 5b
  kHomomorphism,   // step 7
  kCount
};

const char* phase_name(Phase phase);

/// Oracle call tally. Task-local: one counter per run.
class QueryCounter {
 public:
  void record(Phase phase) {
    ++per_phase_[static_cast<std::size_t>(phase)];
    ++total_;
  }
  std::uint64_t total() const { return total_; }
  std::uint64_t phase(Phase phase) const {
    return per_phase_[static_cast<std::size_t>(phase)];
  }

 private:
  std::array<std::uint64_t, static_cast<std::size_t>(Phase::kCount)> per_phase_{};
  std::uint64_t total_ = 0;
};

/// Counted access to a TableMagma. Every product() is one oracle query,
/// charged to the currently active phase.
class MagmaOracle {
 public:
  MagmaOracle(const TableMagma& magma, QueryCounter& counter)
      : magma_(&magma), counter_(&counter) {}

  ElementId product(ElementId g, ElementId h) {
    if (g >= magma_->size() || h >= magma_->size()) {
      throw ContractViolation("product: element id out of range");
    }
    counter_->record(phase_);
    return magma_->at(g, h);
  }

  std::size_t size() const { return magma_->size(); }
  const TableMagma& magma() const { return *magma_; }
  const QueryCounter& counter() const { return *counter_; }

  Phase phase() const { return phase_; }
  void set_phase(Phase phase) { phase_ = phase; }

 private:
  const TableMagma* magma_;
  QueryCounter* counter_;
  Phase phase_ = Phase::kUnlabeled;
};

/// Switches the oracle's phase label for the lifetime of the scope.
class PhaseScope {
 public:
  PhaseScope(MagmaOracle& oracle, Phase phase) : oracle_(oracle), saved_(oracle.phase()) {
    oracle_.set_phase(phase);
  }
  ~PhaseScope() { oracle_.set_phase(saved_); }
  PhaseScope(const PhaseScope&) = delete;
  PhaseScope& operator=(const PhaseScope&) = delete;

 private:
  MagmaOracle& oracle_;
  Phase saved_;
};

/// Element that stands in for every zeroth power: h^0 := h1^m1.
struct PowerAnchor {
  ElementId h1 = 0;
  std::uint64_t m1 = 1;
};

/// Right-associated power h·(h·(···(h·h))) by square-and-multiply,
/// O(log r) queries. r = 0 evaluates the anchor power h1^m1.
ElementId pow_right(MagmaOracle& oracle, ElementId g, std::uint64_t r,
                    const std::optional<PowerAnchor>& anchor = std::nullopt);

/// Literal right fold with r-1 queries. Same r = 0 convention.
ElementId pow_right_fold(MagmaOracle& oracle, ElementId g, std::uint64_t r,
                         const std::optional<PowerAnchor>& anchor = std::nullopt);

/// Queries spent by pow_right for exponent r >= 1 (0 for r = 1).
std::uint64_t pow_right_cost(std::uint64_t r);

ElementId sample_uniform(std::size_t n, Rng& rng);

}  // namespace solv
