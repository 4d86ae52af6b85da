#pragma once

#include <cstdint>
#include <vector>

#include "solv/magma.hpp"

namespace solv {

/// Table entries come from an arbitrary label universe, so pseudo-magmas
/// (products landing outside the row set) are representable.
using Label = std::int64_t;

/// A k x k matrix of labels. Rows and columns are positions, not elements:
/// distances compare entries by label equality.
class Table {
 public:
  Table() = default;
  Table(std::size_t k, std::vector<Label> entries);
  static Table from_magma(const TableMagma& magma);
  /// Rows and columns restricted to `rows`, in the given order; entries keep
  /// their labels.
  static Table restrict(const TableMagma& magma, const std::vector<ElementId>& rows);

  std::size_t size() const { return k_; }
  Label at(std::size_t i, std::size_t j) const { return entries_[i * k_ + j]; }
  void set(std::size_t i, std::size_t j, Label value) { entries_[i * k_ + j] = value; }

  /// Removes row and column `index`.
  void erase(std::size_t index);
  /// Inserts a row and column at `index`. `row` and `col` both have length
  /// k+1 and agree at position `index`.
  void insert(std::size_t index, const std::vector<Label>& row, const std::vector<Label>& col);

  /// Table whose row/column i is row/column order[i] of this one.
  Table permuted(const std::vector<std::size_t>& order) const;

  bool operator==(const Table& other) const = default;

 private:
  std::size_t k_ = 0;
  std::vector<Label> entries_;
};

struct EditOp {
  enum class Kind { kExchange, kInsert, kDelete };
  Kind kind;
  std::size_t row = 0;  // exchange cell row, or insert/delete index
  std::size_t col = 0;  // exchange cell column
  Label value = 0;      // exchange: new entry
  std::vector<Label> insert_row{}, insert_col{};

  /// exchange: 1 per cell; insert into size k: 2k+1; delete from size k: 2k-1.
  std::uint64_t cost(std::size_t size_before) const;
};

struct EditCost {
  std::uint64_t value = 0;
  std::vector<EditOp> script;
  /// Replaying `script` on the source yields the target with its rows taken
  /// in this order (`Table::permuted(target_order)`).
  std::vector<std::size_t> target_order;
};

/// Applies a script; throws ContractViolation on an out-of-range operation.
Table apply_script(Table table, const std::vector<EditOp>& script);
std::uint64_t script_cost(std::size_t source_size, const std::vector<EditOp>& script);

/// Minimum over bijections pi of #{(g,h) : pi(g*h) != pi(g)*pi(h)}; zero iff
/// the tables are isomorphic. Exact enumeration of n! bijections, n <= 8.
/// The script exchanges cells of A until it equals B transported back along pi.
EditCost hamming_min_over_bijections(const TableMagma& a, const TableMagma& b);

/// Cost of deleting d of n rows/columns: 2dn - d^2.
std::uint64_t subset_distance(std::uint64_t n, std::uint64_t d);

/// Exact edit distance between tables up to reordering of rows/columns,
/// entries compared by label. Sizes <= 6, size difference <= 2.
EditCost edit_distance_exact(const Table& a, const Table& b);

/// Distance from a magma of size <= 5 to the nearest group of order n-1, n
/// or n+1 (all of which are solvable), minimizing over relabelings of the
/// group and over row matchings.
std::uint64_t distance_to_solvable_bruteforce(const TableMagma& magma);

inline constexpr std::size_t kMaxBijectionSize = 8;
inline constexpr std::size_t kMaxExactEditSize = 6;
inline constexpr std::size_t kMaxExactEditGap = 2;
inline constexpr std::size_t kMaxDistanceToSolvableSize = 5;

}  // namespace solv
