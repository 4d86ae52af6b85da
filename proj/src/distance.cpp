#include "solv/distance.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "solv/corpus.hpp"

namespace solv {

Table::Table(std::size_t k, std::vector<Label> entries) : k_(k), entries_(std::move(entries)) {
  if (entries_.size() != k_ * k_) {
    throw std::invalid_argument("Table: entry count does not match size");
  }
}

Table Table::from_magma(const TableMagma& magma) {
  std::vector<Label> entries(magma.cells().begin(), magma.cells().end());
  return Table(magma.size(), std::move(entries));
}

Table Table::restrict(const TableMagma& magma, const std::vector<ElementId>& rows) {
  const std::size_t k = rows.size();
  std::vector<Label> entries(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) entries[i * k + j] = magma.at(rows[i], rows[j]);
  }
  return Table(k, std::move(entries));
}

void Table::erase(std::size_t index) {
  if (index >= k_) throw ContractViolation("Table::erase: index out of range");
  std::vector<Label> next;
  next.reserve((k_ - 1) * (k_ - 1));
  for (std::size_t i = 0; i < k_; ++i) {
    if (i == index) continue;
    for (std::size_t j = 0; j < k_; ++j) {
      if (j != index) next.push_back(at(i, j));
    }
  }
  entries_ = std::move(next);
  --k_;
}

void Table::insert(std::size_t index, const std::vector<Label>& row,
                   const std::vector<Label>& col) {
  if (index > k_) throw ContractViolation("Table::insert: index out of range");
  if (row.size() != k_ + 1 || col.size() != k_ + 1 || row[index] != col[index]) {
    throw ContractViolation("Table::insert: row/column content has the wrong shape");
  }
  const std::size_t k = k_ + 1;
  std::vector<Label> next(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == index) {
        next[i * k + j] = row[j];
      } else if (j == index) {
        next[i * k + j] = col[i];
      } else {
        next[i * k + j] = at(i - (i > index), j - (j > index));
      }
    }
  }
  entries_ = std::move(next);
  k_ = k;
}

Table Table::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != k_) throw ContractViolation("Table::permuted: order has wrong length");
  std::vector<Label> next(k_ * k_);
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = 0; j < k_; ++j) next[i * k_ + j] = at(order[i], order[j]);
  }
  return Table(k_, std::move(next));
}

std::uint64_t EditOp::cost(std::size_t size_before) const {
  switch (kind) {
    case Kind::kExchange: return 1;
    case Kind::kInsert: return 2 * size_before + 1;
    case Kind::kDelete: return 2 * size_before - 1;
  }
  return 0;
}

Table apply_script(Table table, const std::vector<EditOp>& script) {
  for (const EditOp& op : script) {
    switch (op.kind) {
      case EditOp::Kind::kExchange:
        if (op.row >= table.size() || op.col >= table.size()) {
          throw ContractViolation("apply_script: exchange outside the table");
        }
        table.set(op.row, op.col, op.value);
        break;
      case EditOp::Kind::kInsert:
        table.insert(op.row, op.insert_row, op.insert_col);
        break;
      case EditOp::Kind::kDelete:
        table.erase(op.row);
        break;
    }
  }
  return table;
}

std::uint64_t script_cost(std::size_t source_size, const std::vector<EditOp>& script) {
  std::uint64_t total = 0;
  std::size_t size = source_size;
  for (const EditOp& op : script) {
    total += op.cost(size);
    if (op.kind == EditOp::Kind::kInsert) ++size;
    if (op.kind == EditOp::Kind::kDelete) --size;
  }
  return total;
}

EditCost hamming_min_over_bijections(const TableMagma& a, const TableMagma& b) {
  const std::size_t n = a.size();
  if (b.size() != n) {
    throw ContractViolation("hamming_min_over_bijections: tables have different sizes");
  }
  if (n > kMaxBijectionSize) {
    throw ContractViolation("hamming_min_over_bijections: exact mode supports n <= " +
                            std::to_string(kMaxBijectionSize));
  }
  std::vector<ElementId> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::vector<ElementId> best_pi;
  do {
    std::uint64_t mismatches = 0;
    for (ElementId g = 0; g < n && mismatches < best; ++g) {
      for (ElementId h = 0; h < n; ++h) {
        mismatches += pi[a.at(g, h)] != b.at(pi[g], pi[h]);
      }
    }
    if (mismatches < best) {
      best = mismatches;
      best_pi = pi;
    }
  } while (best > 0 && std::next_permutation(pi.begin(), pi.end()));

  std::vector<ElementId> inverse(n);
  for (ElementId g = 0; g < n; ++g) inverse[best_pi[g]] = g;
  EditCost result;
  result.value = best;
  for (ElementId g = 0; g < n; ++g) {
    for (ElementId h = 0; h < n; ++h) {
      const ElementId target = inverse[b.at(best_pi[g], best_pi[h])];
      if (a.at(g, h) != target) {
        result.script.push_back({EditOp::Kind::kExchange, g, h, static_cast<Label>(target)});
      }
    }
  }
  result.target_order.assign(best_pi.begin(), best_pi.end());
  return result;
}

std::uint64_t subset_distance(std::uint64_t n, std::uint64_t d) {
  if (d > n) throw ContractViolation("subset_distance: d exceeds n");
  return 2 * d * n - d * d;
}

namespace {

// Any script can be reordered into deletes, then exchanges on surviving
// cells, then inserts carrying their final content, without raising its
// cost. Such a script is fixed by a partial matching of A's rows to B's rows
// (s kept rows) and costs k^2 + l^2 - 2 s^2 plus the mismatched kept cells.
// This search enumerates every partial matching.
class MatchingSearch {
 public:
  MatchingSearch(const Table& a, const Table& b)
      : a_(a), b_(b), match_(a.size(), kUnmatched), used_(b.size(), 0) {}

  std::uint64_t run() {
    best_ = std::numeric_limits<std::uint64_t>::max();
    descend(0, 0, 0);
    return best_;
  }

  const std::vector<std::size_t>& best_match() const { return best_match_; }

  static constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

 private:
  void descend(std::size_t row, std::size_t kept, std::uint64_t mismatches) {
    const std::uint64_t k = a_.size(), l = b_.size();
    if (row == a_.size()) {
      const std::uint64_t cost = k * k + l * l - 2 * kept * kept + mismatches;
      if (cost < best_) {
        best_ = cost;
        best_match_ = match_;
      }
      return;
    }
    // Best case for the remaining rows: all kept with no mismatch.
    const std::uint64_t max_kept = std::min<std::uint64_t>(kept + (k - row), l);
    if (k * k + l * l - 2 * max_kept * max_kept + mismatches >= best_) return;

    for (std::size_t target = 0; target < b_.size(); ++target) {
      if (used_[target]) continue;
      std::uint64_t added = a_.at(row, row) != b_.at(target, target);
      for (std::size_t prev = 0; prev < row; ++prev) {
        if (match_[prev] == kUnmatched) continue;
        added += a_.at(row, prev) != b_.at(target, match_[prev]);
        added += a_.at(prev, row) != b_.at(match_[prev], target);
      }
      used_[target] = 1;
      match_[row] = target;
      descend(row + 1, kept + 1, mismatches + added);
      match_[row] = kUnmatched;
      used_[target] = 0;
    }
    descend(row + 1, kept, mismatches);
  }

  const Table& a_;
  const Table& b_;
  std::vector<std::size_t> match_;
  std::vector<char> used_;
  std::uint64_t best_ = 0;
  std::vector<std::size_t> best_match_;
};

void check_exact_bounds(std::size_t k, std::size_t l) {
  if (k > kMaxExactEditSize || l > kMaxExactEditSize) {
    throw ContractViolation("edit_distance_exact: exact mode supports sizes <= " +
                            std::to_string(kMaxExactEditSize));
  }
  if ((k > l ? k - l : l - k) > kMaxExactEditGap) {
    throw ContractViolation("edit_distance_exact: exact mode supports a size difference <= " +
                            std::to_string(kMaxExactEditGap));
  }
}

}  // namespace

EditCost edit_distance_exact(const Table& a, const Table& b) {
  check_exact_bounds(a.size(), b.size());
  MatchingSearch search(a, b);
  EditCost result;
  result.value = search.run();
  const auto& match = search.best_match();

  // Deletes, highest index first so lower indices stay valid.
  std::vector<std::size_t> kept_rows;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (match[i] != MatchingSearch::kUnmatched) kept_rows.push_back(i);
  }
  for (std::size_t i = a.size(); i-- > 0;) {
    if (match[i] == MatchingSearch::kUnmatched) {
      result.script.push_back({EditOp::Kind::kDelete, i});
    }
  }
  // Survivors sit at positions 0..s-1 in their original order.
  std::vector<std::size_t> order;
  for (std::size_t p = 0; p < kept_rows.size(); ++p) order.push_back(match[kept_rows[p]]);
  for (std::size_t p = 0; p < kept_rows.size(); ++p) {
    for (std::size_t q = 0; q < kept_rows.size(); ++q) {
      const Label want = b.at(order[p], order[q]);
      if (a.at(kept_rows[p], kept_rows[q]) != want) {
        result.script.push_back({EditOp::Kind::kExchange, p, q, want});
      }
    }
  }
  // Unmatched rows of B are appended with their final content.
  std::vector<char> used(b.size(), 0);
  for (std::size_t t : order) used[t] = 1;
  for (std::size_t t = 0; t < b.size(); ++t) {
    if (used[t]) continue;
    order.push_back(t);
    EditOp op{EditOp::Kind::kInsert, order.size() - 1};
    for (std::size_t q = 0; q < order.size(); ++q) {
      op.insert_row.push_back(b.at(t, order[q]));
      op.insert_col.push_back(b.at(order[q], t));
    }
    result.script.push_back(std::move(op));
  }
  result.target_order = std::move(order);
  return result;
}

std::uint64_t distance_to_solvable_bruteforce(const TableMagma& magma) {
  const std::size_t n = magma.size();
  if (n > kMaxDistanceToSolvableSize) {
    throw ContractViolation("distance_to_solvable_bruteforce: supports n <= " +
                            std::to_string(kMaxDistanceToSolvableSize));
  }
  // Every group of order 1..6, up to isomorphism.
  const std::vector<GroupSpec> groups = {
      {Family::kCyclic, {1}}, {Family::kCyclic, {2}},           {Family::kCyclic, {3}},
      {Family::kCyclic, {4}}, {Family::kDirectProduct, {2, 2}}, {Family::kCyclic, {5}},
      {Family::kCyclic, {6}}, {Family::kSymmetric, {3}},
  };
  const Table source = Table::from_magma(magma);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (const GroupSpec& spec : groups) {
    const TableMagma group = generate(spec);
    const std::size_t order = group.size();
    if (order + 1 < n || order > n + 1) continue;
    // Labels: the magma's elements 0..n-1, plus one fresh label n when the
    // group is larger. Fresh labels never match, so one suffices.
    std::vector<Label> labels(std::max(order, n));
    std::iota(labels.begin(), labels.end(), 0);
    // Enumerate injections group -> labels as ordered prefixes of permutations.
    std::vector<Label> pool = labels;
    std::sort(pool.begin(), pool.end());
    do {
      std::vector<Label> entries(order * order);
      for (std::size_t g = 0; g < order; ++g) {
        for (std::size_t h = 0; h < order; ++h) {
          entries[g * order + h] = pool[group.at(static_cast<ElementId>(g),
                                                 static_cast<ElementId>(h))];
        }
      }
      const Table candidate(order, std::move(entries));
      best = std::min(best, MatchingSearch(source, candidate).run());
      if (best == 0) return 0;
      // Skip permutations that differ only past the first `order` positions.
      std::reverse(pool.begin() + static_cast<std::ptrdiff_t>(order), pool.end());
    } while (std::next_permutation(pool.begin(), pool.end()));
  }
  return best;
}

}  // namespace solv
