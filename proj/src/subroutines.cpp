#include "solv/subroutines.hpp"

#include <algorithm>
#include <unordered_map>

namespace solv {

ClosureResult closure(std::span<const ElementId> generators, MagmaOracle& oracle,
                      std::size_t cap) {
  ClosureResult result;
  std::vector<char> seen(oracle.size(), 0);
  auto add = [&](ElementId x) {
    if (seen[x]) return true;
    if (result.elements.size() >= cap) {
      result.overflow = true;
      return false;
    }
    seen[x] = 1;
    result.elements.push_back(x);
    return true;
  };
  for (ElementId g : generators) {
    if (g >= oracle.size()) throw ContractViolation("closure: generator out of range");
    if (!add(g)) return result;
  }
  // Each newly found element is multiplied with every element found so far,
  // on both sides.
  for (std::size_t i = 0; i < result.elements.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const ElementId a = result.elements[i], b = result.elements[j];
      if (!add(oracle.product(a, b))) return result;
      if (i != j && !add(oracle.product(b, a))) return result;
    }
  }
  return result;
}

std::uint64_t DecompositionResult::order() const {
  std::uint64_t n = 1;
  for (auto mi : m) n *= mi;
  return n;
}

namespace {

/// The closure fetched into a local table so that group checks and the
/// derived series reuse each product instead of querying it again.
struct LocalGroup {
  std::vector<ElementId> elements;  // local index -> element
  std::vector<std::uint32_t> table;
  std::uint32_t identity = 0;
  std::vector<std::uint32_t> inverse;

  std::size_t size() const { return elements.size(); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a * size() + b]; }
};

std::optional<std::string> load_local_group(const std::vector<ElementId>& elements,
                                            MagmaOracle& oracle, LocalGroup& group) {
  const std::size_t k = elements.size();
  group.elements = elements;
  std::unordered_map<ElementId, std::uint32_t> local;
  for (std::uint32_t i = 0; i < k; ++i) local[elements[i]] = i;
  group.table.assign(k * k, 0);
  for (std::uint32_t a = 0; a < k; ++a) {
    for (std::uint32_t b = 0; b < k; ++b) {
      const auto it = local.find(oracle.product(elements[a], elements[b]));
      if (it == local.end()) return "closure is not closed under the product";
      group.table[a * k + b] = it->second;
    }
  }
  std::optional<std::uint32_t> identity;
  for (std::uint32_t e = 0; e < k && !identity; ++e) {
    bool ok = true;
    for (std::uint32_t x = 0; x < k && ok; ++x) ok = group.mul(e, x) == x && group.mul(x, e) == x;
    if (ok) identity = e;
  }
  if (!identity) return "closure has no identity";
  group.identity = *identity;
  group.inverse.assign(k, 0);
  for (std::uint32_t a = 0; a < k; ++a) {
    bool found = false;
    for (std::uint32_t b = 0; b < k && !found; ++b) {
      if (group.mul(a, b) == group.identity && group.mul(b, a) == group.identity) {
        group.inverse[a] = b;
        found = true;
      }
    }
    if (!found) return "closure element without inverse";
  }
  for (std::uint32_t a = 0; a < k; ++a) {
    for (std::uint32_t b = 0; b < k; ++b) {
      const std::uint32_t ab = group.mul(a, b);
      for (std::uint32_t c = 0; c < k; ++c) {
        if (group.mul(ab, c) != group.mul(a, group.mul(b, c))) {
          return "closure is not associative";
        }
      }
    }
  }
  return std::nullopt;
}

/// Subgroup generated by `members` together with `extra` (local indices).
std::vector<char> generated(const LocalGroup& group, const std::vector<char>& members,
                            const std::vector<std::uint32_t>& extra) {
  std::vector<char> in = members;
  std::vector<std::uint32_t> list;
  std::vector<std::uint32_t> gens = extra;
  in[group.identity] = 1;
  for (std::uint32_t x = 0; x < group.size(); ++x) {
    if (in[x]) {
      list.push_back(x);
      gens.push_back(x);
    }
  }
  for (std::uint32_t g : extra) {
    if (!in[g]) {
      in[g] = 1;
      list.push_back(g);
    }
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::uint32_t g : gens) {
      const std::uint32_t x = group.mul(list[i], g);
      if (!in[x]) {
        in[x] = 1;
        list.push_back(x);
      }
    }
  }
  return in;
}

std::size_t count(const std::vector<char>& set) {
  return static_cast<std::size_t>(std::count(set.begin(), set.end(), 1));
}

}  // namespace

DecompositionResult find_polycyclic_series(std::span<const ElementId> generators,
                                           MagmaOracle& oracle, std::size_t cap) {
  DecompositionResult result;
  if (generators.empty()) {
    result.failure = "no generators";
    return result;
  }
  const ClosureResult span = closure(generators, oracle, cap);
  if (span.overflow) {
    result.failure = "closure exceeds cap " + std::to_string(cap);
    return result;
  }
  LocalGroup group;
  if (auto problem = load_local_group(span.elements, oracle, group)) {
    result.failure = *problem;
    return result;
  }
  const std::size_t k = group.size();

  // Derived series, top down.
  std::vector<std::vector<char>> series;
  series.emplace_back(k, 1);
  while (true) {
    const auto& current = series.back();
    std::vector<std::uint32_t> commutators;
    std::vector<char> seen(k, 0);
    for (std::uint32_t g = 0; g < k; ++g) {
      if (!current[g]) continue;
      for (std::uint32_t h = 0; h < k; ++h) {
        if (!current[h]) continue;
        const std::uint32_t c = group.mul(
            group.mul(group.mul(group.inverse[g], group.inverse[h]), g), h);
        if (!seen[c]) {
          seen[c] = 1;
          commutators.push_back(c);
        }
      }
    }
    auto next = generated(group, std::vector<char>(k, 0), commutators);
    if (count(next) == count(current)) break;
    series.push_back(std::move(next));
  }
  if (count(series.back()) != 1) {
    result.failure = "derived series stabilizes at a nontrivial subgroup";
    return result;
  }

  // Bottom-up refinement of each abelian layer into cyclic steps.
  std::vector<char> current(k, 0);
  current[group.identity] = 1;
  for (std::size_t layer = series.size() - 1; layer-- > 0;) {
    const auto& target = series[layer];
    while (count(current) < count(target)) {
      std::uint32_t best = 0, best_order = 0;
      for (std::uint32_t g = 0; g < k; ++g) {
        if (!target[g] || current[g]) continue;
        std::uint32_t order = 1;
        for (std::uint32_t x = g; !current[x]; x = group.mul(x, g)) ++order;
        if (order > best_order ||
            (order == best_order && group.elements[g] < group.elements[best])) {
          best = g;
          best_order = order;
        }
      }
      result.h.push_back(group.elements[best]);
      result.m.push_back(best_order);
      current = generated(group, current, {best});
    }
  }
  if (result.h.empty()) {
    // Trivial closure: a single level of order 1 keeps the anchor defined.
    result.h.push_back(group.elements[group.identity]);
    result.m.push_back(1);
  }
  result.success = true;
  return result;
}

std::optional<std::uint64_t> find_period(ElementId g, MagmaOracle& oracle, std::size_t cap) {
  if (cap < 1) throw ContractViolation("find_period: cap must be positive");
  if (g >= oracle.size()) throw ContractViolation("find_period: element out of range");
  std::vector<std::int64_t> first_seen(oracle.size(), -1);
  ElementId p = g;
  for (std::int64_t r = 1; r <= static_cast<std::int64_t>(cap) + 1; ++r) {
    if (first_seen[p] >= 0) return static_cast<std::uint64_t>(r - first_seen[p]);
    first_seen[p] = r;
    p = oracle.product(g, p);
  }
  return std::nullopt;
}

FactorizationIndex::FactorizationIndex(std::vector<std::uint32_t> m, std::size_t n)
    : m_(std::move(m)),
      rank_of_(m_.size() + 1, std::vector<std::int64_t>(n, -1)),
      collisions_(m_.size() + 1, 0),
      image_size_(m_.size() + 1, 0) {}

std::optional<ExponentVector> FactorizationIndex::lookup(std::size_t level, ElementId g) const {
  if (level < 1 || level > levels()) throw ContractViolation("lookup: level out of range");
  if (g >= rank_of_[level].size()) return std::nullopt;
  const std::int64_t r = rank_of_[level][g];
  if (r < 0) return std::nullopt;
  ExponentVector x = ExponentVector::zero(level);
  auto rest = static_cast<std::uint64_t>(r);
  for (std::size_t k = 1; k <= level; ++k) {
    x.a[k - 1] = static_cast<std::uint32_t>(rest % m_[k - 1]);
    rest /= m_[k - 1];
  }
  return x;
}

std::optional<FactorizationIndex> build_factorization_index(std::span<const ElementId> h,
                                                            std::span<const std::uint32_t> m,
                                                            MagmaOracle& oracle,
                                                            std::uint64_t cap) {
  if (h.size() != m.size() || h.empty()) {
    throw ContractViolation("build_factorization_index: need matching non-empty h and m");
  }
  std::uint64_t total = 1;
  for (auto mi : m) {
    total *= mi;
    if (total > cap) return std::nullopt;
  }
  FactorizationIndex index({m.begin(), m.end()}, oracle.size());
  const PowerAnchor anchor{h[0], m[0]};
  std::vector<ElementId> previous;  // images at level i-1, by rank
  for (std::size_t i = 1; i <= h.size(); ++i) {
    std::vector<ElementId> powers(m[i - 1]);
    for (std::uint32_t a = 0; a < m[i - 1]; ++a) powers[a] = pow_right(oracle, h[i - 1], a, anchor);
    std::vector<ElementId> images;
    if (i == 1) {
      images = powers;
    } else {
      images.reserve(previous.size() * m[i - 1]);
      for (std::uint32_t a = 0; a < m[i - 1]; ++a) {
        for (ElementId lower : previous) images.push_back(oracle.product(powers[a], lower));
      }
    }
    auto& slot = index.rank_of_[i];
    for (std::size_t r = 0; r < images.size(); ++r) {
      if (slot[images[r]] < 0) {
        slot[images[r]] = static_cast<std::int64_t>(r);
        ++index.image_size_[i];
      } else {
        ++index.collisions_[i];
      }
    }
    previous = std::move(images);
  }
  return index;
}

std::optional<ExponentVector> decompose(ElementId g, const FactorizationIndex& index,
                                        std::size_t level) {
  return index.lookup(level, g);
}

ElementId psi_product(MagmaOracle& oracle, std::span<const ElementId> h, const PowerAnchor& anchor,
                      const ExponentVector& v) {
  if (v.level() == 0 || v.level() > h.size()) {
    throw ContractViolation("psi: vector level out of range");
  }
  ElementId acc = pow_right(oracle, h[0], v[1], anchor);
  for (std::size_t k = 2; k <= v.level(); ++k) {
    acc = oracle.product(pow_right(oracle, h[k - 1], v[k], anchor), acc);
  }
  return acc;
}

RelationOutcome extract_and_verify_relations(std::span<const ElementId> h,
                                             std::span<const std::uint32_t> m,
                                             std::span<const std::uint64_t> n,
                                             const FactorizationIndex& index,
                                             MagmaOracle& oracle) {
  const std::size_t t = h.size();
  if (m.size() != t || n.size() != t || index.levels() != t) {
    throw ContractViolation("extract_and_verify_relations: inconsistent lengths");
  }
  RelationOutcome outcome;
  RelationSet rel;
  rel.m.assign(m.begin(), m.end());
  rel.n.assign(n.begin(), n.end());
  const PowerAnchor anchor{h[0], m[0]};

  auto decompose_checked = [&](ElementId lhs, std::size_t level,
                               const std::string& what) -> std::optional<ExponentVector> {
    auto v = decompose(lhs, index, level);
    if (!v) {
      outcome.failure = what + " is not in H_" + std::to_string(level);
      return std::nullopt;
    }
    if (psi_product(oracle, h, anchor, *v) != lhs) {
      outcome.failure = what + " decomposition " + v->str() + " does not verify";
      return std::nullopt;
    }
    return v;
  };

  for (std::size_t i = 2; i <= t; ++i) {
    const std::string label_i = std::to_string(i);
    const ElementId power = pow_right(oracle, h[i - 1], m[i - 1], anchor);
    auto r = decompose_checked(power, i - 1, "h_" + label_i + "^m_" + label_i);
    if (!r) return outcome;
    rel.r.push_back(std::move(*r));

    std::vector<ExponentVector> row;
    const ElementId inverse_like = pow_right(oracle, h[i - 1], n[i - 1] - 1, anchor);
    for (std::size_t k = 1; k < i; ++k) {
      const ElementId conjugate = oracle.product(inverse_like, oracle.product(h[k - 1], h[i - 1]));
      auto s = decompose_checked(conjugate, i - 1,
                                 "conjugate of h_" + std::to_string(k) + " by h_" + label_i);
      if (!s) return outcome;
      row.push_back(std::move(*s));
    }
    rel.s.push_back(std::move(row));
  }
  outcome.relations = std::move(rel);
  return outcome;
}

}  // namespace solv
