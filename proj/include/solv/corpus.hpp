#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solv/magma.hpp"

namespace solv {

enum class Family {
  kCyclic,         // {n}
  kDirectProduct,  // {n1, n2, ...}: Z_n1 x Z_n2 x ...
  kDihedral,       // {n}: symmetries of the n-gon, order 2n
  kSymmetric,      // {n}
  kAlternating,    // {n}
  kSemidirect,     // {q, p, mult}: Z_q x| Z_p, generator of Z_p acting by b -> mult*b
  kQuaternion,     // {order}: dicyclic group of order 4k (order 8 is Q_8)
};

struct GroupSpec {
  Family family;
  std::vector<int> params;
};

const char* family_name(Family family);
std::optional<Family> parse_family(const std::string& name);

/// Short display name, e.g. "semidirect(7,3,2)".
std::string spec_name(const GroupSpec& spec);

/// Cayley table of the group; element 0 is the identity. Throws
/// std::invalid_argument on bad parameters.
TableMagma generate(const GroupSpec& spec);

struct GroupViolation {
  enum class Kind { kNoIdentity, kNoInverse, kNotAssociative };
  Kind kind;
  ElementId a = 0, b = 0, c = 0;  // element or triple that fails
  std::string describe() const;
};

/// Full axiom check (identity, inverses, O(n^3) associativity). Returns the
/// first violation, or nullopt for a group.
std::optional<GroupViolation> group_violation(const TableMagma& magma);
inline bool is_group(const TableMagma& magma) { return !group_violation(magma); }

/// Identity of a group table. Throws ContractViolation if there is none.
ElementId group_identity(const TableMagma& magma);

/// Subgroup generated by `generators` in a group table (uncounted).
std::vector<ElementId> subgroup_closure(const TableMagma& group,
                                        const std::vector<ElementId>& generators);

/// Derived series G = D0 > D1 > ... ending where it stabilizes. Each term is a
/// sorted element list.
std::vector<std::vector<ElementId>> derived_series(const TableMagma& group);

/// True iff the derived series reaches {e}. Contract: the table is a group.
bool is_solvable(const TableMagma& group);

/// Order of g in a group table (smallest r >= 1 with g^r = e), brute force.
std::uint64_t element_order(const TableMagma& group, ElementId g);

struct CorruptionSpec {
  std::size_t k = 0;
  std::uint64_t seed = 0;
};

/// Copy of `magma` with exactly k distinct cells overwritten by a different
/// uniformly chosen element.
TableMagma corrupt(const TableMagma& magma, const CorruptionSpec& spec);

/// Every cell independently uniform over [0, n).
TableMagma random_magma(std::size_t n, std::uint64_t seed);

struct CorpusEntry {
  GroupSpec spec;
  bool solvable;
};

/// The desk-scale list used by the acceptance suite.
std::vector<CorpusEntry> shipped_corpus();

}  // namespace solv
