#include "solv/corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace solv {

namespace {

constexpr std::size_t kMaxGeneratedOrder = 1000;

int positive_mod(long long a, long long m) { return static_cast<int>(((a % m) + m) % m); }

TableMagma from_function(std::size_t n, const auto& mul, std::string name) {
  if (n > kMaxGeneratedOrder) {
    throw std::invalid_argument(name + ": order " + std::to_string(n) + " exceeds " +
                                std::to_string(kMaxGeneratedOrder));
  }
  std::vector<ElementId> cells(n * n);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) {
      cells[g * n + h] = static_cast<ElementId>(mul(g, h));
    }
  }
  return TableMagma(n, std::move(cells), std::move(name));
}

void require_params(const GroupSpec& spec, std::size_t count) {
  if (spec.params.size() != count) {
    throw std::invalid_argument(std::string(family_name(spec.family)) + " takes " +
                                std::to_string(count) + " parameter(s)");
  }
}

TableMagma permutation_group(int degree, bool even_only, std::string name) {
  if (degree < 1 || degree > 6) {
    throw std::invalid_argument(name + ": degree must be in [1, 6]");
  }
  std::vector<int> perm(degree);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> elements;
  do {
    if (even_only) {
      int inversions = 0;
      for (int i = 0; i < degree; ++i) {
        for (int j = i + 1; j < degree; ++j) {
          inversions += perm[i] > perm[j];
        }
      }
      if (inversions % 2 != 0) continue;
    }
    elements.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  // Lexicographic enumeration puts the identity first.
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = i;
  std::vector<int> composed(degree);
  return from_function(
      elements.size(),
      [&](std::size_t g, std::size_t h) {
        // (g*h)(x) = g(h(x))
        for (int x = 0; x < degree; ++x) composed[x] = elements[g][elements[h][x]];
        return index.at(composed);
      },
      std::move(name));
}

int multiplicative_order(long long a, long long q) {
  long long x = positive_mod(a, q);
  for (int k = 1; k <= q; ++k) {
    if (x == 1 % q) return k;
    x = (x * a) % q;
  }
  return 0;
}

}  // namespace

const char* family_name(Family family) {
  switch (family) {
    case Family::kCyclic: return "cyclic";
    case Family::kDirectProduct: return "direct_product";
    case Family::kDihedral: return "dihedral";
    case Family::kSymmetric: return "symmetric";
    case Family::kAlternating: return "alternating";
    case Family::kSemidirect: return "semidirect";
    case Family::kQuaternion: return "quaternion";
  }
  return "unknown";
}

std::optional<Family> parse_family(const std::string& name) {
  for (Family f : {Family::kCyclic, Family::kDirectProduct, Family::kDihedral, Family::kSymmetric,
                   Family::kAlternating, Family::kSemidirect, Family::kQuaternion}) {
    if (name == family_name(f)) return f;
  }
  return std::nullopt;
}

std::string spec_name(const GroupSpec& spec) {
  std::ostringstream out;
  out << family_name(spec.family) << '(';
  for (std::size_t i = 0; i < spec.params.size(); ++i) {
    out << (i ? "," : "") << spec.params[i];
  }
  out << ')';
  return out.str();
}

TableMagma generate(const GroupSpec& spec) {
  std::string name = spec_name(spec);
  TableMagma table = [&]() -> TableMagma {
    switch (spec.family) {
      case Family::kCyclic: {
        require_params(spec, 1);
        const int n = spec.params[0];
        if (n < 1) throw std::invalid_argument("cyclic: n must be positive");
        return from_function(n, [n](std::size_t g, std::size_t h) { return (g + h) % n; },
                             name);
      }
      case Family::kDirectProduct: {
        if (spec.params.empty()) {
          throw std::invalid_argument("direct_product: needs at least one factor");
        }
        std::size_t order = 1;
        for (int f : spec.params) {
          if (f < 1) throw std::invalid_argument("direct_product: factors must be positive");
          order *= static_cast<std::size_t>(f);
          if (order > kMaxGeneratedOrder) break;
        }
        const auto& factors = spec.params;
        return from_function(
            order,
            [&factors](std::size_t g, std::size_t h) {
              // Mixed radix, first factor least significant.
              std::size_t result = 0, scale = 1;
              for (int f : factors) {
                const std::size_t sum = (g % f + h % f) % f;
                result += sum * scale;
                scale *= f;
                g /= f;
                h /= f;
              }
              return result;
            },
            name);
      }
      case Family::kDihedral: {
        require_params(spec, 1);
        const int n = spec.params[0];
        if (n < 1) throw std::invalid_argument("dihedral: n must be positive");
        // r^i s^a encoded as i + n*a; s r s = r^-1.
        return from_function(
            2 * static_cast<std::size_t>(n),
            [n](std::size_t g, std::size_t h) {
              const long long i = g % n, a = g / n, k = h % n, b = h / n;
              const int rot = positive_mod(a ? i - k : i + k, n);
              return static_cast<std::size_t>(rot + n * ((a + b) % 2));
            },
            name);
      }
      case Family::kSymmetric:
        require_params(spec, 1);
        return permutation_group(spec.params[0], false, name);
      case Family::kAlternating:
        require_params(spec, 1);
        return permutation_group(spec.params[0], true, name);
      case Family::kSemidirect: {
        require_params(spec, 3);
        const int q = spec.params[0], p = spec.params[1], mult = spec.params[2];
        if (q < 2 || p < 2) throw std::invalid_argument("semidirect: q and p must be >= 2");
        if (std::gcd(mult, q) != 1 || multiplicative_order(mult, q) != p) {
          throw std::invalid_argument("semidirect: action multiplier " + std::to_string(mult) +
                                      " does not have multiplicative order " +
                                      std::to_string(p) + " mod " + std::to_string(q));
        }
        std::vector<long long> power(p);
        power[0] = 1;
        for (int x = 1; x < p; ++x) power[x] = power[x - 1] * mult % q;
        // (a, x) encoded as a + q*x; (a,x)(b,y) = (a + mult^x b, x + y).
        return from_function(
            static_cast<std::size_t>(q) * p,
            [q, p, &power](std::size_t g, std::size_t h) {
              const long long a = g % q, x = g / q, b = h % q, y = h / q;
              const long long c = (a + power[x] * b) % q;
              return static_cast<std::size_t>(c + q * ((x + y) % p));
            },
            name);
      }
      case Family::kQuaternion: {
        require_params(spec, 1);
        const int order = spec.params[0];
        if (order < 4 || order % 4 != 0) {
          throw std::invalid_argument("quaternion: order must be a positive multiple of 4");
        }
        const int k = order / 4, n = 2 * k;
        // a^i x^j encoded as i + n*j; x^-1 a x = a^-1, x^2 = a^k.
        return from_function(
            static_cast<std::size_t>(order),
            [k, n](std::size_t g, std::size_t h) {
              const long long i = g % n, j = g / n, i2 = h % n, j2 = h / n;
              long long rot = j ? i - i2 : i + i2;
              long long top = j + j2;
              if (top == 2) {
                rot += k;
                top = 0;
              }
              return static_cast<std::size_t>(positive_mod(rot, n) + n * top);
            },
            name);
      }
    }
    throw std::invalid_argument("unknown family");
  }();
  if (auto violation = group_violation(table)) {
    throw std::invalid_argument(name + " does not define a group: " + violation->describe());
  }
  return table;
}

std::string GroupViolation::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kNoIdentity: out << "no two-sided identity"; break;
    case Kind::kNoInverse: out << "element " << a << " has no two-sided inverse"; break;
    case Kind::kNotAssociative:
      out << "(" << a << "*" << b << ")*" << c << " != " << a << "*(" << b << "*" << c << ")";
      break;
  }
  return out.str();
}

std::optional<GroupViolation> group_violation(const TableMagma& m) {
  const std::size_t n = m.size();
  std::optional<ElementId> identity;
  for (ElementId e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (ElementId x = 0; x < n && ok; ++x) ok = m.at(e, x) == x && m.at(x, e) == x;
    if (ok) identity = e;
  }
  if (!identity) return GroupViolation{GroupViolation::Kind::kNoIdentity};
  for (ElementId a = 0; a < n; ++a) {
    bool found = false;
    for (ElementId b = 0; b < n && !found; ++b) {
      found = m.at(a, b) == *identity && m.at(b, a) == *identity;
    }
    if (!found) return GroupViolation{GroupViolation::Kind::kNoInverse, a};
  }
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = 0; b < n; ++b) {
      const ElementId ab = m.at(a, b);
      for (ElementId c = 0; c < n; ++c) {
        if (m.at(ab, c) != m.at(a, m.at(b, c))) {
          return GroupViolation{GroupViolation::Kind::kNotAssociative, a, b, c};
        }
      }
    }
  }
  return std::nullopt;
}

ElementId group_identity(const TableMagma& m) {
  for (ElementId e = 0; e < m.size(); ++e) {
    bool ok = true;
    for (ElementId x = 0; x < m.size() && ok; ++x) ok = m.at(e, x) == x && m.at(x, e) == x;
    if (ok) return e;
  }
  throw ContractViolation("group_identity: table has no identity");
}

std::vector<ElementId> subgroup_closure(const TableMagma& group,
                                        const std::vector<ElementId>& generators) {
  // In a finite group the closure under products of the generators together
  // with the identity is the generated subgroup.
  std::vector<char> seen(group.size(), 0);
  std::vector<ElementId> elements;
  auto add = [&](ElementId x) {
    if (!seen[x]) {
      seen[x] = 1;
      elements.push_back(x);
    }
  };
  add(group_identity(group));
  for (ElementId g : generators) add(g);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (ElementId g : generators) add(group.at(elements[i], g));
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

std::vector<std::vector<ElementId>> derived_series(const TableMagma& group) {
  const ElementId e = group_identity(group);
  const std::size_t n = group.size();
  std::vector<ElementId> inverse(n);
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = 0; b < n; ++b) {
      if (group.at(a, b) == e) inverse[a] = b;
    }
  }
  std::vector<ElementId> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<ElementId>> series{all};
  while (true) {
    const auto& current = series.back();
    std::vector<char> is_commutator(n, 0);
    std::vector<ElementId> commutators;
    for (ElementId g : current) {
      for (ElementId h : current) {
        // [g,h] = g^-1 h^-1 g h
        const ElementId c =
            group.at(group.at(group.at(inverse[g], inverse[h]), g), h);
        if (!is_commutator[c]) {
          is_commutator[c] = 1;
          commutators.push_back(c);
        }
      }
    }
    auto next = subgroup_closure(group, commutators);
    if (next.size() == current.size()) break;
    series.push_back(std::move(next));
  }
  return series;
}

bool is_solvable(const TableMagma& group) {
  if (auto violation = group_violation(group)) {
    throw ContractViolation("is_solvable: input is not a group (" + violation->describe() + ")");
  }
  return derived_series(group).back().size() == 1;
}

std::uint64_t element_order(const TableMagma& group, ElementId g) {
  const ElementId e = group_identity(group);
  ElementId x = g;
  for (std::uint64_t r = 1; r <= group.size(); ++r) {
    if (x == e) return r;
    x = group.at(x, g);
  }
  throw ContractViolation("element_order: no finite order, input is not a group");
}

TableMagma corrupt(const TableMagma& magma, const CorruptionSpec& spec) {
  const std::size_t n = magma.size();
  const std::size_t cells = n * n;
  if (spec.k > cells) {
    throw ContractViolation("corrupt: k exceeds the number of cells");
  }
  if (spec.k > 0 && n == 1) {
    throw ContractViolation("corrupt: a size-1 table has no alternative entries");
  }
  Rng rng(spec.seed);
  std::vector<std::size_t> order(cells);
  std::iota(order.begin(), order.end(), 0);
  std::vector<ElementId> out(magma.cells().begin(), magma.cells().end());
  for (std::size_t i = 0; i < spec.k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, cells - 1);
    std::swap(order[i], order[pick(rng)]);
    const std::size_t cell = order[i];
    // Uniform over the n-1 values that differ from the original.
    std::uniform_int_distribution<ElementId> value(0, static_cast<ElementId>(n - 2));
    ElementId v = value(rng);
    if (v >= out[cell]) ++v;
    out[cell] = v;
  }
  return TableMagma(n, std::move(out), magma.name().empty() ? "" : magma.name() + "+corrupt");
}

TableMagma random_magma(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ContractViolation("random_magma: n must be positive");
  Rng rng(seed);
  std::vector<ElementId> cells(n * n);
  for (auto& c : cells) c = sample_uniform(n, rng);
  return TableMagma(n, std::move(cells), "random_magma(" + std::to_string(n) + ")");
}

std::vector<CorpusEntry> shipped_corpus() {
  std::vector<CorpusEntry> corpus;
  for (int n = 2; n <= 64; ++n) corpus.push_back({{Family::kCyclic, {n}}, true});
  corpus.push_back({{Family::kDirectProduct, {2, 4}}, true});
  corpus.push_back({{Family::kDirectProduct, {2, 2, 3}}, true});
  corpus.push_back({{Family::kDihedral, {4}}, true});
  corpus.push_back({{Family::kDihedral, {6}}, true});
  corpus.push_back({{Family::kQuaternion, {8}}, true});
  corpus.push_back({{Family::kSymmetric, {3}}, true});
  corpus.push_back({{Family::kSymmetric, {4}}, true});
  corpus.push_back({{Family::kAlternating, {4}}, true});
  corpus.push_back({{Family::kSemidirect, {7, 3, 2}}, true});
  corpus.push_back({{Family::kAlternating, {5}}, false});
  corpus.push_back({{Family::kSymmetric, {5}}, false});
  return corpus;
}

}  // namespace solv
