#include "solv/pcp.hpp"

#include <sstream>

namespace solv {

using nlohmann::json;

ExponentVector ExponentVector::written(std::vector<std::uint32_t> high_first) {
  return ExponentVector(std::vector<std::uint32_t>(high_first.rbegin(), high_first.rend()));
}

ExponentVector ExponentVector::basis(std::size_t level, std::size_t k) {
  if (k < 1 || k > level) throw ContractViolation("ExponentVector::basis: index out of range");
  ExponentVector x = zero(level);
  x.a[k - 1] = 1;
  return x;
}

std::string ExponentVector::str() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = a.size(); i-- > 0;) out << a[i] << (i ? "," : "");
  out << ')';
  return out.str();
}

std::string LevelCheck::describe() const {
  std::ostringstream out;
  out << "level " << level << ": ";
  if (!a) {
    if (witness_k == 0) {
      out << "(a) fails: phi does not respect the power relation of generator " << witness_i;
    } else {
      out << "(a) fails: phi does not respect the conjugation relation (" << witness_i << ","
          << witness_k << ")";
    }
  } else if (!b.value_or(false)) {
    out << "(b) fails: phi(u) != u";
  } else if (!c.value_or(false)) {
    out << "(c) fails at basis vector " << witness_i;
  } else {
    out << "consistent";
  }
  return out.str();
}

namespace {

json vector_json(const ExponentVector& x) { return x.high_first(); }

ExponentVector vector_from_json(const json& doc, const char* what) {
  if (!doc.is_array()) {
    throw std::invalid_argument(std::string("presentation: ") + what + " must be a list");
  }
  std::vector<std::uint32_t> high_first;
  for (const json& c : doc) {
    if (!c.is_number_integer() || c.get<long long>() < 0) {
      throw std::invalid_argument(std::string("presentation: ") + what +
                                  " must hold non-negative integers");
    }
    high_first.push_back(c.get<std::uint32_t>());
  }
  return ExponentVector::written(std::move(high_first));
}

}  // namespace

json relations_to_json(const PcRelations& rel) {
  json doc;
  doc["t"] = rel.t();
  doc["m"] = rel.m;
  json u = json::array();
  for (const auto& x : rel.u) u.push_back(vector_json(x));
  json v = json::array();
  for (const auto& row : rel.v) {
    json r = json::array();
    for (const auto& x : row) r.push_back(vector_json(x));
    v.push_back(std::move(r));
  }
  doc["u"] = std::move(u);
  doc["v"] = std::move(v);
  return doc;
}

PcRelations relations_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("presentation: expected a JSON object");
  for (const char* field : {"t", "m", "u", "v"}) {
    if (!doc.contains(field)) {
      throw std::invalid_argument(std::string("presentation: missing field '") + field + "'");
    }
  }
  PcRelations rel;
  rel.m = doc["m"].get<std::vector<std::uint32_t>>();
  if (!doc["t"].is_number_integer() || doc["t"].get<long long>() != static_cast<long long>(rel.m.size())) {
    throw std::invalid_argument("presentation: 't' must equal the length of 'm'");
  }
  for (const json& x : doc["u"]) rel.u.push_back(vector_from_json(x, "u"));
  for (const json& row : doc["v"]) {
    if (!row.is_array()) throw std::invalid_argument("presentation: 'v' rows must be lists");
    std::vector<ExponentVector> r;
    for (const json& x : row) r.push_back(vector_from_json(x, "v"));
    rel.v.push_back(std::move(r));
  }
  return rel;
}

PcPresentation::PcPresentation(PcRelations relations) : rel_(std::move(relations)) {
  const std::size_t t = rel_.t();
  if (t < 1) throw std::invalid_argument("presentation: t must be at least 1");
  orders_.assign(t + 1, 1);
  for (std::size_t i = 1; i <= t; ++i) {
    if (rel_.m[i - 1] < 1) throw std::invalid_argument("presentation: m_i must be positive");
    orders_[i] = orders_[i - 1] * rel_.m[i - 1];
    if (orders_[i] > (1ULL << 31)) {
      throw std::invalid_argument("presentation: group order too large");
    }
  }
  if (rel_.u.size() != t - 1 || rel_.v.size() != t - 1) {
    throw std::invalid_argument("presentation: 'u' and 'v' need t-1 entries");
  }
  auto check_vector = [&](const ExponentVector& x, std::size_t level, const std::string& what) {
    if (x.level() != level) {
      throw std::invalid_argument("presentation: " + what + " must have level " +
                                  std::to_string(level));
    }
    for (std::size_t k = 1; k <= level; ++k) {
      if (x[k] >= m(k)) {
        throw std::invalid_argument("presentation: component " + std::to_string(k) + " of " +
                                    what + " is not reduced mod m_" + std::to_string(k));
      }
    }
  };
  u_rank_.assign(t + 1, 0);
  v_rank_.assign(t + 1, {});
  for (std::size_t i = 2; i <= t; ++i) {
    check_vector(u(i), i - 1, "u_" + std::to_string(i));
    u_rank_[i] = rank(u(i));
    if (rel_.v[i - 2].size() != i - 1) {
      throw std::invalid_argument("presentation: v_" + std::to_string(i) + " needs " +
                                  std::to_string(i - 1) + " entries");
    }
    v_rank_[i].assign(i, 0);
    for (std::size_t k = 1; k < i; ++k) {
      check_vector(v(i, k), i - 1, "v_" + std::to_string(i) + "," + std::to_string(k));
      v_rank_[i][k] = rank(v(i, k));
    }
  }
  hom_.assign(t + 1, 0);
  table_.assign(t + 1, {});
  phi_map_.assign(t + 1, {});
  build_caches(1);
}

std::uint64_t PcPresentation::rank(const ExponentVector& x) const {
  if (x.level() > t()) throw ContractViolation("rank: level exceeds t");
  std::uint64_t r = 0;
  for (std::size_t k = x.level(); k >= 1; --k) {
    if (x[k] >= m(k)) throw ContractViolation("rank: component not reduced");
    r = r * m(k) + x[k];
  }
  return r;
}

ExponentVector PcPresentation::unrank(std::size_t j, std::uint64_t r) const {
  ExponentVector x = ExponentVector::zero(j);
  for (std::size_t k = 1; k <= j; ++k) {
    x.a[k - 1] = static_cast<std::uint32_t>(r % m(k));
    r /= m(k);
  }
  return x;
}

std::uint64_t PcPresentation::product_rank(std::size_t j, std::uint64_t x,
                                           std::uint64_t y) const {
  if (j == 1) return (x + y) % m(1);
  if (!table_[j].empty()) return table_[j][x * orders_[j] + y];
  const std::uint64_t below = orders_[j - 1];
  const std::uint64_t a = x / below, b = y / below;
  const std::uint64_t moved = phi_iterate_rank(j, x % below, b, false);
  if (a + b < m(j)) {
    return (a + b) * below + product_rank(j - 1, moved, y % below);
  }
  const std::uint64_t lower = product_rank(j - 1, product_rank(j - 1, u_rank_[j], moved), y % below);
  return (a + b - m(j)) * below + lower;
}

std::uint64_t PcPresentation::power_rank(std::size_t j, std::uint64_t x, std::uint64_t e) const {
  if (e == 0) return 0;
  if (e == 1) return x;
  if (j == 1) return (x * (e % m(1))) % m(1);
  const std::uint64_t half = power_rank(j, x, e / 2);
  const std::uint64_t squared = product_rank(j, half, half);
  return (e & 1) ? product_rank(j, x, squared) : squared;
}

std::uint64_t PcPresentation::phi_rank(std::size_t j, std::uint64_t x) const {
  if (!phi_map_[j].empty()) return phi_map_[j][x];
  // v_{j,j-1}^{a_{j-1}} o (... o (v_{j,2}^{a_2} o v_{j,1}^{a_1}))
  std::uint64_t acc = 0;
  for (std::size_t k = 1; k < j; ++k) {
    const std::uint64_t exponent = (x / orders_[k - 1]) % m(k);
    const std::uint64_t factor = power_rank(j - 1, v_rank_[j][k], exponent);
    acc = k == 1 ? factor : product_rank(j - 1, factor, acc);
  }
  return acc;
}

std::uint64_t PcPresentation::apply_basis_images(std::size_t j,
                                                 const std::vector<std::uint64_t>& images,
                                                 std::uint64_t x) const {
  std::uint64_t acc = 0;
  for (std::size_t k = 1; k < j; ++k) {
    const std::uint64_t exponent = (x / orders_[k - 1]) % m(k);
    const std::uint64_t factor = power_rank(j - 1, images[k], exponent);
    acc = k == 1 ? factor : product_rank(j - 1, factor, acc);
  }
  return acc;
}

std::uint64_t PcPresentation::phi_fast(std::size_t j, std::uint64_t x, std::uint64_t b) const {
  // images[k] = phi^(2^l)(x_{j-1,k}), doubled as l increases.
  std::vector<std::uint64_t> images(j, 0);
  for (std::size_t k = 1; k < j; ++k) images[k] = phi_rank(j, orders_[k - 1]);
  while (b > 0) {
    if (b & 1) x = apply_basis_images(j, images, x);
    b >>= 1;
    if (b > 0) {
      std::vector<std::uint64_t> doubled(j, 0);
      for (std::size_t k = 1; k < j; ++k) doubled[k] = apply_basis_images(j, images, images[k]);
      images = std::move(doubled);
    }
  }
  return x;
}

std::uint64_t PcPresentation::phi_iterate_rank(std::size_t j, std::uint64_t x, std::uint64_t b,
                                               bool fast) const {
  if (fast) {
    if (!hom_[j]) {
      throw ContractViolation("phi_iterate: fast path needs condition (a) at level " +
                              std::to_string(j));
    }
    return phi_fast(j, x, b);
  }
  for (std::uint64_t i = 0; i < b; ++i) x = phi_rank(j, x);
  return x;
}

LevelCheck PcPresentation::check_level(std::size_t j) {
  if (j < 2 || j > t()) throw ContractViolation("check_level: level out of range");
  if (verified_level_ < j - 1) {
    throw ContractViolation("check_level: level " + std::to_string(j - 1) +
                            " has not been verified");
  }
  LevelCheck report;
  report.level = j;

  // (a): the images w_i = v_{j,i} satisfy every defining relation of
  // G_{j-1}, so phi_j extends to an endomorphism.
  report.a = true;
  const auto& w = v_rank_[j];
  for (std::size_t i = 1; i < j && report.a; ++i) {
    const std::uint64_t power = power_rank(j - 1, w[i], m(i));
    const std::uint64_t expected = i == 1 ? 0 : phi_rank(j, u_rank_[i]);
    if (power != expected) {
      report.a = false;
      report.witness_i = i;
      report.witness_k = 0;
      break;
    }
    for (std::size_t k = 1; k < i; ++k) {
      const std::uint64_t lhs = product_rank(j - 1, w[k], w[i]);
      const std::uint64_t rhs = product_rank(j - 1, w[i], phi_rank(j, v_rank_[i][k]));
      if (lhs != rhs) {
        report.a = false;
        report.witness_i = i;
        report.witness_k = k;
        break;
      }
    }
  }
  hom_[j] = report.a;
  if (!report.a) return report;

  // (b): phi_j(u_j) = u_j.
  report.b = phi_rank(j, u_rank_[j]) == u_rank_[j];
  if (!*report.b) return report;

  // (c): phi_j^(m_j)(x_{j-1,i}) = u_j^-1 o x_{j-1,i} o u_j.
  const std::uint64_t u_inverse = power_rank(j - 1, u_rank_[j], orders_[j - 1] - 1);
  report.c = true;
  for (std::size_t i = 1; i < j; ++i) {
    const std::uint64_t basis = orders_[i - 1];
    const std::uint64_t lhs = phi_iterate_rank(j, basis, m(j), true);
    const std::uint64_t rhs =
        product_rank(j - 1, product_rank(j - 1, u_inverse, basis), u_rank_[j]);
    if (lhs != rhs) {
      report.c = false;
      report.witness_i = i;
      return report;
    }
  }
  if (verified_level_ == j - 1) {
    verified_level_ = j;
    build_caches(j);
  }
  return report;
}

void PcPresentation::build_caches(std::size_t j) {
  const std::uint64_t n = orders_[j];
  if (j >= 2 && n <= kTableCacheOrder) {
    std::vector<std::uint32_t> table(n * n);
    for (std::uint64_t x = 0; x < n; ++x) {
      for (std::uint64_t y = 0; y < n; ++y) {
        table[x * n + y] = static_cast<std::uint32_t>(product_rank(j, x, y));
      }
    }
    table_[j] = std::move(table);
  }
  if (j + 1 <= t() && n <= kPhiCacheOrder) {
    std::vector<std::uint32_t> map(n);
    for (std::uint64_t x = 0; x < n; ++x) map[x] = static_cast<std::uint32_t>(phi_rank(j + 1, x));
    phi_map_[j + 1] = std::move(map);
  }
}

namespace {

void require_level(const PcPresentation& p, std::size_t j, const ExponentVector& x,
                   const char* op) {
  if (j < 1 || j > p.t()) throw ContractViolation(std::string(op) + ": level out of range");
  if (x.level() != j) {
    throw ContractViolation(std::string(op) + ": expected a level-" + std::to_string(j) +
                            " vector, got level " + std::to_string(x.level()));
  }
}

}  // namespace

ExponentVector pc_identity(const PcPresentation& p, std::size_t j) {
  if (j < 1 || j > p.t()) throw ContractViolation("pc_identity: level out of range");
  return ExponentVector::zero(j);
}

ExponentVector pc_product(const PcPresentation& p, std::size_t j, const ExponentVector& x,
                          const ExponentVector& y) {
  require_level(p, j, x, "pc_product");
  require_level(p, j, y, "pc_product");
  return p.unrank(j, p.product_rank(j, p.rank(x), p.rank(y)));
}

ExponentVector pc_phi(const PcPresentation& p, std::size_t j, const ExponentVector& x) {
  if (j < 2) throw ContractViolation("pc_phi: level must be at least 2");
  require_level(p, j - 1, x, "pc_phi");
  return p.unrank(j - 1, p.phi_rank(j, p.rank(x)));
}

ExponentVector pc_power(const PcPresentation& p, std::size_t j, const ExponentVector& x,
                        std::uint64_t e) {
  require_level(p, j, x, "pc_power");
  return p.unrank(j, p.power_rank(j, p.rank(x), e));
}

ExponentVector pc_inverse(const PcPresentation& p, std::size_t j, const ExponentVector& x) {
  require_level(p, j, x, "pc_inverse");
  if (j > p.verified_level()) {
    throw ContractViolation("pc_inverse: level " + std::to_string(j) + " is not verified");
  }
  return p.unrank(j, p.power_rank(j, p.rank(x), p.order(j) - 1));
}

ExponentVector phi_iterate(const PcPresentation& p, std::size_t j, const ExponentVector& x,
                           std::uint64_t b, PhiPath path) {
  if (j < 2) throw ContractViolation("phi_iterate: level must be at least 2");
  require_level(p, j - 1, x, "phi_iterate");
  const bool fast = path == PhiPath::kFast || (path == PhiPath::kAuto && p.phi_is_homomorphism(j));
  return p.unrank(j - 1, p.phi_iterate_rank(j, p.rank(x), b, fast));
}

LevelCheck check_level(PcPresentation& p, std::size_t j) { return p.check_level(j); }

ConsistencyReport check_consistency(PcPresentation& p) {
  ConsistencyReport report;
  report.passed = true;
  for (std::size_t j = 2; j <= p.t(); ++j) {
    report.levels.push_back(p.check_level(j));
    if (!report.levels.back().passed()) {
      report.passed = false;
      break;
    }
  }
  return report;
}

TableMagma enumerate_table(const PcPresentation& p) {
  const std::uint64_t n = p.order(p.t());
  if (n > kMaxEnumerationOrder) {
    throw ContractViolation("enumerate_table: order " + std::to_string(n) + " exceeds " +
                            std::to_string(kMaxEnumerationOrder));
  }
  std::vector<ElementId> cells(n * n);
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::uint64_t y = 0; y < n; ++y) {
      cells[x * n + y] = static_cast<ElementId>(p.product_rank(p.t(), x, y));
    }
  }
  return TableMagma(n, std::move(cells), "pc_enumeration");
}

}  // namespace solv
