#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "solv/magma.hpp"
#include "solv/pcp.hpp"
#include "solv/subroutines.hpp"

namespace solv {

/// The constant relating the homomorphism-test threshold to epsilon.
inline constexpr double kEtaDivisor = 422.0;

struct TesterConfig {
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  double s_factor = 4.0;       // step 1 draws ceil(s_factor * log2 n) elements
  double c1_numerator = 8.0;   // c1 = ceil(c1_numerator / epsilon)
  double c2_numerator = 8.0;   // c2 = ceil(c2_numerator / eta), eta = epsilon / 422
  std::size_t closure_cap = 0; // 0: 2n
  std::uint64_t index_cap = kDefaultIndexCap;
  std::size_t amplification = 3;
  bool record_samples = false;  // keep the step 5b and step 7 draws in the report

  void validate() const;
  std::uint64_t sample_count(std::size_t n) const;
  std::uint64_t c1() const;
  std::uint64_t c2() const;
  double eta() const { return epsilon / kEtaDivisor; }
};

enum class Step { kNone, k2, k3, k4, k5a, k5b, k6, k7 };
const char* step_label(Step step);

/// psi(a_t, ..., a_1) = h_t^{a_t}·(h_{t-1}^{a_{t-1}}·(···(h_2^{a_2}·h_1^{a_1}))).
struct PsiMap {
  std::vector<ElementId> h;
  std::vector<std::uint32_t> m;
  PowerAnchor anchor() const { return {h.at(0), m.at(0)}; }
};

ElementId psi_eval(MagmaOracle& oracle, const PsiMap& psi, const ExponentVector& v);

/// Decomposes g over H_t and re-evaluates psi on the result with oracle
/// products; true iff that gives g back.
bool membership_check(ElementId g, const FactorizationIndex& index, const PsiMap& psi,
                      MagmaOracle& oracle);

struct TesterReport {
  bool accept = false;
  Step reject_step = Step::kNone;
  std::string reason;

  std::uint64_t n = 0;
  double epsilon = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;    // step 1 draws per attempt
  std::uint64_t attempts = 0;   // step 1-2 draws used
  std::uint64_t c1 = 0, c2 = 0;

  std::optional<DecompositionResult> decomposition;
  std::vector<std::uint64_t> periods;
  std::optional<RelationSet> relations;
  std::vector<std::uint64_t> index_collisions;  // per level, from the last index built
  std::optional<ConsistencyReport> consistency;

  std::uint64_t membership_checks = 0;  // step 5b
  std::uint64_t pair_checks = 0;        // step 7
  std::uint64_t pair_failures = 0;
  std::vector<ElementId> sampled_elements;                      // with record_samples
  std::vector<std::pair<std::uint64_t, std::uint64_t>> sampled_pairs;  // ranks in G_t

  std::uint64_t queries_total = 0;
  std::vector<std::pair<Phase, std::uint64_t>> queries;  // per phase
};

/// The full pipeline on one magma. Deterministic in (magma, cfg).
TesterReport run_tester(const TableMagma& magma, const TesterConfig& cfg);

/// Structured form of the report with stable field names.
nlohmann::json report_to_json(const TesterReport& report);

/// Oracle calls one psi evaluation of v costs (square-and-multiply powers
/// plus the nesting products).
std::uint64_t psi_query_cost(const PsiMap& psi, const ExponentVector& v);

/// Upper bound on tester-level queries in steps 5b and 7:
/// (c1 + c2) * (2t + 2) * ceil(log2(max m_i * n)).
std::uint64_t sampling_query_bound(std::uint64_t c1, std::uint64_t c2, std::size_t t,
                                   std::uint32_t max_m, std::uint64_t n);

/// ceil(x) that absorbs floating-point noise around integers.
std::uint64_t ceil_count(double x);

}  // namespace solv
